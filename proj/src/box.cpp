#include "gqs/box.hpp"

#include <cmath>
#include <stdexcept>

namespace gqs {

BoxGrid::BoxGrid(int cells_per_side, int side_length)
    : m_(cells_per_side), length_(side_length) {
    if (m_ < 8) throw std::invalid_argument("BoxGrid: need at least 8 cells per side");
    if (m_ > 64) throw std::invalid_argument("BoxGrid: capped at 64 cells per side");
    if (length_ < 1) throw std::invalid_argument("BoxGrid: side length must be >= 1");
    h_ = static_cast<double>(length_) / m_;
}

BoxField BoxField::zeros(BoxPtr grid) {
    BoxField f;
    f.v.assign(grid->size(), 0.0);
    f.grid = std::move(grid);
    return f;
}

BoxField sample_potential(BoxPtr grid, const Potential& potential) {
    BoxField f = BoxField::zeros(grid);
    const auto& g = *f.grid;
    for (int i = 0; i < g.m(); ++i)
        for (int j = 0; j < g.m(); ++j)
            for (int k = 0; k < g.m(); ++k)
                f.v[g.index(i, j, k)] = potential.at(g.node(i, j, k));
    return f;
}

BoxField box_laplacian(const BoxField& f) {
    const auto& g = *f.grid;
    BoxField out = BoxField::zeros(f.grid);
    const double inv_h2 = 1.0 / (g.h() * g.h());
    for (int i = 0; i < g.m(); ++i)
        for (int j = 0; j < g.m(); ++j)
            for (int k = 0; k < g.m(); ++k) {
                const double c = f.v[g.index(i, j, k)];
                const double sum = f.v[g.index(i + 1, j, k)] + f.v[g.index(i - 1, j, k)] +
                                   f.v[g.index(i, j + 1, k)] + f.v[g.index(i, j - 1, k)] +
                                   f.v[g.index(i, j, k + 1)] + f.v[g.index(i, j, k - 1)];
                out.v[g.index(i, j, k)] = (sum - 6.0 * c) * inv_h2;
            }
    return out;
}

double box_integrate(const BoxField& f) {
    double acc = 0.0;
    for (double x : f.v) acc += x;
    return acc * f.grid->cell_volume();
}

double box_norm_L2_sq(const BoxField& f) {
    double acc = 0.0;
    for (double x : f.v) acc += x * x;
    return acc * f.grid->cell_volume();
}

double box_grad_sq(const BoxField& f) {
    const auto& g = *f.grid;
    double acc = 0.0;
    for (int i = 0; i < g.m(); ++i)
        for (int j = 0; j < g.m(); ++j)
            for (int k = 0; k < g.m(); ++k) {
                const double c = f.v[g.index(i, j, k)];
                const double dx = f.v[g.index(i + 1, j, k)] - c;
                const double dy = f.v[g.index(i, j + 1, k)] - c;
                const double dz = f.v[g.index(i, j, k + 1)] - c;
                acc += dx * dx + dy * dy + dz * dz;
            }
    return acc * f.grid->cell_volume() / (g.h() * g.h());
}

double box_e_norm_sq(const BoxField& f, const BoxField& potential) {
    if (f.grid != potential.grid)
        throw std::invalid_argument("box_e_norm_sq: grids differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) acc += potential.v[i] * f.v[i] * f.v[i];
    return box_grad_sq(f) + acc * f.grid->cell_volume();
}

BoxField recenter_to_peak(const BoxField& f) {
    const auto& g = *f.grid;
    int pi = 0, pj = 0, pk = 0;
    double best = -1.0;
    for (int i = 0; i < g.m(); ++i)
        for (int j = 0; j < g.m(); ++j)
            for (int k = 0; k < g.m(); ++k) {
                const double mass = f.v[g.index(i, j, k)] * f.v[g.index(i, j, k)];
                if (mass > best) {
                    best = mass;
                    pi = i; pj = j; pk = k;
                }
            }
    BoxField out = BoxField::zeros(f.grid);
    for (int i = 0; i < g.m(); ++i)
        for (int j = 0; j < g.m(); ++j)
            for (int k = 0; k < g.m(); ++k)
                out.v[g.index(i, j, k)] = f.v[g.index(i + pi, j + pj, k + pk)];
    return out;
}

}  // namespace gqs
