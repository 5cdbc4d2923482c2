#include "gqs/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "gqs/numerics.hpp"

namespace gqs {

RadialGrid::RadialGrid(int dimension, double radius, int nodes)
    : dimension_(dimension), radius_(radius), nodes_(nodes) {
    if (dimension < 3) throw std::invalid_argument("RadialGrid: dimension must be >= 3");
    if (!(radius > 0.0)) throw std::invalid_argument("RadialGrid: radius must be positive");
    if (nodes < 16) throw std::invalid_argument("RadialGrid: need at least 16 nodes");
    dr_ = radius / nodes;
    const double sigma = unit_sphere_area(dimension);
    ball_volume_ = sigma * std::pow(radius, dimension) / dimension;

    r_.resize(nodes + 1);
    w_.resize(nodes + 1);
    for (int j = 0; j <= nodes; ++j) {
        r_[j] = j * dr_;
        w_[j] = sigma * std::pow(r_[j], dimension - 1) * dr_;
    }
    w_[nodes] *= 0.5;  // trapezoid end correction; w_[0] is already 0

    r_mid_.resize(nodes);
    w_mid_.resize(nodes);
    for (int j = 0; j < nodes; ++j) {
        r_mid_[j] = (j + 0.5) * dr_;
        w_mid_[j] = sigma * std::pow(r_mid_[j], dimension - 1) * dr_;
    }

    double total = 0.0;
    for (double wj : w_) total += wj;
    if (std::abs(total - ball_volume_) > 1e-3 * ball_volume_)
        throw std::invalid_argument(
            "RadialGrid: quadrature sanity failed (node count too low for this dimension)");
}

GridPtr make_grid(int dimension, double radius, int nodes) {
    return std::make_shared<const RadialGrid>(dimension, radius, nodes);
}

Field Field::zeros(GridPtr grid) {
    Field f;
    f.v.assign(grid->nodes() + 1, 0.0);
    f.grid = std::move(grid);
    return f;
}

Field Field::from_function(GridPtr grid, const std::function<double(double)>& fn) {
    Field f = zeros(grid);
    const auto r = f.grid->r();
    for (int j = 0; j <= f.grid->nodes(); ++j) f.v[j] = fn(r[j]);
    f.enforce_invariants();
    return f;
}

void Field::enforce_invariants() {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("Field: non-finite value");
    v.back() = 0.0;
}

Field laplacian_apply(const Field& f) {
    const auto& g = *f.grid;
    const int n = g.nodes();
    const double dr2 = g.dr() * g.dr();
    const int N = g.dimension();
    Field out = Field::zeros(f.grid);
    out.v[0] = 2.0 * N * (f.v[1] - f.v[0]) / dr2;
    for (int j = 1; j < n; ++j) {
        const double second = (f.v[j + 1] - 2.0 * f.v[j] + f.v[j - 1]) / dr2;
        const double first = (f.v[j + 1] - f.v[j - 1]) / (2.0 * g.dr());
        out.v[j] = second + (N - 1) / g.r()[j] * first;
    }
    out.v[n] = 0.0;  // Dirichlet node
    return out;
}

Field radial_derivative(const Field& f) {
    const auto& g = *f.grid;
    const int n = g.nodes();
    Field out = Field::zeros(f.grid);
    out.v[0] = 0.0;  // even extension at the origin
    for (int j = 1; j < n; ++j) out.v[j] = (f.v[j + 1] - f.v[j - 1]) / (2.0 * g.dr());
    out.v[n] = (f.v[n] - f.v[n - 1]) / g.dr();
    return out;
}

double integrate(const Field& f) {
    const auto w = f.grid->w();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.v.size(); ++j) acc += w[j] * f.v[j];
    return acc;
}

double inner_w(const Field& a, const Field& b) {
    if (a.grid != b.grid) throw std::invalid_argument("inner_w: fields on different grids");
    const auto w = a.grid->w();
    double acc = 0.0;
    for (std::size_t j = 0; j < a.v.size(); ++j) acc += w[j] * a.v[j] * b.v[j];
    return acc;
}

double norm_L2(const Field& f) {
    const auto w = f.grid->w();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.v.size(); ++j) acc += w[j] * f.v[j] * f.v[j];
    return std::sqrt(acc);
}

double norm_Lcrit(const Field& f) {
    const int N = f.grid->dimension();
    const double p = 2.0 * N / (N - 2.0);
    const auto w = f.grid->w();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.v.size(); ++j)
        acc += w[j] * std::pow(std::abs(f.v[j]), p);
    return std::pow(acc, 1.0 / p);
}

double grad_sq(const Field& f) {
    const auto& g = *f.grid;
    const auto wm = g.w_mid();
    const double dr = g.dr();
    double acc = 0.0;
    for (int j = 0; j < g.nodes(); ++j) {
        const double slope = (f.v[j + 1] - f.v[j]) / dr;
        acc += wm[j] * slope * slope;
    }
    return acc;
}

double norm_H1(const Field& f) {
    return std::sqrt(grad_sq(f) + norm_L2(f) * norm_L2(f));
}

double e_norm_sq(const Field& f, double v0) {
    const double l2 = norm_L2(f);
    return grad_sq(f) + v0 * l2 * l2;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

GridPtr refine(const RadialGrid& grid, int factor) {
    if (factor < 1) throw std::invalid_argument("refine: factor must be >= 1");
    return make_grid(grid.dimension(), grid.radius(), grid.nodes() * factor);
}

Field interpolate(const Field& f, GridPtr target) {
    if (target->dimension() != f.grid->dimension())
        throw std::invalid_argument("interpolate: dimension mismatch");
    const auto& src = *f.grid;
    Field out = Field::zeros(std::move(target));
    const auto r = out.grid->r();
    for (int j = 0; j <= out.grid->nodes(); ++j) {
        const double x = std::min(r[j], src.radius());
        const double pos = x / src.dr();
        const int i = std::min(static_cast<int>(pos), src.nodes() - 1);
        const double frac = pos - i;
        out.v[j] = (1.0 - frac) * f.v[i] + frac * f.v[i + 1];
    }
    out.enforce_invariants();
    return out;
}

}  // namespace gqs
