#include "gqs/functional.hpp"

#include <cmath>

#include "gqs/critical.hpp"
#include "gqs/numerics.hpp"

namespace gqs {

namespace {

inline double odd_power(double v, double p_minus_1) {
    // sign(v) |v|^{p-1}: avoids complex powers for negative v
    if (v == 0.0) return 0.0;
    const double mag = std::pow(std::abs(v), p_minus_1);
    return v > 0 ? mag : -mag;
}

}  // namespace

EnergyBreakdown energy(const Model& model, const Field& v) {
    const double v0 = model.V0();
    const auto w = v.grid->w();
    const double p = model.two_star();
    EnergyBreakdown e;
    e.kinetic = 0.5 * grad_sq(v);
    double pot = 0.0, hpart = 0.0, crit = 0.0;
    for (std::size_t j = 0; j < v.v.size(); ++j) {
        if (w[j] == 0.0) continue;
        pot += w[j] * v.v[j] * v.v[j];
        hpart += w[j] * model.H(v0, v.v[j]);
        crit += w[j] * std::pow(std::abs(v.v[j]), p);
    }
    e.potential = 0.5 * v0 * pot;
    e.h_part = hpart;
    e.critical = crit / p;
    e.total = e.kinetic + e.potential - e.h_part - e.critical;
    return e;
}

double energy_original(const Model& model, const Field& u) {
    const auto& g = *u.grid;
    const auto w = g.w();
    const auto wm = g.w_mid();
    const double dr = g.dr();
    const double v0 = model.V0();
    const double p = model.two_star();
    const Transform& tr = model.transform();
    double kin = 0.0;
    for (int j = 0; j < g.nodes(); ++j) {
        const double slope = (u.v[j + 1] - u.v[j]) / dr;
        const double gm = tr.g(0.5 * (u.v[j] + u.v[j + 1]));
        kin += wm[j] * gm * gm * slope * slope;
    }
    double rest = 0.0;
    for (std::size_t j = 0; j < u.v.size(); ++j) {
        if (w[j] == 0.0) continue;
        const double Gu = tr.G(u.v[j]);
        rest += w[j] * (0.5 * v0 * u.v[j] * u.v[j] - model.F(u.v[j]) -
                        std::pow(std::abs(Gu), p) / p);
    }
    return 0.5 * kin + rest;
}

std::vector<double> nodal_gradient(const Model& model, const Field& v) {
    const auto& g = *v.grid;
    const int n = g.nodes();
    const auto w = g.w();
    const auto wm = g.w_mid();
    const double dr = g.dr();
    const double v0 = model.V0();
    const double p = model.two_star();
    std::vector<double> b(n, 0.0);
    // kinetic part: d/dv_k of 1/2 sum_j wm_j ((v_{j+1}-v_j)/dr)^2
    std::vector<double> flux(n);
    for (int j = 0; j < n; ++j) flux[j] = wm[j] * (v.v[j + 1] - v.v[j]) / dr;
    b[0] = -flux[0] / dr;
    for (int k = 1; k < n; ++k) b[k] = (flux[k - 1] - flux[k]) / dr;
    // local terms
    for (int k = 0; k < n; ++k) {
        if (w[k] == 0.0) continue;
        b[k] += w[k] * (v0 * v.v[k] - model.h(v0, v.v[k]) - odd_power(v.v[k], p - 1.0));
    }
    return b;
}

double pair_modified(const Model& model, const Field& v, const Field& phi) {
    if (v.grid != phi.grid) throw std::invalid_argument("pair_modified: grids differ");
    const auto b = nodal_gradient(model, v);
    double acc = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) acc += b[k] * phi.v[k];
    return acc;
}

double pair_original(const Model& model, const Field& u, const Field& psi) {
    if (u.grid != psi.grid) throw std::invalid_argument("pair_original: grids differ");
    const auto& g = *u.grid;
    const auto w = g.w();
    const auto wm = g.w_mid();
    const double dr = g.dr();
    const double v0 = model.V0();
    const double p = model.two_star();
    const Transform& tr = model.transform();
    const int n = g.nodes();

    double kin = 0.0;
    std::vector<double> slope_sq(n);
    for (int j = 0; j < n; ++j) {
        const double du = (u.v[j + 1] - u.v[j]) / dr;
        const double dpsi = (psi.v[j + 1] - psi.v[j]) / dr;
        const double gm = tr.g(0.5 * (u.v[j] + u.v[j + 1]));
        kin += wm[j] * gm * gm * du * dpsi;
        slope_sq[j] = du * du;
    }
    double rest = 0.0;
    for (int j = 0; j <= n; ++j) {
        if (w[j] == 0.0) continue;
        double grad2;  // |grad u|^2 at the node from adjacent midpoint slopes
        if (j == 0)
            grad2 = slope_sq[0];
        else if (j == n)
            grad2 = slope_sq[n - 1];
        else
            grad2 = 0.5 * (slope_sq[j - 1] + slope_sq[j]);
        const double uj = u.v[j];
        const double Gu = tr.G(uj);
        const double crit = tr.g(uj) * odd_power(Gu, p - 1.0);
        rest += w[j] * (tr.g(uj) * tr.g_prime(uj) * grad2 + v0 * uj - model.f(uj) - crit) *
                psi.v[j];
    }
    return kin + rest;
}

Field gradient(const Model& model, const Field& v) {
    const auto& g = *v.grid;
    const int n = g.nodes();
    const auto w = g.w();
    const auto b = nodal_gradient(model, v);
    Field out = Field::zeros(v.grid);
    const double v0 = model.V0();
    const double p = model.two_star();
    const Transform& tr = model.transform();
    for (int k = 1; k < n; ++k) out.v[k] = b[k] / w[k];
    // origin: strong form with the symmetry closure of the Laplacian
    {
        const double lap0 = 2.0 * g.dimension() * (v.v[1] - v.v[0]) / (g.dr() * g.dr());
        const double u0 = tr.G_inverse(v.v[0]);
        out.v[0] = -lap0 + v0 * u0 / tr.g(u0) - model.f(u0) / tr.g(u0) -
                   odd_power(v.v[0], p - 1.0);
    }
    out.v[n] = 0.0;
    return out;
}

std::vector<Field> default_test_bank(GridPtr grid) {
    const double R = grid->radius();
    std::vector<Field> bank;
    for (int c = 0; c <= 4; ++c) {
        const double center = c * R / 8.0;
        for (double width : {R / 64.0, R / 16.0}) {
            bank.push_back(Field::from_function(grid, [=](double r) {
                const double z = (r - center) / width;
                return std::exp(-0.5 * z * z);
            }));
        }
    }
    return bank;
}

double weak_residual_modified(const Model& model, const Field& v,
                              std::span<const Field> bank) {
    double worst = 0.0;
    for (const auto& phi : bank) {
        const double nrm = norm_E(model, phi);
        worst = std::max(worst, std::abs(pair_modified(model, v, phi)) / nrm);
    }
    return worst;
}

double weak_residual_original(const Model& model, const Field& u,
                              std::span<const Field> bank) {
    const Transform& tr = model.transform();
    double worst = 0.0;
    for (const auto& phi : bank) {
        Field psi = phi;  // psi = phi / g(u) maps Eq.(4) test functions to Eq.(3)
        for (std::size_t j = 0; j < psi.v.size(); ++j) psi.v[j] = phi.v[j] / tr.g(u.v[j]);
        const double nrm = norm_E(model, phi);
        worst = std::max(worst, std::abs(pair_original(model, u, psi)) / nrm);
    }
    return worst;
}

double norm_E(const Model& model, const Field& v) {
    return std::sqrt(e_norm_sq(v, model.V0()));
}

double e_inner(const Model& model, const Field& a, const Field& b) {
    if (a.grid != b.grid) throw std::invalid_argument("e_inner: grids differ");
    const auto& g = *a.grid;
    const auto wm = g.w_mid();
    const auto w = g.w();
    const double dr = g.dr();
    const double v0 = model.V0();
    double acc = 0.0;
    for (int j = 0; j < g.nodes(); ++j)
        acc += wm[j] * (a.v[j + 1] - a.v[j]) * (b.v[j + 1] - b.v[j]) / (dr * dr);
    for (std::size_t j = 0; j < a.v.size(); ++j) acc += w[j] * v0 * a.v[j] * b.v[j];
    return acc;
}

double sobolev_constant(int dimension, const RadialGrid& base_grid) {
    const double rho = base_grid.radius() / 2.0;
    const std::vector<double> eps_list = {0.04, 0.02, 0.01};
    std::vector<double> quotients, rates;
    for (double eps : eps_list) {
        double q[2];
        for (int lvl = 0; lvl < 2; ++lvl) {
            GridPtr grid = make_grid(dimension, base_grid.radius(),
                                     base_grid.nodes() << lvl);
            const Field v = test_function({eps, rho, dimension}, grid);
            q[lvl] = grad_sq(v);
        }
        quotients.push_back((4.0 * q[1] - q[0]) / 3.0);  // second-order mesh limit
        rates.push_back(std::pow(eps, (dimension - 2) / 2.0));
    }
    return fit_line(rates, quotients).intercept;
}

double sobolev_constant(int dimension) {
    const RadialGrid base(dimension, 40.0, 4096);
    return sobolev_constant(dimension, base);
}

}  // namespace gqs
