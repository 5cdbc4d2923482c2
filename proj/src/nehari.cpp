#include "gqs/nehari.hpp"

#include <cmath>

namespace gqs {

namespace {

struct RayData {
    double norm_sq = 0.0;   // ||v||_E^2
    double crit = 0.0;      // int |v|^{2*}
};

RayData ray_data(const Model& model, const Field& v) {
    RayData d;
    d.norm_sq = e_norm_sq(v, model.V0());
    const auto w = v.grid->w();
    const double p = model.two_star();
    for (std::size_t j = 0; j < v.v.size(); ++j)
        if (w[j] != 0.0) d.crit += w[j] * std::pow(std::abs(v.v[j]), p);
    return d;
}

double h_pairing(const Model& model, const Field& v, double t) {
    // int h(x, t v) v dx
    const auto w = v.grid->w();
    const double v0 = model.V0();
    double acc = 0.0;
    for (std::size_t j = 0; j < v.v.size(); ++j)
        if (w[j] != 0.0 && v.v[j] != 0.0) acc += w[j] * model.h(v0, t * v.v[j]) * v.v[j];
    return acc;
}

double H_sum(const Model& model, const Field& v, double t) {
    const auto w = v.grid->w();
    const double v0 = model.V0();
    double acc = 0.0;
    for (std::size_t j = 0; j < v.v.size(); ++j)
        if (w[j] != 0.0 && v.v[j] != 0.0) acc += w[j] * model.H(v0, t * v.v[j]);
    return acc;
}

}  // namespace

double fibering_map(const Model& model, const Field& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("fibering_map: t must be positive");
    const RayData d = ray_data(model, v);
    const double p = model.two_star();
    return 0.5 * t * t * d.norm_sq - H_sum(model, v, t) - std::pow(t, p) / p * d.crit;
}

double fibering_derivative(const Model& model, const Field& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("fibering_derivative: t must be positive");
    const RayData d = ray_data(model, v);
    const double p = model.two_star();
    return t * d.norm_sq - h_pairing(model, v, t) - std::pow(t, p - 1.0) * d.crit;
}

FiberingResult project_nehari(const Model& model, const Field& v, double t_hint) {
    const RayData d = ray_data(model, v);
    if (!(d.norm_sq > 0.0)) throw std::invalid_argument("project_nehari: v must be nonzero");
    const double p = model.two_star();
    auto mprime = [&](double t) {
        return t * d.norm_sq - h_pairing(model, v, t) - std::pow(t, p - 1.0) * d.crit;
    };

    double lo = (t_hint > 0.0) ? t_hint : 1e-6;
    double hi = lo;
    int iters = 0;
    if (mprime(lo) > 0.0) {
        while (mprime(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++iters > 80)
                throw NumericError("project_nehari: no sign change up to t = 1e12", hi);
        }
    } else {
        while (mprime(lo) <= 0.0) {
            hi = lo;
            lo *= 0.5;
            if (++iters > 80)
                throw NumericError("project_nehari: M' <= 0 down to t = 0+", lo);
        }
    }
    const auto root = brent_root(mprime, lo, hi, 1e-15);
    FiberingResult out;
    out.t_star = root.root;
    out.value = fibering_map(model, v, out.t_star);
    out.derivative_residual = std::abs(mprime(out.t_star));
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.iterations = iters + root.iterations;
    if (out.derivative_residual > 1e-10 * std::max(1.0, d.norm_sq))
        throw NumericError("project_nehari: derivative residual above tolerance",
                           out.derivative_residual);
    return out;
}

int fibering_sign_changes(const Model& model, const Field& v, double t_lo, double t_hi,
                          int points_per_decade) {
    const auto ts = logspace(t_lo, t_hi, points_per_decade);
    int changes = 0;
    double prev = fibering_derivative(model, v, ts.front());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double cur = fibering_derivative(model, v, ts[i]);
        if ((prev > 0.0) != (cur > 0.0)) ++changes;
        prev = cur;
    }
    return changes;
}

Field m_map(const Model& model, const Field& w) {
    const double nrm = norm_E(model, w);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("m_map: w must lie on the unit sphere of E");
    const auto fib = project_nehari(model, w);
    Field out = w;
    for (auto& x : out.v) x *= fib.t_star;
    return out;
}

double psi(const Model& model, const Field& w) {
    const double nrm = norm_E(model, w);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("psi: w must lie on the unit sphere of E");
    return project_nehari(model, w).value;
}

Field psi_gradient_tangential(const Model& model, const Field& w) {
    const double nrm = norm_E(model, w);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("psi_gradient_tangential: w must be on the unit sphere");
    const auto fib = project_nehari(model, w);
    Field v = w;
    for (auto& x : v.v) x *= fib.t_star;
    const auto b = nodal_gradient(model, v);
    const RieszSolver riesz(w.grid, model.V0());
    Field gam = riesz.solve(b);
    const double radial = e_inner(model, gam, w);  // = <I'(v), w> by the Riesz identity
    for (std::size_t j = 0; j < gam.v.size(); ++j)
        gam.v[j] = fib.t_star * (gam.v[j] - radial * w.v[j]);
    return gam;
}

double nehari_residual(const Model& model, const Field& v) {
    const RayData d = ray_data(model, v);
    if (!(d.norm_sq > 0.0)) throw std::invalid_argument("nehari_residual: v must be nonzero");
    return d.norm_sq - h_pairing(model, v, 1.0) - d.crit;
}

RieszSolver::RieszSolver(GridPtr grid, double v0) : grid_(std::move(grid)) {
    const auto& g = *grid_;
    const int n = g.nodes();
    const auto w = g.w();
    const auto wm = g.w_mid();
    const double dr2 = g.dr() * g.dr();
    std::vector<double> diag(n), off(n - 1);
    for (int k = 0; k < n; ++k) {
        const double wl = (k > 0) ? wm[k - 1] : 0.0;
        diag[k] = (wl + wm[k]) / dr2 + w[k] * v0;
        if (k < n - 1) off[k] = -wm[k] / dr2;
    }
    matrix_ = Tridiag(std::move(diag), std::move(off));
}

Field RieszSolver::solve(std::span<const double> rhs) const {
    if (rhs.size() != static_cast<std::size_t>(grid_->nodes()))
        throw std::invalid_argument("RieszSolver: rhs size must equal the DOF count");
    const auto x = matrix_.solve(rhs);
    Field out = Field::zeros(grid_);
    for (std::size_t j = 0; j < x.size(); ++j) out.v[j] = x[j];
    out.v[grid_->nodes()] = 0.0;
    return out;
}

}  // namespace gqs
