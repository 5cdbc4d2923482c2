#include "gqs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gqs/numerics.hpp"

namespace gqs {

bool PalaisSmaleMonitor::record(double v_norm, double c_est) {
    max_norm_ = std::max(max_norm_, v_norm);
    if (v_norm > cap(c_est)) violated_ = true;
    return !violated_;
}

double PalaisSmaleMonitor::cap(double c_est) const {
    return std::sqrt(dimension_ * (std::max(c_est, 0.0) + 1.0)) * (1.0 + margin_);
}

ConcentrationDiagnostic concentration_diagnostic(const Field& v, double r) {
    const auto& g = *v.grid;
    if (!(r > 0.0 && r < g.radius() / 2.0))
        throw std::invalid_argument("concentration_diagnostic: need 0 < r < R/2");
    const auto rr = g.r();
    const auto w = g.w();
    const double l2sq = norm_L2(v) * norm_L2(v);

    ConcentrationDiagnostic diag;
    diag.radius = r;
    // candidate regions: origin ball |x| <= r and annuli |rho_c - r| <= |x| <=
    // rho_c + r on a shell grid (the radial surrogate for balls B_r(y))
    const int shells = 16;
    for (int c = 0; c <= shells; ++c) {
        const double center = c * (g.radius() - r) / shells;
        const double lo = std::max(0.0, center - r);
        const double hi = center + r;
        double mass = 0.0;
        for (int j = 0; j <= g.nodes(); ++j)
            if (rr[j] >= lo && rr[j] <= hi) mass += w[j] * v.v[j] * v.v[j];
        if (mass > diag.mass) {
            diag.mass = mass;
            diag.location = center;
        }
    }
    diag.mass_fraction = (l2sq > 0.0) ? diag.mass / l2sq : 0.0;
    diag.vanishing = diag.mass <= 1e-6 * l2sq;
    return diag;
}

Field back_transform(const Transform& transform, const Field& v) {
    Field u = v;
    for (auto& x : u.v) x = transform.G_inverse(x);
    u.enforce_invariants();
    return u;
}

namespace {

Field normalized_clamped(const Model& model, Field w, bool clamp) {
    if (clamp)
        for (auto& x : w.v) x = std::max(x, 0.0);
    w.v.back() = 0.0;
    const double nrm = norm_E(model, w);
    if (!(nrm > 1e-14))
        throw NumericError("solver: iterate collapsed to zero after clamping", nrm);
    for (auto& x : w.v) x /= nrm;
    return w;
}

}  // namespace

SolveReport minimize_ground_state(const Model& model, const SolveConfig& config) {
    SolveReport report;

    // pre-flight assumption checks
    const auto samples = logspace(1e-6, 1e6, 4);
    report.g_report = check_g_assumptions(model.transform(), samples);
    report.growth_report = check_growth_conditions(model, samples, {});
    if (!report.g_report.overall())
        throw std::invalid_argument("minimize_ground_state: assumption (g) checks failed");
    for (const auto& e : report.growth_report.entries) {
        if (e.pass) continue;
        if (e.name.find("(4)") != std::string::npos) {
            report.growth_warning = true;  // (f4) failure: warn and proceed
        } else {
            throw std::invalid_argument("minimize_ground_state: growth checks failed: " +
                                        e.name);
        }
    }

    GridPtr grid = make_grid(model.dimension(), config.radius, config.nodes);
    const double width = (config.guess_width > 0.0) ? config.guess_width : config.radius / 10.0;
    Field w = Field::from_function(grid, [&](double r) {
        const double z = (r - config.guess_center) / width;
        return std::exp(-0.5 * z * z);
    });
    w = normalized_clamped(model, std::move(w), true);

    const RieszSolver riesz(grid, model.V0());
    PalaisSmaleMonitor monitor(model.dimension(), config.ps_margin);

    auto fib = project_nehari(model, w);
    double psi_val = fib.value;
    double c_best = psi_val;

    Field w_prev = w;
    Field gpsi_prev = Field::zeros(grid);
    bool have_prev = false;
    double alpha = config.fixed_step;
    bool converged = false;
    int iter = 0;
    int vanishing_strikes = 0;

    for (; iter < config.max_iters; ++iter) {
        Field v = w;
        for (auto& x : v.v) x *= fib.t_star;

        c_best = std::min(c_best, psi_val);
        if (!monitor.record(fib.t_star, c_best)) break;

        // tangential Psi-gradient in the E metric
        const auto b = nodal_gradient(model, v);
        Field gam = riesz.solve(b);
        const double radial = e_inner(model, gam, w);
        Field gpsi = gam;
        for (std::size_t j = 0; j < gpsi.v.size(); ++j)
            gpsi.v[j] = fib.t_star * (gam.v[j] - radial * w.v[j]);
        const double gnorm = std::sqrt(e_inner(model, gpsi, gpsi));
        report.grad_norm = gnorm;
        if (gnorm <= config.grad_tol) {
            converged = true;
            break;
        }

        // step size
        if (config.step_rule == StepRule::BarzilaiBorwein && have_prev) {
            double ss = 0.0, sy = 0.0;
            Field s = w, y = gpsi;
            for (std::size_t j = 0; j < s.v.size(); ++j) {
                s.v[j] -= w_prev.v[j];
                y.v[j] -= gpsi_prev.v[j];
            }
            ss = e_inner(model, s, s);
            sy = e_inner(model, s, y);
            if (sy > 0.0) alpha = std::clamp(ss / sy, 1e-8, 1e3);
        } else if (config.step_rule == StepRule::Fixed) {
            alpha = config.fixed_step;
        } else if (!have_prev) {
            alpha = std::min(config.fixed_step, 1.0 / std::max(gnorm, 1e-12));
        }

        // Armijo backtracking on Psi (monotone descent by construction)
        double a = alpha;
        bool accepted = false;
        Field w_new = w;
        FiberingResult fib_new = fib;
        double psi_new = psi_val;
        for (int bt = 0; bt < 40; ++bt) {
            Field trial = w;
            for (std::size_t j = 0; j < trial.v.size(); ++j)
                trial.v[j] = w.v[j] - a * gpsi.v[j];
            try {
                trial = normalized_clamped(model, std::move(trial), config.positivity_clamp);
                fib_new = project_nehari(model, trial, fib.t_star);
            } catch (const NumericError&) {
                a *= 0.5;
                continue;
            }
            psi_new = fib_new.value;
            if (config.step_rule == StepRule::Fixed ||
                psi_new <= psi_val - 1e-4 * a * gnorm * gnorm) {
                w_new = std::move(trial);
                accepted = true;
                break;
            }
            a *= 0.5;
        }
        if (!accepted) break;  // stagnated below backtracking resolution

        w_prev = std::move(w);
        gpsi_prev = std::move(gpsi);
        have_prev = true;
        w = std::move(w_new);
        fib = fib_new;
        psi_val = psi_new;

        if (iter % 25 == 0) {
            Field vk = w;
            for (auto& x : vk.v) x *= fib.t_star;
            const auto diag = concentration_diagnostic(vk, grid->radius() / 4.0);
            vanishing_strikes = diag.vanishing ? vanishing_strikes + 1 : 0;
        }
    }

    report.converged = converged;
    report.iterations = iter;
    report.ps_max_norm = monitor.max_norm();
    report.ps_violation = monitor.violated();
    report.vanishing_trend = vanishing_strikes >= 3;
    if (report.ps_violation)
        throw NumericError("minimize_ground_state: Palais-Smale norm cap violated",
                           monitor.max_norm());

    Field v_star = w;
    for (auto& x : v_star.v) x *= fib.t_star;
    report.v_star = v_star;
    report.u_star = back_transform(model.transform(), v_star);
    report.energy = energy(model, v_star);
    report.level_c = psi_val;
    report.nehari_res = nehari_residual(model, v_star);
    const auto bank = default_test_bank(grid);
    report.weak_res_modified = weak_residual_modified(model, v_star, bank);
    report.weak_res_original = weak_residual_original(model, report.u_star, bank);
    report.concentration = concentration_diagnostic(v_star, grid->radius() / 4.0);
    report.sobolev_S = sobolev_constant(model.dimension());
    report.level_threshold =
        std::pow(report.sobolev_S, model.dimension() / 2.0) / model.dimension();
    report.certificate = level_certificate(report, model);
    return report;
}

LevelCertificate level_certificate(const SolveReport& report, const Model& model) {
    LevelCertificate cert;
    const double norm_sq = e_norm_sq(report.v_star, model.V0());
    const double c = report.level_c;
    const double res = std::abs(nehari_residual(model, report.v_star));
    if (res > 1e-6 * std::max(1.0, norm_sq)) {
        cert.applicable = false;
        cert.reason = "input is not on the Nehari manifold";
        cert.pass = false;
        return cert;
    }
    std::ostringstream dom;
    dom << "converged level c = " << c;
    auto add = [&](const std::string& name, double violation, bool pass) {
        cert.checks.push_back({name, dom.str(), violation, pass});
    };
    add("c > 0", std::max(0.0, -c), c > 0.0);
    add("||v||^2 >= 2c", std::max(0.0, 2.0 * c - norm_sq),
        norm_sq >= 2.0 * c - 1e-9 * std::max(1.0, norm_sq));
    add("c < (1/N) S^{N/2}", std::max(0.0, c - report.level_threshold),
        c < report.level_threshold);
    add("nehari residual small", res, true);  // gated above
    cert.pass = true;
    for (const auto& e : cert.checks) cert.pass = cert.pass && e.pass;
    return cert;
}

}  // namespace gqs
