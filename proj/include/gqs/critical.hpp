#pragma once

#include <span>
#include <vector>

#include "gqs/grid.hpp"
#include "gqs/model.hpp"

namespace gqs {

struct InstantonParams {
    double eps = 0.1;
    double cutoff_radius = 1.0;  // rho, with B_rho inside Omega
    int dimension = 3;
};

// Aubin-Talenti extremal omega_eps(r) = (N(N-2)eps)^{(N-2)/4} / (eps+r^2)^{(N-2)/2}.
Field instanton(const InstantonParams& params, GridPtr grid);

// Quintic bridge: 1 on [0, rho/2], 0 beyond rho, C^2 across the seams.
Field cutoff_profile(GridPtr grid, double rho);

// v_eps = phi omega_eps / ||phi omega_eps||_{2*}; unit critical norm by
// construction.
Field test_function(const InstantonParams& params, GridPtr grid);

struct SweepRow {
    double eps = 0.0;
    double grad_sq = 0.0;       // ||grad v_eps||_2^2
    double l2_sq = 0.0;         // ||v_eps||_2^2
    double u_crit = 0.0;        // int |u_eps|^{2*}
    bool resolved = true;       // eps >= (4 dr)^2
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

struct SweepReport {
    int dimension = 3;
    double cutoff_radius = 1.0;
    double s_ref = 0.0;              // Sobolev constant used for the excess fit
    std::vector<SweepRow> rows;
    int fit_begin = 0;               // first row inside the fit window
    RateFit grad_excess;             // log(grad_sq - S) vs log eps
    RateFit l2_rate;                 // log(l2_sq) vs log eps
    double l2_log_ratio_spread = 0;  // N = 4: spread of l2 / (eps |ln eps|)
    double k_estimate = 0.0;         // limit of int |u_eps|^{2*}
};

// Reproduces the asymptotic estimates: gradient excess at rate (N-2)/2, the
// L2 norm at the dimension-dependent rate, and the constant K. eps_list must
// be decreasing; rows below grid resolution are excluded from fits and
// flagged. Throws NumericError when no swept eps is resolved.
SweepReport eps_sweep(const Model& model, std::span<const double> eps_list, GridPtr grid);

struct LevelBound {
    double eps = 0.0;
    double t_eps = 0.0;            // ray maximizer for v_eps
    double max_value = 0.0;        // max_t I(t v_eps)
    double threshold = 0.0;        // (1/N) S^{N/2}
    double margin = 0.0;           // threshold - max_value
    double h_core_over_eta = 0.0;  // int_{|x|<sqrt(eps)} H(t_eps v_eps) / eta(eps)
    bool resolved = true;
};

// Energy threshold check: maximizes the fibering map over the instanton ray
// for each eps and reports the strict-inequality margin. The paper's
// statement is existential; the sweep passes when the margin is positive at
// the smallest resolved eps.
std::vector<LevelBound> level_bound_check(const Model& model, std::span<const double> eps_list,
                                          GridPtr grid, double s_ref);

struct PhiMax {
    double s_star = 0.0;
    double value = 0.0;
};

// Numerically maximizes Phi(s) = s^2/2 A - s^{2*}/2* B (golden section); the
// closed maximizer s = (A/B)^{1/(2*-2)} is the oracle it is checked against.
PhiMax phi_max_numeric(double grad_sq, double crit_integral, int dimension);

}  // namespace gqs
