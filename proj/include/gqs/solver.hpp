#pragma once

#include <optional>
#include <string>

#include "gqs/functional.hpp"
#include "gqs/nehari.hpp"
#include "gqs/property_report.hpp"

namespace gqs {

enum class StepRule { Fixed, Backtracking, BarzilaiBorwein };

struct SolveConfig {
    double radius = 40.0;
    int nodes = 4096;
    double guess_center = 0.0;
    double guess_width = 0.0;  // 0 selects the default R/10
    StepRule step_rule = StepRule::BarzilaiBorwein;
    double fixed_step = 0.5;
    double grad_tol = 1e-6;   // tangential gradient E-norm
    int max_iters = 10000;
    bool positivity_clamp = true;
    double ps_margin = 10.0;  // Palais-Smale cap margin
};

// Trajectory-norm cap from the boundedness lemma: any Palais-Smale-like
// descent trajectory must satisfy ||v_k|| <= sqrt(N (c_est + 1)) (1 + margin).
class PalaisSmaleMonitor {
public:
    PalaisSmaleMonitor(int dimension, double margin = 10.0)
        : dimension_(dimension), margin_(margin) {}
    // Returns false (and latches the violation) when the cap is exceeded.
    bool record(double v_norm, double c_est);
    double cap(double c_est) const;
    double max_norm() const { return max_norm_; }
    bool violated() const { return violated_; }

private:
    int dimension_;
    double margin_;
    double max_norm_ = 0.0;
    bool violated_ = false;
};

struct ConcentrationDiagnostic {
    double radius = 0.0;         // probe radius r
    double mass = 0.0;           // best int_{region} |v|^2
    double mass_fraction = 0.0;  // mass / ||v||_2^2
    double location = 0.0;       // 0 for the origin ball, shell center otherwise
    bool vanishing = false;      // diagnostic below 1e-6 ||v||_2^2
};

struct LevelCertificate {
    bool applicable = true;  // false when the input is not on the manifold
    std::string reason;
    std::vector<PropertyCheck> checks;
    bool pass = false;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
    Field v_star;
    Field u_star;
    double level_c = 0.0;
    EnergyBreakdown energy;
    double nehari_res = 0.0;
    double weak_res_modified = 0.0;
    double weak_res_original = 0.0;
    ConcentrationDiagnostic concentration;
    bool vanishing_trend = false;
    double ps_max_norm = 0.0;
    bool ps_violation = false;
    double sobolev_S = 0.0;
    double level_threshold = 0.0;  // (1/N) S^{N/2}
    PropertyReport g_report;
    PropertyReport growth_report;
    bool growth_warning = false;  // (f4) failed; solve proceeded
    LevelCertificate certificate;
};

// Minimizes Psi = I o m over the unit sphere of E by projected descent
// w <- normalize(clamp_+(w - alpha grad Psi)), with Armijo backtracking and
// optional Barzilai-Borwein steps. Assumption checks run first: failures of
// (g)/(V)/(f1)-(f3) abort, an (f4) failure warns and proceeds.
SolveReport minimize_ground_state(const Model& model, const SolveConfig& config);

// Largest |v|^2 mass among the origin ball of radius r and width-2r annuli
// centered on a shell grid; flags the vanishing alternative.
ConcentrationDiagnostic concentration_diagnostic(const Field& v, double r);

// u = G^{-1}(v) nodewise.
Field back_transform(const Transform& transform, const Field& v);

// Level checks on a converged report: c > 0, ||v||^2 >= 2c, c below the
// critical threshold, manifold residual small.
LevelCertificate level_certificate(const SolveReport& report, const Model& model);

}  // namespace gqs
