#pragma once

#include "gqs/functional.hpp"
#include "gqs/grid.hpp"
#include "gqs/model.hpp"

namespace gqs {

struct FiberingResult {
    double t_star = 0.0;
    double value = 0.0;                // M(t_star) = I(t_star v)
    double derivative_residual = 0.0;  // |M'(t_star)|
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

// M(t) = I(tv) along the ray through v; exact t-scaling of the quadratic part.
double fibering_map(const Model& model, const Field& v, double t);

// Analytic M'(t) = t ||v||^2 - int h(x, tv) v - t^{2*-1} int |v|^{2*}.
double fibering_derivative(const Model& model, const Field& v, double t);

// Unique positive maximizer of M: bracket by doubling from 1e-6 until M'
// changes sign, then Brent on M'. t_hint warm-starts the bracket.
FiberingResult project_nehari(const Model& model, const Field& v, double t_hint = 0.0);

// Sign changes of M' over a log grid on [t_lo, t_hi]; the uniqueness lemma
// predicts exactly one for admissible v.
int fibering_sign_changes(const Model& model, const Field& v, double t_lo, double t_hi,
                          int points_per_decade);

// m(w) = t_w w for unit-sphere w; ||m(w)||_E = t_w.
Field m_map(const Model& model, const Field& w);

// Psi = I o m and its tangential gradient in the E metric:
// psi_gradient_tangential returns ||m(w)|| P_w Riesz_E I'(m(w)), where P_w is
// the E-orthogonal projection onto {z : <z,w>_E = 0}. Its defining identity
// <grad, z>_E = ||m(w)|| <I'(m(w)), z> holds exactly for tangential z.
double psi(const Model& model, const Field& w);
Field psi_gradient_tangential(const Model& model, const Field& w);

// <I'(v), v> = ||v||^2 - int h(x,v) v - int |v|^{2*}; zero on the manifold.
double nehari_residual(const Model& model, const Field& v);

// E-metric Riesz map (-div grad + V)^{-1} on the grid DOFs; tridiagonal SPD.
class RieszSolver {
public:
    RieszSolver(GridPtr grid, double v0);
    // rhs has one entry per DOF j = 0..n-1; returns a Dirichlet field.
    Field solve(std::span<const double> rhs) const;

private:
    GridPtr grid_;
    Tridiag matrix_;
};

}  // namespace gqs
