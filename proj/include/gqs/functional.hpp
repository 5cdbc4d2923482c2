#pragma once

#include <span>
#include <vector>

#include "gqs/grid.hpp"
#include "gqs/model.hpp"

namespace gqs {

struct EnergyBreakdown {
    double kinetic = 0.0;    // 1/2 int |grad v|^2
    double potential = 0.0;  // 1/2 int V v^2
    double h_part = 0.0;     // int H(x, v)
    double critical = 0.0;   // (1/2*) int |v|^{2*}
    double total = 0.0;      // kinetic + potential - h_part - critical
};

// I(v) = 1/2 ||v||^2 - int H(x,v) - (1/2*) int |v|^{2*}, all terms by the
// grid quadrature; the kinetic part uses the staggered gradient so that the
// fibering map t -> I(tv) matches the closed t-scaling identically.
EnergyBreakdown energy(const Model& model, const Field& v);

// The untransformed functional J(u) = 1/2 int g^2(u)|grad u|^2 + 1/2 int V u^2
// - int F(u) - (1/2*) int |G(u)|^{2*}. Diagnostic only: J(u) = I(G(u)) in the
// continuum; on bounded discrete fields it is evaluated directly.
double energy_original(const Model& model, const Field& u);

// Exact partial derivatives dI/dv_j of the discrete energy, j = 0..n-1
// (node n is pinned by the Dirichlet condition).
std::vector<double> nodal_gradient(const Model& model, const Field& v);

// <I'(v), phi> through the exact discrete derivative.
double pair_modified(const Model& model, const Field& v, const Field& phi);

// Weak pairing of the original formulation: for psi smooth,
// <J'(u), psi> = int [g^2(u) grad u grad psi + g g' |grad u|^2 psi
//                + V u psi - f(u) psi - g |G|^{2*-2} G psi].
// Quadrature choices are independent of pair_modified; the equivalence under
// psi = phi / g(u) is a measured identity, not a shared code path.
double pair_original(const Model& model, const Field& u, const Field& psi);

// Riesz representative of I'(v) in the weighted-L2 pairing: the strong
// residual -Delta v + V G^{-1}(v)/g(G^{-1}(v)) - f/g - |v|^{2*-2} v in
// divergence form; the origin node carries the symmetry-closure value.
Field gradient(const Model& model, const Field& v);

// Localized Gaussian bumps standing in for C_0^infty test functions:
// centers {0, R/8, ..., R/2} x widths {R/64, R/16}.
std::vector<Field> default_test_bank(GridPtr grid);

double weak_residual_modified(const Model& model, const Field& v,
                              std::span<const Field> bank);
double weak_residual_original(const Model& model, const Field& u,
                              std::span<const Field> bank);

double norm_E(const Model& model, const Field& v);
double e_inner(const Model& model, const Field& a, const Field& b);

// Best Sobolev constant: Rayleigh quotients of cutoff instantons at several
// epsilon, Richardson-extrapolated in the mesh and then in epsilon at the
// rate epsilon^{(N-2)/2} from the gradient estimate.
double sobolev_constant(int dimension, const RadialGrid& base_grid);
double sobolev_constant(int dimension);  // default grid R = 40, n = 4096

}  // namespace gqs
