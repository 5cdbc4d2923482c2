#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gqs {

// Uniform radial grid on the ball B_R in R^N. Nodes r_j = j dr, j = 0..n;
// node weights w_j = sigma_{N-1} r_j^{N-1} dr (trapezoid-corrected at the
// outer end, zero at the origin where r^{N-1} vanishes). Midpoint weights
// drive the staggered gradient quadrature. Immutable after construction.
class RadialGrid {
public:
    RadialGrid(int dimension, double radius, int nodes);

    int dimension() const { return dimension_; }
    double radius() const { return radius_; }
    int nodes() const { return nodes_; }  // index range 0..nodes
    double dr() const { return dr_; }
    double ball_volume() const { return ball_volume_; }
    std::span<const double> r() const { return r_; }
    std::span<const double> w() const { return w_; }
    std::span<const double> r_mid() const { return r_mid_; }
    std::span<const double> w_mid() const { return w_mid_; }

private:
    int dimension_;
    double radius_;
    int nodes_;
    double dr_;
    double ball_volume_;
    std::vector<double> r_, w_, r_mid_, w_mid_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dimension, double radius, int nodes);

enum class BoundaryTag { DirichletAtR };

// A radially symmetric function sampled at the nodes. The Dirichlet tag pins
// v[n] = 0; construction enforces it and finiteness.
struct Field {
    GridPtr grid;
    std::vector<double> v;
    BoundaryTag bc = BoundaryTag::DirichletAtR;

    static Field zeros(GridPtr grid);
    static Field from_function(GridPtr grid, const std::function<double(double)>& f);
    void enforce_invariants();  // throws on non-finite values; clamps v[n] = 0

    double operator()(int j) const { return v[j]; }
    int nodes() const { return grid->nodes(); }
};

// -Delta v = -(v'' + (N-1)/r v') by nodal central differences; the origin uses
// the symmetry closure Delta v(0) = 2N (v_1 - v_0)/dr^2. Returns +Delta v.
Field laplacian_apply(const Field& v);

// Central-difference radial derivative at nodes (zero at the origin by
// symmetry, one-sided at the boundary).
Field radial_derivative(const Field& v);

double integrate(const Field& v);
double inner_w(const Field& a, const Field& b);  // weighted L2 pairing

double norm_L2(const Field& v);
double norm_Lcrit(const Field& v);  // L^{2*} with 2* = 2N/(N-2)
double norm_H1(const Field& v);
// Staggered-gradient kinetic quadrature: int |grad v|^2 via midpoint slopes.
double grad_sq(const Field& v);
double e_norm_sq(const Field& v, double v0);  // ||v||_E^2 = int |grad v|^2 + V0 v^2
double max_abs(const Field& v);

GridPtr refine(const RadialGrid& grid, int factor);
Field interpolate(const Field& v, GridPtr target);  // linear; same dimension required

}  // namespace gqs
