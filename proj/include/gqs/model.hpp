#pragma once

#include <span>
#include <vector>

#include "gqs/property_report.hpp"
#include "gqs/transform.hpp"

namespace gqs {

enum class PotentialKind { Constant, CosinePerturbed };

// V(x) = v0 (+ amplitude * prod_i cos(2 pi x_i)), 1-periodic, positive.
struct Potential {
    PotentialKind kind = PotentialKind::Constant;
    double v0 = 1.0;
    double amplitude = 0.0;  // requires 0 <= amplitude < v0

    double at(std::span<const double> x) const;
    bool constant() const { return kind == PotentialKind::Constant; }
};

enum class NonlinearityKind { Zero, TransformedPower };

// f(x,t) = mu g(t) |G(t)|^{q-2} G(t) for t > 0, 0 for t <= 0.
// Under the change of variables this is the power perturbation mu |v|^{q-2} v.
struct Nonlinearity {
    NonlinearityKind kind = NonlinearityKind::Zero;
    double mu = 0.0;
    double q = 0.0;
};

class Model {
public:
    Model(int dimension, Transform transform, Potential potential, Nonlinearity nonlinearity,
          double omega_radius = 1.0);

    int dimension() const { return dimension_; }
    double two_star() const { return two_star_; }
    const Transform& transform() const { return transform_; }
    const Potential& potential() const { return potential_; }
    const Nonlinearity& nonlinearity() const { return nonlinearity_; }
    double omega_radius() const { return omega_radius_; }

    double V(std::span<const double> x) const { return potential_.at(x); }
    // Constant-potential value; the radial backend requires it.
    double V0() const;

    double f(double t) const;
    double F(double t) const;

    // h and H of the transformed problem, with the potential value supplied by
    // the caller (constant on the radial backend, V(x) on the box backend).
    double h(double v_at_x, double s) const;
    double H(double v_at_x, double s) const;
    double h(std::span<const double> x, double s) const { return h(V(x), s); }
    double H(std::span<const double> x, double s) const { return H(V(x), s); }

private:
    int dimension_;
    double two_star_;
    Transform transform_;
    Potential potential_;
    Nonlinearity nonlinearity_;
    double omega_radius_;
};

// Sampled verification of (f2)-(f4) through Lemma 2.2's properties (1)-(6).
// s_samples must be positive and span several decades; limit statements are
// tested as monotone trends over the ladder. x_samples feed the periodic
// potential; pass {} for the constant case.
PropertyReport check_growth_conditions(const Model& model, std::span<const double> s_samples,
                                       std::span<const std::vector<double>> x_samples);

}  // namespace gqs
