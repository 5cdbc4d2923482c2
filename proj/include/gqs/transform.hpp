#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gqs/numerics.hpp"
#include "gqs/property_report.hpp"

namespace gqs {

enum class TransformKind { Identity, SuperfluidFilm, LaserChanneling, Tabulated };

const char* to_string(TransformKind k);

// The change-of-variables engine: g, g', G(t) = int_0^t g, and G^{-1}.
//
// g is even with g(0) = 1 and g' >= 0 on t >= 0, so G is strictly increasing,
// odd and convex on the positive half line; both G and G^{-1} are evaluated on
// |t| and reflected. Kinds without a closed-form G carry an eagerly built
// cumulative table (anchors + one Kronrod panel per query), so instances are
// immutable and safe for concurrent reads.
class Transform {
public:
    static Transform identity();
    static Transform superfluid_film();
    static Transform laser_channeling();
    // g sampled on t >= 0 (first knot must be 0); evaluated by monotone cubic
    // interpolation, clamped beyond the last knot. Assumption checks are
    // mandatory before solving with a tabulated g.
    static Transform tabulated(std::vector<double> t_samples, std::vector<double> g_samples,
                               double quadrature_tol = kDefaultQuadTol);

    TransformKind kind() const { return kind_; }
    double quadrature_tol() const { return quad_tol_; }
    bool has_closed_G() const { return static_cast<bool>(G_closed_); }

    double g(double t) const;
    double g_prime(double t) const;
    double G(double t) const;
    double G_inverse(double s) const;

    // Quadrature route for G, bypassing any closed form (identity checks).
    double G_by_quadrature(double t) const;

private:
    Transform() = default;
    void build_table(double t_max);
    double table_G(double t) const;  // |t| within/beyond table, sign applied by caller

    TransformKind kind_ = TransformKind::Identity;
    std::function<double(double)> g_;
    std::function<double(double)> g_prime_;
    std::function<double(double)> G_closed_;  // null when only quadrature is available
    double quad_tol_ = kDefaultQuadTol;
    std::vector<double> anchor_t_, anchor_G_;  // cumulative table, t >= 0
    MonotoneCubic tab_g_;                      // Tabulated kind only
};

// Executable form of the G/G^{-1} lemma: monotonicity and oddness, G <= g*t,
// |G^{-1}| <= |s|, the two non-increasing ratios and their limits, plus the
// basic assumptions on g itself. Samples must be positive; 0 and the mirrored
// negatives are added internally.
PropertyReport check_g_assumptions(const Transform& spec, std::span<const double> samples);

}  // namespace gqs
