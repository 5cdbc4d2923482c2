#include "gqs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gqs {

double Potential::at(std::span<const double> x) const {
    if (kind == PotentialKind::Constant) return v0;
    double prod = 1.0;
    for (double xi : x) prod *= std::cos(2.0 * std::numbers::pi * xi);
    return v0 + amplitude * prod;
}

Model::Model(int dimension, Transform transform, Potential potential, Nonlinearity nonlinearity,
             double omega_radius)
    : dimension_(dimension),
      two_star_(2.0 * dimension / (dimension - 2.0)),
      transform_(std::move(transform)),
      potential_(potential),
      nonlinearity_(nonlinearity),
      omega_radius_(omega_radius) {
    if (dimension < 3) throw std::invalid_argument("Model: dimension must be >= 3");
    if (!(potential.v0 > 0.0)) throw std::invalid_argument("Model: V0 must be positive");
    if (potential.kind == PotentialKind::CosinePerturbed &&
        !(potential.amplitude >= 0.0 && potential.amplitude < potential.v0))
        throw std::invalid_argument("Model: need 0 <= amplitude < V0");
    if (nonlinearity.kind == NonlinearityKind::TransformedPower) {
        if (!(nonlinearity.mu > 0.0))
            throw std::invalid_argument("Model: mu must be positive");
        if (!(nonlinearity.q > 2.0 && nonlinearity.q < two_star_))
            throw std::invalid_argument("Model: q must lie in (2, 2*)");
    }
    if (!(omega_radius > 0.0)) throw std::invalid_argument("Model: omega radius must be positive");
}

double Model::V0() const {
    if (!potential_.constant())
        throw std::logic_error("Model::V0: radial backend requires a constant potential");
    return potential_.v0;
}

double Model::f(double t) const {
    if (nonlinearity_.kind == NonlinearityKind::Zero || t <= 0.0) return 0.0;
    const double Gt = transform_.G(t);
    return nonlinearity_.mu * transform_.g(t) * std::pow(std::abs(Gt), nonlinearity_.q - 2.0) * Gt;
}

double Model::F(double t) const {
    if (nonlinearity_.kind == NonlinearityKind::Zero || t <= 0.0) return 0.0;
    return nonlinearity_.mu * std::pow(std::abs(transform_.G(t)), nonlinearity_.q) /
           nonlinearity_.q;
}

double Model::h(double v_at_x, double s) const {
    if (s == 0.0) return 0.0;
    const double u = transform_.G_inverse(s);
    double value = v_at_x * (s - u / transform_.g(u));
    // f(G^{-1}(s)) / g(G^{-1}(s)) = mu |s|^{q-2} s by G(G^{-1}(s)) = s.
    if (nonlinearity_.kind == NonlinearityKind::TransformedPower && s > 0.0)
        value += nonlinearity_.mu * std::pow(s, nonlinearity_.q - 1.0);
    return value;
}

double Model::H(double v_at_x, double s) const {
    if (s == 0.0) return 0.0;
    const double u = transform_.G_inverse(s);
    double value = 0.5 * v_at_x * (s * s - u * u);
    if (nonlinearity_.kind == NonlinearityKind::TransformedPower && s > 0.0)
        value += nonlinearity_.mu * std::pow(s, nonlinearity_.q) / nonlinearity_.q;
    return value;
}

namespace {

double trend_to_zero(std::span<const double> values, std::size_t edge_index, double ref) {
    // |value at the ladder edge| must be below 1e-3 of the mid-ladder scale.
    return std::abs(values[edge_index]) - 1e-3 * ref;
}

}  // namespace

PropertyReport check_growth_conditions(const Model& model, std::span<const double> s_samples,
                                       std::span<const std::vector<double>> x_samples) {
    if (s_samples.size() < 8)
        throw std::invalid_argument("check_growth_conditions: need a sample ladder");
    std::vector<double> s(s_samples.begin(), s_samples.end());
    std::sort(s.begin(), s.end());
    if (s.front() <= 0.0)
        throw std::invalid_argument("check_growth_conditions: samples must be positive");

    std::vector<double> v_values;
    if (x_samples.empty()) {
        v_values.push_back(model.potential().v0);
    } else {
        for (const auto& x : x_samples) v_values.push_back(model.V(x));
    }

    std::ostringstream dom;
    dom << "s in [" << s.front() << "," << s.back() << "], " << s.size() << " samples, "
        << v_values.size() << " potential values";
    const std::string domain = dom.str();
    PropertyReport report;
    auto add = [&](const std::string& name, double worst, bool pass) {
        report.entries.push_back({name, domain, worst, pass});
    };

    const int N = model.dimension();
    const double p = model.two_star();
    const std::size_t n = s.size();
    const std::size_t mid_lo = n / 3, mid_hi = 2 * n / 3;

    double worst1 = -1e300, worst2 = -1e300, worst3 = 0.0, worst5 = 0.0;
    bool pass3 = true, pass5 = true;
    for (double Vx : v_values) {
        std::vector<double> h_over_s(n), h_over_crit(n), H_over_s2(n), H_over_crit(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double hv = model.h(Vx, s[i]);
            const double Hv = model.H(Vx, s[i]);
            h_over_s[i] = hv / s[i];
            h_over_crit[i] = hv / std::pow(s[i], p - 1.0);
            H_over_s2[i] = Hv / (s[i] * s[i]);
            H_over_crit[i] = Hv / std::pow(s[i], p);

            // (5): 1/2 h s >= H >= 0, slack scaled by magnitude
            const double half_hs = 0.5 * hv * s[i];
            const double scale = std::max(1.0, std::abs(half_hs));
            worst5 = std::max(worst5, (Hv - half_hs) / scale);
            worst5 = std::max(worst5, -Hv / scale);
            if ((Hv - half_hs) / scale > 1e-10 || -Hv / scale > 1e-10) pass5 = false;
        }
        double ref_h = 0.0, ref_H = 0.0;
        for (std::size_t i = mid_lo; i < mid_hi; ++i) {
            ref_h = std::max(ref_h, std::abs(h_over_s[i]));
            ref_H = std::max(ref_H, std::abs(H_over_s2[i]));
        }
        // (1) and (2): limits at 0+ and at infinity as ladder trends
        worst1 = std::max({worst1, trend_to_zero(h_over_s, 0, ref_h),
                           trend_to_zero(h_over_crit, n - 1, ref_h)});
        worst2 = std::max({worst2, trend_to_zero(H_over_s2, 0, ref_H),
                           trend_to_zero(H_over_crit, n - 1, ref_H)});
        // (3): h/s non-decreasing
        for (std::size_t i = 1; i < n; ++i) {
            const double scale = std::max(1.0, std::abs(h_over_s[i]));
            const double drop = (h_over_s[i - 1] - h_over_s[i]) / scale;
            worst3 = std::max(worst3, drop);
            if (drop > 1e-10) pass3 = false;
        }
    }
    add("lemma2.2(1) h/s->0, h/s^{2*-1}->0", std::max(worst1, 0.0), worst1 <= 0.0);
    add("lemma2.2(2) H/s^2->0, H/s^{2*}->0", std::max(worst2, 0.0), worst2 <= 0.0);
    add("lemma2.2(3) h/s non-decreasing", worst3, pass3);

    // (4): divergence of H against the dimension-dependent comparison power,
    // on the window s >= 10 (the assumption is asymptotic; ln s needs s > 1).
    {
        bool pass4 = true;
        double worst_ratio = 1e300;
        for (double Vx : v_values) {
            double head = 0.0, tail = 0.0;
            bool have_head = false;
            for (double si : s) {
                if (si < 10.0) continue;
                const double Hv = model.H(Vx, si);
                double phi;
                if (N == 3)
                    phi = Hv / std::pow(si, 4.0);
                else if (N == 4)
                    phi = Hv / (si * si * std::log(si));
                else
                    phi = Hv / (si * si);
                if (!have_head) {
                    head = phi;
                    have_head = true;
                }
                tail = phi;
            }
            const double ratio = (head > 0.0) ? tail / head : (tail > 0.0 ? 1e300 : 0.0);
            worst_ratio = std::min(worst_ratio, ratio);
            if (!(ratio >= 1e3)) pass4 = false;
        }
        add("lemma2.2(4) H divergence (f4)", worst_ratio, pass4);
    }

    add("lemma2.2(5) h s / 2 >= H >= 0", worst5, pass5);

    // (6): least C_delta with h <= delta s + C_delta s^{2*-1} on the samples;
    // the geometric midpoints must respect the fitted bound up to smoothness
    // headroom, and h >= 0 comes along.
    {
        bool pass6 = true;
        double reported_c = 0.0;
        for (double delta : {1e-2, 1e-1}) {
            for (double Vx : v_values) {
                double c_delta = 0.0, min_h = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double hv = model.h(Vx, s[i]);
                    min_h = std::min(min_h, hv);
                    c_delta = std::max(c_delta,
                                       (hv - delta * s[i]) / std::pow(s[i], p - 1.0));
                }
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    const double sm = std::sqrt(s[i] * s[i + 1]);
                    const double hv = model.h(Vx, sm);
                    const double bound = delta * sm + c_delta * std::pow(sm, p - 1.0);
                    if (hv > 2.0 * bound + 1e-12) pass6 = false;
                }
                if (min_h < -1e-12) pass6 = false;
                reported_c = std::max(reported_c, c_delta);
            }
        }
        add("lemma2.2(6) h <= delta s + C_delta s^{2*-1}", reported_c, pass6);
    }

    return report;
}

}  // namespace gqs
