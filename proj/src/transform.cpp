#include "gqs/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqs {

const char* to_string(TransformKind k) {
    switch (k) {
        case TransformKind::Identity: return "identity";
        case TransformKind::SuperfluidFilm: return "superfluid_film";
        case TransformKind::LaserChanneling: return "laser_channeling";
        case TransformKind::Tabulated: return "tabulated";
    }
    return "?";
}

Transform Transform::identity() {
    Transform t;
    t.kind_ = TransformKind::Identity;
    t.g_ = [](double) { return 1.0; };
    t.g_prime_ = [](double) { return 0.0; };
    t.G_closed_ = [](double x) { return x; };
    return t;
}

Transform Transform::superfluid_film() {
    Transform t;
    t.kind_ = TransformKind::SuperfluidFilm;
    t.g_ = [](double x) { return std::sqrt(1.0 + 2.0 * x * x); };
    t.g_prime_ = [](double x) { return 2.0 * x / std::sqrt(1.0 + 2.0 * x * x); };
    const double rt2 = std::sqrt(2.0);
    t.G_closed_ = [rt2](double x) {
        return 0.5 * x * std::sqrt(1.0 + 2.0 * x * x) + std::asinh(rt2 * x) / (2.0 * rt2);
    };
    return t;
}

Transform Transform::laser_channeling() {
    Transform t;
    t.kind_ = TransformKind::LaserChanneling;
    t.g_ = [](double x) {
        const double x2 = x * x;
        return std::sqrt(1.0 + x2 / (2.0 * (1.0 + x2)));
    };
    t.g_prime_ = [g = t.g_](double x) {
        const double one_p = 1.0 + x * x;
        return x / (2.0 * g(x) * one_p * one_p);
    };
    t.build_table(1e7);
    return t;
}

Transform Transform::tabulated(std::vector<double> t_samples, std::vector<double> g_samples,
                               double quadrature_tol) {
    if (t_samples.empty() || t_samples.front() != 0.0)
        throw std::invalid_argument("tabulated transform: first knot must be t = 0");
    for (double gv : g_samples)
        if (!(gv > 0.0))
            throw std::invalid_argument("tabulated transform: g must be positive");
    Transform t;
    t.kind_ = TransformKind::Tabulated;
    t.quad_tol_ = quadrature_tol;
    t.tab_g_ = MonotoneCubic(std::move(t_samples), std::move(g_samples));
    t.g_ = [interp = t.tab_g_](double x) { return interp(x); };
    t.g_prime_ = [interp = t.tab_g_](double x) { return interp.derivative(x); };
    t.build_table(t.tab_g_.x_back());
    return t;
}

void Transform::build_table(double t_max) {
    anchor_t_.clear();
    anchor_G_.clear();
    anchor_t_.push_back(0.0);
    anchor_G_.push_back(0.0);
    const double ratio = std::pow(2.0, 0.125);
    double t = 1e-4;
    while (true) {
        const double prev_t = anchor_t_.back();
        anchor_t_.push_back(t);
        anchor_G_.push_back(anchor_G_.back() + kronrod15(g_, prev_t, t));
        if (t >= t_max) break;
        t = std::min(t * ratio, t_max * (1.0 + 1e-15));
    }
}

double Transform::table_G(double t) const {
    if (t >= anchor_t_.back()) {
        const double tail = (kind_ == TransformKind::Tabulated)
                                ? g_(anchor_t_.back()) * (t - anchor_t_.back())  // g clamped: exact
                                : adaptive_quadrature(g_, anchor_t_.back(), t, quad_tol_);
        return anchor_G_.back() + tail;
    }
    const auto it = std::upper_bound(anchor_t_.begin(), anchor_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - anchor_t_.begin()) - 1;
    return anchor_G_[i] + kronrod15(g_, anchor_t_[i], t);
}

double Transform::g(double t) const {
    if (!std::isfinite(t)) throw std::domain_error("g: non-finite argument");
    return g_(std::abs(t));
}

double Transform::g_prime(double t) const {
    if (!std::isfinite(t)) throw std::domain_error("g_prime: non-finite argument");
    const double v = g_prime_(std::abs(t));
    return t < 0 ? -v : v;  // even g has odd derivative
}

double Transform::G(double t) const {
    if (!std::isfinite(t)) throw std::domain_error("G: non-finite argument");
    if (t == 0.0) return 0.0;
    const double a = std::abs(t);
    const double v = G_closed_ ? G_closed_(a) : table_G(a);
    return t < 0 ? -v : v;
}

double Transform::G_by_quadrature(double t) const {
    if (t == 0.0) return 0.0;
    const double v = adaptive_quadrature(g_, 0.0, std::abs(t), quad_tol_);
    return t < 0 ? -v : v;
}

double Transform::G_inverse(double s) const {
    if (!std::isfinite(s)) throw std::domain_error("G_inverse: non-finite argument");
    if (s == 0.0) return 0.0;
    const double target = std::abs(s);
    // |G^{-1}(s)| <= |s| since g >= g(0) = 1, so [0, |s|] brackets the root.
    double lo = 0.0, hi = target;
    double ghi = G(hi) - target;
    int grow = 0;
    while (ghi < 0.0) {  // defensive only; cannot happen for admissible g
        lo = hi;
        hi *= 2.0;
        ghi = G(hi) - target;
        if (++grow > 64)
            throw NumericError("G_inverse: bracket growth failed", ghi);
    }
    const double tol = quad_tol_ * std::max(1.0, target);
    // Newton from the upper end: G is convex on t >= 0, so iterates decrease
    // monotonically onto the root. Bisection guards the bracket.
    double x = hi;
    double fx = ghi;
    for (int it = 0; it < 128; ++it) {
        if (std::abs(fx) <= tol) break;
        double step = fx / g_(x);
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // safeguard
        const double fn = G(xn) - target;
        if (fn > 0)
            hi = xn;
        else
            lo = xn;
        if (xn == x) break;
        x = xn;
        fx = fn;
    }
    return s < 0 ? -x : x;
}

namespace {

struct Worst {
    double value = 0.0;
    void track(double violation) { value = std::max(value, violation); }
    bool pass(double slack) const { return value <= slack; }
};

}  // namespace

PropertyReport check_g_assumptions(const Transform& spec, std::span<const double> samples) {
    if (samples.empty())
        throw std::invalid_argument("check_g_assumptions: samples must be nonempty");
    std::vector<double> pos(samples.begin(), samples.end());
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    if (!pos.empty() && pos.front() <= 0.0)
        throw std::invalid_argument("check_g_assumptions: samples must be positive");

    std::ostringstream dom;
    dom << "t,s in +-[" << pos.front() << "," << pos.back() << "] + {0}, " << pos.size()
        << " per sign";
    const std::string domain = dom.str();
    PropertyReport report;
    auto add = [&](const std::string& name, double worst, bool pass) {
        report.entries.push_back({name, domain, worst, pass});
    };

    const double slack = 1e-12;

    // assumption (g): g(0)=1, evenness, g' >= 0 on t >= 0
    add("g(0)=1", std::abs(spec.g(0.0) - 1.0), std::abs(spec.g(0.0) - 1.0) <= slack);
    {
        Worst w;
        for (double t : pos) w.track(std::abs(spec.g(t) - spec.g(-t)));
        add("g even", w.value, w.pass(slack));
    }
    {
        Worst w;
        for (double t : pos) w.track(std::max(0.0, -spec.g_prime(t)));
        add("g' >= 0 on t>=0", w.value, w.pass(slack));
    }

    // Lemma 2.1 (1): G and G^{-1} strictly increasing and odd
    {
        Worst w;
        double prevG = spec.G(pos.front());
        double prevI = spec.G_inverse(pos.front());
        for (std::size_t i = 1; i < pos.size(); ++i) {
            const double Gi = spec.G(pos[i]);
            const double Ii = spec.G_inverse(pos[i]);
            if (Gi <= prevG) w.track(prevG - Gi + slack);
            if (Ii <= prevI) w.track(prevI - Ii + slack);
            prevG = Gi;
            prevI = Ii;
        }
        for (double t : pos) {
            w.track(std::abs(spec.G(t) + spec.G(-t)) / std::max(1.0, std::abs(spec.G(t))));
            w.track(std::abs(spec.G_inverse(t) + spec.G_inverse(-t)) /
                    std::max(1.0, std::abs(spec.G_inverse(t))));
        }
        add("lemma2.1(1) monotone+odd", w.value, w.pass(slack));
    }

    // Lemma 2.1 (2): G(t) <= g(t) t on t >= 0
    {
        Worst w;
        for (double t : pos) {
            const double bound = spec.g(t) * t;
            w.track((spec.G(t) - bound) / std::max(1.0, std::abs(bound)));
        }
        add("lemma2.1(2) G<=g*t", w.value, w.pass(slack));
    }

    // Lemma 2.1 (3): |G^{-1}(s)| <= |s|
    {
        Worst w;
        for (double s : pos)
            for (double sgn : {1.0, -1.0}) {
                const double u = spec.G_inverse(sgn * s);
                w.track((std::abs(u) - s) / std::max(1.0, s));
            }
        add("lemma2.1(3) |Ginv|<=|s|", w.value, w.pass(slack));
    }

    // Lemma 2.1 (4): s -> G^{-1}(s) / (s g(G^{-1}(s))) non-increasing on s > 0
    {
        Worst w;
        double prev = std::numeric_limits<double>::infinity();
        for (double s : pos) {
            const double u = spec.G_inverse(s);
            const double q = u / (s * spec.g(u));
            w.track((q - prev) / std::max(1.0, std::abs(prev)));
            prev = q;
        }
        add("lemma2.1(4) Ginv/(s g) non-increasing", w.value, w.pass(1e-8));
    }

    // Lemma 2.1 (5): G^{-1}(s)/s non-increasing with limit 1/g(0) = 1 at 0+
    {
        Worst w;
        double prev = std::numeric_limits<double>::infinity();
        for (double s : pos) {
            const double q = spec.G_inverse(s) / s;
            w.track((q - prev) / std::max(1.0, std::abs(prev)));
            prev = q;
        }
        const double limit0 = spec.G_inverse(pos.front()) / pos.front();
        w.track(std::abs(limit0 - 1.0) / 1e5);  // limit mismatch scaled into slack units
        add("lemma2.1(5) Ginv/s non-increasing, ->1 at 0+", w.value, w.pass(1e-8));
    }

    // Round trip G(G^{-1}(s)) = s (module invariant; cheap to carry here)
    {
        Worst w;
        for (double s : pos)
            for (double sgn : {1.0, -1.0}) {
                const double rt = spec.G(spec.G_inverse(sgn * s));
                w.track(std::abs(rt - sgn * s) / std::max(1.0, s));
            }
        add("G round-trip", w.value, w.pass(2.0 * spec.quadrature_tol()));
    }

    return report;
}

}  // namespace gqs
