#include "gqs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gqs {

double unit_sphere_area(int dimension) {
    const double half = dimension / 2.0;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        result_k += kWgk[j] * fsum;
        if (j % 2 == 1) result_g += kWg[j / 2] * fsum;
    }
    result_k *= h;
    result_g *= h;
    const double err = std::pow(200.0 * std::abs(result_k - result_g), 1.5);
    return {result_k, std::min(std::abs(result_k - result_g), err)};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           double& acc, double& err_acc, int depth) {
    const auto p = gk15_panel(f, a, b);
    if (p.error <= tol || depth >= 48) {
        acc += p.kronrod;
        err_acc += p.error;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, tol / 2, acc, err_acc, depth + 1);
    adapt(f, m, b, tol / 2, acc, err_acc, depth + 1);
}

}  // namespace

double kronrod15(const std::function<double(double)>& f, double a, double b) {
    return gk15_panel(f, a, b).kronrod;
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
    if (a == b) return 0.0;
    double acc = 0.0, err = 0.0;
    adapt(f, a, b, abs_tol, acc, err, 0);
    // The tolerance is absolute for |value| <= 1 and relative above that;
    // doubles cannot hold 1e-12 absolute error on 1e6-sized integrals.
    if (err > abs_tol * std::max(1.0, std::abs(acc)) * 16.0)
        throw NumericError("adaptive_quadrature: tolerance not reached", err);
    return acc;
}

RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double xtol_rel, int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("brent_root: endpoints do not bracket a root");
    double c = a, fc = fa;
    double d = b - a, e = d;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                            0.5 * xtol_rel * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) break;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, iter};
}

RootResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                      double xtol_rel) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int iter = 0;
    while (b - a > xtol_rel * (std::abs(a) + std::abs(b)) && iter < 400) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        ++iter;
    }
    return {0.5 * (a + b), iter};
}

std::vector<double> logspace(double lo, double hi, int points_per_decade) {
    const double llo = std::log10(lo), lhi = std::log10(hi);
    const int count = static_cast<int>(std::round((lhi - llo) * points_per_decade)) + 1;
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
    return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 matching knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: knots must increase");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Fritsch-Carlson limiter
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            d_[i] = d_[i + 1] = 0.0;
        } else {
            const double a = d_[i] / delta[i];
            const double b = d_[i + 1] / delta[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double tau = 3.0 / std::sqrt(s);
                d_[i] = tau * a * delta[i];
                d_[i + 1] = tau * b * delta[i];
            }
        }
    }
}

double MonotoneCubic::operator()(double t) const {
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double t) const {
    if (t <= x_.front() || t >= x_.back()) return 0.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double dh00 = (6 * s2 - 6 * s) / h;
    const double dh10 = 3 * s2 - 4 * s + 1;
    const double dh01 = (-6 * s2 + 6 * s) / h;
    const double dh11 = 3 * s2 - 2 * s;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

Tridiag::Tridiag(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    const std::size_t n = diag_.size();
    if (off_.size() + 1 != n) throw std::invalid_argument("Tridiag: size mismatch");
    lu_d_.resize(n);
    lu_l_.resize(n - 1);
    lu_d_[0] = diag_[0];
    for (std::size_t i = 1; i < n; ++i) {
        lu_l_[i - 1] = off_[i - 1] / lu_d_[i - 1];
        lu_d_[i] = diag_[i] - lu_l_[i - 1] * off_[i - 1];
    }
}

std::vector<double> Tridiag::solve(std::span<const double> rhs) const {
    const std::size_t n = diag_.size();
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 1; i < n; ++i) x[i] -= lu_l_[i - 1] * x[i - 1];
    x[n - 1] /= lu_d_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - off_[i] * x[i + 1]) / lu_d_[i];
    return x;
}

double Rng::uniform01() {
    // splitmix64 step; top 53 bits to double
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace gqs
