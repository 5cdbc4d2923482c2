#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gqs {

inline constexpr double kDefaultQuadTol = 1e-12;

// Raised when an iterative routine cannot reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

// Surface measure of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dimension);

// Adaptive Gauss-Kronrod (G7,K15) quadrature to absolute tolerance.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol);

// Single non-adaptive K15 panel (error estimate discarded). Used for short
// spans where the integrand is smooth.
double kronrod15(const std::function<double(double)>& f, double a, double b);

struct RootResult {
    double root = 0.0;
    int iterations = 0;
};

// Brent's method on a sign-changing bracket. f(lo), f(hi) must differ in sign.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double xtol_rel = 1e-15, int max_iter = 200);

// Golden-section maximizer of a unimodal function on [lo, hi].
RootResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                      double xtol_rel = 1e-10);

// Log-spaced samples from lo to hi inclusive (lo, hi > 0).
std::vector<double> logspace(double lo, double hi, int points_per_decade);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Fritsch-Carlson monotone cubic interpolant. Knots must be strictly
// increasing; values monotone data stay monotone under evaluation.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;  // clamped outside the knot range
    double derivative(double t) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, d_;  // knots, values, knot derivatives
};

// Symmetric tridiagonal SPD solve (Thomas algorithm), factorization cached.
class Tridiag {
public:
    Tridiag() = default;
    // diag has size n, off has size n-1 (sub == super by symmetry).
    Tridiag(std::vector<double> diag, std::vector<double> off);
    std::vector<double> solve(std::span<const double> rhs) const;
    std::size_t size() const { return diag_.size(); }

private:
    std::vector<double> diag_, off_;
    std::vector<double> lu_d_, lu_l_;  // prefactored
};

// Deterministic RNG for the property suites. The [0,1) mapping avoids
// distribution objects so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform01();
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

private:
    std::uint64_t state_;
};

}  // namespace gqs
