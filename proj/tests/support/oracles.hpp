#pragma once

// Test-side oracles, independent of the library's numeric paths.

#include <functional>
#include <vector>

namespace oracles {

// Romberg integration (independent of the library's Gauss-Kronrod route).
double romberg(const std::function<double(double)>& f, double a, double b,
               double rel_tol = 1e-12, int max_level = 22);

// Talenti's closed form for the best Sobolev constant:
// S_N = pi N (N-2) (Gamma(N/2) / Gamma(N))^{2/N}.
double talenti_sobolev(int dimension);

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y);

// Richardson observed order from three values at h, h/2, h/4:
// log2((f(h) - f(h/2)) / (f(h/2) - f(h/4))).
double observed_order(double fh, double fh2, double fh4);

// Frozen reference values (40-digit computation, independent path):
// superfluid-film transform g^2 = 1 + 2 t^2
inline constexpr double kG_sf_at_1 = 1.271273898522815519;     // G(1)
inline constexpr double kGinv_sf_at_1 = 0.8344247414832792527; // G^{-1}(1)
inline constexpr double kH_sf_zero_f_at_1 = 0.1518676754002812941;  // 1/2 (1 - u^2)
inline constexpr double kh_sf_zero_f_at_1 = 0.4605408789169434832;  // 1 - u/g(u)
inline constexpr double kGp_sf_at_1 = 1.1547005383792515290;   // g'(1) = 2/sqrt(3)
// laser-channeling transform g^2 = 1 + t^2 / (2 (1 + t^2))
inline constexpr double kGinf_lc = 1.2247448713915890491;      // sqrt(3/2)
inline constexpr double kGinvRatio_lc_1e6 = 0.8164968552981889089;  // G^{-1}(1e6)/1e6
// Talenti constants
inline constexpr double kS3 = 5.477904089531331874;
inline constexpr double kS4 = 10.260398641294912764;
inline constexpr double kS5 = 14.811911720005934000;
inline constexpr double kThresholdN3 = 4.273664068323042279;   // (1/3) S_3^{3/2}

}  // namespace oracles
