#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

double romberg(const std::function<double(double)>& f, double a, double b, double rel_tol,
               int max_level) {
    std::vector<std::vector<double>> table(max_level);
    double h = b - a;
    table[0] = {0.5 * h * (f(a) + f(b))};
    for (int k = 1; k < max_level; ++k) {
        h *= 0.5;
        double sum = 0.0;
        const long pts = 1L << (k - 1);
        for (long i = 0; i < pts; ++i) sum += f(a + (2 * i + 1) * h);
        table[k].resize(k + 1);
        table[k][0] = 0.5 * table[k - 1][0] + h * sum;
        double pow4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            pow4 *= 4.0;
            table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (pow4 - 1.0);
        }
        if (k > 3) {
            const double cur = table[k][k], prev = table[k - 1][k - 1];
            if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        }
    }
    return table[max_level - 1][max_level - 1];
}

double talenti_sobolev(int dimension) {
    const double N = dimension;
    return std::numbers::pi * N * (N - 2.0) *
           std::pow(std::tgamma(N / 2.0) / std::tgamma(N), 2.0 / N);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope: need matching samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double observed_order(double fh, double fh2, double fh4) {
    return std::log2(std::abs((fh - fh2) / (fh2 - fh4)));
}

}  // namespace oracles
