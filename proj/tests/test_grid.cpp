#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gqs/grid.hpp"
#include "support/oracles.hpp"

using namespace gqs;

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(RadialGrid(3, -1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(3, 10.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(2, 10.0, 64), std::invalid_argument);
    const RadialGrid g(3, 10.0, 1024);
    double total = 0.0;
    for (double w : g.w()) total += w;
    CHECK(total == doctest::Approx(g.ball_volume()).epsilon(1e-3));
}

TEST_CASE("quadrature exactness for low-order monomials") {
    const auto grid = make_grid(3, 10.0, 1024);
    const double R = grid->radius();
    const double sigma = 4.0 * std::numbers::pi;
    for (int k = 0; k <= 2; ++k) {
        const Field f = Field::from_function(grid, [k](double r) { return std::pow(r, k); });
        // int_{B_R} r^k dx = sigma R^{k+3} / (k+3); the Dirichlet clamp at R
        // removes one boundary sample of measure ~sigma R^{k+2} dr / 2
        double expected = sigma * std::pow(R, k + 3) / (k + 3) -
                          0.5 * sigma * std::pow(R, k + 2) * grid->dr();
        CHECK(integrate(f) == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("gaussian integral against the closed form") {
    const auto grid = make_grid(3, 40.0, 4096);
    const Field f = Field::from_function(grid, [](double r) { return std::exp(-r * r); });
    // int_{R^3} e^{-2 r^2} dx = (pi/2)^{3/2}
    const double l2sq = norm_L2(f) * norm_L2(f);
    CHECK(l2sq == doctest::Approx(std::pow(std::numbers::pi / 2.0, 1.5)).epsilon(1e-4));
    // int e^{-r^2} dx = pi^{3/2}
    CHECK(integrate(f) == doctest::Approx(std::pow(std::numbers::pi, 1.5)).epsilon(1e-4));
}

TEST_CASE("laplacian of constants and quadratics") {
    const auto grid = make_grid(3, 10.0, 512);
    Field c = Field::from_function(grid, [](double) { return 1.0; });
    c.v.back() = 0.0;
    const Field lc = laplacian_apply(c);
    for (int j = 0; j < grid->nodes() - 1; ++j) CHECK(std::abs(lc.v[j]) <= 1e-10);

    const Field q = Field::from_function(grid, [](double r) { return r * r; });
    const Field lq = laplacian_apply(q);
    for (int j = 0; j < grid->nodes() - 1; ++j)
        CHECK(lq.v[j] == doctest::Approx(6.0).epsilon(1e-6));  // Delta r^2 = 2N
}

TEST_CASE("laplacian convergence order on a gaussian") {
    // Delta e^{-r^2} = (4 r^2 - 6) e^{-r^2} in dimension 3
    auto worst_err = [](int n) {
        const auto grid = make_grid(3, 10.0, n);
        const Field f =
            Field::from_function(grid, [](double r) { return std::exp(-r * r); });
        const Field lap = laplacian_apply(f);
        double worst = 0.0;
        for (int j = 0; j < grid->nodes() / 2; ++j) {
            const double r = grid->r()[j];
            const double exact = (4.0 * r * r - 6.0) * std::exp(-r * r);
            worst = std::max(worst, std::abs(lap.v[j] - exact));
        }
        return worst;
    };
    const double e1 = worst_err(128), e2 = worst_err(256), e3 = worst_err(512);
    const double order = oracles::observed_order(e1, e2, e3);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("summation by parts consistency") {
    const auto grid = make_grid(3, 20.0, 1024);
    const Field f = Field::from_function(grid, [](double r) {
        const double z = (r - 5.0) / 2.0;
        return std::exp(-0.5 * z * z);
    });
    const Field lap = laplacian_apply(f);
    Field neg = lap;
    for (auto& x : neg.v) x = -x;
    CHECK(inner_w(neg, f) == doctest::Approx(grad_sq(f)).epsilon(1e-3));
}

TEST_CASE("norms of the zero field vanish") {
    const auto grid = make_grid(4, 10.0, 256);
    const Field z = Field::zeros(grid);
    CHECK(norm_L2(z) == 0.0);
    CHECK(norm_Lcrit(z) == 0.0);
    CHECK(norm_H1(z) == 0.0);
    CHECK(e_norm_sq(z, 1.0) == 0.0);
}

TEST_CASE("e-norm dominates h1 with the potential floor") {
    const auto grid = make_grid(3, 20.0, 512);
    const Field f = Field::from_function(grid, [](double r) { return std::exp(-r); });
    const double vmin = 0.5;
    const double d1 = std::min(1.0, vmin);
    CHECK(e_norm_sq(f, vmin) >= d1 * norm_H1(f) * norm_H1(f) - 1e-12);
}

TEST_CASE("refine and interpolate") {
    const auto grid = make_grid(3, 10.0, 64);
    const auto fine = refine(*grid, 2);
    CHECK(fine->nodes() == 128);
    CHECK(fine->radius() == grid->radius());

    const Field q = Field::from_function(grid, [](double r) { return r * r; });
    const Field qf = interpolate(q, fine);
    for (int j = 0; j <= grid->nodes() - 1; ++j)
        CHECK(qf.v[2 * j] == doctest::Approx(q.v[j]).epsilon(1e-14));  // shared nodes exact

    const Field same = interpolate(q, grid);
    for (int j = 0; j <= grid->nodes(); ++j) CHECK(same.v[j] == q.v[j]);
}

TEST_CASE("interpolated gaussian l2 norm converges at second order") {
    // sample coarsely, interpolate to a fixed fine grid: the linear
    // interpolation error dominates and must shrink at O(dr^2)
    const auto fine = make_grid(3, 20.0, 2048);
    const double exact = std::pow(std::numbers::pi / 2.0, 0.75);  // ||e^{-r^2}||_2
    auto err = [&](int n) {
        const auto grid = make_grid(3, 20.0, n);
        const Field f =
            Field::from_function(grid, [](double r) { return std::exp(-r * r); });
        return std::abs(norm_L2(interpolate(f, fine)) - exact);
    };
    const double e1 = err(64), e2 = err(128), e3 = err(256);
    const double order = oracles::observed_order(e1, e2, e3);
    CHECK(order >= 1.9);
    CHECK(order <= 2.4);
}

TEST_CASE("dirichlet tag pins the boundary node") {
    const auto grid = make_grid(3, 10.0, 64);
    const Field f = Field::from_function(grid, [](double) { return 3.0; });
    CHECK(f.v.back() == 0.0);
    Field bad = Field::zeros(grid);
    bad.v[3] = std::nan("");
    CHECK_THROWS_AS(bad.enforce_invariants(), std::invalid_argument);
}
