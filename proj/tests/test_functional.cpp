#include <doctest.h>

#include <cmath>

#include "gqs/critical.hpp"
#include "gqs/functional.hpp"
#include "gqs/numerics.hpp"
#include "support/oracles.hpp"

using namespace gqs;

namespace {

Model sf_model(double mu = 1.0, double q = 5.0) {
    return Model(3, Transform::superfluid_film(), Potential{PotentialKind::Constant, 1.0, 0.0},
                 Nonlinearity{NonlinearityKind::TransformedPower, mu, q});
}

Model id_model(NonlinearityKind fk = NonlinearityKind::Zero, double mu = 0.0, double q = 0.0) {
    return Model(3, Transform::identity(), Potential{PotentialKind::Constant, 1.0, 0.0},
                 Nonlinearity{fk, mu, q});
}

Field bump(GridPtr grid, double amp, double center, double width) {
    return Field::from_function(grid, [=](double r) {
        const double z = (r - center) / width;
        return amp * std::exp(-0.5 * z * z);
    });
}

}  // namespace

TEST_CASE("energy of the zero field vanishes") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto e = energy(sf_model(), Field::zeros(grid));
    CHECK(e.kinetic == 0.0);
    CHECK(e.potential == 0.0);
    CHECK(e.h_part == 0.0);
    CHECK(e.critical == 0.0);
    CHECK(e.total == 0.0);
}

TEST_CASE("energy breakdown recombines to the total") {
    const auto grid = make_grid(3, 20.0, 1024);
    const Field v = bump(grid, 1.4, 3.0, 2.0);
    const auto e = energy(sf_model(), v);
    CHECK(e.total ==
          doctest::Approx(e.kinetic + e.potential - e.h_part - e.critical).epsilon(1e-12));
}

TEST_CASE("identity transform with zero f reduces to the critical functional") {
    const auto grid = make_grid(3, 20.0, 1024);
    const Field v = bump(grid, 1.2, 2.0, 1.5);
    const auto m = id_model();
    const auto e = energy(m, v);
    CHECK(e.h_part == doctest::Approx(0.0));
    const double nsq = e_norm_sq(v, 1.0);
    const double crit = std::pow(norm_Lcrit(v), 6.0);
    CHECK(e.total == doctest::Approx(0.5 * nsq - crit / 6.0).epsilon(1e-12));
}

TEST_CASE("gradient of the zero field vanishes") {
    const auto grid = make_grid(3, 20.0, 512);
    const Field g = gradient(sf_model(), Field::zeros(grid));
    for (double x : g.v) CHECK(x == 0.0);
}

TEST_CASE("gradient pairing matches the central difference quotient") {
    const auto grid = make_grid(3, 20.0, 1024);
    const auto m = sf_model();
    Rng rng(7);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Field v =
            bump(grid, rng.uniform(0.5, 2.0), rng.uniform(0.0, 10.0), rng.uniform(0.5, 4.0));
        const Field phi =
            bump(grid, rng.uniform(0.5, 2.0), rng.uniform(0.0, 10.0), rng.uniform(0.5, 4.0));
        const double eps = 1e-4;
        Field vp = v, vm = v;
        for (std::size_t j = 0; j < v.v.size(); ++j) {
            vp.v[j] += eps * phi.v[j];
            vm.v[j] -= eps * phi.v[j];
        }
        const double dq = (energy(m, vp).total - energy(m, vm).total) / (2.0 * eps);
        const double pair = pair_modified(m, v, phi);
        worst = std::max(worst, std::abs(pair - dq) / (1.0 + std::abs(dq)));
    }
    CHECK(worst <= 1e-4);
    CHECK(worst <= 1e-5);  // the exact discrete derivative leaves only O(eps^2)
}

TEST_CASE("gradient field agrees with the weighted pairing") {
    const auto grid = make_grid(3, 20.0, 1024);
    const auto m = sf_model();
    const Field v = bump(grid, 1.3, 4.0, 2.0);
    const Field phi = bump(grid, 0.8, 6.0, 3.0);
    const Field r = gradient(m, v);
    CHECK(inner_w(r, phi) == doctest::Approx(pair_modified(m, v, phi)).epsilon(1e-6));
}

TEST_CASE("instanton negative control: residual equals the potential term") {
    // -Delta omega = omega^5 exactly, so with V = 1 and zero f the strong
    // residual of the cutoff instanton is V v plus cutoff commutators
    const auto grid = make_grid(3, 40.0, 4096);
    Field v = instanton({1.0, 20.0, 3}, grid);
    const Field phi = cutoff_profile(grid, 20.0);
    for (std::size_t j = 0; j < v.v.size(); ++j) v.v[j] *= phi.v[j];
    v.enforce_invariants();
    const Field r = gradient(id_model(), v);
    Field diff = r;
    for (std::size_t j = 0; j < r.v.size(); ++j) diff.v[j] -= v.v[j];
    CHECK(norm_L2(diff) / norm_L2(v) < 0.05);
}

TEST_CASE("pair_original equals pair_modified exactly for the identity transform") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = id_model(NonlinearityKind::TransformedPower, 1.0, 5.0);
    const Field v = bump(grid, 1.3, 3.0, 1.0);
    const Field phi = bump(grid, 0.8, 5.0, 2.0);
    const double p4 = pair_modified(m, v, phi);
    const double p3 = pair_original(m, v, phi);  // u = v, psi = phi when g = 1
    CHECK(p3 == doctest::Approx(p4).epsilon(1e-13));
}

TEST_CASE("weak-form equivalence under psi = phi/g(u)") {
    const auto grid = make_grid(3, 40.0, 4096);
    const auto m = sf_model();
    const auto bank = default_test_bank(grid);
    double scale = 0.0, worst = 0.0;
    for (double amp : {0.7, 2.0, 6.0, 10.0}) {
        const Field v = bump(grid, amp, 3.0, 2.0);
        const Field u = [&] {
            Field out = v;
            for (auto& x : out.v) x = m.transform().G_inverse(x);
            return out;
        }();
        for (const auto& phi : bank) {
            Field psi = phi;
            for (std::size_t j = 0; j < psi.v.size(); ++j)
                psi.v[j] = phi.v[j] / m.transform().g(u.v[j]);
            const double p4 = pair_modified(m, v, phi) / norm_E(m, phi);
            const double p3 = pair_original(m, u, psi) / norm_E(m, phi);
            scale = std::max(scale, std::abs(p4));
            worst = std::max(worst, std::abs(p3 - p4));
        }
    }
    CHECK(worst / scale <= 1e-2);
}

TEST_CASE("original-variable energy agrees with the transformed energy") {
    const auto grid = make_grid(3, 40.0, 4096);
    const auto m = sf_model();
    const Field v = bump(grid, 1.5, 3.0, 2.0);
    Field u = v;
    for (auto& x : u.v) x = m.transform().G_inverse(x);
    const double J = energy_original(m, u);
    const double I = energy(m, v).total;
    CHECK(J == doctest::Approx(I).epsilon(1e-3));  // quadratures differ at O(dr^2)
}

TEST_CASE("weak residual of zero fields vanishes and random fields are O(1)") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = sf_model();
    const auto bank = default_test_bank(grid);
    CHECK(weak_residual_modified(m, Field::zeros(grid), bank) == 0.0);
    CHECK(weak_residual_original(m, Field::zeros(grid), bank) == 0.0);
    const Field v = bump(grid, 1.0, 2.0, 1.5);
    const double res = weak_residual_modified(m, v, bank);
    CHECK(res > 1e-3);
    CHECK(res < 1e3);
}

TEST_CASE("sobolev constant against the talenti closed form") {
    const double s3 = sobolev_constant(3);
    const double s4 = sobolev_constant(4);
    CHECK(std::abs(s3 - oracles::kS3) / oracles::kS3 < 5e-3);
    CHECK(std::abs(s4 - oracles::kS4) / oracles::kS4 < 5e-3);
    CHECK(std::abs(s3 - oracles::talenti_sobolev(3)) / oracles::kS3 < 5e-3);
}

TEST_CASE("sobolev constant is stable under the probe scale") {
    // the continuum quotient is scale invariant; two disjoint eps ladders must
    // extrapolate to the same constant
    const RadialGrid base(3, 40.0, 4096);
    const double a = sobolev_constant(3, base);
    const RadialGrid shifted(3, 40.0, 6144);
    const double b = sobolev_constant(3, shifted);
    CHECK(std::abs(a - b) / a < 1e-3);
}

TEST_CASE("instanton kinetic energy approaches S at small eps") {
    // wide cutoff keeps the O(sqrt(eps)) excess small: 2 x kinetic must
    // bracket S from above and tighten as eps decreases
    const auto grid = make_grid(3, 40.0, 8192);
    const auto m = id_model();
    double prev = 1e300;
    for (double eps : {0.16, 0.04, 0.01}) {
        const Field v = test_function({eps, 20.0, 3}, grid);
        const auto e = energy(m, v);
        CHECK(2.0 * e.kinetic > oracles::kS3);
        CHECK(2.0 * e.kinetic < oracles::kS3 * 1.15);
        CHECK(2.0 * e.kinetic < prev);
        prev = 2.0 * e.kinetic;
    }
}
