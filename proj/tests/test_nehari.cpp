#include <doctest.h>

#include <cmath>

#include "gqs/nehari.hpp"
#include "gqs/numerics.hpp"
#include "support/oracles.hpp"

using namespace gqs;

namespace {

Model model_of(TransformKind kind, NonlinearityKind fk, double mu = 1.0, double q = 5.0) {
    Transform tr = (kind == TransformKind::Identity) ? Transform::identity()
                                                     : Transform::superfluid_film();
    return Model(3, std::move(tr), Potential{PotentialKind::Constant, 1.0, 0.0},
                 Nonlinearity{fk, mu, q});
}

Field bump(GridPtr grid, double amp, double center, double width) {
    return Field::from_function(grid, [=](double r) {
        const double z = (r - center) / width;
        return amp * std::exp(-0.5 * z * z);
    });
}

Field unit_sphere(const Model& m, Field v) {
    const double nrm = norm_E(m, v);
    for (auto& x : v.v) x /= nrm;
    return v;
}

}  // namespace

TEST_CASE("fibering map positive near zero and negative at infinity") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field v = bump(grid, 1.0, 2.0, 1.5);
    CHECK(fibering_map(m, v, 1e-4) > 0.0);
    CHECK(fibering_map(m, v, 1e4) < 0.0);
    CHECK_THROWS_AS(fibering_map(m, v, -1.0), std::invalid_argument);
}

TEST_CASE("identity zero-f fibering matches the closed forms") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::Identity, NonlinearityKind::Zero);
    const Field v = bump(grid, 1.0, 2.0, 1.5);
    const double nsq = e_norm_sq(v, 1.0);
    const double crit = std::pow(norm_Lcrit(v), 6.0);
    for (double t : {0.5, 1.0, 2.0}) {
        const double expected = 0.5 * t * t * nsq - std::pow(t, 6.0) / 6.0 * crit;
        CHECK(fibering_map(m, v, t) == doctest::Approx(expected).epsilon(1e-12));
    }
    // t_v = (||v||^2 / ||v||_{2*}^{2*})^{(N-2)/4}, N = 3
    const auto fib = project_nehari(m, v);
    const double closed = std::pow(nsq / crit, 0.25);
    CHECK(std::abs(fib.t_star - closed) / closed <= 1e-10);
    CHECK(fib.bracket_lo < fib.t_star);
    CHECK(fib.bracket_hi > fib.t_star);
}

TEST_CASE("projection scaling law t(cv) = t(v)/c") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field v = bump(grid, 0.8, 3.0, 2.0);
    const auto base = project_nehari(m, v);
    for (double c : {0.5, 2.0, 7.0}) {
        Field cv = v;
        for (auto& x : cv.v) x *= c;
        const auto scaled = project_nehari(m, cv);
        CHECK(scaled.t_star == doctest::Approx(base.t_star / c).epsilon(1e-9));
        CHECK(scaled.value == doctest::Approx(base.value).epsilon(1e-9));
    }
}

TEST_CASE("projection matches golden-section maximization") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    Rng rng(11);
    for (int k = 0; k < 10; ++k) {
        const Field v =
            bump(grid, rng.uniform(0.5, 2.0), rng.uniform(0.0, 8.0), rng.uniform(0.5, 3.0));
        const auto fib = project_nehari(m, v);
        const auto gold = golden_max([&](double t) { return fibering_map(m, v, t); },
                                     fib.t_star / 16.0, fib.t_star * 16.0, 1e-12);
        CHECK(std::abs(gold.root - fib.t_star) / fib.t_star <= 1e-6);
    }
}

TEST_CASE("M' has exactly one sign change over the log grid") {
    const auto grid = make_grid(3, 20.0, 512);
    Rng rng(3);
    for (const auto& m :
         {model_of(TransformKind::Identity, NonlinearityKind::Zero),
          model_of(TransformKind::Identity, NonlinearityKind::TransformedPower),
          model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower)}) {
        for (int k = 0; k < 10; ++k) {
            const Field v = bump(grid, rng.uniform(0.5, 2.0), rng.uniform(0.0, 8.0),
                                 rng.uniform(0.5, 3.0));
            CHECK(fibering_sign_changes(m, v, 1e-6, 1e6, 8) == 1);
        }
    }
}

TEST_CASE("projection handles sign-changing and nonpositive fields") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    // v+ = 0: the h f-part vanishes, the critical term still gives a maximizer
    Field neg = bump(grid, 1.0, 3.0, 1.5);
    for (auto& x : neg.v) x = -x;
    const auto fneg = project_nehari(m, neg);
    CHECK(fneg.t_star > 0.0);
    CHECK(std::abs(fibering_derivative(m, neg, fneg.t_star)) <=
          1e-10 * e_norm_sq(neg, 1.0));
    // genuinely sign-changing field
    Field mixed = bump(grid, 1.0, 2.0, 1.0);
    const Field other = bump(grid, 0.7, 6.0, 1.0);
    for (std::size_t j = 0; j < mixed.v.size(); ++j) mixed.v[j] -= other.v[j];
    const auto fmix = project_nehari(m, mixed);
    CHECK(fmix.t_star > 0.0);
    CHECK(fibering_sign_changes(m, mixed, 1e-6, 1e6, 8) == 1);
}

TEST_CASE("nehari residual signs along the ray") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    Field small = bump(grid, 1.0, 2.0, 1.5);
    {
        const double nrm = norm_E(m, small);
        for (auto& x : small.v) x *= 1e-3 / nrm;  // ||v|| = 1e-3
    }
    CHECK(nehari_residual(m, small) > 0.0);  // quadratic term dominates

    const Field v = bump(grid, 1.0, 2.0, 1.5);
    const auto fib = project_nehari(m, v);
    Field on_manifold = v;
    for (auto& x : on_manifold.v) x *= fib.t_star;
    const double nsq = e_norm_sq(on_manifold, 1.0);
    CHECK(std::abs(nehari_residual(m, on_manifold)) <= 1e-8 * nsq);

    Field doubled = on_manifold;
    for (auto& x : doubled.v) x *= 2.0;
    CHECK(nehari_residual(m, doubled) < 0.0);  // past the maximizer
}

TEST_CASE("m_map requires the unit sphere and lands on the manifold") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field raw = bump(grid, 1.3, 3.0, 2.0);
    CHECK_THROWS_AS(m_map(m, raw), std::invalid_argument);
    const Field w = unit_sphere(m, raw);
    const Field mw = m_map(m, w);
    // ||m(w)|| = t_w and the image is on the manifold
    const auto fib = project_nehari(m, w);
    CHECK(norm_E(m, mw) == doctest::Approx(fib.t_star).epsilon(1e-10));
    CHECK(std::abs(nehari_residual(m, mw)) <= 1e-8 * e_norm_sq(mw, 1.0));
    // inverse identity m^{-1}(v) = v/||v||
    Field winv = mw;
    const double nrm = norm_E(m, winv);
    for (auto& x : winv.v) x /= nrm;
    double diff_sq = 0.0;
    Field diff = winv;
    for (std::size_t j = 0; j < diff.v.size(); ++j) diff.v[j] -= w.v[j];
    diff_sq = e_norm_sq(diff, 1.0);
    CHECK(std::sqrt(diff_sq) <= 1e-8);
}

TEST_CASE("m is continuous along a sphere path") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field a = unit_sphere(m, bump(grid, 1.0, 2.0, 1.5));
    const Field b = unit_sphere(m, bump(grid, 1.0, 5.0, 2.0));
    double prev_gap = 1e300;
    for (double step : {0.5, 0.25, 0.125, 0.0625}) {
        Field w = a;
        for (std::size_t j = 0; j < w.v.size(); ++j)
            w.v[j] = (1.0 - step) * a.v[j] + step * b.v[j];
        w = unit_sphere(m, std::move(w));
        Field diff = m_map(m, w);
        const Field ma = m_map(m, a);
        for (std::size_t j = 0; j < diff.v.size(); ++j) diff.v[j] -= ma.v[j];
        const double gap = std::sqrt(e_norm_sq(diff, 1.0));
        CHECK(gap < prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.2);  // halved perturbations shrink the image gap
}

TEST_CASE("psi value transfer and the derivative identity") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field w = unit_sphere(m, bump(grid, 1.1, 3.0, 2.0));
    const Field mw = m_map(m, w);
    CHECK(psi(m, w) == doctest::Approx(energy(m, mw).total).epsilon(1e-10));

    // <grad, z>_E = ||m(w)|| <I'(m(w)), z> for tangential z
    const Field grad = psi_gradient_tangential(m, w);
    Rng rng(5);
    for (int k = 0; k < 5; ++k) {
        Field z = bump(grid, rng.uniform(0.5, 1.5), rng.uniform(0.0, 8.0),
                       rng.uniform(0.5, 3.0));
        const double proj = e_inner(m, z, w);
        for (std::size_t j = 0; j < z.v.size(); ++j) z.v[j] -= proj * w.v[j];
        const double lhs = e_inner(m, grad, z);
        const double rhs = norm_E(m, mw) * pair_modified(m, mw, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
    // tangency of the returned gradient
    CHECK(std::abs(e_inner(m, grad, w)) <= 1e-8 * norm_E(m, grad));
}

TEST_CASE("psi derivative identity against a difference quotient") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    const Field w = unit_sphere(m, bump(grid, 1.1, 3.0, 2.0));
    const Field grad = psi_gradient_tangential(m, w);
    Field z = bump(grid, 0.9, 5.0, 2.2);
    const double proj = e_inner(m, z, w);
    for (std::size_t j = 0; j < z.v.size(); ++j) z.v[j] -= proj * w.v[j];
    const double znrm = std::sqrt(e_norm_sq(z, 1.0));
    for (auto& x : z.v) x /= znrm;

    const double eps = 1e-5;
    auto psi_at = [&](double t) {
        Field wt = w;
        for (std::size_t j = 0; j < wt.v.size(); ++j) wt.v[j] = w.v[j] + t * z.v[j];
        const double nrm = norm_E(m, wt);
        for (auto& x : wt.v) x /= nrm;
        return psi(m, wt);
    };
    const double dq = (psi_at(eps) - psi_at(-eps)) / (2.0 * eps);
    CHECK(e_inner(m, grad, z) == doctest::Approx(dq).epsilon(1e-5));
}

TEST_CASE("inf transfer over a sampled sphere family") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::SuperfluidFilm, NonlinearityKind::TransformedPower);
    Rng rng(13);
    double min_psi = 1e300, min_proj = 1e300;
    for (int k = 0; k < 8; ++k) {
        const Field w = unit_sphere(
            m, bump(grid, rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.0), rng.uniform(0.5, 3.0)));
        const double pv = psi(m, w);
        min_psi = std::min(min_psi, pv);
        min_proj = std::min(min_proj, project_nehari(m, w).value);
    }
    CHECK(min_psi == doctest::Approx(min_proj).epsilon(1e-12));
}

TEST_CASE("riesz solver inverts the e-inner product") {
    const auto grid = make_grid(3, 20.0, 512);
    const auto m = model_of(TransformKind::Identity, NonlinearityKind::Zero);
    const RieszSolver riesz(grid, 1.0);
    const Field v = bump(grid, 1.0, 4.0, 2.0);
    const auto b = nodal_gradient(m, v);
    const Field gam = riesz.solve(b);
    // <gam, z>_E = <I'(v), z> for a probe z
    const Field z = bump(grid, 0.6, 7.0, 2.5);
    CHECK(e_inner(m, gam, z) == doctest::Approx(pair_modified(m, v, z)).epsilon(1e-10));
}
