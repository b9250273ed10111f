#include "hmplan/divergence.hpp"
#include "hmplan/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hmplan;

namespace {

Eigen::VectorXd random_row(Rng& rng, int n) {
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.uniform(1e-4, 1.0);
    x /= x.sum();
    return x;
}

// brute-force term-by-term evaluation, kept separate from the library path
double divergence_bruteforce(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                             const ConvexGenerator& g) {
    double d = 0.0;
    for (int j = 0; j < x.size(); ++j) d += x[j] * g.f(y[j] / x[j]);
    return d;
}

} // namespace

TEST_SUITE_BEGIN("divergence");

TEST_CASE("built-in generators evaluate the defining formulas") {
    const auto kl = make_generator(GeneratorKind::kl);
    CHECK(kl.f(2.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(kl.f0 == std::numeric_limits<double>::infinity());
    CHECK(kl.fstar0 == 0.0);

    const auto h = make_generator(GeneratorKind::hellinger);
    CHECK(h.f(4.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(h.f0 == 2.0);
    CHECK(h.fstar0 == 0.0);

    const auto tv = make_generator(GeneratorKind::tv_smoothed);
    CHECK(tv.f(1.0) == 0.0);
    CHECK(tv.f(3.0) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("generators satisfy f(1)=0 and sampled strict convexity") {
    for (auto kind : {GeneratorKind::kl, GeneratorKind::hellinger, GeneratorKind::tv_smoothed}) {
        auto g = make_generator(kind);
        CHECK_NOTHROW(make_custom_generator(g));
    }
    ConvexGenerator bad;
    bad.name = "concave";
    bad.f = [](double x) { return std::sqrt(x) - 1.0; };
    bad.fprime = [](double x) { return 0.5 / std::sqrt(x); };
    CHECK_THROWS(make_custom_generator(bad));
}

TEST_CASE("dual generator") {
    const auto kl = make_generator(GeneratorKind::kl);
    const auto klstar = dual(kl);
    // dual of -log x is x log x
    CHECK(klstar.f(2.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(klstar.f(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(klstar.f0 == 0.0);
    CHECK(klstar.fstar0 == std::numeric_limits<double>::infinity());

    SUBCASE("involution: dual(dual(g)) == g pointwise") {
        Rng rng(7);
        const auto klstarstar = dual(klstar);
        for (int i = 0; i < 200; ++i) {
            const double x = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
            CHECK(klstarstar.f(x) == doctest::Approx(kl.f(x)).epsilon(1e-12));
            CHECK(klstarstar.fprime(x) == doctest::Approx(kl.fprime(x)).epsilon(1e-10));
        }
    }

    SUBCASE("exact total variation is self-dual") {
        // f(x) = |1-x|  =>  f*(x) = x |1 - 1/x| = |x - 1|
        ConvexGenerator tv;
        tv.name = "tv_exact";
        tv.f = [](double x) { return std::abs(1.0 - x); };
        tv.fprime = [](double x) { return x > 1.0 ? 1.0 : -1.0; };
        const auto tvstar = dual(tv);
        Rng rng(8);
        for (int i = 0; i < 200; ++i) {
            const double x = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
            CHECK(tvstar.f(x) == doctest::Approx(tv.f(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("reduced divergence basics") {
    const auto kl = make_generator(GeneratorKind::kl);

    Eigen::VectorXd x(2), y(2);
    x << 0.5, 0.5;
    y << 0.25, 0.75;
    // 0.5 log 2 + 0.5 log(2/3)
    const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
    CHECK(reduced_divergence(x, y, kl) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(reduced_divergence(x, y, kl) ==
          doctest::Approx(divergence_bruteforce(x, y, kl)).epsilon(1e-15));

    CHECK(reduced_divergence(x, x, kl) == 0.0);

    Eigen::VectorXd bad = x;
    bad[0] = 0.0;
    CHECK_THROWS(reduced_divergence(bad, y, kl));
    Eigen::VectorXd shorter(1);
    shorter << 1.0;
    CHECK_THROWS(reduced_divergence(x, shorter, kl));
}

TEST_CASE("nonnegativity, identity of indiscernibles, bounds, duality on random rows") {
    Rng rng(12345);
    const auto kl = make_generator(GeneratorKind::kl);
    const auto hel = make_generator(GeneratorKind::hellinger);
    const auto tvs = make_generator(GeneratorKind::tv_smoothed);
    const auto klstar = dual(kl);
    const auto helstar = dual(hel);

    for (int i = 0; i < 10000; ++i) {
        const int n = 2 + rng.index(15);
        const auto x = random_row(rng, n);
        const auto y = random_row(rng, n);

        const double dkl = reduced_divergence(x, y, kl);
        const double dh = reduced_divergence(x, y, hel);
        const double dtv = reduced_divergence(x, y, tvs);
        CHECK(dkl >= 0.0);
        CHECK(dh >= 0.0);
        CHECK(dtv >= 0.0);
        CHECK(reduced_divergence(x, x, kl) == doctest::Approx(0.0).epsilon(1e-14));

        // d_f(p,q) = d_{f*}(q,p)
        CHECK(dkl == doctest::Approx(reduced_divergence(y, x, klstar)).epsilon(1e-12));
        CHECK(dh == doctest::Approx(reduced_divergence(y, x, helstar)).epsilon(1e-12));

        // f(1) <= d <= f(0) + f*(0), both limits finite for hellinger and tv
        CHECK(dh <= hel.f0 + hel.fstar0 + 1e-12);
        CHECK(dtv <= tvs.f0 + tvs.fstar0 + 1e-12);
    }
}

TEST_CASE("hellinger symmetry, KL asymmetry") {
    Rng rng(99);
    const auto kl = make_generator(GeneratorKind::kl);
    const auto hel = make_generator(GeneratorKind::hellinger);
    for (int i = 0; i < 1000; ++i) {
        const auto x = random_row(rng, 6);
        const auto y = random_row(rng, 6);
        CHECK(reduced_divergence(x, y, hel) ==
              doctest::Approx(reduced_divergence(y, x, hel)).epsilon(1e-12));
        // algebraic form 2 - 2 sum sqrt(x y)
        const double closed = 2.0 - 2.0 * (x.array() * y.array()).sqrt().sum();
        CHECK(reduced_divergence(x, y, hel) == doctest::Approx(closed).epsilon(1e-12));
    }
    Eigen::VectorXd x(2), y(2);
    x << 0.1, 0.9;
    y << 0.5, 0.5;
    CHECK(std::abs(reduced_divergence(x, y, kl) - reduced_divergence(y, x, kl)) > 1e-3);
}

TEST_CASE("limit-convention variant handles zeros") {
    const auto kl = make_generator(GeneratorKind::kl);
    const auto hel = make_generator(GeneratorKind::hellinger);
    const auto tvs = make_generator(GeneratorKind::tv_smoothed);

    Eigen::VectorXd x(3), y(3);
    x << 0.0, 0.5, 0.5;
    y << 0.2, 0.4, 0.4;

    // x_j = 0 terms contribute y_j * f*(0); zero for kl and hellinger
    const double dkl = reduced_divergence_limits(x, y, kl);
    Eigen::VectorXd xt(2), yt(2);
    xt << 0.5, 0.5;
    yt << 0.4, 0.4;
    CHECK(dkl == doctest::Approx(reduced_divergence(xt, yt, kl)).epsilon(1e-14));
    CHECK(reduced_divergence_limits(x, y, tvs) ==
          doctest::Approx(reduced_divergence(xt, yt, tvs) + 0.2 * tvs.fstar0).epsilon(1e-12));

    // y_j = 0 against x_j > 0: kl blows up, hellinger stays finite
    CHECK(std::isinf(reduced_divergence_limits(y, x, kl)));
    CHECK(reduced_divergence_limits(y, x, hel) ==
          doctest::Approx(2.0 - 2.0 * (x.array() * y.array()).sqrt().sum()).epsilon(1e-12));

    // agreement with the strict version on strictly positive rows
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_row(rng, 5);
        const auto b = random_row(rng, 5);
        CHECK(reduced_divergence_limits(a, b, kl) ==
              doctest::Approx(reduced_divergence(a, b, kl)).epsilon(1e-14));
    }
}

TEST_CASE("euclidean_sq") {
    Eigen::VectorXd x(2), y(2);
    x << 1.0, 0.0;
    y << 0.0, 1.0;
    CHECK(euclidean_sq(x, y) == 2.0);
    CHECK(euclidean_sq(x, x) == 0.0);
    CHECK(euclidean_sq(x, y) == euclidean_sq(y, x));
    Eigen::VectorXd z(3);
    CHECK_THROWS(euclidean_sq(x, z));
}

TEST_SUITE_END();
