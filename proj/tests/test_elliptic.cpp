#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "xyent/elliptic.hpp"
#include "xyent/quadrature.hpp"

using namespace xyent;
using xyent::reference::elliptic_K_quadrature;

namespace {
std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> v;
    for(int i = 0; i < n; ++i) v.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return v;
}
} // namespace

TEST_CASE("I(0) is pi/2 without iterating") {
    const auto r = complete_elliptic_K_agm(0.0);
    CHECK(r.value == std::numbers::pi / 2.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("I(1/sqrt2) lemniscatic value") {
    const double k     = 1.0 / std::sqrt(2.0);
    const double g     = std::tgamma(0.25);
    const double exact = g * g / (4.0 * std::sqrt(std::numbers::pi));
    const double quad  = elliptic_K_quadrature(k);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-13));
    CHECK(exact == doctest::Approx(1.8540746773013719).epsilon(1e-15));
    CHECK(std::abs(complete_elliptic_K(k) - exact) < 1e-14);
}

TEST_CASE("I(0.99) against quadrature and the log asymptote") {
    const double quad = elliptic_K_quadrature(0.99);
    CHECK(quad == doctest::Approx(3.3566005233611923).epsilon(1e-12));
    CHECK(complete_elliptic_K(0.99) == doctest::Approx(quad).epsilon(1e-13));
    const double kp = std::sqrt(1.0 - 0.99 * 0.99);
    CHECK(std::abs(complete_elliptic_K(0.99) / std::log(4.0 / kp) - 1.0) < 4e-3);
}

TEST_CASE("AGM matches quadrature on a log grid") {
    for(double k : log_grid(1e-8, 1.0 - 1e-8, 40)) {
        const double ref = elliptic_K_quadrature(k);
        CHECK(std::abs(complete_elliptic_K(k) - ref) / ref < 1e-10);
    }
    for(double kp : log_grid(1e-8, 0.5, 25)) {
        const double ref = reference::elliptic_K_quadrature_complement(kp);
        CHECK(std::abs(complete_elliptic_K_from_complement(kp).value - ref) / ref < 1e-10);
    }
}

TEST_CASE("AGM agrees with the standard library's comp_ellint_1") {
    for(double k : {1e-6, 0.1, 0.5, 0.9, 0.999})
        CHECK(complete_elliptic_K(k) == doctest::Approx(std::comp_ellint_1(k)).epsilon(1e-14));
    // near k = 1 the library routine works from k directly and loses a few digits
    CHECK(complete_elliptic_K(0.999999) == doctest::Approx(std::comp_ellint_1(0.999999)).epsilon(1e-12));
}

TEST_CASE("AGM converges in at most 10 iterations") {
    int worst = 0;
    for(double k : log_grid(1e-12, 0.5, 30)) worst = std::max(worst, complete_elliptic_K_agm(k).iterations);
    for(double kp : log_grid(2e-6, 0.5, 30)) worst = std::max(worst, complete_elliptic_K_agm(std::sqrt(1.0 - kp * kp)).iterations);
    worst = std::max(worst, complete_elliptic_K_agm(1.0 - 1.5e-12).iterations);
    CHECK(worst <= 10);
    CHECK(complete_elliptic_K_agm(0.5).achieved_tol <= 1e-15);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(complete_elliptic_K(-1e-3), DomainError);
    CHECK_THROWS_AS(complete_elliptic_K(1.0), DomainError);
    CHECK_THROWS_AS(complete_elliptic_K(1.0 - 1e-13), DomainError);
    CHECK_THROWS_AS(complete_elliptic_K(std::nan("")), DomainError);
    CHECK_THROWS_AS(elliptic_bundle(0.0), DomainError);
    CHECK_THROWS_AS(elliptic_bundle(1.0), DomainError);
    CHECK_THROWS_AS(elliptic_bundle(0.6, 0.6), DomainError);
    CHECK_THROWS_AS(complete_elliptic_K_from_complement(0.0), DomainError);
}

TEST_CASE("I(k) increasing and tau0 decreasing") {
    // below k ~ 1e-7 the k^2/4 correction to pi/2 is under one ulp
    const auto ks = log_grid(1e-6, 1.0 - 1e-9, 200);
    for(size_t i = 1; i < ks.size(); ++i) {
        CHECK(complete_elliptic_K(ks[i]) > complete_elliptic_K(ks[i - 1]));
        CHECK(elliptic_bundle(ks[i]).tau0 < elliptic_bundle(ks[i - 1]).tau0);
    }
}

TEST_CASE("bundle invariants") {
    for(double k : log_grid(1e-6, 0.999999, 50)) {
        const auto e = elliptic_bundle(k);
        CHECK(std::abs(e.k * e.k + e.k_prime * e.k_prime - 1.0) < 1e-14);
        CHECK(e.I_k >= std::numbers::pi / 2.0);
        CHECK(e.I_kprime >= std::numbers::pi / 2.0);
        CHECK(e.tau0 > 0.0);
        CHECK(e.achieved_tol < 1e-14);
    }
}

TEST_CASE("tau0 self-duality") {
    CHECK(elliptic_bundle(1.0 / std::sqrt(2.0)).tau0 == doctest::Approx(1.0).epsilon(1e-15));
    // k' must itself be representable to ~1e-16 relative for the single
    // argument form; both members are recomputed from their own modulus
    for(double k : log_grid(0.01, 0.99, 50)) {
        const double kp = std::sqrt((1.0 - k) * (1.0 + k));
        CHECK(std::abs(elliptic_bundle(k).tau0 * elliptic_bundle(kp).tau0 - 1.0) < 1e-12);
    }
    for(double k : log_grid(1e-7, 0.01, 20)) {
        const double kp = std::sqrt((1.0 - k) * (1.0 + k));
        CHECK(std::abs(elliptic_bundle(k, kp).tau0 * elliptic_bundle(kp, k).tau0 - 1.0) < 1e-15);
    }
}

TEST_CASE("tau0 at small k") {
    for(double k : {1e-3, 1e-4}) {
        // I(k') parametrized by its own complement k, exact in double
        const double ref = reference::elliptic_K_quadrature_complement(k) / elliptic_K_quadrature(k);
        CHECK(elliptic_bundle(k).tau0 == doctest::Approx(ref).epsilon(1e-10));
        // tau0 ~ (2/pi) ln(4/k) with O(k^2) corrections
        CHECK(elliptic_bundle(k).tau0 == doctest::Approx(2.0 / std::numbers::pi * std::log(4.0 / k)).epsilon(1e-5));
    }
    const double ref = elliptic_K_quadrature(std::sqrt(1.0 - 0.81)) / elliptic_K_quadrature(0.9);
    CHECK(elliptic_bundle(0.9).tau0 == doctest::Approx(ref).epsilon(1e-12));
}
