#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "xyent/entropy_limit.hpp"

using namespace xyent;

namespace {
constexpr double ln2 = std::numbers::ln2;

// Direct evaluation of (1+l) ln(2/(1+l)) + (1-l) ln(2/(1-l)) in long double.
long double pair_term_direct(long double l) { return (1 + l) * std::log(2 / (1 + l)) + (1 - l) * std::log(2 / (1 - l)); }

// Closed forms evaluated with the standard library's elliptic integral, an
// independent route from the AGM used in production.
double closed_form_reference(double k, double kp, int sigma) {
    const double prod = 4.0 * std::comp_ellint_1(k) * std::comp_ellint_1(kp) / std::numbers::pi;
    if(sigma == 1) return (std::log(k * k / (16.0 * kp)) + (1.0 - k * k / 2.0) * prod) / 6.0 + ln2;
    return (std::log(16.0 / (k * k * kp * kp)) + (k * k - kp * kp) * prod) / 12.0;
}
} // namespace

TEST_CASE("lambda_m values") {
    CHECK(lambda_m(0, {1, 0.37}) == 0.0);
    CHECK(lambda_m(0, {1, 5.0}) == 0.0);
    const long double ref = std::tanh(std::numbers::pi_v<long double> / 2);
    CHECK(lambda_m(0, {0, 1.0}) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-15));
    CHECK(lambda_m(0, {0, 1.0}) == doctest::Approx(0.9171523356672744).epsilon(1e-15));
    CHECK(lambda_m(-3, {1, 0.4}) == -lambda_m(3, {1, 0.4}));
    CHECK_THROWS_AS(lambda_m(1, {1, 0.0}), DomainError);
    CHECK_THROWS_AS(lambda_m(1, {2, 1.0}), DomainError);
}

TEST_CASE("lambda_m increases towards 1 with the tanh asymptote") {
    for(int sigma : {0, 1})
        for(double tau0 : {0.05, 0.3, 1.0, 3.0}) {
            const SpectrumParams sp{sigma, tau0, 1e-12};
            double               prev = -1.0;
            for(long m = 0; m < 40; ++m) {
                const double l = lambda_m(m, sp);
                CHECK(l >= 0.0);
                CHECK(l <= 1.0);
                if(l < 1.0) CHECK(l > prev);
                prev = l;
                const double x  = (m + 0.5 * (1 - sigma)) * std::numbers::pi * tau0;
                const double om = one_minus_lambda_m(m, sp);
                CHECK(om == doctest::Approx(static_cast<double>(1.0L - std::tanh(static_cast<long double>(x)))).epsilon(1e-12));
                if(x > 5.0) CHECK(om == doctest::Approx(2.0 * std::exp(-2.0 * x)).epsilon(1e-4));
            }
        }
}

TEST_CASE("pair term matches the direct formula and stays positive") {
    for(double x : {1e-6, 0.01, 0.3, 1.0, 2.0, 5.0, 10.0}) {
        const long double l = std::tanh(static_cast<long double>(x));
        CHECK(pair_term(x) == doctest::Approx(static_cast<double>(pair_term_direct(l))).epsilon(1e-12));
        CHECK(pair_term(x) > 0.0);
    }
    CHECK(pair_term(0.0) == doctest::Approx(2.0 * ln2).epsilon(1e-15));
    // far tail: no cancellation, no underflow to a negative number
    CHECK(pair_term(200.0) > 0.0);
    CHECK(pair_term(200.0) == doctest::Approx(2.0 * (1.0 + 400.0) * std::exp(-400.0)).epsilon(1e-10));
}

TEST_CASE("pair terms decay with ratio exp(-2 pi tau0)") {
    for(int sigma : {0, 1})
        for(double tau0 : {0.2, 0.7, 1.5}) {
            const double d     = std::numbers::pi * tau0;
            const long   m     = 60;
            const double x     = (m + 0.5 * (1 - sigma)) * d;
            if(2.0 * (x + d) > 600) continue;
            const double ratio = pair_term(x + d) / pair_term(x);
            CHECK(ratio == doctest::Approx(std::exp(-2.0 * d)).epsilon(0.05));
            CHECK(ratio < 1.0);
        }
}

TEST_CASE("series examples") {
    CHECK(entropy_series({0.5, std::sqrt(3.0)}).value == ln2);
    const auto s = entropy_series({0.5, 1.0});
    CHECK(s.method == Method::Series);
    CHECK(s.terms_used > 1);
    CHECK(s.tail_bound < 1e-14);
    CHECK(std::abs(s.value - entropy_closed_form({0.5, 1.0}).value) <= 1e-10);

    double prev = entropy_series({0.5, 3.0}).value;
    for(double h : {4.0, 8.0, 16.0, 64.0, 256.0, 1024.0, 1e5}) {
        const double v = entropy_series({0.5, h}).value;
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("tail bound is sound") {
    for(double tol : {1e-12, 1e-6, 1e-3})
        for(int sigma : {0, 1})
            for(double tau0 : {0.05, 0.2, 0.8, 2.0}) {
                const SpectrumParams sp{sigma, tau0, tol};
                const auto           base  = entropy_series_spectrum(sp);
                const auto           extra = entropy_series_spectrum(sp, 10);
                CHECK(extra.terms_used == base.terms_used + 10);
                CHECK(extra.value - base.value >= 0.0);
                // a few ulps of summation roundoff on top of the analytic bound
                CHECK(extra.value - base.value <= base.tail_bound + 4.0 * std::numeric_limits<double>::epsilon() * extra.value);
            }
}

TEST_CASE("series and closed form agree on a grid off the guard band") {
    for(int i = 0; i <= 38; ++i) {
        const double g = 0.05 + 0.025 * i;
        for(int j = 0; j <= 120; ++j) {
            const XYPoint p{g, 0.05 * j};
            if(std::abs(p.h - 2.0) < 0.05) continue;
            const auto s = entropy_series(p);
            const auto c = entropy_closed_form(p);
            CHECK(std::abs(s.value - c.value) <= 1e-10 + 10.0 * s.tail_bound);
            CHECK(c.value > 0.0);
        }
    }
}

TEST_CASE("closed form matches an independent elliptic implementation") {
    for(const XYPoint p : {XYPoint{0.5, 1.0}, XYPoint{0.5, 1.9}, XYPoint{0.5, 3.0}, XYPoint{0.2, 0.3}, XYPoint{1.0, 1.5}, XYPoint{0.9, 7.0}}) {
        const Regime  r = classify(p);
        const Modulus m = modulus(p, r);
        CHECK(entropy_closed_form(p).value == doctest::Approx(closed_form_reference(m.k, m.k_prime, r.sigma)).epsilon(1e-13));
    }
}

TEST_CASE("closed form special points") {
    CHECK(entropy_closed_form({0.5, std::sqrt(3.0)}).value == ln2);
    for(double g : {0.1, 0.5, 1.0}) {
        const double h = 2.0 * std::sqrt(1.0 + g * g);
        CHECK(std::abs(entropy_closed_form({g, h}).value - 0.5 * ln2) < 1e-12);
    }
    // gamma = 1, h = 0: both Ising product states, limiting entropy ln 2
    CHECK(entropy_closed_form({1.0, 0.0}).value == ln2);
}

TEST_CASE("local minimum ln 2 at the factorizing field") {
    for(double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double hf = factorizing_field(g);
        for(double d : {1e-6, -1e-6}) {
            const double s = entropy_closed_form({g, hf + d}).value;
            CHECK(s >= ln2);
            CHECK(s <= ln2 + 1e-4);
        }
        for(double step : {1e-2, 1e-3}) {
            const double second = entropy_closed_form({g, hf - step}).value + entropy_closed_form({g, hf + step}).value - 2.0 * ln2;
            CHECK(second > 0.0);
        }
    }
}

TEST_CASE("critical points raise DivergenceError with an infinite estimate") {
    for(const XYPoint p : {XYPoint{0.5, 2.0}, XYPoint{1e-10, 0.5}}) {
        try {
            (void)entropy_series(p);
            FAIL("expected DivergenceError");
        } catch(const DivergenceError &e) {
            CHECK(std::isinf(e.estimate().value));
            CHECK(e.estimate().divergent);
        }
        CHECK_THROWS_AS(entropy_closed_form(p), DivergenceError);
    }
}

TEST_CASE("near-critical asymptote") {
    // S + (1/3) ln k' -> (2/3) ln 2 from both sides
    for(double d : {1e-8, -1e-8}) {
        const XYPoint p{0.5, 2.0 + d};
        const double  kp = modulus(p, classify(p)).k_prime;
        CHECK(entropy_closed_form(p).value + std::log(kp) / 3.0 == doctest::Approx(2.0 * ln2 / 3.0).epsilon(1e-5));
        const auto a = entropy_asymptotic_near_h2(p);
        CHECK(a.method == Method::Asymptotic);
        CHECK_FALSE(a.divergent);
        CHECK(std::abs(a.value - entropy_closed_form(p).value) < 1e-5);
    }

    std::vector<double> xs, ys;
    for(int j = 2; j <= 6; ++j) {
        const XYPoint p{0.5, 2.0 - std::pow(10.0, -j)};
        xs.push_back(-std::log(modulus(p, classify(p)).k_prime));
        ys.push_back(entropy_closed_form(p).value);
    }
    double mx = 0, my = 0;
    for(size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / 5.0;
        my += ys[i] / 5.0;
    }
    double sxy = 0, sxx = 0;
    for(size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    CHECK(std::abs(sxy / sxx - 1.0 / 3.0) * 3.0 < 0.02);

    // divergence as k' -> 0, stopping short of the classification band
    double prev = 0.0;
    for(int j = 2; j <= 8; ++j) {
        const double s = entropy_closed_form({0.5, 2.0 + std::pow(10.0, -j)}).value;
        CHECK(s > prev);
        prev = s;
    }
    CHECK(prev > 3.0);

    CHECK(std::isinf(entropy_asymptotic_near_h2({0.5, 2.0}).value));
    CHECK(entropy_asymptotic_near_h2({0.5, 2.0}).divergent);
    CHECK_THROWS_AS(entropy_asymptotic_near_h2({0.5, 2.2}), DomainError);
    CHECK_THROWS_AS(entropy_asymptotic_near_h2({0.05, 1.97}), DomainError); // Case 1b
}

TEST_CASE("the two sides of h = 2 differ only at O(1) at equal k'") {
    // pick fields on each side with the same k'
    const double g = 0.5, kp = 1e-3;
    // Case 1a: k'^2 = (1 - x^2)/g^2;  Case 2: k'^2 = (x^2 - 1)/(x^2 + g^2 - 1)
    const double x1 = std::sqrt(1.0 - g * g * kp * kp);
    const double x2 = std::sqrt((1.0 - kp * kp * (1.0 - g * g)) / (1.0 - kp * kp));
    const XYPoint p1{g, 2.0 * x1}, p2{g, 2.0 * x2};
    REQUIRE(classify(p1).label == CaseLabel::Case1a);
    REQUIRE(classify(p2).label == CaseLabel::Case2);
    CHECK(modulus(p1, classify(p1)).k_prime == doctest::Approx(kp).epsilon(1e-8));
    CHECK(modulus(p2, classify(p2)).k_prime == doctest::Approx(kp).epsilon(1e-8));
    const double s1 = entropy_closed_form(p1).value, s2 = entropy_closed_form(p2).value;
    CHECK(s1 > 2.0);
    CHECK(std::abs(s1 - s2) < 1e-4);
}
