#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "xyent/entropy_limit.hpp"
#include "xyent/oracle.hpp"

using namespace xyent;

namespace {
constexpr double ln2 = std::numbers::ln2;
}

TEST_CASE("symbol of a huge field is constant") {
    const XYPoint p{0.5, 1e6};
    CHECK(symbol_fourier(p, 0) == doctest::Approx(1.0).epsilon(1e-6));
    for(long n : {-3, -1, 1, 2, 5}) CHECK(std::abs(symbol_fourier(p, n)) < 1e-5);
}

TEST_CASE("Ising zero-field symbol is a single harmonic") {
    // gamma = 1, h = 0: g(theta) = -cos + i sin = -e^{-i theta}
    const XYPoint p{1.0, 0.0};
    CHECK(symbol_fourier(p, -1) == doctest::Approx(-1.0).epsilon(1e-13));
    for(long n : {-3, -2, 0, 1, 2, 3}) CHECK(std::abs(symbol_fourier(p, n)) < 1e-13);
}

TEST_CASE("symbol coefficients are stable under grid refinement") {
    const XYPoint p{0.5, 1.0};
    const double  coarse = symbol_fourier(p, 0, 256);
    const double  fine   = symbol_fourier(p, 0, 8192);
    CHECK(std::abs(coarse - fine) < 1e-12);

    // and agree with a plain double-precision trapezoid sum on a large grid
    const long M   = 1 << 14;
    double     ref = 0.0;
    for(long j = 0; j < M; ++j) {
        const double         th = 2.0 * std::numbers::pi * j / M;
        std::complex<double> g(0.5 - std::cos(th), 0.5 * std::sin(th));
        ref += (g / std::abs(g) * std::polar(1.0, -3.0 * th)).real() / M;
    }
    CHECK(symbol_fourier(p, 3) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("critical symbols are rejected") {
    CHECK_THROWS_AS(symbol_fourier({0.5, 2.0}, 0), DomainError);
    CHECK_THROWS_AS(toeplitz_block_entropy({0.5, 2.0}, 10), DomainError);
    CHECK_THROWS_AS(correlation_block({0.5, 1.0}, 0), DomainError);
}

TEST_CASE("correlation block structure") {
    const auto b = correlation_block({0.5, 1.0}, 12);
    CHECK(b.size == 12);
    for(long j = 1; j < 12; ++j)
        for(long l = 1; l < 12; ++l) CHECK(b.entries(j, l) == b.entries(j - 1, l - 1));
    for(long double nu : correlation_singular_values(b)) {
        CHECK(nu >= 0.0L);
        CHECK(nu <= 1.0L);
    }
}

TEST_CASE("Toeplitz entropy examples") {
    CHECK(toeplitz_block_entropy({0.5, 1e6}, 1) < 1e-10);

    const XYPoint p{0.5, 1.0};
    const double  s20 = toeplitz_block_entropy(p, 20);
    const double  s40 = toeplitz_block_entropy(p, 40);
    const double  s80 = toeplitz_block_entropy(p, 80);
    CHECK(s20 <= s40 + 1e-13);
    CHECK(s40 <= s80 + 1e-13);
    CHECK(std::abs(s80 - entropy_closed_form(p).value) < 1e-3);

    CHECK(std::abs(toeplitz_block_entropy({0.5, std::sqrt(3.0)}, 60) - ln2) < 1e-4);
}

TEST_CASE("Toeplitz S_L grows toward the limit near criticality") {
    const XYPoint p{0.5, 1.9};
    const double  limit = entropy_closed_form(p).value;
    double        prev  = 0.0;
    double        prev_gap = 1.0;
    for(long L : {5, 10, 20, 40}) {
        const double s = toeplitz_block_entropy(p, L);
        CHECK(s >= prev);
        CHECK(limit - s < prev_gap);
        prev_gap = limit - s;
        prev     = s;
    }
}

TEST_CASE("BdG examples") {
    const FiniteChain c2{2, {0.5, 4.0}};
    const double      bdg = bdg_finite_chain_entropy(c2, {1, 1});
    CHECK(bdg < 0.05);
    CHECK(std::abs(bdg - exact_diag_entropy(c2, {1, 1}).entropy) < 1e-10);

    for(long n : {3, 7, 20})
        CHECK(bdg_finite_chain_entropy({n, {0.5, 1.0}}, {1, n}) < 1e-10);

    const FiniteChain c10{10, {0.5, 1.0}};
    CHECK(std::abs(bdg_finite_chain_entropy(c10, {3, 7}) - exact_diag_entropy(c10, {3, 7}).entropy) < 1e-8);

    CHECK_THROWS_AS(bdg_finite_chain_entropy(c10, {0, 3}), DomainError);
    CHECK_THROWS_AS(bdg_finite_chain_entropy(c10, {4, 11}), DomainError);
}

TEST_CASE("Majorana Hamiltonian reproduces the spin spectrum") {
    // ground energy of H = (i/4) a^T A a is -(1/2) sum of positive single-particle energies
    for(const XYPoint p : {XYPoint{0.5, 1.0}, XYPoint{0.3, 2.7}, XYPoint{1.0, 0.4}}) {
        const FiniteChain                             c{6, p};
        const Eigen::MatrixXd                         A = majorana_hamiltonian(c);
        CHECK((A + A.transpose()).norm() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(std::complex<double>(0, 1) * A.cast<std::complex<double>>());
        double                                        e0 = 0.0;
        for(double e : es.eigenvalues())
            if(e > 0) e0 -= 0.5 * e;
        CHECK(e0 == doctest::Approx(ed_ground_state(c).energy).epsilon(1e-12));
    }
}

TEST_CASE("long BdG chains approach the infinite-chain block entropy") {
    const XYPoint p{0.5, 2.5};
    const double  inf_chain = toeplitz_block_entropy(p, 8);
    const double  open      = bdg_finite_chain_entropy({200, p}, {97, 104});
    CHECK(std::abs(open - inf_chain) < 1e-8);
}

TEST_CASE("ED examples") {
    CHECK(exact_diag_entropy({1, {0.5, 1.0}}, {1, 1}).entropy < 1e-14);
    const FiniteChain c8{8, {0.5, 1.0}};
    const auto        ed = exact_diag_entropy(c8, {1, 4});
    CHECK_FALSE(ed.degenerate);
    CHECK(std::abs(ed.entropy - bdg_finite_chain_entropy(c8, {1, 4})) < 1e-8);
    CHECK_THROWS_AS(exact_diag_entropy({13, {0.5, 1.0}}, {1, 2}), DomainError);
    CHECK_THROWS_AS(exact_diag_entropy(c8, {5, 9}), DomainError);
}

TEST_CASE("product states have zero entropy through the partial trace") {
    // the open two-spin chain's ground state is not itself a product state
    // (edge spins miss a neighbor), so the factorized state is traced directly
    const auto fs  = factorized_state(0.5);
    const auto psi = product_state_vector(fs, 2);
    CHECK(state_block_entropy(psi, 2, {1, 1}) < 1e-14);
    CHECK(state_block_entropy(psi, 2, {2, 2}) < 1e-14);
}

TEST_CASE("degenerate ground states are flagged") {
    // classical Ising ferromagnet: all-right and all-left are degenerate
    const FiniteChain c{6, {1.0, 0.0}};
    const auto        ed = exact_diag_entropy(c, {1, 3});
    CHECK(ed.degenerate);
    CHECK(ed.gap < 1e-10);
    CHECK_THROWS_AS(bdg_finite_chain_entropy(c, {1, 3}), NumericalError);
}

TEST_CASE("ED and BdG agree on every block, entropy equals that of the complement") {
    std::mt19937_64                        rng(5);
    std::uniform_real_distribution<double> ug(0.1, 1.0), uh(0.0, 4.0);
    for(int trial = 0; trial < 12; ++trial) {
        const XYPoint p{ug(rng), uh(rng)};
        if(classify(p).critical()) continue;
        const long        n = 3 + trial % 6;
        const FiniteChain c{n, p};
        const auto        gs = ed_ground_state(c);
        if(gs.degenerate || gs.gap < 1e-6) continue;
        const auto G = majorana_correlation(c);
        for(long a = 1; a <= n; ++a)
            for(long b = a; b <= n; ++b) {
                const double    ed = state_block_entropy(gs.psi, n, {a, b});
                std::vector<long> comp;
                for(long s = 0; s < n; ++s)
                    if(s < a - 1 || s >= b) comp.push_back(s);
                CHECK(std::abs(ed - block_entropy_from_correlation(G, {a, b})) < 1e-8);
                CHECK(std::abs(ed - state_subsystem_entropy(gs.psi, n, comp)) < 1e-10);
            }
    }
}

TEST_CASE("mode entropy") {
    CHECK(mode_entropy(0.0) == doctest::Approx(ln2).epsilon(1e-15));
    CHECK(mode_entropy(1.0) == 0.0);
    CHECK(mode_entropy(0.5) == doctest::Approx(-0.75 * std::log(0.75) - 0.25 * std::log(0.25)).epsilon(1e-15));
}
