#include "xyent/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

namespace xyent {
namespace {

    void require_gapped(const XYPoint &p) {
        const Regime r = classify(p);
        if(r.critical())
            throw DomainError(fmt::format("symbol is discontinuous at the critical point (gamma={}, h={})", p.gamma, p.h));
    }

    // g_hat(-nmax..nmax) on an M-point trapezoid grid
    std::vector<long double> trapezoid_coefficients(const XYPoint &p, long nmax, long M, long double &max_imag) {
        using LD = long double;
        std::vector<LD> re(static_cast<size_t>(2 * nmax + 1), 0.0L);
        std::vector<LD> im(re.size(), 0.0L);
        const LD        x = static_cast<LD>(p.h) / 2.0L;
        for(long j = 0; j < M; ++j) {
            const LD          th = 2.0L * std::numbers::pi_v<LD> * static_cast<LD>(j) / static_cast<LD>(M);
            std::complex<LD> g(x - std::cos(th), static_cast<LD>(p.gamma) * std::sin(th));
            g /= std::abs(g);
            // e^{-i n th} by recurrence from e^{-i th}
            const std::complex<LD> step(std::cos(th), -std::sin(th));
            std::complex<LD>       ph = std::conj(std::pow(step, static_cast<int>(nmax)));
            for(long n = -nmax; n <= nmax; ++n) {
                const auto v = g * ph;
                re[static_cast<size_t>(n + nmax)] += v.real();
                im[static_cast<size_t>(n + nmax)] += v.imag();
                ph *= step;
            }
        }
        max_imag = 0.0L;
        for(size_t i = 0; i < re.size(); ++i) {
            re[i] /= static_cast<LD>(M);
            max_imag = std::max(max_imag, std::abs(im[i]) / static_cast<LD>(M));
        }
        return re;
    }

} // namespace

std::vector<long double> symbol_fourier_coefficients(const XYPoint &p, long count) {
    if(count < 1) throw DomainError("need at least one coefficient");
    require_gapped(p);
    const long  nmax = count - 1;
    long        M    = std::max(min_symbol_grid, 16 * nmax);
    long double imag = 0.0L;
    auto        prev = trapezoid_coefficients(p, nmax, M, imag);
    while(true) {
        M *= 2;
        if(M > max_symbol_grid)
            throw NumericalError(fmt::format("symbol Fourier sums did not converge below grid {} (gamma={}, h={})", max_symbol_grid, p.gamma, p.h));
        auto        next = trapezoid_coefficients(p, nmax, M, imag);
        long double diff = 0.0L;
        for(size_t i = 0; i < next.size(); ++i) diff = std::max(diff, std::abs(next[i] - prev[i]));
        prev = std::move(next);
        if(diff < symbol_converge) break;
    }
    if(imag > symbol_converge)
        throw NumericalError(fmt::format("symbol Fourier coefficients have imaginary part {} (expected real)", imag));
    return prev;
}

double symbol_fourier(const XYPoint &p, long n, long grid_size) {
    require_gapped(p);
    const long  an   = std::abs(n);
    long        M    = std::max({grid_size, min_symbol_grid, 16 * an});
    long double imag = 0.0L;
    auto       prev = trapezoid_coefficients(p, an, M, imag);
    while(true) {
        M *= 2;
        if(M > max_symbol_grid) throw NumericalError("symbol Fourier sum did not converge");
        auto next = trapezoid_coefficients(p, an, M, imag);
        const auto i = static_cast<size_t>(n + an);
        const bool done = std::abs(next[i] - prev[i]) < symbol_converge;
        prev = std::move(next);
        if(done) break;
    }
    if(imag > symbol_converge) throw NumericalError("symbol Fourier coefficient is not real");
    return static_cast<double>(prev[static_cast<size_t>(n + an)]);
}

CorrelationBlock correlation_block(const XYPoint &p, long L) {
    if(L < 1) throw DomainError("block size must be >= 1");
    const auto coeff = symbol_fourier_coefficients(p, L);
    CorrelationBlock b{L, MatrixXld(L, L)};
    for(long j = 0; j < L; ++j)
        for(long l = 0; l < L; ++l) b.entries(j, l) = coeff[static_cast<size_t>(j - l + L - 1)];
    return b;
}

std::vector<long double> correlation_singular_values(const CorrelationBlock &block) {
    Eigen::JacobiSVD<MatrixXld> svd(block.entries);
    if(svd.info() != Eigen::Success) throw NumericalError("singular value decomposition failed");
    std::vector<long double> nu(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    for(long double &v : nu) {
        if(v < -nu_range_tolerance || v > 1.0L + nu_range_tolerance)
            throw NumericalError(fmt::format("correlation singular value {} outside [0, 1]", static_cast<double>(v)));
        v = std::clamp(v, 0.0L, 1.0L);
        if(v < 1e-14L) v = 0.0L;
    }
    return nu;
}

namespace {
    template<typename T>
    T binary_entropy(T nu) {
        const T p = T(0.5) * (T(1) + nu);
        const T q = T(0.5) * (T(1) - nu);
        T       s = 0;
        if(p > 0) s -= p * std::log(p);
        if(q > 0) s -= q * std::log(q);
        return s;
    }
} // namespace

double      mode_entropy(double nu) { return binary_entropy(nu); }
long double mode_entropy(long double nu) { return binary_entropy(nu); }

double toeplitz_block_entropy(const XYPoint &p, long L) {
    long double s = 0.0L;
    for(long double nu : correlation_singular_values(correlation_block(p, L))) s += mode_entropy(nu);
    return static_cast<double>(s);
}

Eigen::MatrixXd majorana_hamiltonian(const FiniteChain &c) {
    if(c.n_sites < 1) throw DomainError("chain needs at least one site");
    validate(c.point);
    const long      n = c.n_sites;
    const double    g = c.point.gamma;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    auto            set = [&A](long j, long k, double v) {
        A(j, k) += v;
        A(k, j) -= v;
    };
    for(long i = 0; i < n; ++i) {
        // -h sz_i = -h (-i a_x a_y)
        set(2 * i, 2 * i + 1, 2.0 * c.point.h);
        if(i + 1 < n) {
            // sx_i sx_{i+1} = -i a_{y,i} a_{x,i+1};  sy_i sy_{i+1} = i a_{x,i} a_{y,i+1}
            set(2 * i + 1, 2 * i + 2, 2.0 * (1.0 + g));
            set(2 * i, 2 * i + 3, -2.0 * (1.0 - g));
        }
    }
    return A;
}

Eigen::MatrixXd majorana_correlation(const FiniteChain &c) {
    const Eigen::MatrixXd A = majorana_hamiltonian(c);
    const Eigen::MatrixXcd Hm = std::complex<double>(0.0, 1.0) * A.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hm);
    if(es.info() != Eigen::Success) throw NumericalError("single-particle eigensolve failed");

    const auto  &ev    = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd sign(ev.size());
    for(Eigen::Index i = 0; i < ev.size(); ++i) {
        if(std::abs(ev(i)) < 1e-13 * scale)
            throw NumericalError(fmt::format("zero mode in the single-particle spectrum (|e| = {}); ground state degenerate", std::abs(ev(i))));
        sign(i) = ev(i) > 0 ? 1.0 : -1.0;
    }
    const Eigen::MatrixXcd sgn = es.eigenvectors() * sign.asDiagonal() * es.eigenvectors().adjoint();
    // <a a^T> = 1 + sgn(iA), Gamma = -i sgn(iA)
    return sgn.imag();
}

double block_entropy_from_correlation(const Eigen::MatrixXd &gamma_matrix, const SiteRange &block) {
    const long n_sites = gamma_matrix.rows() / 2;
    if(block.first < 1 || block.last > n_sites || block.first > block.last)
        throw DomainError(fmt::format("block [{}..{}] not inside chain of {} sites", block.first, block.last, n_sites));
    const long            l  = block.length();
    const Eigen::MatrixXd GB = gamma_matrix.block(2 * (block.first - 1), 2 * (block.first - 1), 2 * l, 2 * l);

    // i Gamma_B is Hermitian with eigenvalues +/- nu
    const Eigen::MatrixXcd HB = std::complex<double>(0.0, 1.0) * GB.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(HB, Eigen::EigenvaluesOnly);
    if(es.info() != Eigen::Success) throw NumericalError("block correlation eigensolve failed");
    std::vector<double> nu(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(nu.begin(), nu.end(), std::greater<>());
    double s = 0.0;
    for(long i = 0; i < l; ++i) {
        const double v = nu[static_cast<size_t>(i)];
        if(v < -nu_range_tolerance || v > 1.0 + nu_range_tolerance)
            throw NumericalError(fmt::format("block correlation eigenvalue {} outside [0, 1]", v));
        s += mode_entropy(std::clamp(v, 0.0, 1.0));
    }
    return s;
}

double bdg_finite_chain_entropy(const FiniteChain &c, const SiteRange &block) {
    if(block.first < 1 || block.last > c.n_sites || block.first > block.last)
        throw DomainError(fmt::format("block [{}..{}] not inside chain of {} sites", block.first, block.last, c.n_sites));
    return block_entropy_from_correlation(majorana_correlation(c), block);
}

Eigen::MatrixXd spin_hamiltonian(const FiniteChain &c) {
    validate(c.point);
    if(c.n_sites < 1 || c.n_sites > max_ed_sites)
        throw DomainError(fmt::format("exact diagonalization supports 1..{} sites (got {})", max_ed_sites, c.n_sites));
    const long      n   = c.n_sites;
    const long      dim = 1L << n;
    const double    g   = c.point.gamma;
    Eigen::MatrixXd H   = Eigen::MatrixXd::Zero(dim, dim);
    for(long s = 0; s < dim; ++s) {
        double diag = 0.0;
        for(long i = 0; i < n; ++i) diag -= c.point.h * (((s >> i) & 1) ? -1.0 : 1.0);
        H(s, s) = diag;
        for(long i = 0; i + 1 < n; ++i) {
            const bool same = ((s >> i) & 1) == ((s >> (i + 1)) & 1);
            // sx sx flips both with +1; sy sy flips both with -1 (aligned) or +1 (anti)
            const double amp = -((1.0 + g) + (1.0 - g) * (same ? -1.0 : 1.0));
            H(s ^ (3L << i), s) += amp;
        }
    }
    return H;
}

GroundState ed_ground_state(const FiniteChain &c) {
    const Eigen::MatrixXd H   = spin_hamiltonian(c);
    const long            dim = H.rows();

    struct Sector {
        std::vector<long> states;
        Eigen::MatrixXd   evecs;
    };
    std::array<Sector, 2> sectors;
    for(long s = 0; s < dim; ++s) sectors[static_cast<size_t>(std::popcount(static_cast<unsigned long>(s)) & 1)].states.push_back(s);

    std::vector<std::pair<double, int>> levels;
    for(int q = 0; q < 2; ++q) {
        auto &sec = sectors[static_cast<size_t>(q)];
        if(sec.states.empty()) continue;
        const auto      m = static_cast<Eigen::Index>(sec.states.size());
        Eigen::MatrixXd Hs(m, m);
        for(Eigen::Index a = 0; a < m; ++a)
            for(Eigen::Index b = 0; b < m; ++b) Hs(a, b) = H(sec.states[static_cast<size_t>(a)], sec.states[static_cast<size_t>(b)]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
        if(es.info() != Eigen::Success) throw NumericalError("sector eigensolve failed");
        sec.evecs = es.eigenvectors().leftCols(1);
        for(Eigen::Index i = 0; i < std::min<Eigen::Index>(2, m); ++i) levels.emplace_back(es.eigenvalues()(i), q);
    }
    std::sort(levels.begin(), levels.end());

    GroundState gs;
    gs.energy     = levels[0].first;
    gs.gap        = levels.size() > 1 ? levels[1].first - levels[0].first : std::numeric_limits<double>::infinity();
    gs.degenerate = gs.gap < degeneracy_tolerance * std::max(1.0, std::abs(gs.energy));

    const auto &sec = sectors[static_cast<size_t>(levels[0].second)];
    gs.psi          = Eigen::VectorXd::Zero(dim);
    for(size_t a = 0; a < sec.states.size(); ++a) gs.psi(sec.states[a]) = sec.evecs(static_cast<Eigen::Index>(a), 0);
    return gs;
}

EdResult exact_diag_entropy(const FiniteChain &c, const SiteRange &block) {
    if(block.first < 1 || block.last > c.n_sites || block.first > block.last)
        throw DomainError(fmt::format("block [{}..{}] not inside chain of {} sites", block.first, block.last, c.n_sites));
    const auto gs = ed_ground_state(c);
    return {state_block_entropy(gs.psi, c.n_sites, block), gs.energy, gs.gap, gs.degenerate};
}

double state_subsystem_entropy(const Eigen::VectorXd &psi, long n_sites, const std::vector<long> &sites) {
    if(n_sites < 1 || n_sites > 30 || psi.size() != (1L << n_sites)) throw DomainError("state vector size does not match 2^N");
    long mask = 0;
    for(long s : sites) {
        if(s < 0 || s >= n_sites || ((mask >> s) & 1)) throw DomainError("subsystem sites must be distinct and inside the chain");
        mask |= 1L << s;
    }
    if(sites.empty() || static_cast<long>(sites.size()) == n_sites) return 0.0;

    std::vector<long> rest;
    for(long s = 0; s < n_sites; ++s)
        if(!((mask >> s) & 1)) rest.push_back(s);
    auto gather = [](long state, const std::vector<long> &which) {
        long idx = 0;
        for(size_t i = 0; i < which.size(); ++i) idx |= ((state >> which[i]) & 1) << i;
        return idx;
    };

    // psi reshaped to (subsystem, rest)
    Eigen::MatrixXd M(1L << sites.size(), 1L << rest.size());
    for(long s = 0; s < psi.size(); ++s) M(gather(s, sites), gather(s, rest)) = psi(s);
    const Eigen::MatrixXd rho = M * M.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    if(es.info() != Eigen::Success) throw NumericalError("reduced density matrix eigensolve failed");
    double s = 0.0;
    for(double p : es.eigenvalues())
        if(p > 0.0) s -= p * std::log(p);
    return s;
}

double state_block_entropy(const Eigen::VectorXd &psi, long n_sites, const SiteRange &block) {
    if(block.first < 1 || block.last > n_sites || block.first > block.last) throw DomainError("block not inside chain");
    std::vector<long> sites;
    for(long s = block.first - 1; s < block.last; ++s) sites.push_back(s);
    return state_subsystem_entropy(psi, n_sites, sites);
}

Eigen::VectorXd product_state_vector(const FactorizedState &fs, long n_sites) {
    if(n_sites < 1 || n_sites > max_ed_sites) throw DomainError("product state size outside 1..12 sites");
    const long      dim = 1L << n_sites;
    Eigen::VectorXd psi(dim);
    for(long s = 0; s < dim; ++s) {
        double amp = 1.0;
        for(long i = 0; i < n_sites; ++i) {
            const auto [up, down] = fs.site_amplitudes(i);
            amp *= ((s >> i) & 1) ? down : up;
        }
        psi(s) = amp;
    }
    return psi;
}

} // namespace xyent
