#pragma once

// Independent finite-size ground truth for the limiting entropy:
//
//  * infinite chain, finite block: Toeplitz matrix built from the Fourier
//    coefficients of the ground-state symbol g(theta);
//  * open chain of N spins: Jordan-Wigner + quadratic (Majorana) diagonalization;
//  * open chain of N <= 12 spins: dense exact diagonalization and a literal
//    partial trace.

#include <vector>

#include <Eigen/Dense>

#include "xyent/model.hpp"

namespace xyent {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// T_{jl} = g_hat(j - l) for a block of `size` consecutive sites. Held in
/// extended precision: most singular values sit within 1e-16 of 1, and double
/// rounding there biases S_L by ~3e-14 per site.
struct CorrelationBlock {
    long       size = 0;
    MatrixXld entries;
};

inline constexpr long   min_symbol_grid    = 256;
inline constexpr long   max_symbol_grid    = 1L << 22;
inline constexpr double symbol_converge    = 1e-12;
inline constexpr double nu_range_tolerance = 1e-10;

/// Fourier coefficient g_hat(n) = (1/2pi) int g(theta) e^{-i n theta} dtheta of
///   g(theta) = (h/2 - cos theta + i gamma sin theta) / |h/2 - cos theta + i gamma sin theta|
/// by the trapezoidal rule on a uniform grid, doubled until converged.
double symbol_fourier(const XYPoint &p, long n, long grid_size = min_symbol_grid);

/// g_hat(n) for n = -(count-1) .. count-1, index n + count - 1. One grid
/// refinement loop serves all coefficients.
std::vector<long double> symbol_fourier_coefficients(const XYPoint &p, long count);

CorrelationBlock correlation_block(const XYPoint &p, long L);

/// Singular values of the block in descending order, after the [0, 1] range
/// check and clamping.
std::vector<long double> correlation_singular_values(const CorrelationBlock &block);

/// H((1 + nu)/2) with H the binary entropy in nats.
double      mode_entropy(double nu);
long double mode_entropy(long double nu);

double toeplitz_block_entropy(const XYPoint &p, long L);

/// Open chain of n_sites spins with the couplings of the infinite-chain
/// Hamiltonian (overall minus sign, (1 +/- gamma), h sz).
struct FiniteChain {
    long    n_sites = 2;
    XYPoint point;
};

/// Contiguous block of sites, 1-based and inclusive.
struct SiteRange {
    long first = 1;
    long last  = 1;

    [[nodiscard]] long length() const { return last - first + 1; }
};

inline constexpr long max_ed_sites = 12;

/// Real antisymmetric A with H = (i/4) sum_jk A_jk a_j a_k over the 2N
/// Majorana operators a_{2i} = (prod_{j<i} sz_j) sx_i, a_{2i+1} = (prod_{j<i} sz_j) sy_i.
Eigen::MatrixXd majorana_hamiltonian(const FiniteChain &c);

/// Ground-state Majorana correlation Gamma with <a_j a_k> = delta_jk + i Gamma_jk.
Eigen::MatrixXd majorana_correlation(const FiniteChain &c);

/// Entropy of a contiguous block from a full Majorana correlation matrix.
double block_entropy_from_correlation(const Eigen::MatrixXd &gamma_matrix, const SiteRange &block);

double bdg_finite_chain_entropy(const FiniteChain &c, const SiteRange &block);

struct EdResult {
    double entropy      = 0.0;
    double ground_energy = 0.0;
    double gap          = 0.0; // E_1 - E_0
    bool   degenerate   = false;
};

inline constexpr double degeneracy_tolerance = 1e-10;

/// Dense 2^N Hamiltonian, basis bit i set = spin i down.
Eigen::MatrixXd spin_hamiltonian(const FiniteChain &c);

struct GroundState {
    Eigen::VectorXd psi;
    double          energy     = 0.0;
    double          gap        = 0.0;
    bool            degenerate = false;
};

/// Lowest eigenvector, found sector by sector (H conserves the parity of the
/// number of down spins). Degeneracy is reported, not resolved.
GroundState ed_ground_state(const FiniteChain &c);

EdResult exact_diag_entropy(const FiniteChain &c, const SiteRange &block);

/// -Tr(rho ln rho) for the subsystem made of `sites` (0-based, any order, no
/// repeats) of the normalized state `psi` on n_sites spins.
double state_subsystem_entropy(const Eigen::VectorXd &psi, long n_sites, const std::vector<long> &sites);

/// -Tr(rho ln rho) of the reduced density matrix of `psi` (normalized, 2^N
/// entries) on `block`.
double state_block_entropy(const Eigen::VectorXd &psi, long n_sites, const SiteRange &block);

/// The product state of a factorized ground state on sites 0..n_sites-1.
Eigen::VectorXd product_state_vector(const FactorizedState &fs, long n_sites);

} // namespace xyent
