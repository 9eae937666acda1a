#pragma once

// Parameters and phase structure of the XY chain
//
//   H = - sum_n (1+gamma) sx_n sx_{n+1} + (1-gamma) sy_n sy_{n+1} + h sz_n
//
// Critical lines sit at h = 2 and gamma = 0. The factorizing field
// h = 2 sqrt(1 - gamma^2) separates the weak-field (1b) and moderate-field
// (1a) regions of the ordered phase.

#include <string_view>
#include <utility>

#include "xyent/entropy_result.hpp"
#include "xyent/errors.hpp"

namespace xyent {

struct XYPoint {
    double gamma = 0.5;
    double h     = 0.0;
};

/// Throws DomainError unless 0 < gamma <= 1 and h >= 0 (both finite).
void validate(const XYPoint &p);

enum class CaseLabel { Case1a, Case1b, Case2, FactorizingBoundary, CriticalH, CriticalGamma };

std::string_view to_string(CaseLabel c);

struct Regime {
    CaseLabel label = CaseLabel::Case1b;
    int       sigma = 1; // 1 in the ordered phase (Case 1), 0 for h > 2

    [[nodiscard]] bool critical() const { return label == CaseLabel::CriticalH || label == CaseLabel::CriticalGamma; }
};

struct ClassifyTolerances {
    double boundary = 1e-9; // relative, around h = 2 sqrt(1 - gamma^2)
    double critical = 1e-9; // relative, around h = 2
    double gamma    = 1e-9; // gamma at or below this is the critical XX line
};

Regime classify(const XYPoint &p, const ClassifyTolerances &tol = {});

/// Elliptic modulus k and its complement k' = sqrt(1 - k^2). Both are formed
/// from their own closed expressions so neither suffers cancellation when the
/// other approaches 1.
struct Modulus {
    double k       = 0.0;
    double k_prime = 1.0;
};

/// Case-dependent modulus. Throws DivergenceError in a critical regime.
Modulus modulus(const XYPoint &p, const Regime &r);
double  modulus_k(const XYPoint &p, const Regime &r);

double factorizing_field(double gamma);

enum class SignBranch { G1, G2 };

/// One of the two product ground states at the factorizing field:
///   prod_n [cos(theta)|up_n> +/- (-1)^n sin(theta)|down_n>]
struct FactorizedState {
    double     theta       = 0.0; // in [0, pi/4]
    SignBranch sign_branch = SignBranch::G1;

    /// Single-site amplitudes (up, down) at lattice site n.
    [[nodiscard]] std::pair<double, double> site_amplitudes(long n) const;
};

FactorizedState factorized_state(double gamma, SignBranch branch = SignBranch::G1);

/// Block entropy of a product state. Always zero: every reduced density
/// matrix of a product state is pure.
double product_state_entropy(const FactorizedState &fs, long block_length);

} // namespace xyent
