#pragma once

// Complete elliptic integral of the first kind
//
//   I(k) = int_0^1 dx / sqrt((1 - x^2)(1 - k^2 x^2))
//
// (conventionally written K(k)) and the modulus ratio tau0 = I(k')/I(k).

#include "xyent/errors.hpp"

namespace xyent {

struct AgmResult {
    double value        = 0.0; // I(k)
    double achieved_tol = 0.0; // |a_n - b_n| / a_n at termination
    int    iterations   = 0;
};

/// Moduli at or above this distance from 1 are rejected; I(k) diverges
/// logarithmically there and callers must switch to asymptotics.
inline constexpr double k_upper_margin = 1e-12;

/// I(k) by arithmetic-geometric mean. k = 0 returns pi/2 exactly.
/// Throws DomainError unless 0 <= k < 1 - k_upper_margin.
double    complete_elliptic_K(double k);
AgmResult complete_elliptic_K_agm(double k);

/// I(k) given the complementary modulus k' = sqrt(1 - k^2) directly. This is
/// the accurate entry point when k is close to 1.
AgmResult complete_elliptic_K_from_complement(double k_prime);

struct EllipticData {
    double k            = 0.0;
    double k_prime      = 1.0;
    double I_k          = 0.0;
    double I_kprime     = 0.0;
    double tau0         = 0.0;
    double achieved_tol = 0.0;
};

/// Throws DomainError unless 0 < k < 1.
EllipticData elliptic_bundle(double k);

/// Bundle from a (k, k') pair produced without cancellation (see Modulus).
/// Requires 0 < k, k' and k^2 + k'^2 = 1 to rounding.
EllipticData elliptic_bundle(double k, double k_prime);

} // namespace xyent
