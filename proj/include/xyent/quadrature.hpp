#pragma once

namespace xyent::reference {

/// I(k) by adaptive Gauss-Kronrod quadrature of the integral form, after the
/// substitution x = sin(phi). Independent of the AGM route; test use only.
double elliptic_K_quadrature(double k, double rel_tol = 1e-13);

/// Same integral parametrized by k' = sqrt(1 - k^2), for k close to 1.
double elliptic_K_quadrature_complement(double k_prime, double rel_tol = 1e-13);

} // namespace xyent::reference
