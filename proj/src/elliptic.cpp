#include "xyent/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace xyent {
namespace {

    constexpr double agm_eps     = 4.0 * std::numeric_limits<double>::epsilon();
    constexpr int    agm_max_its = 64;

    // I(k) = pi / (2 AGM(1, k'))
    AgmResult agm_elliptic(double k_prime) {
        double a = 1.0;
        double b = k_prime;
        int    n = 0;
        while(std::abs(a - b) > agm_eps * a) {
            if(++n > agm_max_its) throw NumericalError(fmt::format("AGM failed to converge for k' = {}", k_prime));
            const double an = 0.5 * (a + b);
            b               = std::sqrt(a * b);
            a               = an;
        }
        // the limit lies between a and b
        return {std::numbers::pi / (a + b), std::abs(a - b) / a, n};
    }

} // namespace

AgmResult complete_elliptic_K_agm(double k) {
    if(!std::isfinite(k) || k < 0.0 || k >= 1.0 - k_upper_margin)
        throw DomainError(fmt::format("elliptic modulus k = {} outside [0, 1 - {})", k, k_upper_margin));
    if(k == 0.0) return {std::numbers::pi / 2.0, 0.0, 0};
    return agm_elliptic(std::sqrt((1.0 - k) * (1.0 + k)));
}

double complete_elliptic_K(double k) { return complete_elliptic_K_agm(k).value; }

AgmResult complete_elliptic_K_from_complement(double k_prime) {
    if(!std::isfinite(k_prime) || !(k_prime > 0.0) || k_prime > 1.0)
        throw DomainError(fmt::format("complementary modulus k' = {} outside (0, 1]", k_prime));
    if(k_prime == 1.0) return {std::numbers::pi / 2.0, 0.0, 0};
    return agm_elliptic(k_prime);
}

EllipticData elliptic_bundle(double k, double k_prime) {
    if(!(k > 0.0) || !(k_prime > 0.0) || k >= 1.0 || k_prime >= 1.0 + 1e-15)
        throw DomainError(fmt::format("elliptic bundle needs 0 < k, k' < 1 (got k = {}, k' = {})", k, k_prime));
    if(std::abs(k * k + k_prime * k_prime - 1.0) > 1e-14)
        throw DomainError(fmt::format("inconsistent moduli: k^2 + k'^2 - 1 = {}", k * k + k_prime * k_prime - 1.0));

    const auto Ik  = complete_elliptic_K_from_complement(k_prime);
    const auto Ikp = complete_elliptic_K_from_complement(std::min(k, 1.0));
    return {k, k_prime, Ik.value, Ikp.value, Ikp.value / Ik.value, std::max(Ik.achieved_tol, Ikp.achieved_tol)};
}

EllipticData elliptic_bundle(double k) {
    if(!std::isfinite(k) || !(k > 0.0) || k >= 1.0) throw DomainError(fmt::format("elliptic bundle needs 0 < k < 1 (got {})", k));
    return elliptic_bundle(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

} // namespace xyent
