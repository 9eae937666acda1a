#pragma once

// Large-block limit of the von Neumann entropy of a block of neighboring
// spins, computed two independent ways:
//
//  * spectral series over lambda_m = tanh((m + (1-sigma)/2) pi tau0),
//      S = sum_{m in Z} (1 + lambda_m) ln(2 / (1 + lambda_m)),  lambda_{-m} = -lambda_m
//  * elliptic closed forms in k, k', I(k), I(k').
//
// Both return entropies in nats.

#include "xyent/elliptic.hpp"
#include "xyent/entropy_result.hpp"
#include "xyent/model.hpp"

namespace xyent {

struct SpectrumParams {
    int    sigma          = 1;
    double tau0           = 1.0;
    double truncation_tol = 1e-12;
};

inline constexpr double default_truncation_tol = 1e-12;
inline constexpr long   max_series_terms       = 1'000'000;

/// tanh((m + (1-sigma)/2) pi tau0)
double lambda_m(long m, const SpectrumParams &sp);

/// 1 - lambda_m, evaluated without cancellation.
double one_minus_lambda_m(long m, const SpectrumParams &sp);

/// Contribution of the pair {lambda, -lambda}:
///   (1+l) ln(2/(1+l)) + (1-l) ln(2/(1-l))
/// parametrized by x with l = tanh(x) so that l -> 1 stays accurate.
double pair_term(double x);

/// Series summed from given spectrum parameters. The sigma = 1 self-paired
/// m = 0 term contributes ln 2 exactly; every other index enters through
/// pair_term. Truncates once a pair term drops below truncation_tol / 100 and
/// reports a rigorous bound on the discarded tail.
EntropyResult entropy_series_spectrum(const SpectrumParams &sp);

/// Same as above, but keeps going for `extra_terms` terms past the truncation
/// point. Test hook for tail-bound soundness.
EntropyResult entropy_series_spectrum(const SpectrumParams &sp, long extra_terms);

EntropyResult entropy_series(const XYPoint &p, double truncation_tol = default_truncation_tol);

EntropyResult entropy_closed_form(const XYPoint &p);

/// Leading behaviour near the h = 2 transition, from I(k) ~ ln(4/k'):
///   S ~ -(1/3) ln k' + (2/3) ln 2
/// (same constant approaching from either side). Requires |h - 2| <= guard_band
/// and a Case1a/Case2/CriticalH regime. On the critical line itself the value
/// is +inf with divergent = true.
EntropyResult entropy_asymptotic_near_h2(const XYPoint &p, double guard_band = 0.05);

/// Spectrum parameters (sigma, tau0) at a non-critical, non-boundary point.
SpectrumParams spectrum_params(const XYPoint &p, double truncation_tol = default_truncation_tol);

} // namespace xyent
