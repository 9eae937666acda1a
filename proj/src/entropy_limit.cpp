#include "xyent/entropy_limit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace xyent {
namespace {

    constexpr double ln2 = std::numbers::ln2;

    double spectral_argument(long m, const SpectrumParams &sp) {
        return (static_cast<double>(m) + 0.5 * (1 - sp.sigma)) * std::numbers::pi * sp.tau0;
    }

    void check_params(const SpectrumParams &sp) {
        if(sp.sigma != 0 && sp.sigma != 1) throw DomainError(fmt::format("sigma must be 0 or 1 (got {})", sp.sigma));
        if(!(sp.tau0 > 0.0)) throw DomainError(fmt::format("tau0 must be positive (got {})", sp.tau0));
        if(!(sp.truncation_tol > 0.0)) throw DomainError("truncation tolerance must be positive");
    }

    // sum_{j>=1} 2 (1 + 2(x + j d)) exp(-2(x + j d)), which dominates every
    // pair term beyond x since log1p(y) <= y and 1/(e^t + 1) <= e^-t.
    double tail_bound_after(double x, double d) {
        const double r = std::exp(-2.0 * d);
        if(r >= 1.0) return std::numeric_limits<double>::infinity();
        const double q = 1.0 - r;
        return 2.0 * std::exp(-2.0 * x) * ((1.0 + 2.0 * x) * r / q + 2.0 * d * r / (q * q));
    }

    void throw_if_critical(const XYPoint &p, const Regime &r) {
        if(r.label == CaseLabel::CriticalH)
            throw DivergenceError(fmt::format("entropy diverges at the h = 2 transition (gamma={}, h={})", p.gamma, p.h),
                                  divergent_estimate());
        if(r.label == CaseLabel::CriticalGamma)
            throw DivergenceError(fmt::format("entropy diverges on the gamma = 0 line (gamma={}, h={})", p.gamma, p.h),
                                  divergent_estimate());
    }

} // namespace

double lambda_m(long m, const SpectrumParams &sp) {
    check_params(sp);
    if(m < 0) return -lambda_m(-m, sp);
    return std::tanh(spectral_argument(m, sp));
}

double one_minus_lambda_m(long m, const SpectrumParams &sp) {
    check_params(sp);
    if(m < 0) return 1.0 + lambda_m(-m, sp);
    // 1 - tanh(x) = 2 / (e^{2x} + 1)
    return 2.0 / (std::exp(2.0 * spectral_argument(m, sp)) + 1.0);
}

double pair_term(double x) {
    // with l = tanh x: ln(2/(1+l)) = log1p(e^{-2x}), 1 - l = 2/(e^{2x}+1),
    // ln(2/(1-l)) = 2x + log1p(e^{-2x})
    x             = std::abs(x);
    const double e = std::exp(-2.0 * x);
    return 2.0 * (std::log1p(e) + 2.0 * x * e / (1.0 + e));
}

EntropyResult entropy_series_spectrum(const SpectrumParams &sp, long extra_terms) {
    check_params(sp);
    const double cut = sp.truncation_tol / 100.0;
    const double d   = std::numbers::pi * sp.tau0;

    double sum   = sp.sigma == 1 ? ln2 : 0.0;
    long   terms = sp.sigma == 1 ? 1 : 0;
    long   m     = sp.sigma == 1 ? 1 : 0;
    long   extra = -1;
    double x     = 0.0;
    for(;; ++m) {
        if(terms >= max_series_terms)
            throw NumericalError(fmt::format("series did not converge within {} terms (tau0 = {})", max_series_terms, sp.tau0));
        x             = spectral_argument(m, sp);
        const double f = pair_term(x);
        sum += f;
        ++terms;
        if(extra < 0 && f < cut) extra = extra_terms;
        if(extra == 0) break;
        if(extra > 0) --extra;
    }
    return {sum, Method::Series, terms, tail_bound_after(x, d), false};
}

EntropyResult entropy_series_spectrum(const SpectrumParams &sp) { return entropy_series_spectrum(sp, 0); }

SpectrumParams spectrum_params(const XYPoint &p, double truncation_tol) {
    const Regime r = classify(p);
    throw_if_critical(p, r);
    if(r.label == CaseLabel::FactorizingBoundary)
        throw DomainError("tau0 is infinite at the factorizing field; the spectrum collapses to lambda_0 = 0, lambda_m = 1");
    const Modulus md = modulus(p, r);
    if(md.k == 0.0) throw DomainError("k underflowed to 0; point is numerically on the factorizing field");
    const auto ed = elliptic_bundle(md.k, md.k_prime);
    return {r.sigma, ed.tau0, truncation_tol};
}

EntropyResult entropy_series(const XYPoint &p, double truncation_tol) {
    const Regime r = classify(p);
    throw_if_critical(p, r);
    // tau0 -> inf: only the m = 0 term survives
    if(r.label == CaseLabel::FactorizingBoundary) return {ln2, Method::Series, 1, 0.0, false};
    const Modulus md = modulus(p, r);
    if(md.k == 0.0) return {ln2, Method::Series, 1, 0.0, false};
    return entropy_series_spectrum(spectrum_params(p, truncation_tol));
}

EntropyResult entropy_closed_form(const XYPoint &p) {
    const Regime r = classify(p);
    throw_if_critical(p, r);
    if(r.label == CaseLabel::FactorizingBoundary) return {ln2, Method::ClosedForm, 0, 0.0, false};

    const Modulus md = modulus(p, r);
    if(md.k == 0.0) return {ln2, Method::ClosedForm, 0, 0.0, false};
    const auto   ed    = elliptic_bundle(md.k, md.k_prime);
    const double k2    = md.k * md.k;
    const double kp2   = md.k_prime * md.k_prime;
    const double prod4 = 4.0 * ed.I_k * ed.I_kprime / std::numbers::pi;

    double s = 0.0;
    if(r.sigma == 1) {
        // ln(k^2/(16 k')) split so neither factor under/overflows
        const double log_term = 2.0 * std::log(md.k) - std::log(16.0) - std::log(md.k_prime);
        s                     = (log_term + (1.0 - 0.5 * k2) * prod4) / 6.0 + ln2;
    } else {
        const double log_term = std::log(16.0) - 2.0 * std::log(md.k) - 2.0 * std::log(md.k_prime);
        s                     = (log_term + (k2 - kp2) * prod4) / 12.0;
    }
    return {s, Method::ClosedForm, 0, 0.0, false};
}

EntropyResult entropy_asymptotic_near_h2(const XYPoint &p, double guard_band) {
    validate(p);
    if(std::abs(p.h - 2.0) > guard_band)
        throw DomainError(fmt::format("h = {} is outside the guard band |h - 2| <= {} of the asymptotic estimate", p.h, guard_band));
    const Regime r = classify(p);
    if(r.label == CaseLabel::CriticalH) return divergent_estimate();
    if(r.label != CaseLabel::Case1a && r.label != CaseLabel::Case2)
        throw DomainError(fmt::format("asymptotic estimate needs a Case1a or Case2 point near h = 2 (got {})", to_string(r.label)));
    const Modulus md = modulus(p, r);
    return {-std::log(md.k_prime) / 3.0 + 2.0 * ln2 / 3.0, Method::Asymptotic, 0, 0.0, false};
}

} // namespace xyent
