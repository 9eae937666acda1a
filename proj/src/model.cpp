#include "xyent/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace xyent {

void validate(const XYPoint &p) {
    if(!std::isfinite(p.gamma) || !(p.gamma > 0.0) || p.gamma > 1.0)
        throw DomainError(fmt::format("gamma = {} outside (0, 1]", p.gamma));
    if(!std::isfinite(p.h) || p.h < 0.0) throw DomainError(fmt::format("field h = {} must be finite and >= 0", p.h));
}

std::string_view to_string(CaseLabel c) {
    switch(c) {
        case CaseLabel::Case1a: return "Case1a";
        case CaseLabel::Case1b: return "Case1b";
        case CaseLabel::Case2: return "Case2";
        case CaseLabel::FactorizingBoundary: return "FactorizingBoundary";
        case CaseLabel::CriticalH: return "CriticalH";
        case CaseLabel::CriticalGamma: return "CriticalGamma";
    }
    return "?";
}

std::string_view to_string(Method m) {
    switch(m) {
        case Method::Series: return "series";
        case Method::ClosedForm: return "closed";
        case Method::Asymptotic: return "asymptotic";
    }
    return "?";
}

double factorizing_field(double gamma) {
    if(!(gamma > 0.0) || gamma > 1.0) throw DomainError(fmt::format("gamma = {} outside (0, 1]", gamma));
    // 1 - g^2 = (1-g)(1+g) keeps precision for gamma near 1
    return 2.0 * std::sqrt((1.0 - gamma) * (1.0 + gamma));
}

Regime classify(const XYPoint &p, const ClassifyTolerances &tol) {
    validate(p);
    const int side_sigma = p.h < 2.0 ? 1 : 0;
    if(p.gamma <= tol.gamma) return {CaseLabel::CriticalGamma, side_sigma};
    if(std::abs(p.h - 2.0) <= tol.critical * 2.0) return {CaseLabel::CriticalH, side_sigma};
    if(p.h > 2.0) return {CaseLabel::Case2, 0};

    const double hf = factorizing_field(p.gamma);
    if(std::abs(p.h - hf) <= tol.boundary * std::max(1.0, hf)) return {CaseLabel::FactorizingBoundary, 1};
    if(p.h > hf) return {CaseLabel::Case1a, 1};
    return {CaseLabel::Case1b, 1};
}

Modulus modulus(const XYPoint &p, const Regime &r) {
    const double g  = p.gamma;
    const double x  = p.h / 2.0;
    const double g2 = g * g;
    // (h/2)^2 + gamma^2 - 1, the quantity whose sign separates 1a from 1b
    const double s = (x - 1.0) * (x + 1.0) + g2;

    switch(r.label) {
        case CaseLabel::CriticalH:
        case CaseLabel::CriticalGamma:
            throw DivergenceError(fmt::format("critical point (gamma={}, h={}): k = 1, entropy diverges", p.gamma, p.h),
                                  divergent_estimate());
        case CaseLabel::FactorizingBoundary: return {0.0, 1.0};
        case CaseLabel::Case1a: {
            const double k2  = s / g2;
            const double kp2 = (1.0 - x) * (1.0 + x) / g2;
            return {std::sqrt(std::max(0.0, k2)), std::sqrt(std::max(0.0, kp2))};
        }
        case CaseLabel::Case1b: {
            const double d   = (1.0 - x) * (1.0 + x);
            const double k2  = -s / d;
            const double kp2 = g2 / d;
            return {std::sqrt(std::max(0.0, k2)), std::sqrt(std::max(0.0, kp2))};
        }
        case CaseLabel::Case2: {
            const double k2  = g2 / s;
            const double kp2 = (x - 1.0) * (x + 1.0) / s;
            return {std::sqrt(std::max(0.0, k2)), std::sqrt(std::max(0.0, kp2))};
        }
    }
    throw DomainError("unknown regime");
}

double modulus_k(const XYPoint &p, const Regime &r) { return modulus(p, r).k; }

std::pair<double, double> FactorizedState::site_amplitudes(long n) const {
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    const double sign   = sign_branch == SignBranch::G1 ? parity : -parity;
    return {std::cos(theta), sign * std::sin(theta)};
}

FactorizedState factorized_state(double gamma, SignBranch branch) {
    if(!(gamma > 0.0) || gamma > 1.0) throw DomainError(fmt::format("gamma = {} outside (0, 1]", gamma));
    // cos^2(2 theta) = (1 - gamma)/(1 + gamma), theta in [0, pi/4]
    const double c = std::sqrt((1.0 - gamma) / (1.0 + gamma));
    return {0.5 * std::acos(std::clamp(c, 0.0, 1.0)), branch};
}

double product_state_entropy(const FactorizedState &fs, long block_length) {
    if(block_length < 1) throw DomainError("block length must be >= 1");
    (void)fs;
    return 0.0;
}

} // namespace xyent
