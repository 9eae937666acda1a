#include "xyent/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "xyent/elliptic.hpp"
#include "xyent/entropy_limit.hpp"
#include "xyent/model.hpp"
#include "xyent/oracle.hpp"
#include "xyent/quadrature.hpp"
#include "xyent/scan.hpp"

namespace xyent::acceptance {
namespace {

    constexpr double ln2 = std::numbers::ln2;

    // Converged S_L values drift by ~3e-17 per site from extended-precision
    // rounding; "nondecreasing" is judged above this floor.
    constexpr double monotone_slack = 1e-13;

    CriterionResult make(int id, std::string name, bool ok, std::string detail) {
        return {id, std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)};
    }

    // Runs a check body, turning unexpected exceptions into failures.
    template<typename F>
    CriterionResult guarded(int id, const char *name, F &&body) {
        try {
            return body();
        } catch(const std::exception &e) { return make(id, name, false, fmt::format("exception: {}", e.what())); }
    }

    double closed(double gamma, double h) { return entropy_closed_form({gamma, h}).value; }

    // S_inf ~ S_3 - d_3^2 / (d_3 - d_2) for geometric convergence
    double aitken(double s1, double s2, double s3) {
        const double d2 = s2 - s1;
        const double d3 = s3 - s2;
        if(std::abs(d3 - d2) < 1e-14 || std::abs(d3) < 1e-14) return s3;
        return s3 - d3 * d3 / (d3 - d2);
    }

} // namespace

EllipticRoutes production_elliptic_routes() {
    return {[](double k) { return complete_elliptic_K(k); }, [](double k) { return elliptic_bundle(k).tau0; }};
}

CriterionResult figure1_reproduction() {
    constexpr int id   = 1;
    const char   *name = "Figure-1 reproduction (gamma = 0.5, h in [0, 3], 600 points)";
    return guarded(id, name, [&] {
        const Figure1Spec spec{0.5, 0.0, 3.0, 600, 0.05};
        const auto        rows = figure1_rows(spec);
        const double      hf   = factorizing_field(spec.gamma);

        const auto at_hf = std::find_if(rows.begin(), rows.end(), [&](const Figure1Row &r) { return r.h == hf; });
        if(at_hf == rows.end() || !at_hf->s) return make(id, name, false, "no finite row at the factorizing field");
        const double err_min = std::abs(*at_hf->s - ln2);

        const double step   = (spec.h_max - spec.h_min) / static_cast<double>(spec.points - 1);
        const double second = closed(spec.gamma, hf - step) + closed(spec.gamma, hf + step) - 2.0 * closed(spec.gamma, hf);

        bool   increasing = true, decreasing = true;
        double prev_up = -1.0, prev_down = std::numeric_limits<double>::infinity();
        long   n_up = 0, n_down = 0;
        for(const auto &r : rows) {
            if(r.h > hf && r.h <= 2.0 - spec.guard_band) {
                if(!r.s || *r.s <= prev_up) increasing = false;
                if(r.s) prev_up = *r.s;
                ++n_up;
            }
            if(r.h >= 2.0 + spec.guard_band && r.h <= 3.0) {
                if(!r.s || *r.s >= prev_down) decreasing = false;
                if(r.s) prev_down = *r.s;
                ++n_down;
            }
        }
        const double s3   = closed(spec.gamma, 3.0);
        const double s205 = closed(spec.gamma, 2.05);
        bool divergent_marked = true;
        for(const auto &r : rows)
            if(std::abs(r.h - 2.0) < spec.guard_band && (!r.divergent || r.s)) divergent_marked = false;

        const bool ok = err_min <= 1e-9 && second > 0.0 && increasing && decreasing && n_up > 0 && n_down > 0 && s3 < s205 && divergent_marked;
        return make(id, name, ok,
                    fmt::format("|S(sqrt3) - ln2| = {:.3e} (<= 1e-9); second difference {:.3e} (> 0); increasing on {} points: {}; "
                                "decreasing on {} points: {}; S(3) = {:.6f} < S(2.05) = {:.6f}; guard band marked: {}",
                                err_min, second, n_up, increasing, n_down, decreasing, s3, s205, divergent_marked));
    });
}

CriterionResult series_closed_equivalence() {
    constexpr int id   = 2;
    const char   *name = "Series/closed-form equivalence (50 x 50 grid)";
    return guarded(id, name, [&] {
        ScanSpec spec;
        spec.gammas  = parse_gamma_list("0.05:1:50");
        spec.h_min   = 0.0;
        spec.h_max   = 3.0;
        spec.steps   = 50;
        spec.threads = 4;
        const auto rows = run_scan(spec);
        double     worst_excess = -std::numeric_limits<double>::infinity();
        double     worst_diff   = 0.0;
        long       compared = 0, missing = 0;
        for(const auto &r : rows) {
            if(r.divergent) continue;
            if(!r.s_series || !r.s_closed) {
                ++missing;
                continue;
            }
            const double diff = std::abs(*r.s_series - *r.s_closed);
            worst_diff        = std::max(worst_diff, diff);
            worst_excess      = std::max(worst_excess, diff - (1e-10 + 10.0 * r.series_tail));
            ++compared;
        }
        const bool ok = missing == 0 && compared > 0 && worst_excess <= 0.0;
        return make(id, name, ok,
                    fmt::format("{} points compared, {} missing; max |S_series - S_closed| = {:.3e}; max excess over 1e-10 + 10 tail = {:.3e}",
                                compared, missing, worst_diff, worst_excess));
    });
}

CriterionResult factorizing_field_continuity() {
    constexpr int id   = 3;
    const char   *name = "Factorizing-field continuity";
    return guarded(id, name, [&] {
        bool        ok = true;
        std::string detail;
        for(double g : {0.2, 0.5, 0.8}) {
            const double hf    = factorizing_field(g);
            const double exact = closed(g, hf);
            const double ser   = entropy_series({g, hf}).value;
            double       lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for(double h : {hf - 1e-6, hf + 1e-6}) {
                for(double s : {closed(g, h), entropy_series({g, h}).value}) {
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
            }
            const bool pt_ok = exact == ln2 && ser == ln2 && lo >= ln2 && hi <= ln2 + 1e-4;
            ok               = ok && pt_ok;
            detail += fmt::format("gamma={}: S(hf)-ln2={:.1e}, S(hf+-1e-6)-ln2 in [{:.3e}, {:.3e}]; ", g, exact - ln2, lo - ln2, hi - ln2);
        }
        return make(id, name, ok, detail);
    });
}

CriterionResult self_dual_point() {
    constexpr int id   = 4;
    const char   *name = "Self-dual Case-2 point k = k' = 1/sqrt2";
    return guarded(id, name, [&] {
        double worst = 0.0;
        for(double g : {0.1, 0.3, 0.5, 0.8, 1.0}) {
            const double h = 2.0 * std::sqrt(1.0 + g * g);
            worst          = std::max(worst, std::abs(closed(g, h) - 0.5 * ln2));
        }
        return make(id, name, worst <= 1e-12, fmt::format("max |S - ln2/2| = {:.3e} over 5 gammas (<= 1e-12)", worst));
    });
}

CriterionResult critical_divergence_law() {
    constexpr int id   = 5;
    const char   *name = "Critical divergence law near h = 2";
    return guarded(id, name, [&] {
        const double        g = 0.5;
        std::vector<double> xs, ys;
        for(int j = 2; j <= 6; ++j) {
            const XYPoint p{g, 2.0 - std::pow(10.0, -j)};
            const Modulus md = modulus(p, classify(p));
            xs.push_back(-std::log(md.k_prime));
            ys.push_back(entropy_closed_form(p).value);
        }
        const double n  = static_cast<double>(xs.size());
        double       mx = 0, my = 0;
        for(size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i] / n;
            my += ys[i] / n;
        }
        double sxy = 0, sxx = 0;
        for(size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        const double slope     = sxy / sxx;
        const double intercept = my - slope * mx;
        const double rel       = std::abs(slope - 1.0 / 3.0) * 3.0;
        return make(id, name, rel <= 0.02,
                    fmt::format("slope = {:.6f} (1/3 within {:.2e}, need <= 2e-2); intercept = {:.6f} (asymptote 2 ln2 / 3 = {:.6f})", slope, rel,
                                intercept, 2.0 * ln2 / 3.0));
    });
}

CriterionResult elliptic_kernel(const EllipticRoutes &routes) {
    constexpr int id   = 6;
    const char   *name = "Elliptic kernel (AGM vs closed value, quadrature, tau0 duality)";
    return guarded(id, name, [&] {
        const double k_sd   = 1.0 / std::sqrt(2.0);
        const double gamma4 = std::tgamma(0.25);
        const double exact  = gamma4 * gamma4 / (4.0 * std::sqrt(std::numbers::pi));
        const double err_sd = std::abs(routes.K(k_sd) - exact);

        // 40 points log-spaced in k over [1e-8, 1 - 1e-8]
        double       worst_quad = 0.0;
        const double lo = std::log(1e-8), hi = std::log(1.0 - 1e-8);
        for(int i = 0; i < 40; ++i) {
            const double k   = std::exp(lo + (hi - lo) * i / 39.0);
            const double ref = reference::elliptic_K_quadrature(k);
            worst_quad       = std::max(worst_quad, std::abs(routes.K(k) - ref) / ref);
        }
        // plus the approach to k -> 1, where the grid above is sparse
        for(int j = 1; j <= 8; ++j) {
            const double k   = 1.0 - std::pow(10.0, -j);
            const double ref = reference::elliptic_K_quadrature(k);
            worst_quad       = std::max(worst_quad, std::abs(routes.K(k) - ref) / ref);
        }

        double worst_dual = 0.0;
        for(double k : {0.01, 0.1, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999}) {
            const double kp = std::sqrt((1.0 - k) * (1.0 + k));
            worst_dual      = std::max(worst_dual, std::abs(routes.tau0(k) * routes.tau0(kp) - 1.0));
        }
        const bool ok = err_sd <= 1e-12 && worst_quad <= 1e-10 && worst_dual <= 1e-12;
        return make(id, name, ok,
                    fmt::format("|I(1/sqrt2) - Gamma(1/4)^2/(4 sqrt pi)| = {:.3e} (<= 1e-12); max rel AGM-quadrature = {:.3e} (<= 1e-10); "
                                "max |tau0(k) tau0(k') - 1| = {:.3e} (<= 1e-12)",
                                err_sd, worst_quad, worst_dual));
    });
}

CriterionResult finite_chain_oracles(const Options &opt) {
    constexpr int id   = 7;
    const char   *name = "Oracle chain, finite systems (ED vs BdG, complement symmetry)";
    return guarded(id, name, [&] {
        const std::vector<long>    sizes = opt.fast ? std::vector<long>{2, 6} : std::vector<long>{2, 6, 10};
        const std::vector<XYPoint> points{{0.5, 1.0}, {0.5, 1.9}, {0.5, 3.0}, {0.8, 0.3}, {1.0, 1.2}};
        double worst_chain = 0.0, worst_comp = 0.0;
        long   blocks = 0, degenerate = 0;
        for(long n : sizes) {
            for(const auto &p : points) {
                const FiniteChain c{n, p};
                const auto        gs = ed_ground_state(c);
                if(gs.degenerate) ++degenerate;
                const Eigen::MatrixXd G = majorana_correlation(c);
                for(long a = 1; a <= n; ++a)
                    for(long b = a; b <= n; ++b) {
                        const SiteRange blk{a, b};
                        const double    ed  = state_block_entropy(gs.psi, n, blk);
                        const double    bdg = block_entropy_from_correlation(G, blk);
                        worst_chain         = std::max(worst_chain, std::abs(ed - bdg));
                        std::vector<long> comp;
                        for(long s = 0; s < n; ++s)
                            if(s < a - 1 || s > b - 1) comp.push_back(s);
                        const double ec = state_subsystem_entropy(gs.psi, n, comp);
                        worst_comp      = std::max(worst_comp, std::abs(ed - ec));
                        ++blocks;
                    }
            }
        }
        const bool ok = worst_chain <= 1e-8 && worst_comp <= 1e-10 && degenerate == 0;
        std::string sz;
        for(long n : sizes) sz += fmt::format("{}{}", sz.empty() ? "" : ",", n);
        return make(id, name, ok,
                    fmt::format("N in {{{}}}{}, {} blocks over 5 points in all regimes; max |ED - BdG| = {:.3e} (<= 1e-8); "
                                "max complement asymmetry = {:.3e} (<= 1e-10); degenerate ground states: {}",
                                sz, opt.fast ? " (fast mode)" : "", blocks, worst_chain, worst_comp, degenerate));
    });
}

CriterionResult infinite_chain_oracle(const Options &opt) {
    constexpr int id   = 8;
    const char   *name = "Oracle chain, infinite chain (Toeplitz S_L -> limit)";
    if(opt.fast) return {id, name, Status::Skipped, "skipped in fast mode"};
    return guarded(id, name, [&] {
        const std::vector<long> Ls{20, 40, 80, 160};
        bool                    ok = true;
        std::string             detail;
        for(double h : {1.0, 1.9, 2.5}) {
            const XYPoint       p{0.5, h};
            std::vector<double> s;
            for(long L : Ls) s.push_back(toeplitz_block_entropy(p, L));
            bool mono = true;
            for(size_t i = 1; i < s.size(); ++i)
                if(s[i] < s[i - 1] - monotone_slack) mono = false;
            const double extrap = aitken(s[1], s[2], s[3]);
            const double limit  = entropy_closed_form(p).value;
            const double err    = std::abs(extrap - limit);
            ok                  = ok && mono && err <= 1e-4;
            detail += fmt::format("h={}: S_L = {:.8f},{:.8f},{:.8f},{:.8f} nondecreasing {}, |extrap - limit| = {:.2e}; ", h, s[0], s[1], s[2], s[3], mono,
                                  err);
        }
        const double hf   = factorizing_field(0.5);
        const double s160 = toeplitz_block_entropy({0.5, hf}, 160);
        const double errf = std::abs(s160 - ln2);
        ok                = ok && errf <= 1e-4;
        detail += fmt::format("h=sqrt3: |S_160 - ln2| = {:.2e} (<= 1e-4)", errf);
        return make(id, name, ok, detail);
    });
}

CriterionResult limit_behaviors() {
    constexpr int id   = 9;
    const char   *name = "Limit behaviors (h -> inf, product states)";
    return guarded(id, name, [&] {
        const double s_big   = entropy_series({0.5, 1e3}).value;
        const double s_big_c = closed(0.5, 1e3);
        bool         decreasing = true;
        double       prev       = std::numeric_limits<double>::infinity();
        for(double h : {3.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1000.0}) {
            const double s = entropy_series({0.5, h}).value;
            if(!(s < prev) || !(s > 0.0)) decreasing = false;
            prev = s;
        }

        std::mt19937_64                        rng(20061016);
        std::uniform_real_distribution<double> ug(0.0, 1.0);
        std::uniform_int_distribution<long>    ul(1, 200);
        std::uniform_int_distribution<int>     ub(0, 1);
        double                                 worst_product = 0.0;
        for(int i = 0; i < 100; ++i) {
            const double g  = std::max(1e-6, ug(rng));
            const auto   fs = factorized_state(g, ub(rng) ? SignBranch::G1 : SignBranch::G2);
            worst_product   = std::max(worst_product, std::abs(product_state_entropy(fs, ul(rng))));
            // the literal partial trace agrees on small chains
            if(i < 20) {
                const long n = 2 + i % 7;
                worst_product = std::max(worst_product, state_block_entropy(product_state_vector(fs, n), n, {1, n / 2}));
            }
        }
        const bool ok = s_big < 1e-4 && s_big_c < 1e-4 && decreasing && worst_product <= 1e-12;
        return make(id, name, ok,
                    fmt::format("S(0.5, 1e3) = {:.3e} series, {:.3e} closed (< 1e-4); decreasing over h = 3..1e3: {}; "
                                "max product-state entropy over 100 random inputs = {:.1e}",
                                s_big, s_big_c, decreasing, worst_product));
    });
}

CriterionResult scan_determinism() {
    constexpr int id   = 10;
    const char   *name = "Scan determinism across thread counts";
    return guarded(id, name, [&] {
        ScanSpec spec;
        spec.gammas     = parse_gamma_list("0.1:1:7");
        spec.h_min      = 0.0;
        spec.h_max      = 3.0;
        spec.steps      = 61;
        spec.toeplitz_L = {20};
        spec.threads    = 1;
        const std::string a = format_csv(spec, run_scan(spec));
        spec.threads        = 4;
        const std::string b = format_csv(spec, run_scan(spec));
        const std::string c = format_csv(spec, run_scan(spec));
        const bool        ok = a == b && b == c;
        return make(id, name, ok, fmt::format("{} bytes; threads=1 vs 4: {}; repeat: {}", a.size(), a == b ? "identical" : "DIFFER", b == c ? "identical" : "DIFFER"));
    });
}

std::vector<CriterionResult> run_all(const Options &opt) {
    return {figure1_reproduction(), series_closed_equivalence(), factorizing_field_continuity(), self_dual_point(), critical_divergence_law(),
            elliptic_kernel(),      finite_chain_oracles(opt),   infinite_chain_oracle(opt),    limit_behaviors(), scan_determinism()};
}

std::string format_line(const CriterionResult &r) {
    const char *tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP";
    return fmt::format("[{}] {:>2} {}: {}", tag, r.id, r.name, r.detail);
}

bool all_passed(const std::vector<CriterionResult> &results) {
    return std::none_of(results.begin(), results.end(), [](const CriterionResult &r) { return r.status == Status::Fail; });
}

} // namespace xyent::acceptance
