// xyent: limiting block entropy of the XY spin chain.
//
//   xyent entropy --gamma 0.5 --field 1.0 [--method series|closed|asymptotic|toeplitz|bdg|ed ...]
//   xyent scan    --gamma 0.05:1:20 --h-min 0 --h-max 3 --steps 61 [--method ...] [--out f.csv]
//   xyent figure1 --out figure1.csv
//   xyent verify  [--fast]
//
// Exit codes: 0 success, 1 verification failure, 2 domain or usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "xyent/acceptance.hpp"
#include "xyent/entropy_limit.hpp"
#include "xyent/oracle.hpp"
#include "xyent/scan.hpp"

namespace {

constexpr int exit_ok          = 0;
constexpr int exit_verify_fail = 1;
constexpr int exit_domain      = 2;

struct CommonOptions {
    std::vector<std::string> methods;
    std::vector<long>        toeplitz_L;
    std::vector<long>        chain_N;
    double                   guard_band = xyent::default_guard_band;
    double                   tol        = xyent::default_truncation_tol;
    std::string              out;
    std::string              format  = "csv";
    bool                     bits    = false;
    int                      threads = 1;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--method", o.methods, "series, closed, asymptotic, toeplitz, bdg, ed (repeatable)")
        ->check(CLI::IsMember({"series", "closed", "asymptotic", "toeplitz", "bdg", "ed"}));
    cmd->add_option("--toeplitz-l", o.toeplitz_L, "block sizes for the Toeplitz oracle (repeatable)");
    cmd->add_option("--chain-n", o.chain_N, "open-chain lengths for the bdg/ed oracles (repeatable)");
    cmd->add_option("--guard-band", o.guard_band, "width around h = 2 and below gamma reported as divergent")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", o.tol, "series truncation tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--bits", o.bits, "report entropies in bits instead of nats");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

bool wants(const CommonOptions &o, const std::string &m) { return std::find(o.methods.begin(), o.methods.end(), m) != o.methods.end(); }

void emit(const std::string &text, const std::string &path) {
    if(path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if(!f) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    f << text;
    if(!f) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

int cmd_entropy(double gamma, double field, CommonOptions o) {
    using namespace xyent;
    const XYPoint p{gamma, field};
    validate(p);
    if(o.methods.empty()) o.methods = {"series", "closed"};
    if(wants(o, "toeplitz") && o.toeplitz_L.empty()) o.toeplitz_L = {20, 40, 80, 160};
    if((wants(o, "bdg") || wants(o, "ed")) && o.chain_N.empty()) o.chain_N = {10};
    const double scale = o.bits ? 1.0 / std::numbers::ln2 : 1.0;
    const std::string unit = o.bits ? "bits" : "nats";

    const Regime r = classify(p);
    nlohmann::ordered_json j;
    j["gamma"] = gamma;
    j["h"]     = field;
    j["case"]  = std::string(to_string(r.label));
    j["sigma"] = r.sigma;

    if(r.critical()) {
        j["divergent"] = true;
        std::cerr << fmt::format("error: ({}, {}) is a critical point ({}); the limiting entropy diverges to +inf\n", gamma, field,
                                 to_string(r.label));
        if(o.format == "json") std::cout << j.dump(2) << "\n";
        return exit_domain;
    }

    const Modulus md = modulus(p, r);
    j["k"]      = md.k;
    j["kprime"] = md.k_prime;
    j["tau0"]   = md.k > 0 ? format_number(elliptic_bundle(md.k, md.k_prime).tau0) : "inf";
    if(md.k > 0) j["tau0"] = elliptic_bundle(md.k, md.k_prime).tau0;
    j["unit"] = unit;

    const bool near = in_guard_band(p, o.guard_band);
    j["divergent"]  = near;
    if(near && std::abs(field - 2.0) <= o.guard_band && (r.label == CaseLabel::Case1a || r.label == CaseLabel::Case2))
        j["S_asymptotic"] = entropy_asymptotic_near_h2(p, o.guard_band).value * scale;
    if(wants(o, "asymptotic") && !j.contains("S_asymptotic")) j["S_asymptotic"] = entropy_asymptotic_near_h2(p, o.guard_band).value * scale;

    if(wants(o, "series")) {
        const auto s        = entropy_series(p, o.tol);
        j["S_series"]       = s.value * scale;
        j["series_terms"]   = s.terms_used;
        j["series_tail"]    = s.tail_bound * scale;
    }
    if(wants(o, "closed")) j["S_closed"] = entropy_closed_form(p).value * scale;
    if(wants(o, "toeplitz"))
        for(long L : o.toeplitz_L) j[fmt::format("S_toeplitz_{}", L)] = toeplitz_block_entropy(p, L) * scale;
    for(long n : o.chain_N) {
        const auto blk = central_block(n);
        if(wants(o, "bdg")) j[fmt::format("S_bdg_{}", n)] = bdg_finite_chain_entropy({n, p}, blk) * scale;
        if(wants(o, "ed")) {
            const auto ed                    = exact_diag_entropy({n, p}, blk);
            j[fmt::format("S_ed_{}", n)]     = ed.entropy * scale;
            if(ed.degenerate) j[fmt::format("ed_{}_degenerate", n)] = true;
        }
    }

    std::string text;
    if(o.format == "json") {
        text = j.dump(2) + "\n";
    } else {
        for(const auto &[key, val] : j.items()) {
            std::string v = val.is_number_float() ? format_number(val.get<double>()) : val.is_string() ? val.get<std::string>() : val.dump();
            text += fmt::format("{:<14} {}\n", key, v);
        }
    }
    emit(text, o.out);
    return exit_ok;
}

int cmd_scan(const std::vector<std::string> &gammas, double h_min, double h_max, long steps, CommonOptions o) {
    using namespace xyent;
    ScanSpec spec;
    spec.gammas.clear();
    for(const auto &g : gammas) {
        const auto v = parse_gamma_list(g);
        spec.gammas.insert(spec.gammas.end(), v.begin(), v.end());
    }
    spec.h_min = h_min;
    spec.h_max = h_max;
    spec.steps = steps;
    if(o.methods.empty()) o.methods = {"series", "closed"};
    spec.series = wants(o, "series");
    spec.closed = wants(o, "closed");
    if(wants(o, "toeplitz")) spec.toeplitz_L = o.toeplitz_L.empty() ? std::vector<long>{20, 40, 80} : o.toeplitz_L;
    if(wants(o, "bdg")) spec.bdg_N = o.chain_N.empty() ? std::vector<long>{10} : o.chain_N;
    if(wants(o, "ed")) spec.ed_N = o.chain_N.empty() ? std::vector<long>{10} : o.chain_N;
    spec.guard_band = o.guard_band;
    spec.tol        = o.tol;
    spec.format     = o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    spec.bits       = o.bits;
    spec.threads    = o.threads;

    const auto rows = run_scan(spec);
    emit(spec.format == OutputFormat::Json ? format_json(spec, rows) : format_csv(spec, rows), o.out);
    return exit_ok;
}

int cmd_figure1(const std::string &out, long points, double guard_band, bool bits) {
    using namespace xyent;
    Figure1Spec spec;
    spec.points     = points;
    spec.guard_band = guard_band;
    const auto rows = figure1_rows(spec);
    emit(figure1_csv(rows, bits), out);

    const auto dot = out.rfind('.');
    const auto script_path = (dot == std::string::npos || out.find('/', dot) != std::string::npos ? out : out.substr(0, dot)) + ".gp";
    emit(figure1_plot_script(spec, out), script_path);
    std::cerr << fmt::format("wrote {} rows to {} and plot script {}\n", rows.size(), out, script_path);
    return exit_ok;
}

int cmd_verify(bool fast) {
    using namespace xyent::acceptance;
    const auto results = run_all({fast});
    for(const auto &r : results) std::cout << format_line(r) << "\n";
    const bool ok = all_passed(results);
    std::cout << (ok ? "all criteria passed\n" : "verification FAILED\n");
    return ok ? exit_ok : exit_verify_fail;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Limiting block entanglement entropy of the XY spin chain"};
    app.require_subcommand(1);

    CommonOptions common;
    double        gamma = 0.5, field = 0.0;
    auto         *ent = app.add_subcommand("entropy", "evaluate a single (gamma, h) point");
    ent->add_option("--gamma", gamma, "anisotropy in (0, 1]")->required();
    ent->add_option("--field", field, "magnetic field h >= 0")->required();
    add_common(ent, common);

    std::vector<std::string> scan_gammas{"0.5"};
    double                   h_min = 0.0, h_max = 3.0;
    long                     steps = 61;
    auto                    *scan  = app.add_subcommand("scan", "sweep the phase diagram");
    scan->add_option("--gamma", scan_gammas, "gamma value or lo:hi:count range (repeatable)");
    scan->add_option("--h-min", h_min, "lowest field");
    scan->add_option("--h-max", h_max, "highest field");
    scan->add_option("--steps", steps, "field grid points (>= 2)");
    add_common(scan, common);

    std::string fig_out = "figure1.csv";
    long        fig_points = 600;
    double      fig_band   = xyent::default_guard_band;
    bool        fig_bits   = false;
    auto       *fig        = app.add_subcommand("figure1", "entropy vs field at gamma = 1/2, with a gnuplot script");
    fig->add_option("--out", fig_out, "CSV path; the script goes next to it with a .gp extension");
    fig->add_option("--steps", fig_points, "grid points on [0, 3]");
    fig->add_option("--guard-band", fig_band, "width around h = 2 reported as divergent");
    fig->add_flag("--bits", fig_bits, "entropy in bits");

    bool  fast   = false;
    auto *verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_flag("--fast", fast, "reduced oracle sizes; skip the slow infinite-chain check");

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_domain;
    }

    try {
        if(*ent) return cmd_entropy(gamma, field, common);
        if(*scan) return cmd_scan(scan_gammas, h_min, h_max, steps, common);
        if(*fig) return cmd_figure1(fig_out, fig_points, fig_band, fig_bits);
        if(*verify) return cmd_verify(fast);
    } catch(const xyent::DivergenceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch(const xyent::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch(const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}
