#include "xyent/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "xyent/oracle.hpp"

namespace xyent {
namespace {

    std::vector<double> linspace(double lo, double hi, long n) {
        std::vector<double> v(static_cast<size_t>(n));
        for(long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        return v;
    }

    std::string cell(const std::optional<double> &v, double scale = 1.0) { return v ? format_number(*v * scale) : std::string{}; }

    nlohmann::ordered_json jcell(const std::optional<double> &v, double scale = 1.0) {
        if(!v) return nullptr;
        const double x = *v * scale;
        // JSON has no inf; keep it as a string token
        if(!std::isfinite(x)) return format_number(x);
        return x;
    }

    void append_note(std::string &note, const std::string &msg) {
        if(!note.empty()) note += "; ";
        note += msg;
    }

} // namespace

std::string format_number(double v) {
    if(std::isnan(v)) return "nan";
    if(std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

std::vector<double> parse_gamma_list(const std::string &text) {
    auto to_double = [&](const std::string &s) {
        size_t pos = 0;
        double v   = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch(const std::exception &) { throw DomainError(fmt::format("cannot parse gamma '{}'", text)); }
        if(pos != s.size()) throw DomainError(fmt::format("cannot parse gamma '{}'", text));
        return v;
    };
    const auto c1 = text.find(':');
    if(c1 == std::string::npos) return {to_double(text)};
    const auto c2 = text.find(':', c1 + 1);
    if(c2 == std::string::npos) throw DomainError(fmt::format("gamma range '{}' must be lo:hi:count", text));
    const double lo = to_double(text.substr(0, c1));
    const double hi = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double n  = to_double(text.substr(c2 + 1));
    if(n < 1 || n != std::floor(n)) throw DomainError(fmt::format("gamma range count in '{}' must be a positive integer", text));
    if(n == 1) return {lo};
    return linspace(lo, hi, static_cast<long>(n));
}

void validate(const ScanSpec &spec) {
    if(spec.steps < 2) throw DomainError("scan needs steps >= 2");
    if(!(spec.h_min < spec.h_max)) throw DomainError("scan needs h_min < h_max");
    if(spec.gammas.empty()) throw DomainError("scan needs at least one gamma");
    if(!(spec.guard_band >= 0.0)) throw DomainError("guard band must be >= 0");
    if(!(spec.tol > 0.0)) throw DomainError("tolerance must be positive");
    if(spec.threads < 1) throw DomainError("threads must be >= 1");
    for(long L : spec.toeplitz_L)
        if(L < 1 || L > 4096) throw DomainError(fmt::format("toeplitz block size {} outside 1..4096", L));
    for(long n : spec.bdg_N)
        if(n < 2 || n > 4096) throw DomainError(fmt::format("bdg chain length {} outside 2..4096", n));
    for(long n : spec.ed_N)
        if(n < 2 || n > max_ed_sites) throw DomainError(fmt::format("ed chain length {} outside 2..{}", n, max_ed_sites));
}

SiteRange central_block(long n_sites) {
    const long len   = std::max(1L, n_sites / 2);
    const long first = n_sites / 4 + 1;
    return {first, first + len - 1};
}

bool in_guard_band(const XYPoint &p, double guard_band) { return std::abs(p.h - 2.0) < guard_band || p.gamma < guard_band; }

ScanRow evaluate_point(const XYPoint &p, const ScanSpec &spec) {
    ScanRow row;
    row.gamma  = p.gamma;
    row.h      = p.h;
    row.regime = classify(p);
    row.s_toeplitz.resize(spec.toeplitz_L.size());
    row.s_bdg.resize(spec.bdg_N.size());
    row.s_ed.resize(spec.ed_N.size());
    row.divergent = row.regime.critical() || in_guard_band(p, spec.guard_band);

    if(!row.regime.critical()) {
        const Modulus md = modulus(p, row.regime);
        row.k            = md.k;
        row.k_prime      = md.k_prime;
        if(md.k > 0.0)
            row.tau0 = elliptic_bundle(md.k, md.k_prime).tau0;
        else
            row.tau0 = std::numeric_limits<double>::infinity();
    }

    if(row.divergent) {
        if(row.regime.label == CaseLabel::CriticalH || row.regime.label == CaseLabel::CriticalGamma)
            row.s_asymptotic = std::numeric_limits<double>::infinity();
        else if(std::abs(p.h - 2.0) <= spec.guard_band &&
                (row.regime.label == CaseLabel::Case1a || row.regime.label == CaseLabel::Case2))
            row.s_asymptotic = entropy_asymptotic_near_h2(p, spec.guard_band).value;
    } else {
        if(spec.series) {
            try {
                const auto r     = entropy_series(p, spec.tol);
                row.s_series     = r.value;
                row.series_terms = r.terms_used;
                row.series_tail  = r.tail_bound;
            } catch(const std::exception &e) { append_note(row.note, fmt::format("series: {}", e.what())); }
        }
        if(spec.closed) {
            try {
                row.s_closed = entropy_closed_form(p).value;
            } catch(const std::exception &e) { append_note(row.note, fmt::format("closed: {}", e.what())); }
        }
        if(row.s_series && row.s_closed) row.disagreement_max = std::abs(*row.s_series - *row.s_closed);
    }

    // finite-size oracles are well defined off the critical lines, guard band or not
    for(size_t i = 0; i < spec.toeplitz_L.size(); ++i) {
        try {
            row.s_toeplitz[i] = toeplitz_block_entropy(p, spec.toeplitz_L[i]);
        } catch(const std::exception &e) { append_note(row.note, fmt::format("toeplitz L={}: {}", spec.toeplitz_L[i], e.what())); }
    }
    for(size_t i = 0; i < spec.bdg_N.size(); ++i) {
        try {
            const long n  = spec.bdg_N[i];
            row.s_bdg[i] = bdg_finite_chain_entropy({n, p}, central_block(n));
        } catch(const std::exception &e) { append_note(row.note, fmt::format("bdg N={}: {}", spec.bdg_N[i], e.what())); }
    }
    for(size_t i = 0; i < spec.ed_N.size(); ++i) {
        try {
            const long n  = spec.ed_N[i];
            const auto ed = exact_diag_entropy({n, p}, central_block(n));
            row.s_ed[i]   = ed.entropy;
            if(ed.degenerate) append_note(row.note, fmt::format("ed N={}: degenerate ground state (gap {})", n, format_number(ed.gap)));
        } catch(const std::exception &e) { append_note(row.note, fmt::format("ed N={}: {}", spec.ed_N[i], e.what())); }
    }
    return row;
}

std::vector<ScanRow> run_scan(const ScanSpec &spec) {
    validate(spec);
    std::vector<double> gammas = spec.gammas;
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
    const auto hs = linspace(spec.h_min, spec.h_max, spec.steps);

    std::vector<XYPoint> points;
    for(double g : gammas)
        for(double h : hs) {
            const XYPoint p{g, h};
            try {
                validate(p);
            } catch(const DomainError &) { continue; }
            points.push_back(p);
        }

    std::vector<ScanRow> rows(points.size());
    std::atomic<size_t>  next{0};
    auto                 worker = [&] {
        for(size_t i = next++; i < points.size(); i = next++) rows[i] = evaluate_point(points[i], spec);
    };
    const auto n_workers = std::min<size_t>(static_cast<size_t>(spec.threads), std::max<size_t>(1, points.size()));
    std::vector<std::jthread> pool;
    for(size_t t = 1; t < n_workers; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return rows;
}

std::vector<std::string> csv_header(const ScanSpec &spec) {
    std::vector<std::string> h{"gamma", "h", "case", "sigma", "k", "kprime", "tau0", "S_series", "series_terms", "series_tail", "S_closed"};
    for(long L : spec.toeplitz_L) h.push_back(fmt::format("S_toeplitz_{}", L));
    for(long n : spec.bdg_N) h.push_back(fmt::format("S_bdg_{}", n));
    for(long n : spec.ed_N) h.push_back(fmt::format("S_ed_{}", n));
    h.insert(h.end(), {"S_asymptotic", "disagreement_max", "divergent", "note"});
    return h;
}

std::string format_csv(const ScanSpec &spec, const std::vector<ScanRow> &rows) {
    const double scale = spec.bits ? 1.0 / std::numbers::ln2 : 1.0;
    std::string  out;
    const auto   header = csv_header(spec);
    for(size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for(const auto &r : rows) {
        std::vector<std::string> c;
        c.push_back(format_number(r.gamma));
        c.push_back(format_number(r.h));
        c.emplace_back(to_string(r.regime.label));
        c.push_back(std::to_string(r.regime.sigma));
        c.push_back(cell(r.k));
        c.push_back(cell(r.k_prime));
        c.push_back(cell(r.tau0));
        c.push_back(cell(r.s_series, scale));
        c.push_back(r.s_series ? std::to_string(r.series_terms) : std::string{});
        c.push_back(r.s_series ? format_number(r.series_tail * scale) : std::string{});
        c.push_back(cell(r.s_closed, scale));
        for(const auto &v : r.s_toeplitz) c.push_back(cell(v, scale));
        for(const auto &v : r.s_bdg) c.push_back(cell(v, scale));
        for(const auto &v : r.s_ed) c.push_back(cell(v, scale));
        c.push_back(cell(r.s_asymptotic, scale));
        c.push_back(cell(r.disagreement_max, scale));
        c.push_back(r.divergent ? "1" : "0");
        // notes may carry commas; quote them
        std::string note = r.note;
        if(!note.empty()) {
            std::string q = "\"";
            for(char ch : note) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            note = q + "\"";
        }
        c.push_back(note);
        for(size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + c[i];
        out += '\n';
    }
    return out;
}

std::string format_json(const ScanSpec &spec, const std::vector<ScanRow> &rows) {
    const double   scale = spec.bits ? 1.0 / std::numbers::ln2 : 1.0;
    nlohmann::ordered_json arr   = nlohmann::ordered_json::array();
    for(const auto &r : rows) {
        nlohmann::ordered_json j;
        j["gamma"]        = r.gamma;
        j["h"]            = r.h;
        j["case"]         = std::string(to_string(r.regime.label));
        j["sigma"]        = r.regime.sigma;
        j["k"]            = jcell(r.k);
        j["kprime"]       = jcell(r.k_prime);
        j["tau0"]         = jcell(r.tau0);
        j["S_series"]     = jcell(r.s_series, scale);
        j["series_terms"] = r.s_series ? nlohmann::ordered_json(r.series_terms) : nlohmann::ordered_json(nullptr);
        j["series_tail"]  = r.s_series ? nlohmann::ordered_json(r.series_tail * scale) : nlohmann::ordered_json(nullptr);
        j["S_closed"]     = jcell(r.s_closed, scale);
        for(size_t i = 0; i < spec.toeplitz_L.size(); ++i) j[fmt::format("S_toeplitz_{}", spec.toeplitz_L[i])] = jcell(r.s_toeplitz[i], scale);
        for(size_t i = 0; i < spec.bdg_N.size(); ++i) j[fmt::format("S_bdg_{}", spec.bdg_N[i])] = jcell(r.s_bdg[i], scale);
        for(size_t i = 0; i < spec.ed_N.size(); ++i) j[fmt::format("S_ed_{}", spec.ed_N[i])] = jcell(r.s_ed[i], scale);
        j["S_asymptotic"]     = jcell(r.s_asymptotic, scale);
        j["disagreement_max"] = jcell(r.disagreement_max, scale);
        j["divergent"]        = r.divergent;
        j["note"]             = r.note;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<Figure1Row> figure1_rows(const Figure1Spec &spec) {
    if(spec.points < 2 || !(spec.h_min < spec.h_max)) throw DomainError("figure needs >= 2 points and h_min < h_max");
    auto hs = linspace(spec.h_min, spec.h_max, spec.points);
    const double hf = factorizing_field(spec.gamma);
    if(hf >= spec.h_min && hf <= spec.h_max) hs.push_back(hf);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

    std::vector<Figure1Row> rows;
    rows.reserve(hs.size());
    for(double h : hs) {
        const XYPoint p{spec.gamma, h};
        try {
            validate(p);
        } catch(const DomainError &) { continue; }
        Figure1Row row;
        row.h         = h;
        row.regime    = classify(p);
        row.divergent = row.regime.critical() || in_guard_band(p, spec.guard_band);
        if(row.divergent) {
            if(row.regime.critical())
                row.s_asymptotic = std::numeric_limits<double>::infinity();
            else if(row.regime.label == CaseLabel::Case1a || row.regime.label == CaseLabel::Case2)
                row.s_asymptotic = entropy_asymptotic_near_h2(p, spec.guard_band).value;
        } else {
            row.s        = entropy_closed_form(p).value;
            row.s_series = entropy_series(p).value;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string figure1_csv(const std::vector<Figure1Row> &rows, bool bits) {
    const double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
    std::string  out   = "h,case,S,S_series,S_asymptotic,divergent\n";
    for(const auto &r : rows)
        out += fmt::format("{},{},{},{},{},{}\n", format_number(r.h), to_string(r.regime.label), cell(r.s, scale), cell(r.s_series, scale),
                           cell(r.s_asymptotic, scale), r.divergent ? 1 : 0);
    return out;
}

std::string figure1_plot_script(const Figure1Spec &spec, const std::string &csv_path) {
    const double hf = factorizing_field(spec.gamma);
    std::ostringstream os;
    os << "# gnuplot script: limiting block entropy vs field at gamma = " << format_number(spec.gamma) << "\n"
       << "set datafile separator ','\n"
       << "set key top right\n"
       << "set xlabel 'h'\n"
       << "set ylabel 'S (nats)'\n"
       << "set xrange [" << format_number(spec.h_min) << ":" << format_number(spec.h_max) << "]\n"
       << "set yrange [0:*]\n"
       << "set arrow from " << format_number(hf) << ", graph 0 to " << format_number(hf) << ", graph 1 nohead dt 2\n"
       << "set arrow from 2, graph 0 to 2, graph 1 nohead dt 3 lc rgb 'red'\n"
       << "set label 'Case 1b' at graph 0.15, graph 0.9 center\n"
       << "set label 'Case 1a' at first " << format_number(0.5 * (hf + 2.0)) << ", graph 0.9 center\n"
       << "set label 'Case 2' at first " << format_number(0.5 * (2.0 + spec.h_max)) << ", graph 0.9 center\n"
       << "set label 'ln 2' at first " << format_number(hf) << ", first " << format_number(std::numbers::ln2) << " offset 0,-1 center\n"
       << "plot '" << csv_path << "' skip 1 using 1:(strcol(3) eq '' ? NaN : $3) with lines lw 2 title 'S(h)', \\\n"
       << "     '' skip 1 using 1:(strcol(6) eq '1' ? 0 : NaN) with points pt 2 lc rgb 'red' title 'divergent'\n";
    return os.str();
}

} // namespace xyent
