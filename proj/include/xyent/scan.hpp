#pragma once

// Phase-diagram sweeps and report formatting behind the command-line tool.

#include <optional>
#include <string>
#include <vector>

#include "xyent/entropy_limit.hpp"
#include "xyent/model.hpp"
#include "xyent/oracle.hpp"

namespace xyent {

enum class OutputFormat { Csv, Json };

inline constexpr double default_guard_band = 0.05;

struct ScanSpec {
    std::vector<double> gammas{0.5};
    double              h_min = 0.0;
    double              h_max = 3.0;
    long                steps = 2;

    bool              series = true;
    bool              closed = true;
    std::vector<long> toeplitz_L;
    std::vector<long> bdg_N;
    std::vector<long> ed_N;

    double       guard_band = default_guard_band;
    double       tol        = default_truncation_tol;
    OutputFormat format     = OutputFormat::Csv;
    bool         bits       = false;
    int          threads    = 1;
};

/// Throws DomainError on a malformed scan request (steps < 2, h_min >= h_max,
/// oracle sizes out of range, ...).
void validate(const ScanSpec &spec);

/// Parses "0.5" or an inclusive range "lo:hi:count".
std::vector<double> parse_gamma_list(const std::string &text);

struct ScanRow {
    double                gamma = 0.0;
    double                h     = 0.0;
    Regime                regime;
    std::optional<double> k, k_prime, tau0;

    std::optional<double> s_series;
    long                  series_terms = 0;
    double                series_tail  = 0.0;
    std::optional<double> s_closed;
    std::optional<double> s_asymptotic;

    std::vector<std::optional<double>> s_toeplitz; // one per ScanSpec::toeplitz_L
    std::vector<std::optional<double>> s_bdg;      // one per ScanSpec::bdg_N
    std::vector<std::optional<double>> s_ed;       // one per ScanSpec::ed_N

    std::optional<double> disagreement_max;
    bool                  divergent = false;
    std::string           note;
};

/// Central block of a finite chain used by the bdg/ed scan columns:
/// floor(N/2) sites starting after floor(N/4).
SiteRange central_block(long n_sites);

/// True inside the reporting guard band around h = 2 or below gamma = band.
bool in_guard_band(const XYPoint &p, double guard_band);

/// Evaluates one grid point. Never throws for points inside the validity
/// domain; failures land in ScanRow::note.
ScanRow evaluate_point(const XYPoint &p, const ScanSpec &spec);

/// All valid points of the (gamma, h) grid in lexicographic order. Points
/// outside the validity domain are skipped. Evaluation fans out over
/// ScanSpec::threads workers; the row order does not depend on it.
std::vector<ScanRow> run_scan(const ScanSpec &spec);

std::vector<std::string> csv_header(const ScanSpec &spec);
std::string              format_csv(const ScanSpec &spec, const std::vector<ScanRow> &rows);
std::string              format_json(const ScanSpec &spec, const std::vector<ScanRow> &rows);

/// 17 significant digits, "inf"/"nan" spelled out.
std::string format_number(double v);

struct Figure1Row {
    double                h = 0.0;
    Regime                regime;
    std::optional<double> s;            // closed form; empty inside the guard band
    std::optional<double> s_series;
    std::optional<double> s_asymptotic; // guard band only
    bool                  divergent = false;
};

struct Figure1Spec {
    double gamma      = 0.5;
    double h_min      = 0.0;
    double h_max      = 3.0;
    long   points     = 600;
    double guard_band = default_guard_band;
};

/// Uniform grid plus the factorizing field inserted exactly, sorted in h.
std::vector<Figure1Row> figure1_rows(const Figure1Spec &spec = {});
std::string             figure1_csv(const std::vector<Figure1Row> &rows, bool bits = false);
std::string             figure1_plot_script(const Figure1Spec &spec, const std::string &csv_path);

} // namespace xyent
