#pragma once

// Exit criteria for the whole project, shared by the acceptance test binary
// and the `verify` subcommand. Each check reports its measured numbers.

#include <functional>
#include <string>
#include <vector>

namespace xyent::acceptance {

enum class Status { Pass, Fail, Skipped };

struct CriterionResult {
    int         id = 0;
    std::string name;
    Status      status = Status::Fail;
    std::string detail;
};

struct Options {
    /// Reduced oracle sizes; the long-running infinite-chain check is skipped.
    bool fast = false;
};

/// Elliptic routes under test. The defaults are the production AGM paths;
/// tests substitute broken versions to make sure the checks can fail.
struct EllipticRoutes {
    std::function<double(double)> K;    // I(k)
    std::function<double(double)> tau0; // I(k')/I(k)
};
EllipticRoutes production_elliptic_routes();

CriterionResult figure1_reproduction();
CriterionResult series_closed_equivalence();
CriterionResult factorizing_field_continuity();
CriterionResult self_dual_point();
CriterionResult critical_divergence_law();
CriterionResult elliptic_kernel(const EllipticRoutes &routes = production_elliptic_routes());
CriterionResult finite_chain_oracles(const Options &opt = {});
CriterionResult infinite_chain_oracle(const Options &opt = {});
CriterionResult limit_behaviors();
CriterionResult scan_determinism();

std::vector<CriterionResult> run_all(const Options &opt = {});

/// "[PASS] 3 name: detail"
std::string format_line(const CriterionResult &r);

bool all_passed(const std::vector<CriterionResult> &results);

} // namespace xyent::acceptance
