#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xyent {

enum class Method { Series, ClosedForm, Asymptotic };

std::string_view to_string(Method m);

/// Limiting block entropy in nats.
struct EntropyResult {
    double value      = 0.0;
    Method method     = Method::ClosedForm;
    long   terms_used = 0;   // Series only
    double tail_bound = 0.0; // Series only
    bool   divergent  = false;
};

/// Raised at critical points. Carries the best available estimate, which is
/// +inf exactly on a critical line.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string &what, EntropyResult estimate)
        : std::runtime_error(what), estimate_(estimate) {}

    [[nodiscard]] const EntropyResult &estimate() const noexcept { return estimate_; }

  private:
    EntropyResult estimate_;
};

inline EntropyResult divergent_estimate() {
    return {std::numeric_limits<double>::infinity(), Method::Asymptotic, 0, 0.0, true};
}

} // namespace xyent
