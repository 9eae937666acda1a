#include "xyent/quadrature.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "xyent/errors.hpp"

namespace xyent::reference {
namespace {

    struct WorkspaceDeleter {
        void operator()(gsl_integration_workspace *w) const { gsl_integration_workspace_free(w); }
    };

    // in t = pi/2 - phi: 1 - k^2 cos^2 t = sin^2 t + k'^2 cos^2 t, no
    // cancellation near k = 1 and the peak sits at t = 0 where sin is exact
    double integrand(double t, void *params) {
        const double kp = *static_cast<double *>(params);
        const double s  = std::sin(t);
        const double c  = kp * std::cos(t);
        return 1.0 / std::sqrt(s * s + c * c);
    }

} // namespace

double elliptic_K_quadrature(double k, double rel_tol) {
    if(!(k >= 0.0) || !(k < 1.0)) throw DomainError("quadrature modulus must lie in [0, 1)");
    return elliptic_K_quadrature_complement(std::sqrt((1.0 - k) * (1.0 + k)), rel_tol);
}

double elliptic_K_quadrature_complement(double kp, double rel_tol) {
    if(!(kp > 0.0) || !(kp <= 1.0)) throw DomainError("quadrature complementary modulus must lie in (0, 1]");
    constexpr size_t limit = 4000;
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(limit));
    gsl_function f{&integrand, &kp};

    gsl_error_handler_t *old = gsl_set_error_handler_off();
    // peak of width ~k' at t = 0; break the range on that scale
    std::vector<double> cuts{0.0};
    for(double c : {kp, 30.0 * kp, 1000.0 * kp})
        if(c < std::numbers::pi / 2.0) cuts.push_back(c);
    cuts.push_back(std::numbers::pi / 2.0);
    double total  = 0.0;
    double err    = 0.0;
    int    status = GSL_SUCCESS;
    for(size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        double part = 0.0, e = 0.0;
        const int st = gsl_integration_qag(&f, a, b, 0.0, rel_tol, limit, GSL_INTEG_GAUSS61, ws.get(), &part, &e);
        if(st != GSL_SUCCESS && st != GSL_EROUND) status = st;
        total += part;
        err += e;
    }
    gsl_set_error_handler(old);
    if(status != GSL_SUCCESS) throw NumericalError(std::string("quadrature failed: ") + gsl_strerror(status));
    return total;
}

} // namespace xyent::reference
