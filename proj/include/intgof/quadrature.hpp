#ifndef INTGOF_QUADRATURE_HPP
#define INTGOF_QUADRATURE_HPP

#include <functional>

namespace intgof {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 100;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Single 15-point Gauss-Kronrod panel on [a, b].
/// Returns the Kronrod value; *error holds |K15 - G7| based estimate.
double gauss_kronrod_15(const std::function<double(double)>& f, double a,
                        double b, double* error);

/// Adaptive integration over [a, b]; either endpoint may be infinite.
/// Infinite ranges are mapped to finite ones (x = t/(1-t^2) on the whole
/// line, x = a + t/(1-t) on half-lines) before subdividing.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opt = {});

/// As integrate_adaptive but throws NumericError when the requested
/// tolerance was not reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

} // namespace intgof

#endif
