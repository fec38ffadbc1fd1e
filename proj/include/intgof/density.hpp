#ifndef INTGOF_DENSITY_HPP
#define INTGOF_DENSITY_HPP

#include <functional>
#include <string>
#include <vector>

namespace intgof {

/// Support interval, symmetric about 0. Endpoints may be infinite.
struct Interval {
    double lo;
    double hi;
};

/// A symmetric hypothetical law. Immutable after construction; all members
/// are pure functions, so sharing across threads is safe.
///
/// v(x) = integral of u f(u) du over (-inf, x]  (always <= 0, vanishing at
/// both support ends), and q(s) = integral of v(x) f(x) dx over (-inf, s]
/// (nonincreasing). Closed forms are provided for the built-ins; the
/// generic numeric fallback lives in numeric_v_q().
struct Density {
    std::string name;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile; // (0,1) -> support
    double variance = 0.0;
    Interval support{0.0, 0.0};
    std::function<double(double)> v_closed; // may be empty
    std::function<double(double)> q_closed; // may be empty
    double density_at_zero = 0.0;           // g(0) when used as skewing law
    double q_at_right_end = 0.0;            // q at the right support end (= int v f)

    bool has_closed_vq() const { return static_cast<bool>(v_closed); }
};

/// The five built-in symmetric densities. "student5" is the
/// non-standardized density 8/(3 pi (1+x^2)^3), variance 1/3, not the
/// textbook t(5).
Density make_density(const std::string& kind);

const std::vector<std::string>& builtin_density_names();

/// v and q for d: closed form when available, adaptive quadrature otherwise.
double v(const Density& d, double x);
double q(const Density& d, double s);

struct VQFunctions {
    std::function<double(double)> v;
    std::function<double(double)> q;
};

/// Quadrature-backed v and q for a user-supplied symmetric pdf.
/// Validates symmetry and finite variance numerically; throws
/// std::invalid_argument if the pdf is detectably asymmetric.
VQFunctions numeric_v_q(const std::function<double(double)>& pdf,
                        Interval support);

} // namespace intgof

#endif
