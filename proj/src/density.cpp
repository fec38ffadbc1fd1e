#include "intgof/density.hpp"

#include "intgof/quadrature.hpp"

#include "panel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace intgof {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrtPi = std::sqrt(kPi);

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Acklam's rational approximation followed by one Halley step; the
// refinement brings the error to a few ulp. The endpoints extend
// continuously to the support ends so that p-space integration panels
// whose nodes round to 0 or 1 stay well defined.
double normal_quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("normal quantile requires p in [0,1]");
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double t = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
            ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
    } else if (p <= 1.0 - plow) {
        const double t = p - 0.5;
        const double r = t * t;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double t = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
            ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
    }
    const double e = normal_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double logistic_pdf(double x) {
    const double e = std::exp(-std::fabs(x));
    const double de = 1.0 + e;
    return e / (de * de);
}

double logistic_cdf(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logistic_quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("logistic quantile requires p in [0,1]");
    return std::log(p) - std::log1p(-p);
}

// v for the logistic, computed through the even symmetry v(x) = v(-x);
// the |x| form avoids loss of significance in either tail.
double logistic_v(double x) {
    const double ax = std::fabs(x);
    if (std::isinf(ax)) return 0.0; // ax * exp(-ax) would be NaN
    const double e = std::exp(-ax);
    return -std::log1p(e) - ax * e / (1.0 + e);
}

// q for the logistic. The naive expression cancels catastrophically for
// large |s|; substituting ln(1+e^s) = s + log1p(e^{-s}) removes the
// cancellation. q(-s) = q(inf) - q(s) covers the left tail.
double logistic_q(double s) {
    if (s > 35.0) return -0.5;
    if (s < 0.0) return -0.5 - logistic_q(-s);
    const double L = std::log1p(std::exp(-s));
    const double es = std::exp(s);
    const double num = 1.0 + s + es + L - L * std::exp(2.0 * s);
    const double de = 1.0 + es;
    return num / (2.0 * de * de) - 0.5;
}

double arcsine_pdf(double x) {
    if (std::fabs(x) >= 1.0)
        return std::fabs(x) == 1.0 ? kInf : 0.0;
    return 1.0 / (kPi * std::sqrt(1.0 - x * x));
}

double arcsine_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::asin(x) / kPi + 0.5;
}

double arcsine_quantile(double p) { return std::sin(kPi * (p - 0.5)); }

double arcsine_v(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    return -std::sqrt(1.0 - x * x) / kPi;
}

double arcsine_q(double s) {
    const double t = std::clamp(s, -1.0, 1.0);
    return -(t + 1.0) / (kPi * kPi);
}

double uniform_pdf(double x) { return std::fabs(x) <= 1.0 ? 0.5 : 0.0; }

double uniform_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 0.5 * (x + 1.0);
}

double uniform_quantile(double p) { return 2.0 * p - 1.0; }

double uniform_v(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    return -0.25 * (1.0 - x * x);
}

double uniform_q(double s) {
    const double t = std::clamp(s, -1.0, 1.0);
    return (t * t * t - 3.0 * t - 2.0) / 24.0;
}

double student5_pdf(double x) {
    if (std::fabs(x) > 1e100) return 0.0;
    const double d = 1.0 + x * x;
    return 8.0 / (3.0 * kPi * d * d * d);
}

// Upper tail mass: 1 - F(x) = (8/(3 pi)) sum_k C(k+2,2) (-1)^k u^{2k+5}/(2k+5)
// with u = 1/x. The direct antiderivative cancels catastrophically out
// here (terms O(1), result O(x^-5)); the series is relatively accurate.
double student5_tail(double x) {
    const double u = 1.0 / x;
    const double u2 = u * u;
    double term_pow = u2 * u2 * u; // u^5
    double sum = 0.0;
    for (int k = 0; k < 24; ++k) {
        const double coef =
            static_cast<double>((k + 1) * (k + 2) / 2) / (2 * k + 5);
        const double term = (k % 2 == 0 ? coef : -coef) * term_pow;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        term_pow *= u2;
    }
    return (8.0 / (3.0 * kPi)) * sum;
}

double student5_cdf(double x) {
    if (x >= 4.0) return 1.0 - student5_tail(x);
    if (x <= -4.0) return student5_tail(-x);
    const double d = 1.0 + x * x;
    return 0.5 + (8.0 / (3.0 * kPi)) * (x / (4.0 * d * d) + 3.0 * x / (8.0 * d)) +
           std::atan(x) / kPi;
}

double student5_quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("student5 quantile requires p in [0,1]");
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    if (p == 0.5) return 0.0;
    // bracket from the exact fifth-power tail bound, bisect to scale,
    // then Newton confined to the bracket
    const double tail = std::min(p, 1.0 - p);
    double hi = std::pow(8.0 / (15.0 * kPi * tail), 0.2) + 1.0;
    double lo = -hi;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (student5_cdf(mid) < p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double fx = student5_pdf(x);
        if (fx <= 0.0) break;
        const double step = (student5_cdf(x) - p) / fx;
        if (x - step <= lo || x - step >= hi) break;
        x -= step;
    }
    return x;
}

double student5_v(double x) {
    if (std::fabs(x) > 1e100) return 0.0;
    const double d = 1.0 + x * x;
    return -2.0 / (3.0 * kPi * d * d);
}

double student5_q(double s) {
    // |q(s) - q(inf)| < (16/81 pi^2) s^{-9}: beyond |s| = 1e3 the closed
    // form is pure cancellation noise, the limit is exact to all digits.
    if (s > 1e3) return -35.0 / (72.0 * kPi);
    if (s < -1e3) return 0.0;
    const double s2 = s * s;
    const double d = 1.0 + s2;
    const double d4 = d * d * d * d;
    const double num =
        s * (279.0 + 511.0 * s2 + 385.0 * s2 * s2 + 105.0 * s2 * s2 * s2) +
        105.0 * d4 * std::atan(s);
    return -num / (216.0 * kPi * kPi * d4) - 35.0 / (144.0 * kPi);
}

} // namespace

Density make_density(const std::string& kind) {
    Density d;
    d.name = kind;
    if (kind == "normal") {
        d.pdf = normal_pdf;
        d.cdf = normal_cdf;
        d.quantile = normal_quantile;
        d.variance = 1.0;
        d.support = {-kInf, kInf};
        d.v_closed = [](double x) { return -normal_pdf(x); };
        d.q_closed = [](double s) {
            return -normal_cdf(s * std::sqrt(2.0)) / (2.0 * kSqrtPi);
        };
        d.density_at_zero = 1.0 / kSqrt2Pi;
        d.q_at_right_end = -1.0 / (2.0 * kSqrtPi);
    } else if (kind == "logistic") {
        d.pdf = logistic_pdf;
        d.cdf = logistic_cdf;
        d.quantile = logistic_quantile;
        d.variance = kPi * kPi / 3.0;
        d.support = {-kInf, kInf};
        d.v_closed = logistic_v;
        d.q_closed = logistic_q;
        d.density_at_zero = 0.25;
        d.q_at_right_end = -0.5;
    } else if (kind == "arcsine") {
        d.pdf = arcsine_pdf;
        d.cdf = arcsine_cdf;
        d.quantile = arcsine_quantile;
        d.variance = 0.5;
        d.support = {-1.0, 1.0};
        d.v_closed = arcsine_v;
        d.q_closed = arcsine_q;
        d.density_at_zero = 1.0 / kPi;
        d.q_at_right_end = -2.0 / (kPi * kPi);
    } else if (kind == "uniform") {
        d.pdf = uniform_pdf;
        d.cdf = uniform_cdf;
        d.quantile = uniform_quantile;
        d.variance = 1.0 / 3.0;
        d.support = {-1.0, 1.0};
        d.v_closed = uniform_v;
        d.q_closed = uniform_q;
        d.density_at_zero = 0.5;
        d.q_at_right_end = -1.0 / 6.0;
    } else if (kind == "student5") {
        d.pdf = student5_pdf;
        d.cdf = student5_cdf;
        d.quantile = student5_quantile;
        d.variance = 1.0 / 3.0;
        d.support = {-kInf, kInf};
        d.v_closed = student5_v;
        d.q_closed = student5_q;
        d.density_at_zero = 8.0 / (3.0 * kPi);
        d.q_at_right_end = -35.0 / (72.0 * kPi);
    } else {
        std::string names;
        for (const auto& n : builtin_density_names()) {
            if (!names.empty()) names += ", ";
            names += n;
        }
        throw std::invalid_argument("unknown density '" + kind +
                                    "'; valid names: " + names);
    }
    return d;
}

const std::vector<std::string>& builtin_density_names() {
    static const std::vector<std::string> names = {"normal", "logistic",
                                                   "arcsine", "uniform",
                                                   "student5"};
    return names;
}

double v(const Density& d, double x) {
    if (d.v_closed) return d.v_closed(x);
    if (x <= d.support.lo) return 0.0;
    const double hi = std::min(x, d.support.hi);
    auto integrand = [&d](double u) { return u * d.pdf(u); };
    if (hi >= d.support.hi) {
        // v vanishes at both ends of the support of a symmetric law
        return 0.0;
    }
    return integrate(integrand, d.support.lo, hi);
}

double q(const Density& d, double s) {
    if (d.q_closed) return d.q_closed(s);
    if (s <= d.support.lo) return 0.0;
    const double hi = std::min(s, d.support.hi);
    auto integrand = [&d](double x) { return v(d, x) * d.pdf(x); };
    return integrate(integrand, d.support.lo, hi);
}

namespace {

// Bijection between the graded coordinate t in [0,1] and a symmetric
// support: affine for finite intervals, x = scale r/(1-r^2) with r = 2t-1
// for the whole line. Dyadic grading in t then resolves both tails.
struct SupportMap {
    double lo, hi, scale;
    bool finite;

    double x_of(double t) const {
        if (finite) return lo + (hi - lo) * t;
        const double r = 2.0 * t - 1.0;
        return scale * r / (1.0 - r * r);
    }
    double t_of(double x) const {
        if (finite) return (x - lo) / (hi - lo);
        if (x == 0.0) return 0.5;
        if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
        const double r =
            (std::sqrt(scale * scale + 4.0 * x * x) - scale) / (2.0 * x);
        return 0.5 * (r + 1.0);
    }
    double jacobian(double t) const {
        if (finite) return hi - lo;
        const double r = 2.0 * t - 1.0;
        const double d = 1.0 - r * r;
        return 2.0 * scale * (1.0 + r * r) / (d * d);
    }
};

// Prefix integral over the graded knots; evaluation anywhere costs one
// partial Gauss-Kronrod panel.
class PrefixIntegral {
public:
    PrefixIntegral(std::function<double(double)> g, std::vector<double> knots)
        : g_(std::move(g)), knots_(std::move(knots)) {
        prefix_.resize(knots_.size(), 0.0);
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            double err;
            prefix_[i] = prefix_[i - 1] +
                         gauss_kronrod_15(g_, knots_[i - 1], knots_[i], &err);
        }
    }

    double operator()(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return prefix_.back();
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - knots_.begin()) - 1;
        double err;
        return prefix_[j] + gauss_kronrod_15(g_, knots_[j], t, &err);
    }

private:
    std::function<double(double)> g_;
    std::vector<double> knots_;
    std::vector<double> prefix_;
};

} // namespace

VQFunctions numeric_v_q(const std::function<double(double)>& pdf,
                        Interval support) {
    QuadratureOptions opt;
    opt.abs_tol = 1e-11;
    opt.rel_tol = 1e-11;
    const double mass = integrate(pdf, support.lo, support.hi, opt);
    if (std::fabs(mass - 1.0) > 1e-6)
        throw std::invalid_argument("pdf does not integrate to 1");
    const double second =
        integrate([&pdf](double x) { return x * x * pdf(x); }, support.lo,
                  support.hi, opt);
    if (!std::isfinite(second))
        throw std::invalid_argument("pdf has no finite variance");
    const double scale =
        std::isfinite(support.hi) ? support.hi : std::sqrt(second);
    for (int i = 1; i <= 19; ++i) {
        const double x = scale * (0.05 * i) * 0.999;
        const double a = pdf(x), b = pdf(-x);
        if (std::fabs(a - b) > 1e-8 * std::max({1.0, a, b}))
            throw std::invalid_argument("pdf is not symmetric about 0");
    }

    const SupportMap map{support.lo, support.hi, scale,
                         std::isfinite(support.hi)};
    const auto knots = detail::graded_unit_knots(1024);

    auto p1 = std::make_shared<PrefixIntegral>(
        [pdf, map](double t) {
            const double x = map.x_of(t);
            return x * pdf(x) * map.jacobian(t);
        },
        knots);
    auto p2 = std::make_shared<PrefixIntegral>(
        [pdf, map, p1](double t) {
            const double x = map.x_of(t);
            return (*p1)(t)*pdf(x) * map.jacobian(t);
        },
        knots);

    VQFunctions out;
    const Interval sup = support;
    out.v = [p1, map, sup](double x) {
        if (x <= sup.lo || x >= sup.hi) return 0.0;
        return (*p1)(map.t_of(x));
    };
    out.q = [p2, map, sup](double s) {
        if (s <= sup.lo) return 0.0;
        return (*p2)(map.t_of(std::min(s, sup.hi)));
    };
    return out;
}

} // namespace intgof
