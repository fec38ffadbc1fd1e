#include "intgof/skew.hpp"

#include "intgof/quadrature.hpp"
#include "intgof/rng.hpp"

#include "panel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intgof {

SkewAlternative make_skew_alternative(Density f, Density g, double theta) {
    if (!(theta >= 0.0))
        throw std::invalid_argument("skew alternative requires theta >= 0");
    return SkewAlternative{std::move(f), std::move(g), theta};
}

double skew_pdf(const SkewAlternative& a, double x) {
    return 2.0 * a.f.pdf(x) * a.g.cdf(a.theta * x);
}

double skew_cdf(const SkewAlternative& a, double x) {
    if (x <= a.f.support.lo) return 0.0;
    if (x >= a.f.support.hi) return 1.0;
    const double p = a.f.cdf(x);
    if (a.theta == 0.0) return p;
    const double theta = a.theta;
    const auto& quantile = a.f.quantile;
    const auto& G = a.g.cdf;
    auto w = [&](double t) { return 2.0 * G(theta * quantile(t)) - 1.0; };
    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    const double h = p + integrate(w, 0.0, p, opt);
    return std::clamp(h, 0.0, 1.0);
}

std::vector<double> sample(const SkewAlternative& a, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    RngStream rng(seed, stream);
    std::vector<double> out(n);
    for (auto& x : out) {
        const double z = a.f.quantile(rng.next_open01());
        const double u = rng.next_open01();
        x = (u <= a.g.cdf(a.theta * z)) ? z : -z;
    }
    return out;
}

double kullback_leibler(const SkewAlternative& a) {
    if (a.theta == 0.0) return 0.0;
    const double theta = a.theta;
    const auto& quantile = a.f.quantile;
    const auto& G = a.g.cdf;
    // K = int_0^1 y ln y dp with y = 2 G(theta Q(p)); y ln y := 0 at y = 0.
    // Writing y = 1 + w and using log1p keeps the small-theta case exact,
    // where y ln y = w + w^2/2 + O(w^3) and the w term integrates to zero.
    auto integrand = [&](double p) {
        const double w = 2.0 * G(theta * quantile(p)) - 1.0;
        if (w <= -1.0) return 0.0;
        return (1.0 + w) * std::log1p(w);
    };
    QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-11;
    const double k = integrate(integrand, 0.0, 1.0, opt);
    return std::max(0.0, k);
}

Condition2Report verify_condition2(const SkewAlternative& a,
                                   std::vector<double> theta_grid) {
    Condition2Report report;
    report.theta_grid = std::move(theta_grid);
    report.normalized_sup.reserve(report.theta_grid.size());

    const double g0 = a.g.density_at_zero;
    const auto& quantile = a.f.quantile;
    const auto& G = a.g.cdf;

    const std::vector<double> knots = detail::graded_unit_knots();
    for (double theta : report.theta_grid) {
        if (theta == 0.0) {
            report.normalized_sup.push_back(0.0);
            continue;
        }
        auto w = [&](double t) { return 2.0 * G(theta * quantile(t)) - 1.0; };
        // cumulative Delta H along the graded knots: the dyadic tail panels
        // keep the quantile-composed integrand resolved for heavy tails.
        // The sup itself is scanned over the core only, where quantiles are
        // still distinctly representable; the cumulative integral captures
        // tail mass either way since the difference is flat past the tails.
        const double scan_lo = std::ldexp(1.0, -13);
        double sup = 0.0;
        double acc = 0.0;
        for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
            double err;
            acc += gauss_kronrod_15(w, knots[i - 1], knots[i], &err);
            const double p = knots[i];
            if (p < scan_lo || p > 1.0 - scan_lo) continue;
            const double x = quantile(p);
            const double d = std::fabs(acc - 2.0 * theta * g0 * v(a.f, x));
            sup = std::max(sup, d);
        }
        report.normalized_sup.push_back(sup / theta);
    }

    // pairs where the expansion is exact (uniform G) bottom out at pure
    // roundoff; values under the floor count as converged
    const double floor = 1e-9;
    report.decreasing = true;
    for (std::size_t i = 1; i < report.normalized_sup.size(); ++i)
        if (report.normalized_sup[i] >
            std::max(report.normalized_sup[i - 1], floor))
            report.decreasing = false;
    return report;
}

} // namespace intgof
