#include "intgof/quadrature.hpp"

#include "intgof/error.hpp"

#include <algorithm>
#include <queue>
#include <cmath>
#include <limits>

namespace intgof {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    int depth;
};

// Non-finite integrand values are treated as zero: they arise when a node
// rounds exactly onto an integrable endpoint singularity, which carries no
// mass. Divergent integrals still fail through the error estimate, since
// their neighborhoods stay huge but finite.
double sanitized(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

double gk15_raw(const std::function<double(double)>& f, double a, double b,
                double* error) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    fv[7] = sanitized(f, mid);
    double resk = fv[7] * kWgk[7];
    double resg = fv[7] * kWg[3];
    double resabs = std::fabs(fv[7]) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = sanitized(f, mid - dx);
        fv[14 - j] = sanitized(f, mid + dx);
        const double fsum = fv[j] + fv[14 - j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    // QUADPACK error estimate: the |K - G| difference sharpened against
    // resasc, the panel's own variation scale, with a roundoff floor
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] *
                  (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    resasc *= std::fabs(half);

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor =
        50.0 * std::numeric_limits<double>::epsilon() * resabs *
        std::fabs(half);
    if (round_floor > 0.0) err = std::max(err, round_floor);

    *error = err;
    return resk * half;
}

// Map an integrand over a possibly infinite interval onto a finite one.
struct Mapped {
    std::function<double(double)> f;
    double a, b;
};

Mapped map_interval(const std::function<double(double)>& f, double a,
                    double b) {
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf) return {f, a, b};
    if (lo_inf && hi_inf) {
        // x = t/(1-t^2), dx = (1+t^2)/(1-t^2)^2 dt, t in (-1,1)
        auto g = [f](double t) {
            const double s = 1.0 - t * t;
            const double x = t / s;
            return f(x) * (1.0 + t * t) / (s * s);
        };
        return {g, -1.0, 1.0};
    }
    if (!lo_inf && hi_inf) {
        // x = a + t/(1-t), dx = dt/(1-t)^2, t in [0,1)
        auto g = [f, a](double t) {
            const double s = 1.0 - t;
            return f(a + t / s) / (s * s);
        };
        return {g, 0.0, 1.0};
    }
    // x = b - t/(1-t)
    auto g = [f, b](double t) {
        const double s = 1.0 - t;
        return f(b - t / s) / (s * s);
    };
    return {g, 0.0, 1.0};
}

} // namespace

double gauss_kronrod_15(const std::function<double(double)>& f, double a,
                        double b, double* error) {
    double err;
    const double v = gk15_raw(f, a, b, &err);
    if (error) *error = err;
    return v;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opt) {
    QuadratureResult res;
    if (a == b) return res;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    const Mapped m = map_interval(f, a, b);

    // Globally adaptive: always split the panel with the largest error
    // estimate. Unlike per-half tolerance splitting, this leaves smooth
    // panels alone while a singular-endpoint chain is refined, so
    // integrable algebraic singularities cost O(depth) panels.
    auto worse = [](const Panel& x, const Panel& y) {
        return x.error < y.error;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(
        worse);

    long evals = 0;
    auto make_panel = [&](double lo, double hi, int depth) {
        Panel p;
        p.a = lo;
        p.b = hi;
        p.depth = depth;
        p.value = gk15_raw(m.f, lo, hi, &p.error);
        evals += 15;
        return p;
    };

    Panel whole = make_panel(m.a, m.b, 0);
    double total = whole.value;
    double total_err = whole.error;
    queue.push(whole);

    auto within_tolerance = [&] {
        return total_err <= opt.abs_tol ||
               total_err <= opt.rel_tol * std::fabs(total);
    };

    const std::size_t max_panels = 20000;
    while (!within_tolerance() && queue.size() < max_panels) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= opt.max_depth || mid <= worst.a || mid >= worst.b)
            break; // the dominant panel cannot be improved further
        queue.pop();
        const Panel left = make_panel(worst.a, mid, worst.depth + 1);
        const Panel right = make_panel(mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    res.value = sign * total;
    res.error_estimate = total_err;
    res.evaluations = evals;
    res.converged = std::isfinite(total) &&
                    (total_err <= 10 * opt.abs_tol ||
                     total_err <= 10 * opt.rel_tol *
                                      std::max(1e-300, std::fabs(total)));
    return res;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    const QuadratureResult r = integrate_adaptive(f, a, b, opt);
    if (!r.converged)
        throw NumericError("quadrature did not converge", r.error_estimate);
    return r.value;
}

} // namespace intgof
