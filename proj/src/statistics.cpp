#include "intgof/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intgof {

const std::array<StatisticKind, 8>& all_statistic_kinds() {
    static const std::array<StatisticKind, 8> kinds = {
        StatisticKind::D,    StatisticKind::W1,    StatisticKind::W2,
        StatisticKind::U2,   StatisticKind::Dbar,  StatisticKind::W1bar,
        StatisticKind::W2bar, StatisticKind::U2bar};
    return kinds;
}

std::string to_string(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::D: return "D";
        case StatisticKind::W1: return "W1";
        case StatisticKind::W2: return "W2";
        case StatisticKind::U2: return "U2";
        case StatisticKind::Dbar: return "Dbar";
        case StatisticKind::W1bar: return "W1bar";
        case StatisticKind::W2bar: return "W2bar";
        case StatisticKind::U2bar: return "U2bar";
    }
    return "?";
}

StatisticKind statistic_kind_from_string(const std::string& name) {
    for (auto kind : all_statistic_kinds())
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument(
        "unknown statistic '" + name +
        "'; valid names: D, W1, W2, U2, Dbar, W1bar, W2bar, U2bar");
}

bool is_integrated(StatisticKind kind) {
    return kind == StatisticKind::Dbar || kind == StatisticKind::W1bar ||
           kind == StatisticKind::W2bar || kind == StatisticKind::U2bar;
}

bool is_signed_statistic(StatisticKind kind) {
    return kind == StatisticKind::W1 || kind == StatisticKind::W1bar;
}

SortedSample make_sorted_sample(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("sample must contain at least one value");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] >= 0.0 && values[i] <= 1.0))
            throw std::domain_error("sample value at index " +
                                    std::to_string(i) + " outside [0,1]: " +
                                    std::to_string(values[i]));
    std::sort(values.begin(), values.end());
    return SortedSample{std::move(values)};
}

SortedSample pit(const std::vector<double>& raw, const Density& d) {
    if (raw.empty())
        throw std::invalid_argument("sample must contain at least one value");
    std::vector<double> u(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double x = raw[i];
        if (!std::isfinite(x) || x < d.support.lo || x > d.support.hi)
            throw std::domain_error("value " + std::to_string(x) +
                                    " at index " + std::to_string(i) +
                                    " outside the support of '" + d.name + "'");
        u[i] = d.cdf(x);
    }
    std::sort(u.begin(), u.end());
    return SortedSample{std::move(u)};
}

std::array<StatisticResult, 4> classical_stats(const SortedSample& s) {
    const std::size_t n = s.n();
    const double dn = static_cast<double>(n);
    const double sqrt_n = std::sqrt(dn);

    double d_plus = 0.0, mean = 0.0, w2_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = s.values[i];
        const double hi = static_cast<double>(i + 1) / dn - u;
        const double lo = u - static_cast<double>(i) / dn;
        d_plus = std::max({d_plus, hi, lo});
        mean += u;
        const double t = u - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * dn);
        w2_sum += t * t;
    }
    mean /= dn;

    const double D = sqrt_n * d_plus;
    const double W1 = sqrt_n * (0.5 - mean);
    const double W2 = 1.0 / (12.0 * dn) + w2_sum;
    const double U2 = W2 - W1 * W1;
    return {StatisticResult{StatisticKind::D, D, n},
            StatisticResult{StatisticKind::W1, W1, n},
            StatisticResult{StatisticKind::W2, W2, n},
            StatisticResult{StatisticKind::U2, U2, n}};
}

IntegratedProcess integrated_process(const SortedSample& s) {
    const std::size_t n = s.n();
    const double dn = static_cast<double>(n);

    IntegratedProcess p;
    p.n = n;
    p.sqrt_n = std::sqrt(dn);
    p.segments.reserve(n + 1);

    double prev = 0.0;
    double partial_sum = 0.0; // running sum of sample values
    std::size_t i = 0;
    while (i <= n) {
        // advance over ties so G_n jumps by their multiplicity
        const double next = (i == n) ? 1.0 : s.values[i];
        if (next > prev) {
            p.segments.push_back({prev, next, -partial_sum / dn,
                                  static_cast<double>(i) / dn});
            prev = next;
        }
        if (i == n) break;
        std::size_t j = i;
        while (j < n && s.values[j] == next) {
            partial_sum += s.values[j];
            ++j;
        }
        i = j;
    }
    return p;
}

double IntegratedProcess::value(double u) const {
    auto it = std::upper_bound(
        segments.begin(), segments.end(), u,
        [](double x, const Segment& s) { return x < s.lo; });
    if (it != segments.begin()) --it;
    return sqrt_n * (it->c + it->k * u - 0.5 * u * u);
}

namespace {

// integral of (c + k u - u^2/2) over [a, b]
double quad_integral(double c, double k, double a, double b) {
    auto anti = [&](double u) {
        return u * (c + u * (0.5 * k - u / 6.0));
    };
    return anti(b) - anti(a);
}

// integral of (c + k u - u^2/2)^2 over [a, b]
double quad_sq_integral(double c, double k, double a, double b) {
    // (c + ku - u^2/2)^2 = c^2 + 2ck u + (k^2 - c) u^2 - k u^3 + u^4/4
    auto anti = [&](double u) {
        return u * (c * c +
                    u * (c * k +
                         u * ((k * k - c) / 3.0 +
                              u * (-k / 4.0 + u / 20.0))));
    };
    return anti(b) - anti(a);
}

} // namespace

std::array<StatisticResult, 4> integrated_stats(const IntegratedProcess& p) {
    const std::size_t n = p.n;
    const double sqrt_n = p.sqrt_n;

    double sup = 0.0, int_a = 0.0, int_a2 = 0.0;
    for (const auto& seg : p.segments) {
        auto eval = [&](double u) { return seg.c + u * (seg.k - 0.5 * u); };
        sup = std::max({sup, std::fabs(eval(seg.lo)), std::fabs(eval(seg.hi))});
        // the parabola peaks where A' = sqrt(n)(k - u) vanishes
        if (seg.k > seg.lo && seg.k < seg.hi)
            sup = std::max(sup, std::fabs(eval(seg.k)));
        int_a += quad_integral(seg.c, seg.k, seg.lo, seg.hi);
        int_a2 += quad_sq_integral(seg.c, seg.k, seg.lo, seg.hi);
    }

    const double Dbar = sqrt_n * sup;
    const double W1bar = sqrt_n * int_a;
    const double W2bar = static_cast<double>(n) * int_a2;
    const double U2bar = W2bar - W1bar * W1bar;
    return {StatisticResult{StatisticKind::Dbar, Dbar, n},
            StatisticResult{StatisticKind::W1bar, W1bar, n},
            StatisticResult{StatisticKind::W2bar, W2bar, n},
            StatisticResult{StatisticKind::U2bar, U2bar, n}};
}

std::array<StatisticResult, 8> all_stats(const SortedSample& s) {
    const auto classic = classical_stats(s);
    const auto integ = integrated_stats(integrated_process(s));
    return {classic[0], classic[1], classic[2], classic[3],
            integ[0],   integ[1],   integ[2],   integ[3]};
}

} // namespace intgof
