#ifndef INTGOF_STATISTICS_HPP
#define INTGOF_STATISTICS_HPP

#include "intgof/density.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace intgof {

enum class StatisticKind { D, W1, W2, U2, Dbar, W1bar, W2bar, U2bar };

const std::array<StatisticKind, 8>& all_statistic_kinds();
std::string to_string(StatisticKind kind);
StatisticKind statistic_kind_from_string(const std::string& name);
bool is_integrated(StatisticKind kind);
/// The signed statistics W1 / W1bar reject two-sided by default.
bool is_signed_statistic(StatisticKind kind);

/// A probability-integral-transformed sample: ascending values in [0, 1].
struct SortedSample {
    std::vector<double> values;
    std::size_t n() const { return values.size(); }
};

/// Validates range and sorts. Throws std::invalid_argument on empty input
/// or values outside [0, 1].
SortedSample make_sorted_sample(std::vector<double> values);

/// F(x_i) for each raw value, sorted. Values outside the support of d are
/// rejected with a domain error naming the offending (0-based) index.
SortedSample pit(const std::vector<double>& raw, const Density& d);

struct StatisticResult {
    StatisticKind kind;
    double value;
    std::size_t n;
};

/// D, W1, W2, U2 with the usual normalizations: D and W1 carry sqrt(n),
/// W2 and U2 carry n.
std::array<StatisticResult, 4> classical_stats(const SortedSample& s);

/// Exact piecewise representation of the integrated uniform empirical
/// process A_n(u) = integral_0^u sqrt(n) (G_n - id). On each segment
/// between consecutive distinct sample values,
///     A_n(u) = sqrt(n) (c + k u - u^2/2),
/// where k is the fraction of values to the left and c accumulates their
/// negated mean contribution. A_n(0) = 0 and A_n(1) = W1 (A_n is
/// continuous but does not return to zero unless the sample mean is 1/2).
struct IntegratedProcess {
    struct Segment {
        double lo, hi;
        double c, k;
    };
    std::vector<Segment> segments;
    std::size_t n = 0;
    double sqrt_n = 0.0;

    double value(double u) const;
};

IntegratedProcess integrated_process(const SortedSample& s);

/// Dbar, W1bar, W2bar, U2bar by exact per-segment calculus: the sup of
/// |quadratic| from endpoint + interior-vertex enumeration, the integrals
/// from exact antiderivatives of the quadratic and its square.
std::array<StatisticResult, 4> integrated_stats(const IntegratedProcess& p);

/// All eight statistics of a sample.
std::array<StatisticResult, 8> all_stats(const SortedSample& s);

} // namespace intgof

#endif
