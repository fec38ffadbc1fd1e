#ifndef INTGOF_MONTECARLO_HPP
#define INTGOF_MONTECARLO_HPP

#include "intgof/skew.hpp"
#include "intgof/statistics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace intgof {

/// Levels at which serialized null tables carry quantiles; covers the
/// standard reporting levels and both tails for two-sided tests.
const std::vector<double>& canonical_levels();

/// Simulated null distribution of one statistic. Reproducible bit for bit
/// from (kind, n, replicates, seed): replicate r draws its sample from
/// RngStream(seed, r), so the result is independent of worker count.
struct NullTable {
    StatisticKind kind{};
    std::size_t n = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    std::map<double, double> quantiles; // canonical levels -> critical values
    std::vector<double> sorted_values;  // empty when loaded from cache

    /// Type-7 quantile (linear interpolation of order statistics) from the
    /// full simulated sample; falls back to the canonical map when the
    /// sample is absent, rejecting non-canonical levels.
    double quantile(double p) const;
    bool has_full_sample() const { return !sorted_values.empty(); }
};

NullTable null_table(StatisticKind kind, std::size_t n,
                     std::size_t replicates, std::uint64_t seed,
                     int workers = 1);

/// All eight tables from one shared simulation (identical per-table output
/// to eight null_table calls with the same arguments).
std::array<NullTable, 8> null_tables_all(std::size_t n,
                                         std::size_t replicates,
                                         std::uint64_t seed, int workers = 1);

enum class Rejection { Upper, TwoSided };

/// Default: two-sided for the signed statistics W1/W1bar, upper tail
/// otherwise.
Rejection default_rejection(StatisticKind kind);

struct PowerPoint {
    StatisticKind kind{};
    double theta = 0.0;
    std::size_t n = 0;
    double level = 0.0;
    Rejection rejection = Rejection::Upper;
    double power = 0.0;
    double std_error = 0.0; // sqrt(p(1-p)/replicates)
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo power of the level-`level` test against the alternative
/// `a`. Requires a matching null table (kind and n) with the needed
/// quantiles; throws DependencyError otherwise.
PowerPoint power(StatisticKind kind, const SkewAlternative& a, std::size_t n,
                 double level, std::size_t replicates, std::uint64_t seed,
                 const NullTable& table,
                 std::optional<Rejection> rejection = std::nullopt,
                 int workers = 1);

struct BConvergenceRow {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double std_error = 0.0;
};

struct BConvergenceReport {
    StatisticKind kind{};
    double theta = 0.0;
    double b_value = 0.0; // quadrature value of b(T, theta)
    std::vector<BConvergenceRow> rows;
    double rel_deviation_at_largest_n = 0.0;
};

/// Empirical check of T_n (normalized by sqrt(n) for D/W1-type statistics,
/// by n for the quadratic ones) against the quadrature value b(T, theta).
BConvergenceReport verify_b_convergence(
    StatisticKind kind, const SkewAlternative& a,
    std::vector<std::size_t> n_grid = {100, 1000, 10000},
    std::size_t replicates = 200, std::uint64_t seed = 20250901,
    int workers = 1);

/// Normalization divisor for T_n -> b: sqrt(n) for D/W1-type statistics,
/// n for the quadratic ones.
double b_normalization(StatisticKind kind, std::size_t n);

// --- serialization & cache ------------------------------------------------

std::string null_table_to_json(const NullTable& table);
NullTable null_table_from_json(const std::string& json_text);
std::string power_points_to_json(const std::vector<PowerPoint>& points,
                                 const std::string& f_name,
                                 const std::string& g_name);

/// Cache directory: $INTGOF_CACHE_DIR or ".intgof-cache".
std::string cache_directory();

/// Load a cached table for exactly these parameters, if present.
std::optional<NullTable> load_cached_null_table(StatisticKind kind,
                                                std::size_t n,
                                                std::size_t replicates,
                                                std::uint64_t seed);
void store_null_table(const NullTable& table);

} // namespace intgof

#endif
