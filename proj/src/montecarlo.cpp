#include "intgof/montecarlo.hpp"

#include "intgof/efficiency.hpp"
#include "intgof/error.hpp"
#include "intgof/rng.hpp"
#include "intgof/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace intgof {

namespace {

using nlohmann::json;

// run fn(r) for r in [0, count); each iteration writes only its own slot,
// so any scheduling produces identical results
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (std::size_t r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<int>(workers, 64);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (std::size_t r = next.fetch_add(1); r < count;
                 r = next.fetch_add(1))
                fn(r);
        });
    for (auto& th : pool) th.join();
}

double type7_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty())
        throw std::invalid_argument("quantile of empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double statistic_of_sample(StatisticKind kind, SortedSample& s) {
    if (is_integrated(kind)) {
        const auto r = integrated_stats(integrated_process(s));
        for (const auto& x : r)
            if (x.kind == kind) return x.value;
    } else {
        const auto r = classical_stats(s);
        for (const auto& x : r)
            if (x.kind == kind) return x.value;
    }
    throw std::logic_error("unreachable");
}

std::vector<double> simulate_null(StatisticKind kind, std::size_t n,
                                  std::size_t replicates, std::uint64_t seed,
                                  int workers) {
    std::vector<double> values(replicates);
    parallel_for(replicates, workers, [&](std::size_t r) {
        RngStream rng(seed, r);
        std::vector<double> u(n);
        for (auto& x : u) x = rng.next_open01();
        std::sort(u.begin(), u.end());
        SortedSample s{std::move(u)};
        values[r] = statistic_of_sample(kind, s);
    });
    return values;
}

NullTable finish_table(StatisticKind kind, std::size_t n,
                       std::size_t replicates, std::uint64_t seed,
                       std::vector<double> values) {
    std::sort(values.begin(), values.end());
    NullTable t;
    t.kind = kind;
    t.n = n;
    t.replicates = replicates;
    t.seed = seed;
    for (double level : canonical_levels())
        t.quantiles[level] = type7_quantile(values, level);
    t.sorted_values = std::move(values);
    return t;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

const std::vector<double>& canonical_levels() {
    static const std::vector<double> levels = {0.005, 0.01, 0.025, 0.05, 0.10,
                                               0.90,  0.95, 0.975, 0.99, 0.995};
    return levels;
}

double NullTable::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("quantile level must be in (0,1)");
    if (has_full_sample()) return type7_quantile(sorted_values, p);
    for (const auto& [level, value] : quantiles)
        if (std::fabs(level - p) < 1e-12) return value;
    throw DependencyError(
        "cached null table has no quantile at level " + std::to_string(p) +
        "; rebuild without cache or use a canonical level");
}

NullTable null_table(StatisticKind kind, std::size_t n,
                     std::size_t replicates, std::uint64_t seed,
                     int workers) {
    if (replicates < 1)
        throw std::invalid_argument("replicates must be >= 1");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    return finish_table(kind, n, replicates, seed,
                        simulate_null(kind, n, replicates, seed, workers));
}

std::array<NullTable, 8> null_tables_all(std::size_t n,
                                         std::size_t replicates,
                                         std::uint64_t seed, int workers) {
    // one shared pass over the simulated samples; per-kind values are
    // computed by the same functions null_table uses, so the output is
    // identical to eight independent calls
    std::array<std::vector<double>, 8> values;
    for (auto& v : values) v.resize(replicates);
    parallel_for(replicates, workers, [&](std::size_t r) {
        RngStream rng(seed, r);
        std::vector<double> u(n);
        for (auto& x : u) x = rng.next_open01();
        std::sort(u.begin(), u.end());
        SortedSample s{std::move(u)};
        const auto all = all_stats(s);
        for (std::size_t k = 0; k < 8; ++k) values[k][r] = all[k].value;
    });
    std::array<NullTable, 8> tables;
    const auto& kinds = all_statistic_kinds();
    for (std::size_t k = 0; k < 8; ++k)
        tables[k] =
            finish_table(kinds[k], n, replicates, seed, std::move(values[k]));
    return tables;
}

Rejection default_rejection(StatisticKind kind) {
    return is_signed_statistic(kind) ? Rejection::TwoSided : Rejection::Upper;
}

PowerPoint power(StatisticKind kind, const SkewAlternative& a, std::size_t n,
                 double level, std::size_t replicates, std::uint64_t seed,
                 const NullTable& table, std::optional<Rejection> rejection,
                 int workers) {
    if (table.kind != kind || table.n != n)
        throw DependencyError("null table mismatch: need (" + to_string(kind) +
                              ", n=" + std::to_string(n) + "), have (" +
                              to_string(table.kind) +
                              ", n=" + std::to_string(table.n) + ")");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("level must be in (0,1)");

    const Rejection mode = rejection.value_or(default_rejection(kind));
    double lo = -std::numeric_limits<double>::infinity();
    double hi;
    if (mode == Rejection::TwoSided) {
        lo = table.quantile(level / 2.0);
        hi = table.quantile(1.0 - level / 2.0);
    } else {
        hi = table.quantile(1.0 - level);
    }

    std::vector<char> reject(replicates, 0);
    parallel_for(replicates, workers, [&](std::size_t r) {
        const auto raw = sample(a, n, seed, r);
        auto s = pit(raw, a.f);
        const double value = statistic_of_sample(kind, s);
        reject[r] = (value > hi || value < lo) ? 1 : 0;
    });
    std::size_t count = 0;
    for (char c : reject) count += static_cast<std::size_t>(c);

    PowerPoint p;
    p.kind = kind;
    p.theta = a.theta;
    p.n = n;
    p.level = level;
    p.rejection = mode;
    p.power = static_cast<double>(count) / static_cast<double>(replicates);
    p.std_error =
        std::sqrt(p.power * (1.0 - p.power) / static_cast<double>(replicates));
    p.replicates = replicates;
    p.seed = seed;
    return p;
}

double b_normalization(StatisticKind kind, std::size_t n) {
    switch (kind) {
        case StatisticKind::D:
        case StatisticKind::W1:
        case StatisticKind::Dbar:
        case StatisticKind::W1bar:
            return std::sqrt(static_cast<double>(n));
        default:
            return static_cast<double>(n);
    }
}

BConvergenceReport verify_b_convergence(StatisticKind kind,
                                        const SkewAlternative& a,
                                        std::vector<std::size_t> n_grid,
                                        std::size_t replicates,
                                        std::uint64_t seed, int workers) {
    BConvergenceReport report;
    report.kind = kind;
    report.theta = a.theta;
    report.b_value = b_function(kind, a);

    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::size_t n = n_grid[gi];
        std::vector<double> vals(replicates);
        parallel_for(replicates, workers, [&](std::size_t r) {
            // stream index: replicates never collide across grid sizes
            const auto raw = sample(a, n, seed, gi * replicates + r);
            auto s = pit(raw, a.f);
            vals[r] = statistic_of_sample(kind, s) / b_normalization(kind, n);
        });
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(replicates);
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(
            ss / std::max<std::size_t>(1, replicates - 1));
        report.rows.push_back(BConvergenceRow{
            n, mean, sd, sd / std::sqrt(static_cast<double>(replicates))});
    }
    if (!report.rows.empty()) {
        const auto& last = report.rows.back();
        report.rel_deviation_at_largest_n =
            std::fabs(last.mean - report.b_value) /
            std::max(1e-300, std::fabs(report.b_value));
    }
    return report;
}

// --- serialization & cache -------------------------------------------------

std::string null_table_to_json(const NullTable& table) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "nulltable";
    j["library_version"] = kVersion;
    j["kind"] = to_string(table.kind);
    j["n"] = table.n;
    j["replicates"] = table.replicates;
    j["seed"] = table.seed;
    j["quantile_method"] = "type-7 linear interpolation of order statistics";
    json q = json::object();
    for (const auto& [level, value] : table.quantiles) {
        std::ostringstream key;
        key << level;
        q[key.str()] = value;
    }
    j["quantiles"] = q;
    return j.dump(2);
}

NullTable null_table_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    if (j.at("type") != "nulltable")
        throw std::invalid_argument("not a null table document");
    NullTable t;
    t.kind = statistic_kind_from_string(j.at("kind").get<std::string>());
    t.n = j.at("n").get<std::size_t>();
    t.replicates = j.at("replicates").get<std::size_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [key, value] : j.at("quantiles").items())
        t.quantiles[std::stod(key)] = value.get<double>();
    return t;
}

std::string power_points_to_json(const std::vector<PowerPoint>& points,
                                 const std::string& f_name,
                                 const std::string& g_name) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "power";
    j["library_version"] = kVersion;
    j["f"] = f_name;
    j["g"] = g_name;
    json arr = json::array();
    for (const auto& p : points) {
        json e;
        e["kind"] = to_string(p.kind);
        e["theta"] = p.theta;
        e["n"] = p.n;
        e["level"] = p.level;
        e["rejection"] =
            p.rejection == Rejection::TwoSided ? "two-sided" : "upper";
        e["power"] = p.power;
        e["std_error"] = p.std_error;
        e["replicates"] = p.replicates;
        e["seed"] = p.seed;
        arr.push_back(e);
    }
    j["points"] = arr;
    return j.dump(2);
}

std::string cache_directory() {
    if (const char* env = std::getenv("INTGOF_CACHE_DIR"); env && *env)
        return env;
    return ".intgof-cache";
}

namespace {

std::filesystem::path cache_path(StatisticKind kind, std::size_t n,
                                 std::size_t replicates, std::uint64_t seed) {
    std::ostringstream key;
    key << "nulltable|" << to_string(kind) << "|n=" << n
        << "|replicates=" << replicates << "|seed=" << seed
        << "|schema=" << kSchemaVersion;
    std::ostringstream name;
    name << "nulltable-" << std::hex << fnv1a(key.str()) << ".json";
    return std::filesystem::path(cache_directory()) / name.str();
}

} // namespace

std::optional<NullTable> load_cached_null_table(StatisticKind kind,
                                                std::size_t n,
                                                std::size_t replicates,
                                                std::uint64_t seed) {
    const auto path = cache_path(kind, n, replicates, seed);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        NullTable t = null_table_from_json(buf.str());
        if (t.kind != kind || t.n != n || t.replicates != replicates ||
            t.seed != seed)
            return std::nullopt; // hash collision or stale file
        return t;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store_null_table(const NullTable& table) {
    const auto path =
        cache_path(table.kind, table.n, table.replicates, table.seed);
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << null_table_to_json(table) << "\n";
}

} // namespace intgof
