#include "intgof/efficiency.hpp"
#include "intgof/error.hpp"
#include "intgof/io.hpp"
#include "intgof/montecarlo.hpp"
#include "intgof/rng.hpp"
#include "intgof/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using namespace intgof;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20250901;

// exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric failure
enum ExitCode { kOk = 0, kVerifyFail = 1, kUsage = 2, kNumeric = 3 };

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << text;
}

json report_to_json(const LocalIndexReport& r) {
    json j;
    j["statistic"] = to_string(r.kind);
    j["density"] = r.density;
    j["index"] = r.index;
    j["variance"] = r.variance;
    j["efficiency"] = r.efficiency;
    j["sup_v"] = r.functionals.sup_v;
    j["int_vf"] = r.functionals.int_vf;
    j["int_v2f"] = r.functionals.int_v2f;
    j["sup_q"] = r.functionals.sup_q;
    j["int_qf"] = r.functionals.int_qf;
    j["int_q2f"] = r.functionals.int_q2f;
    return j;
}

// ---------------------------------------------------------------- table1

int cmd_table1(const std::string& format, double tol,
               const std::string& output) {
    const EfficiencyTable table = table1();

    bool ok = true;
    for (const auto& c : table.cells)
        if (std::fabs(c.diff) > tol) ok = false;

    std::ostringstream out;
    if (format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["type"] = "table1";
        j["library_version"] = kVersion;
        j["tolerance"] = tol;
        json cells = json::array();
        for (const auto& c : table.cells) {
            json e = report_to_json(c.report);
            e["reference"] = c.reference;
            e["diff"] = c.diff;
            e["within_tolerance"] = std::fabs(c.diff) <= tol;
            cells.push_back(e);
        }
        j["cells"] = cells;
        j["notes"] = table.notes;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "statistic,density,index,variance,efficiency\n";
        for (const auto& c : table.cells)
            out << to_string(c.kind) << "," << c.density << ","
                << c.report.index << "," << c.report.variance << ","
                << c.report.efficiency << "\n";
    } else if (format == "latex") {
        out << "\\begin{tabular}{|c|c|c|c|c|c|}\\hline\n"
            << "Statistic & Gauss & Logistic & Arcsine & Uniform & "
               "Student-5\\\\\\hline\n";
        const char* row_names[8] = {"$D_n$",
                                    "$\\omega_n^1$",
                                    "$\\omega_n^2$",
                                    "$U_n^2$",
                                    "$\\bar D_n$",
                                    "$\\bar\\omega_n^1$",
                                    "$\\bar\\omega_n^2$",
                                    "$\\bar U_n^2$"};
        for (std::size_t r = 0; r < 8; ++r) {
            out << row_names[r];
            for (std::size_t c = 0; c < 5; ++c) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.3f",
                              table.cells[r * 5 + c].report.efficiency);
                out << " & " << buf;
            }
            out << "\\\\\\hline\n";
        }
        out << "\\end{tabular}\n";
    } else { // human-readable matrix with per-cell diffs
        out << "Local efficiencies: computed (computed - reference)\n\n";
        out << "        ";
        for (const auto& name : builtin_density_names()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%-24s", name.c_str());
            out << buf;
        }
        out << "\n";
        for (std::size_t r = 0; r < 8; ++r) {
            const auto kind = all_statistic_kinds()[r];
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%-8s", to_string(kind).c_str());
            out << buf;
            for (std::size_t c = 0; c < 5; ++c) {
                const auto& cell = table.cells[r * 5 + c];
                std::snprintf(buf, sizeof(buf), "%.6f (%+9.2e)%s ",
                              cell.report.efficiency, cell.diff,
                              std::fabs(cell.diff) > tol ? "*" : " ");
                out << buf;
            }
            out << "\n";
        }
        out << "\ncells marked * exceed the tolerance " << tol << "\n";
        for (const auto& n : table.notes) out << "note: " << n << "\n";
    }
    write_output(out.str(), output);
    return ok ? kOk : kVerifyFail;
}

// ------------------------------------------------------------------ test

NullTable fetch_null_table(StatisticKind kind, std::size_t n,
                           std::size_t replicates, std::uint64_t seed,
                           bool no_cache, int workers) {
    if (!no_cache)
        if (auto cached = load_cached_null_table(kind, n, replicates, seed))
            return *cached;
    NullTable t = null_table(kind, n, replicates, seed, workers);
    if (!no_cache) store_null_table(t);
    return t;
}

int cmd_test(const std::string& input, const std::string& column,
             const std::string& density_name,
             std::vector<std::string> kind_names, double level,
             std::size_t replicates, std::uint64_t seed, bool no_cache,
             bool one_sided, const std::string& format, int workers,
             const std::string& output) {
    const Density d = make_density(density_name);
    const InputData data = column.empty() ? read_values_file(input)
                                          : read_csv_column(input, column);
    if (data.values.empty())
        throw std::invalid_argument("input contains no values: " + input);
    for (std::size_t i = 0; i < data.values.size(); ++i) {
        const double x = data.values[i];
        if (!std::isfinite(x) || x < d.support.lo || x > d.support.hi)
            throw std::domain_error(
                "line " + std::to_string(data.lines[i]) + ": value " +
                std::to_string(x) + " outside the support of '" +
                density_name + "'");
    }

    std::vector<StatisticKind> kinds;
    if (kind_names.empty())
        kinds.assign(all_statistic_kinds().begin(),
                     all_statistic_kinds().end());
    else
        for (const auto& name : kind_names)
            kinds.push_back(statistic_kind_from_string(name));

    const SortedSample s = pit(data.values, d);
    const auto stats = all_stats(s);
    const std::size_t n = s.n();

    // one shared simulation covers every statistic that is not yet cached
    std::vector<NullTable> tables(kinds.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (!no_cache) {
            if (auto cached =
                    load_cached_null_table(kinds[i], n, replicates, seed)) {
                tables[i] = std::move(*cached);
                continue;
            }
        }
        missing.push_back(i);
    }
    if (missing.size() > 1) {
        const auto all = null_tables_all(n, replicates, seed, workers);
        for (std::size_t i : missing) {
            for (const auto& t : all)
                if (t.kind == kinds[i]) tables[i] = t;
            if (!no_cache) store_null_table(tables[i]);
        }
    } else if (missing.size() == 1) {
        tables[missing[0]] = fetch_null_table(kinds[missing[0]], n, replicates,
                                              seed, no_cache, workers);
    }

    struct Row {
        StatisticKind kind;
        double value, lo, hi;
        bool reject;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const auto kind = kinds[i];
        const NullTable& table = tables[i];
        const Rejection mode = (one_sided || !is_signed_statistic(kind))
                                   ? Rejection::Upper
                                   : Rejection::TwoSided;
        double lo = -std::numeric_limits<double>::infinity(), hi;
        if (mode == Rejection::TwoSided) {
            lo = table.quantile(level / 2.0);
            hi = table.quantile(1.0 - level / 2.0);
        } else {
            hi = table.quantile(1.0 - level);
        }
        double value = 0.0;
        for (const auto& st : stats)
            if (st.kind == kind) value = st.value;
        rows.push_back(Row{kind, value, lo, hi, value > hi || value < lo});
    }

    std::ostringstream out;
    if (format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["type"] = "test";
        j["library_version"] = kVersion;
        j["density"] = density_name;
        j["n"] = n;
        j["level"] = level;
        j["replicates"] = replicates;
        j["seed"] = seed;
        json arr = json::array();
        for (const auto& r : rows) {
            json e;
            e["kind"] = to_string(r.kind);
            e["n"] = n;
            e["value"] = r.value;
            if (std::isfinite(r.lo)) e["critical_lower"] = r.lo;
            e["critical_upper"] = r.hi;
            e["reject"] = r.reject;
            arr.push_back(e);
        }
        j["results"] = arr;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "kind,n,value,critical_lower,critical_upper,reject\n";
        for (const auto& r : rows) {
            out << to_string(r.kind) << "," << n << "," << r.value << ",";
            if (std::isfinite(r.lo)) out << r.lo;
            out << "," << r.hi << "," << (r.reject ? 1 : 0) << "\n";
        }
    } else {
        out << "goodness-of-fit for '" << density_name << "', n = " << n
            << ", level = " << level << "\n";
        for (const auto& r : rows) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "  %-6s value=%12.6f  critical=%12.6f  -> %s\n",
                          to_string(r.kind).c_str(), r.value, r.hi,
                          r.reject ? "REJECT" : "accept");
            out << buf;
        }
    }
    write_output(out.str(), output);
    return kOk; // decisions do not change the exit code
}

// ------------------------------------------------------------- nulltable

int cmd_nulltable(const std::string& kind_name, std::size_t n,
                  std::size_t replicates, std::uint64_t seed, bool no_cache,
                  const std::string& format, int workers,
                  const std::string& output) {
    const StatisticKind kind = statistic_kind_from_string(kind_name);
    const NullTable t =
        fetch_null_table(kind, n, replicates, seed, no_cache, workers);
    std::ostringstream out;
    if (format == "csv") {
        out << "level,critical_value\n";
        for (const auto& [level, value] : t.quantiles)
            out << level << "," << value << "\n";
    } else {
        out << null_table_to_json(t) << "\n";
    }
    write_output(out.str(), output);
    return kOk;
}

// ----------------------------------------------------------------- power

int cmd_power(const std::string& kind_name, const std::string& f_name,
              const std::string& g_name, std::vector<double> thetas,
              std::size_t n, double level, std::size_t replicates,
              std::size_t null_replicates, std::uint64_t seed, bool no_cache,
              bool one_sided, const std::string& format, int workers,
              const std::string& output) {
    const StatisticKind kind = statistic_kind_from_string(kind_name);
    const Density f = make_density(f_name);
    const Density g = make_density(g_name);
    if (thetas.empty()) thetas = {0.0, 0.5, 1.0, 2.0};
    std::sort(thetas.begin(), thetas.end());

    const NullTable table =
        fetch_null_table(kind, n, null_replicates, seed, no_cache, workers);
    std::optional<Rejection> mode;
    if (one_sided) mode = Rejection::Upper;

    std::vector<PowerPoint> points;
    for (double theta : thetas) {
        const auto a = make_skew_alternative(f, g, theta);
        points.push_back(
            power(kind, a, n, level, replicates, seed, table, mode, workers));
    }

    std::ostringstream out;
    if (format == "json") {
        out << power_points_to_json(points, f_name, g_name) << "\n";
    } else {
        out << "kind,f,g,theta,n,level,power,std_error\n";
        for (const auto& p : points)
            out << to_string(p.kind) << "," << f_name << "," << g_name << ","
                << p.theta << "," << p.n << "," << p.level << "," << p.power
                << "," << p.std_error << "\n";
    }
    write_output(out.str(), output);
    return kOk;
}

// ----------------------------------------------------------------- eigen

int cmd_eigen(int count, const std::string& format,
              const std::string& output) {
    const EigenConstants ec = eigen_constants(count);
    std::ostringstream out;
    if (format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["type"] = "eigen";
        j["library_version"] = kVersion;
        j["kappa"] = ec.kappa;
        j["mu0"] = ec.mu0;
        out << j.dump(2) << "\n";
    } else {
        out << "j,kappa,residual\n";
        for (std::size_t j = 0; j < ec.kappa.size(); ++j) {
            const double k = ec.kappa[j];
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%zu,%.15f,%.3e\n", j + 1, k,
                          std::fabs(std::tan(k) + std::tanh(k)));
            out << buf;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "mu0,%.10f\n", ec.mu0);
        out << buf;
    }
    write_output(out.str(), output);
    return kOk;
}

// ---------------------------------------------------------------- verify

struct Checker {
    int failures = 0;
    void check(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void verify_eigen(Checker& c, double ts) {
    const EigenConstants ec = eigen_constants(10);
    c.check("eigen: mu0 = 31.2852 within 5e-4",
            std::fabs(ec.mu0 - 31.2852) < 5e-4 * ts, "mu0=" + fmt(ec.mu0));
    double worst = 0.0;
    for (double k : ec.kappa)
        worst = std::max(worst, std::fabs(std::tan(k) + std::tanh(k)));
    c.check("eigen: residual < 1e-12 for j <= 10", worst < 1e-12 * ts,
            "worst=" + fmt(worst));
    c.check("eigen: kappa_1 near 2.36502",
            std::fabs(ec.kappa[0] - 2.36502) < 1e-5,
            "kappa1=" + fmt(ec.kappa[0]));
}

void verify_lao(Checker& c, double ts) {
    const auto d_unif =
        lao_check(StatisticKind::Dbar, make_density("uniform"));
    c.check("lao: efficiency(Dbar, uniform) = 1",
            std::fabs(d_unif.efficiency - 1.0) < 1e-6 * ts,
            "eff=" + fmt(d_unif.efficiency));
    c.check("lao: Dbar uniform linearity residual < 1e-10",
            d_unif.shape_residual < 1e-10 * ts,
            "residual=" + fmt(d_unif.shape_residual));
    const auto u_arc =
        lao_check(StatisticKind::U2bar, make_density("arcsine"));
    c.check("lao: efficiency(U2bar, arcsine) = 1",
            std::fabs(u_arc.efficiency - 1.0) < 1e-6 * ts,
            "eff=" + fmt(u_arc.efficiency));
    c.check("lao: U2bar arcsine shape residual < 1e-10",
            u_arc.shape_residual < 1e-10 * ts,
            "residual=" + fmt(u_arc.shape_residual));
    for (const auto& name : builtin_density_names()) {
        const auto r = lao_check(StatisticKind::W1bar, make_density(name));
        c.check("lao: W1bar never optimal (" + name + ")", !r.is_lao,
                "eff=" + fmt(r.efficiency));
    }
}

void verify_conditions(Checker& c, double ts) {
    for (const auto& fn : builtin_density_names()) {
        for (const auto& gn : builtin_density_names()) {
            const auto a = make_skew_alternative(make_density(fn),
                                                 make_density(gn), 0.0);
            const auto rep = verify_condition2(a);
            c.check("condition2 decreasing: f=" + fn + " g=" + gn,
                    rep.decreasing,
                    fmt(rep.normalized_sup.front()) + " -> " +
                        fmt(rep.normalized_sup.back()));
        }
    }
    {
        const auto a = make_skew_alternative(make_density("normal"),
                                             make_density("normal"), 1e-3);
        const double lim =
            2.0 * a.g.density_at_zero * a.g.density_at_zero * a.f.variance;
        const double ratio = kullback_leibler(a) / 1e-6;
        c.check("condition3: K/theta^2 limit (normal/normal)",
                std::fabs(ratio / lim - 1.0) < 1e-4 * ts,
                fmt(ratio) + " vs " + fmt(lim));
    }
    {
        const auto a = make_skew_alternative(make_density("uniform"),
                                             make_density("logistic"), 1e-3);
        const double ratio = kullback_leibler(a) / 1e-6;
        c.check("condition3: K/theta^2 -> 1/24 (uniform/logistic)",
                std::fabs(ratio * 24.0 - 1.0) < 1e-4 * ts, fmt(ratio));
    }
}

void verify_slopes(Checker& c, double ts) {
    for (const std::string fn : {"uniform", "normal"}) {
        const Density f = make_density(fn);
        for (const std::string gn : {"normal", "logistic"}) {
            const Density g = make_density(gn);
            for (auto kind : all_statistic_kinds()) {
                const double target = local_index(kind, f).efficiency;
                auto ratio = [&](double theta) {
                    const auto a = make_skew_alternative(f, g, theta);
                    return exact_slope(kind, a) / (2.0 * kullback_leibler(a));
                };
                const double r1 = ratio(1e-2), r2 = ratio(1e-3);
                const double extrap = r2 - (r1 - r2) / 99.0;
                c.check("slopes: " + to_string(kind) + " f=" + fn + " g=" + gn,
                        std::fabs(extrap - target) < 1e-3 * ts,
                        "extrap=" + fmt(extrap) + " target=" + fmt(target));
            }
        }
    }
}

// independent check of the exact statistics: A_n evaluated from prefix
// sums on a uniform grid joined with the sample points; per-interval
// 3-point Gauss is exact for the quartic A_n^2
void verify_statistics(Checker& c, double ts) {
    RngStream rng(987654321, 0);
    double worst_sup = 0.0, worst_int = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 1 + rng.next_u64() % 50;
        std::vector<double> u(n);
        for (auto& x : u) x = rng.next_open01();
        std::sort(u.begin(), u.end());
        SortedSample s{u};
        const auto got = integrated_stats(integrated_process(s));

        const double sqn = std::sqrt(static_cast<double>(n));
        auto A = [&](double t) {
            std::size_t k = 0;
            double ps = 0.0;
            while (k < n && u[k] <= t) ps += u[k++];
            return sqn *
                   ((static_cast<double>(k) * t - ps) / static_cast<double>(n) -
                    0.5 * t * t);
        };
        std::vector<double> grid;
        const int m = 4096;
        grid.reserve(m + n + 2);
        for (int i = 0; i <= m; ++i)
            grid.push_back(static_cast<double>(i) / m);
        grid.insert(grid.end(), u.begin(), u.end());
        std::sort(grid.begin(), grid.end());

        double sup = 0.0, i1 = 0.0, i2 = 0.0;
        const double gx = std::sqrt(0.6);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double a = grid[i - 1], b = grid[i];
            sup = std::max(sup, std::fabs(A(b)));
            if (b <= a) continue;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            const double va = A(mid - half * gx), vm = A(mid),
                         vb = A(mid + half * gx);
            i1 += half * (5.0 * (va + vb) + 8.0 * vm) / 9.0;
            i2 += half * (5.0 * (va * va + vb * vb) + 8.0 * vm * vm) / 9.0;
            std::size_t k = 0;
            while (k < n && u[k] <= a) ++k;
            const double vert = static_cast<double>(k) / n;
            if (vert > a && vert < b) sup = std::max(sup, std::fabs(A(vert)));
        }
        worst_sup = std::max(worst_sup, std::fabs(got[0].value - sup));
        worst_int = std::max({worst_int, std::fabs(got[1].value - i1),
                              std::fabs(got[2].value - i2),
                              std::fabs(got[3].value - (i2 - i1 * i1))});
    }
    c.check("statistics: exact Dbar matches grid oracle (1000 samples)",
            worst_sup < 1e-6 * ts, "worst=" + fmt(worst_sup));
    c.check("statistics: exact integrals match grid oracle (1000 samples)",
            worst_int < 1e-8 * ts, "worst=" + fmt(worst_int));
}

int cmd_verify(const std::string& suite, double tol_scale) {
    Checker c;
    if (suite == "eigen")
        verify_eigen(c, tol_scale);
    else if (suite == "lao")
        verify_lao(c, tol_scale);
    else if (suite == "conditions")
        verify_conditions(c, tol_scale);
    else if (suite == "slopes")
        verify_slopes(c, tol_scale);
    else if (suite == "statistics")
        verify_statistics(c, tol_scale);
    else
        throw std::invalid_argument(
            "unknown suite '" + suite +
            "'; valid: conditions, slopes, lao, eigen, statistics");
    std::cout << (c.failures == 0
                      ? "all checks passed\n"
                      : std::to_string(c.failures) + " check(s) failed\n");
    return c.failures == 0 ? kOk : kVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrated empirical-process goodness-of-fit statistics, "
                 "skew alternatives, and local Bahadur efficiency"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // table1
    auto* t1 = app.add_subcommand(
        "table1", "compute the 8x5 local efficiency matrix and compare "
                  "against the published reference values");
    std::string t1_format = "table", t1_output;
    double t1_tol = 5e-4;
    t1->add_option("--format", t1_format, "table|csv|json|latex")
        ->check(CLI::IsMember({"table", "csv", "json", "latex"}));
    t1->add_option("--tol", t1_tol, "per-cell tolerance for the diff gate");
    t1->add_option("--output", t1_output, "write to file instead of stdout");

    // test
    auto* ts =
        app.add_subcommand("test", "goodness-of-fit tests on a data file");
    std::string ts_input, ts_column, ts_density, ts_format = "table",
                                                 ts_output;
    std::vector<std::string> ts_kinds;
    double ts_level = 0.05;
    std::size_t ts_replicates = 20000;
    std::uint64_t ts_seed = kDefaultSeed;
    bool ts_nocache = false, ts_onesided = false;
    int ts_workers = 1;
    ts->add_option("--input", ts_input, "data file")->required();
    ts->add_option("--column", ts_column,
                   "CSV column name (default: one value per line)");
    ts->add_option("--density", ts_density, "hypothesized density")
        ->required();
    ts->add_option("--kinds", ts_kinds, "statistics to run (default: all)");
    ts->add_option("--level", ts_level, "test level");
    ts->add_option("--replicates", ts_replicates, "null-table replicates");
    ts->add_option("--seed", ts_seed, "root seed");
    ts->add_flag("--no-cache", ts_nocache, "bypass the null-table cache");
    ts->add_flag("--one-sided", ts_onesided,
                 "upper-tail rejection for W1/W1bar too");
    ts->add_option("--format", ts_format, "table|csv|json");
    ts->add_option("--workers", ts_workers, "simulation worker threads");
    ts->add_option("--output", ts_output, "write to file instead of stdout");

    // nulltable
    auto* nt =
        app.add_subcommand("nulltable", "simulate null critical values");
    std::string nt_kind, nt_format = "json", nt_output;
    std::size_t nt_n = 100, nt_replicates = 10000;
    std::uint64_t nt_seed = kDefaultSeed;
    bool nt_nocache = false;
    int nt_workers = 1;
    nt->add_option("--kind", nt_kind, "statistic")->required();
    nt->add_option("--n", nt_n, "sample size")->required();
    nt->add_option("--replicates", nt_replicates, "replicates (>= 1000)");
    nt->add_option("--seed", nt_seed, "root seed");
    nt->add_flag("--no-cache", nt_nocache, "bypass the cache");
    nt->add_option("--format", nt_format, "csv|json");
    nt->add_option("--workers", nt_workers, "worker threads");
    nt->add_option("--output", nt_output, "write to file instead of stdout");

    // power
    auto* pw = app.add_subcommand("power", "Monte Carlo power study");
    std::string pw_kind, pw_f, pw_g = "normal", pw_format = "csv", pw_output;
    std::vector<double> pw_thetas;
    std::size_t pw_n = 100, pw_replicates = 2000, pw_null_replicates = 10000;
    double pw_level = 0.05;
    std::uint64_t pw_seed = kDefaultSeed;
    bool pw_nocache = false, pw_onesided = false;
    int pw_workers = 1;
    pw->add_option("--kind", pw_kind, "statistic")->required();
    pw->add_option("--f", pw_f, "base density")->required();
    pw->add_option("--g", pw_g, "skewing law");
    pw->add_option("--theta", pw_thetas, "skewness values");
    pw->add_option("--n", pw_n, "sample size");
    pw->add_option("--level", pw_level, "test level");
    pw->add_option("--replicates", pw_replicates, "power replicates");
    pw->add_option("--null-replicates", pw_null_replicates,
                   "null-table replicates");
    pw->add_option("--seed", pw_seed, "root seed");
    pw->add_flag("--no-cache", pw_nocache, "bypass the null-table cache");
    pw->add_flag("--one-sided", pw_onesided, "upper-tail rejection only");
    pw->add_option("--format", pw_format, "csv|json");
    pw->add_option("--workers", pw_workers, "worker threads");
    pw->add_option("--output", pw_output, "write to file instead of stdout");

    // verify
    auto* vf = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite;
    double vf_tol_scale = 1.0;
    vf->add_option("suite", vf_suite, "conditions|slopes|lao|eigen|statistics")
        ->required();
    vf->add_option("--tol-scale", vf_tol_scale,
                   "multiplier applied to every comparison tolerance");

    // eigen
    auto* eg =
        app.add_subcommand("eigen", "roots of tan(x)+tanh(x)=0 and mu0");
    int eg_count = 10;
    std::string eg_format = "csv", eg_output;
    eg->add_option("--count", eg_count, "number of roots");
    eg->add_option("--format", eg_format, "csv|json");
    eg->add_option("--output", eg_output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (t1->parsed()) return cmd_table1(t1_format, t1_tol, t1_output);
        if (ts->parsed())
            return cmd_test(ts_input, ts_column, ts_density, ts_kinds,
                            ts_level, ts_replicates, ts_seed, ts_nocache,
                            ts_onesided, ts_format, ts_workers, ts_output);
        if (nt->parsed())
            return cmd_nulltable(nt_kind, nt_n, nt_replicates, nt_seed,
                                 nt_nocache, nt_format, nt_workers, nt_output);
        if (pw->parsed())
            return cmd_power(pw_kind, pw_f, pw_g, pw_thetas, pw_n, pw_level,
                             pw_replicates, pw_null_replicates, pw_seed,
                             pw_nocache, pw_onesided, pw_format, pw_workers,
                             pw_output);
        if (vf->parsed()) return cmd_verify(vf_suite, vf_tol_scale);
        if (eg->parsed()) return cmd_eigen(eg_count, eg_format, eg_output);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
