#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "intgof/density.hpp"
#include "intgof/efficiency.hpp"
#include "intgof/montecarlo.hpp"
#include "intgof/skew.hpp"
#include "intgof/statistics.hpp"
#include "intgof/version.hpp"

namespace py = pybind11;
using namespace intgof;

namespace {

StatisticKind kind_of(const std::string& name) {
    return statistic_kind_from_string(name);
}

py::dict stats_to_dict(const std::array<StatisticResult, 8>& results) {
    py::dict out;
    for (const auto& r : results)
        out[to_string(r.kind).c_str()] = r.value;
    return out;
}

py::dict report_to_dict(const LocalIndexReport& r) {
    py::dict d;
    d["statistic"] = to_string(r.kind);
    d["density"] = r.density;
    d["index"] = r.index;
    d["variance"] = r.variance;
    d["efficiency"] = r.efficiency;
    d["sup_v"] = r.functionals.sup_v;
    d["int_vf"] = r.functionals.int_vf;
    d["int_v2f"] = r.functionals.int_v2f;
    d["sup_q"] = r.functionals.sup_q;
    d["int_qf"] = r.functionals.int_qf;
    d["int_q2f"] = r.functionals.int_q2f;
    return d;
}

} // namespace

PYBIND11_MODULE(intgof, m) {
    m.doc() = "integrated empirical-process goodness-of-fit statistics, "
              "generalized skew alternatives, local Bahadur efficiency";
    m.attr("__version__") = kVersion;

    py::class_<Density>(m, "Density")
        .def_readonly("name", &Density::name)
        .def_readonly("variance", &Density::variance)
        .def_readonly("density_at_zero", &Density::density_at_zero)
        .def_property_readonly("support",
                               [](const Density& d) {
                                   return py::make_tuple(d.support.lo,
                                                         d.support.hi);
                               })
        .def("pdf", [](const Density& d, double x) { return d.pdf(x); })
        .def("cdf", [](const Density& d, double x) { return d.cdf(x); })
        .def("quantile",
             [](const Density& d, double p) { return d.quantile(p); })
        .def("v", [](const Density& d, double x) { return v(d, x); })
        .def("q", [](const Density& d, double s) { return q(d, s); })
        .def("__repr__", [](const Density& d) {
            return "<Density '" + d.name + "'>";
        });

    m.def("density", &make_density, py::arg("kind"),
          "one of: normal, logistic, arcsine, uniform, student5");
    m.def("density_names",
          [] { return builtin_density_names(); });

    py::class_<SkewAlternative>(m, "SkewAlternative")
        .def_readonly("theta", &SkewAlternative::theta)
        .def_property_readonly(
            "f", [](const SkewAlternative& a) { return a.f.name; })
        .def_property_readonly(
            "g", [](const SkewAlternative& a) { return a.g.name; })
        .def("pdf",
             [](const SkewAlternative& a, double x) { return skew_pdf(a, x); })
        .def("cdf",
             [](const SkewAlternative& a, double x) { return skew_cdf(a, x); })
        .def(
            "sample",
            [](const SkewAlternative& a, std::size_t n, std::uint64_t seed,
               std::uint64_t stream) { return sample(a, n, seed, stream); },
            py::arg("n"), py::arg("seed"), py::arg("stream") = 0)
        .def("kullback_leibler",
             [](const SkewAlternative& a) { return kullback_leibler(a); });

    m.def(
        "skew",
        [](const std::string& f, const std::string& g, double theta) {
            return make_skew_alternative(make_density(f), make_density(g),
                                         theta);
        },
        py::arg("f"), py::arg("g"), py::arg("theta"),
        "skew alternative with density 2 f(x) G(theta x)");

    m.def(
        "pit",
        [](const std::vector<double>& raw, const std::string& density) {
            return pit(raw, make_density(density)).values;
        },
        py::arg("data"), py::arg("density"));

    m.def(
        "statistics",
        [](const std::vector<double>& raw, const std::string& density) {
            return stats_to_dict(all_stats(pit(raw, make_density(density))));
        },
        py::arg("data"), py::arg("density"),
        "all eight statistics of a raw sample under the hypothesized density");

    m.def(
        "statistics_from_uniform",
        [](std::vector<double> u) {
            return stats_to_dict(all_stats(make_sorted_sample(std::move(u))));
        },
        py::arg("u"),
        "all eight statistics of an already PIT-transformed sample");

    m.def(
        "local_index",
        [](const std::string& kind, const std::string& density) {
            return report_to_dict(
                local_index(kind_of(kind), make_density(density)));
        },
        py::arg("kind"), py::arg("density"));

    m.def("table1", [] {
        const auto t = table1();
        py::list cells;
        for (const auto& c : t.cells) {
            py::dict d = report_to_dict(c.report);
            d["reference"] = c.reference;
            d["diff"] = c.diff;
            cells.append(d);
        }
        py::dict out;
        out["cells"] = cells;
        out["notes"] = t.notes;
        return out;
    });

    m.def(
        "eigen_constants",
        [](int count) {
            const auto ec = eigen_constants(count);
            py::dict d;
            d["kappa"] = ec.kappa;
            d["mu0"] = ec.mu0;
            return d;
        },
        py::arg("count") = 10);

    m.def(
        "b_function",
        [](const std::string& kind, const SkewAlternative& a) {
            return b_function(kind_of(kind), a);
        },
        py::arg("kind"), py::arg("alternative"));

    m.def(
        "exact_slope",
        [](const std::string& kind, const SkewAlternative& a) {
            return exact_slope(kind_of(kind), a);
        },
        py::arg("kind"), py::arg("alternative"));

    m.def(
        "leading_function",
        [](const std::string& kind, int j, double x) {
            return leading_function(kind_of(kind), j, x);
        },
        py::arg("kind"), py::arg("j"), py::arg("x"));

    m.def(
        "lao_check",
        [](const std::string& kind, const std::string& density) {
            const auto r = lao_check(kind_of(kind), make_density(density));
            py::dict d;
            d["statistic"] = to_string(r.kind);
            d["density"] = r.density;
            d["efficiency"] = r.efficiency;
            d["is_lao"] = r.is_lao;
            d["shape_residual"] = r.shape_residual;
            return d;
        },
        py::arg("kind"), py::arg("density"));

    py::class_<NullTable>(m, "NullTable")
        .def_property_readonly(
            "kind", [](const NullTable& t) { return to_string(t.kind); })
        .def_readonly("n", &NullTable::n)
        .def_readonly("replicates", &NullTable::replicates)
        .def_readonly("seed", &NullTable::seed)
        .def_readonly("quantiles", &NullTable::quantiles)
        .def("quantile", &NullTable::quantile, py::arg("p"));

    m.def(
        "null_table",
        [](const std::string& kind, std::size_t n, std::size_t replicates,
           std::uint64_t seed, int workers) {
            return null_table(kind_of(kind), n, replicates, seed, workers);
        },
        py::arg("kind"), py::arg("n"), py::arg("replicates") = 10000,
        py::arg("seed") = 20250901, py::arg("workers") = 1);

    m.def(
        "power",
        [](const std::string& kind, const SkewAlternative& a, std::size_t n,
           double level, std::size_t replicates, std::uint64_t seed,
           const NullTable& table, int workers) {
            const auto p = power(kind_of(kind), a, n, level, replicates, seed,
                                 table, std::nullopt, workers);
            py::dict d;
            d["kind"] = to_string(p.kind);
            d["theta"] = p.theta;
            d["n"] = p.n;
            d["level"] = p.level;
            d["power"] = p.power;
            d["std_error"] = p.std_error;
            return d;
        },
        py::arg("kind"), py::arg("alternative"), py::arg("n"),
        py::arg("level"), py::arg("replicates"), py::arg("seed"),
        py::arg("table"), py::arg("workers") = 1);

    m.def(
        "verify_b_convergence",
        [](const std::string& kind, const SkewAlternative& a,
           std::vector<std::size_t> n_grid, std::size_t replicates,
           std::uint64_t seed, int workers) {
            const auto r = verify_b_convergence(kind_of(kind), a,
                                                std::move(n_grid), replicates,
                                                seed, workers);
            py::dict d;
            d["kind"] = to_string(r.kind);
            d["theta"] = r.theta;
            d["b_value"] = r.b_value;
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict e;
                e["n"] = row.n;
                e["mean"] = row.mean;
                e["sd"] = row.sd;
                e["std_error"] = row.std_error;
                rows.append(e);
            }
            d["rows"] = rows;
            d["rel_deviation_at_largest_n"] = r.rel_deviation_at_largest_n;
            return d;
        },
        py::arg("kind"), py::arg("alternative"),
        py::arg("n_grid") = std::vector<std::size_t>{100, 1000, 10000},
        py::arg("replicates") = 200, py::arg("seed") = 20250901,
        py::arg("workers") = 1);

    m.def(
        "verify_condition2",
        [](const std::string& f, const std::string& g,
           std::vector<double> grid) {
            const auto a = make_skew_alternative(make_density(f),
                                                 make_density(g), 0.0);
            const auto r = verify_condition2(a, std::move(grid));
            py::dict d;
            d["theta_grid"] = r.theta_grid;
            d["normalized_sup"] = r.normalized_sup;
            d["decreasing"] = r.decreasing;
            return d;
        },
        py::arg("f"), py::arg("g"),
        py::arg("theta_grid") = std::vector<double>{1e-1, 1e-2, 1e-3});
}
