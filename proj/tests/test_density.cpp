#include <doctest.h>

#include "intgof/density.hpp"
#include "intgof/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace intgof;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// independent oracle: composite Simpson on [a, b]
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        const double x = a + (b - a) * i / intervals;
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
    }
    return acc * (b - a) / (3.0 * intervals);
}

std::vector<double> interior_grid(const Density& d, int count) {
    std::vector<double> xs;
    for (int i = 1; i < count; ++i)
        xs.push_back(d.quantile(static_cast<double>(i) / count));
    return xs;
}

} // namespace

TEST_CASE("variances are the exact closed-form values") {
    CHECK(make_density("normal").variance == 1.0);
    CHECK(make_density("logistic").variance ==
          doctest::Approx(kPi * kPi / 3.0).epsilon(1e-15));
    CHECK(make_density("arcsine").variance == 0.5);
    CHECK(make_density("uniform").variance == doctest::Approx(1.0 / 3.0));
    CHECK(make_density("student5").variance == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("spot values") {
    CHECK(make_density("arcsine").cdf(0.0) == doctest::Approx(0.5));
    CHECK(make_density("student5").pdf(0.0) ==
          doctest::Approx(8.0 / (3.0 * kPi)).epsilon(1e-15));
    const auto normal = make_density("normal");
    CHECK(v(normal, 0.0) ==
          doctest::Approx(-1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-15));
    CHECK(v(make_density("uniform"), 0.0) == doctest::Approx(-0.25));
    CHECK(v(make_density("arcsine"), 1.0) == 0.0);
}

TEST_CASE("unknown kind is rejected with the valid names") {
    CHECK_THROWS_WITH_AS(make_density("cauchy"),
                         doctest::Contains("valid names"),
                         std::invalid_argument);
}

TEST_CASE("q spot values") {
    const auto arcsine = make_density("arcsine");
    for (double s : {-0.8, -0.2, 0.4, 1.0})
        CHECK(q(arcsine, s) ==
              doctest::Approx(-(s + 1.0) / (kPi * kPi)).epsilon(1e-15));
    CHECK(q(arcsine, 1.0) ==
          doctest::Approx(-2.0 / (kPi * kPi)).epsilon(1e-15));

    // q(uniform, 1) = -1/6, cross-checked by a numeric double integral
    const auto uniform = make_density("uniform");
    CHECK(q(uniform, 1.0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    auto v_num = [&](double x) {
        return simpson([&](double u) { return u * uniform.pdf(u); }, -1.0, x,
                       2000);
    };
    const double q_num =
        simpson([&](double x) { return v_num(x) * uniform.pdf(x); }, -1.0, 1.0,
                2000);
    CHECK(q_num == doctest::Approx(-1.0 / 6.0).epsilon(1e-9));

    // q(logistic, +inf) = -1/2; the closed form has already saturated at 40
    const auto logistic = make_density("logistic");
    CHECK(q(logistic, 40.0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(q(logistic, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(-0.5));
}

TEST_CASE("symmetry on a grid") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        for (double x : interior_grid(d, 20)) {
            CHECK(d.pdf(x) == doctest::Approx(d.pdf(-x)).epsilon(1e-12));
            CHECK(d.cdf(x) + d.cdf(-x) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("quantile inverts the cdf") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        for (double x : interior_grid(d, 40))
            CHECK(d.quantile(d.cdf(x)) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("normal quantile error below 1e-9") {
    const auto d = make_density("normal");
    // reference values to 20 digits
    const std::pair<double, double> ref[] = {
        {0.975, 1.9599639845400542355}, {0.5, 0.0},
        {0.001, -3.0902323061678135415}, {1e-10, -6.3613409024040562047},
        {0.3, -0.52440051270804078404}, {0.999, 3.0902323061678135415}};
    for (const auto& [p, x] : ref)
        CHECK(std::fabs(d.quantile(p) - x) < 1e-9);
    // round trip away from the far tails, where the cdf itself rounds
    for (double x = -5.0; x <= 5.0; x += 0.25)
        CHECK(std::fabs(d.quantile(d.cdf(x)) - x) < 1e-9);
}

TEST_CASE("variance equals the second moment by quadrature") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        const double second = integrate(
            [&](double p) {
                const double x = d.quantile(p);
                return x * x;
            },
            0.0, 1.0);
        CHECK(second == doctest::Approx(d.variance).epsilon(1e-9));
    }
}

TEST_CASE("v is nonpositive and vanishes at support ends") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        for (double x : interior_grid(d, 30)) CHECK(v(d, x) <= 0.0);
        const double edge =
            std::isfinite(d.support.hi) ? d.support.hi : 1e10;
        CHECK(std::fabs(v(d, edge)) < 1e-12);
        CHECK(std::fabs(v(d, -edge)) < 1e-12);
    }
}

TEST_CASE("q is nonincreasing") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        double prev = 0.0; // q(-inf) = 0
        for (double x : interior_grid(d, 50)) {
            const double cur = q(d, x);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("numeric v and q match the closed forms on 100 grid points") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        const auto vq = numeric_v_q(d.pdf, d.support);
        for (int i = 1; i < 100; ++i) {
            const double x = d.quantile(i / 100.0);
            CHECK(std::fabs(vq.v(x) - d.v_closed(x)) < 1e-8);
            CHECK(std::fabs(vq.q(x) - d.q_closed(x)) < 1e-8);
        }
    }
}

TEST_CASE("numeric v/q edge behavior") {
    const auto normal = make_density("normal");
    const auto vq = numeric_v_q(normal.pdf, normal.support);
    // nested-Simpson oracle for q(0) = -1/(4 sqrt(pi))
    auto v_num = [&](double x) {
        return simpson([&](double u) { return u * normal.pdf(u); }, -12.0, x,
                       4000);
    };
    const double oracle =
        simpson([&](double x) { return v_num(x) * normal.pdf(x); }, -12.0, 0.0,
                1200);
    const double expected = -1.0 / (4.0 * std::sqrt(kPi));
    CHECK(oracle == doctest::Approx(expected).epsilon(1e-7));
    CHECK(vq.q(0.0) == doctest::Approx(expected).epsilon(1e-9));

    const auto uniform = make_density("uniform");
    const auto uq = numeric_v_q(uniform.pdf, uniform.support);
    CHECK(uq.v(-1.0) == 0.0);
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        const auto n = numeric_v_q(d.pdf, d.support);
        CHECK(n.q(d.support.lo) == 0.0); // empty integral
    }
}

TEST_CASE("numeric_v_q rejects an asymmetric pdf") {
    auto shifted = [](double x) {
        return std::exp(-0.5 * (x - 0.3) * (x - 0.3)) /
               std::sqrt(2.0 * kPi);
    };
    CHECK_THROWS_AS(
        numeric_v_q(shifted,
                    Interval{-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()}),
        std::invalid_argument);
}

TEST_CASE("q at +inf equals the full integral of v f") {
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        const double total = integrate(
            [&](double p) { return v(d, d.quantile(p)); }, 0.0, 1.0);
        CHECK(std::fabs(q(d, d.support.hi) - total) < 1e-9);
        CHECK(std::fabs(d.q_at_right_end - total) < 1e-9);
    }
}

TEST_CASE("|q| is maximal at the right support end") {
    // the extremum search over s must land on the endpoint
    for (const auto& name : builtin_density_names()) {
        const auto d = make_density(name);
        const double at_end = std::fabs(d.q_at_right_end);
        double best = 0.0;
        for (int i = 1; i < 512; ++i)
            best = std::max(best,
                            std::fabs(q(d, d.quantile(i / 512.0))));
        CHECK(best <= at_end + 1e-12);
    }
}
