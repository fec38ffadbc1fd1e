#ifndef INTGOF_EFFICIENCY_HPP
#define INTGOF_EFFICIENCY_HPP

#include "intgof/density.hpp"
#include "intgof/skew.hpp"
#include "intgof/statistics.hpp"

#include <string>
#include <vector>

namespace intgof {

/// Positive roots of tan(x) + tanh(x) = 0 and mu0 = kappa_1^4.
struct EigenConstants {
    std::vector<double> kappa;
    double mu0 = 0.0;
};

/// First `count` roots by bisection + Newton polish on ((j-1/2)pi, j pi),
/// where tan + tanh rises from -inf through its unique zero. Root residuals
/// are driven below 1e-12.
EigenConstants eigen_constants(int count);

/// The six density functionals every local index is built from:
///   sup_v = sup_x |v(x)|            int_vf = int v f      int_v2f = int v^2 f
///   sup_q = sup_s |q(s)|            int_qf = int q f      int_q2f = int q^2 f
/// sup_q equals |q| at the right support end (q is monotone nonincreasing);
/// it is taken from the closed-form limit with a grid-scan safety check.
/// Integrals run in probability space, int r(Q(p)) dp.
struct DensityFunctionals {
    double sup_v, int_vf, int_v2f;
    double sup_q, int_qf, int_q2f;
};

DensityFunctionals density_functionals(const Density& d);

struct LocalIndexReport {
    StatisticKind kind;
    std::string density;
    DensityFunctionals functionals;
    double index;      // l(T, f)
    double variance;   // sigma^2(f)
    double efficiency; // l / sigma^2, the local Bahadur efficiency
};

/// l(Dbar) = 12 sup q^2, l(W1bar) = 45 (int qf)^2, l(W2bar) = mu0 int q^2 f,
/// l(U2bar) = pi^4 [int q^2 f - (int qf)^2].
LocalIndexReport local_index_integrated(StatisticKind kind, const Density& d);

/// l(D) = 4 sup v^2, l(W1) = 12 (int vf)^2, l(W2) = pi^2 int v^2 f,
/// l(U2) = 4 pi^2 [int v^2 f - (int vf)^2].
LocalIndexReport local_index_classical(StatisticKind kind, const Density& d);

/// Dispatch on the kind.
LocalIndexReport local_index(StatisticKind kind, const Density& d);

/// The limiting-in-probability value b(T, theta) of the normalized
/// statistic under the alternative, evaluated exactly by quadrature of the
/// corresponding functional of H(., theta) - F. The sup-type functionals
/// use a 512-point quantile grid plus golden-section refinement.
double b_function(StatisticKind kind, const SkewAlternative& a);

/// Local approximation of the exact slope c(T, theta): coefficient map
/// {D: 4 b^2, W1: 12 b^2, W2: pi^2 b, U2: 4 pi^2 b, Dbar: 12 b^2,
///  W1bar: 45 b^2, W2bar: mu0 b, U2bar: pi^4 b}. Valid for small theta.
double exact_slope(StatisticKind kind, const SkewAlternative& a);

/// Extremal directions: psi_j for W2bar
/// (cos k_j sinh(k_j(1-x)) + cosh(k_j) sin(k_j(1-x))), sin(pi j x) for
/// U2bar. Other kinds are rejected.
double leading_function(StatisticKind kind, int j, double x);

struct LaoReport {
    StatisticKind kind;
    std::string density;
    double efficiency = 0.0;
    bool is_lao = false;
    /// Dbar: sup |F(x) - 1/2 - x (F(b)-1/2)/b| over [-b, b];
    /// U2bar: sup |F(x) - (asin(x/b)/pi + 1/2)|. NaN for other kinds.
    double shape_residual = 0.0;
};

LaoReport lao_check(StatisticKind kind, const Density& d);

struct EfficiencyCell {
    StatisticKind kind;
    std::string density;
    LocalIndexReport report;
    double reference; // published 3-decimal value
    double diff;      // efficiency - reference
};

struct EfficiencyTable {
    std::vector<EfficiencyCell> cells; // row-major: 8 kinds x 5 densities
    std::vector<std::string> notes;    // documented reference discrepancies
};

/// The full 8 x 5 efficiency matrix with reference values and diffs,
/// computed analytically (quadrature + root finding, no simulation).
EfficiencyTable table1();

/// Published reference efficiency for (kind, density), 3 decimals.
double reference_efficiency(StatisticKind kind, const std::string& density);

} // namespace intgof

#endif
