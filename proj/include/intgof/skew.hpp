#ifndef INTGOF_SKEW_HPP
#define INTGOF_SKEW_HPP

#include "intgof/density.hpp"

#include <cstdint>
#include <vector>

namespace intgof {

/// The skew family h(x, theta) = 2 f(x) G(theta x) built from a symmetric
/// base density f and a symmetric skewing law G (only G's cdf and g(0)
/// enter anywhere). theta = 0 recovers f. Immutable; the factory enforces
/// theta >= 0 as in the testing problem, direct construction is open to
/// any real theta (the reflection identity h(x,t) = h(-x,-t) makes
/// negative theta meaningful for checks).
struct SkewAlternative {
    Density f;
    Density g;
    double theta = 0.0;
};

SkewAlternative make_skew_alternative(Density f, Density g, double theta);

double skew_pdf(const SkewAlternative& a, double x);

/// H(x, theta), evaluated as F(x) + integral_0^{F(x)} (2G(theta Q(p)) - 1) dp;
/// the probability substitution keeps the integrand bounded even when f
/// blows up at its support ends.
double skew_cdf(const SkewAlternative& a, double x);

/// Exact draws by sign flipping: Z ~ f, U ~ U(0,1), return Z when
/// U <= G(theta Z), else -Z. No rejection loss; the output density is
/// f(z)G(tz) + f(-z)(1 - G(-tz)) = 2 f(z) G(tz) by the symmetry of f and G.
std::vector<double> sample(const SkewAlternative& a, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream = 0);

/// Kullback-Leibler information K(theta) between h(., theta) and f.
double kullback_leibler(const SkewAlternative& a);

struct Condition2Report {
    std::vector<double> theta_grid;
    /// sup_x |H(x,t) - F(x) - 2 t g(0) v(x)| / t per grid theta
    std::vector<double> normalized_sup;
    bool decreasing = false;
};

/// Empirical check that H(x,t) - F(x) ~ 2 t g(0) v(x) as t -> 0:
/// the normalized sup-discrepancy must fall along a shrinking theta grid.
Condition2Report verify_condition2(const SkewAlternative& a,
                                   std::vector<double> theta_grid = {1e-1, 1e-2,
                                                                     1e-3});

} // namespace intgof

#endif
