#ifndef INTGOF_SRC_PANEL_GRID_HPP
#define INTGOF_SRC_PANEL_GRID_HPP

#include <cmath>
#include <vector>

namespace intgof::detail {

// Partition of [0,1] with dyadic grading toward both endpoints (2^-48 up
// to 2^-13) around a uniform core. Quantile-composed integrands are
// scale-resolved on every band, so one fixed Gauss-Kronrod panel per band
// integrates them to near machine accuracy.
inline std::vector<double> graded_unit_knots(int core = 2048) {
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(core) + 75);
    knots.push_back(0.0);
    for (int k = 48; k >= 13; --k) knots.push_back(std::ldexp(1.0, -k));
    const double lo = std::ldexp(1.0, -12);
    for (int i = 0; i <= core; ++i)
        knots.push_back(lo + (1.0 - 2.0 * lo) * i / core);
    for (int k = 13; k <= 48; ++k)
        knots.push_back(1.0 - std::ldexp(1.0, -k));
    knots.push_back(1.0);
    return knots;
}

} // namespace intgof::detail

#endif
