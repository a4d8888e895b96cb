#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "rangelab/linalg.hpp"

namespace rangelab {

/// Objective on the unitary group: value and Euclidean gradient at V.
using UnitaryObjective = std::function<std::pair<double, CMatrix>(const CMatrix&)>;

struct UnitaryOptResult {
    CMatrix v;
    double value = 0.0;
};

/// Multi-restart ascent of a smooth objective over U(m). Steps follow the
/// Cayley retraction of the projected gradient with Armijo-style halving, so
/// the reported value is monotone nondecreasing along each run and is always
/// attained by the returned unitary witness (a certified lower bound of the
/// true maximum, never more). Restart 0 starts at the identity, the rest at
/// Haar points from streams derived off seed; ties go to the earliest
/// restart. Remaining restarts are skipped once the best value reaches
/// stop_at.
UnitaryOptResult maximize_over_unitaries(
    std::size_t m, const UnitaryObjective& objective, int restarts = 8, int iters = 500,
    std::uint64_t seed = 7, double stop_at = std::numeric_limits<double>::infinity());

}  // namespace rangelab
