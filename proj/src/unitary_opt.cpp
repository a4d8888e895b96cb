#include "rangelab/unitary_opt.hpp"

#include <cmath>

#include "rangelab/rng.hpp"

namespace rangelab {

namespace {

// Cayley step along the skew-Hermitian direction S from V:
//   V' = (I - t/2 S)^{-1} (I + t/2 S) V,
// exactly unitary for every t up to solve roundoff.
CMatrix cayley_step(const CMatrix& v, const CMatrix& s, double t) {
    const std::size_t m = v.rows();
    const CMatrix id = CMatrix::identity(m);
    const CMatrix half = Complex(0.5 * t, 0.0) * s;
    return solve(id - half, (id + half) * v);
}

}  // namespace

UnitaryOptResult maximize_over_unitaries(std::size_t m, const UnitaryObjective& objective,
                                         int restarts, int iters, std::uint64_t seed,
                                         double stop_at) {
    require(m >= 1, "maximize_over_unitaries: empty group");
    require(restarts >= 1, "maximize_over_unitaries: restarts must be >= 1");
    RngStream base(seed);

    UnitaryOptResult best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        if (have_best && best.value >= stop_at) break;
        CMatrix v;
        if (r == 0) {
            v = CMatrix::identity(m);
        } else {
            RngStream rng = base.derive(static_cast<std::uint64_t>(r));
            v = haar_unitary(m, rng);
        }
        auto [value, grad] = objective(v);
        double step = 0.1;
        int stall = 0;
        for (int it = 0; it < iters; ++it) {
            if (value >= stop_at) break;
            // Skew-Hermitian search direction S = G V^* - V G^*.
            CMatrix gv, vg, s;
            multiply_into(gv, grad, v.adjoint());
            multiply_into(vg, v, grad.adjoint());
            s = gv - vg;
            const double s_norm = s.max_abs();
            if (s_norm <= 1e-14 * (1.0 + std::abs(value))) break;

            double t = step / std::max(s_norm, 1e-30);
            bool improved = false;
            double gain = 0.0;
            for (int halve = 0; halve < 30; ++halve) {
                const CMatrix trial = cayley_step(v, s, t);
                auto [tv, tg] = objective(trial);
                if (tv > value + 1e-15 * std::abs(value)) {
                    gain = tv - value;
                    v = trial;
                    value = tv;
                    grad = std::move(tg);
                    improved = true;
                    if (halve == 0) step *= 1.3;
                    break;
                }
                t *= 0.5;
            }
            // Microscopic gains count as stalls so plateaued runs wind down
            // instead of burning the whole iteration budget.
            if (!improved) {
                step *= 0.5;
                if (++stall > 6) break;
            } else if (gain <= 1e-13 * (1.0 + std::abs(value))) {
                if (++stall > 6) break;
            } else {
                stall = 0;
            }
        }
        if (!have_best || value > best.value) {
            best.value = value;
            best.v = v;
            have_best = true;
        }
    }
    return best;
}

}  // namespace rangelab
