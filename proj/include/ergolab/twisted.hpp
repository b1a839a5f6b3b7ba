#pragma once

// Cocycle-twisted Cesaro averages over the base system:
//   A_n f(x) = (1/n) sum_{j=0}^{n-1} pi(gamma(j, x)) f(phi^j x).
//
// The weight pi(gamma(j, x)) is never accumulated as a matrix product: the
// walk carries the fiber element (exact table walk for finite fibers, angle
// sum for torus fibers) and applies pi at each step.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "koopman.hpp"
#include "observable.hpp"
#include "representation.hpp"

namespace ergolab {

// gamma composed with an optional representation; pi absent means gamma is
// already U(1)-valued (torus fiber).
struct UnitaryCocycle {
    Cocycle gamma;
    std::optional<Representation> pi;

    UnitaryCocycle(Cocycle g, std::optional<Representation> rep) : gamma(std::move(g)), pi(std::move(rep)) {
        if (!pi && group_is_finite(gamma.fiber))
            throw std::invalid_argument("finite-fiber cocycle needs a representation to act on C^N");
        if (pi && group_is_finite(gamma.fiber) != group_is_finite(pi->group))
            throw std::invalid_argument("representation group does not match the cocycle fiber");
    }
    int dim() const { return pi ? pi->dim : 1; }

    Cmat eval(const SemigroupElement& g, const StatePoint& x) const {
        GroupElement w = cocycle_eval(gamma, g, x);
        if (pi) return pi->apply(w);
        Cmat m(1, 1);
        m(0, 0) = unit(w.angle);
        return m;
    }
    std::string describe() const { return gamma.describe() + (pi ? "/" + pi->label : ""); }
};

namespace detail {

struct FiniteCocycleWeight {
    const Cocycle* gamma;
    const Representation* pi;
    GroupElement cur;
    FiniteCocycleWeight(const Cocycle* g, const Representation* p) : gamma(g), pi(p), cur(g_id(g->fiber)) {}
    void advance(const StatePoint& x) { cur = g_mul(gamma->fiber, cur, gamma->step(x)); }
    Cvec apply(const Cvec& v) const { return pi->apply(cur) * v; }
};

struct TorusCocycleWeight {
    const Cocycle* gamma;
    std::int64_t k_pi;  // representation exponent; 1 when pi is absent
    double acc = 0.0;
    TorusCocycleWeight(const Cocycle* g, std::int64_t k) : gamma(g), k_pi(k) {}
    void advance(const StatePoint& x) { acc = add_angle(acc, gamma->step(x).angle); }
    Cvec apply(const Cvec& v) const { return v * unit(frac_mul_signed(acc, k_pi)); }
};

}  // namespace detail

// Multi-window twisted averages in one orbit pass per sample. Samples are
// base points; f maps the base into C^N with N = dim of the twist.
inline std::vector<AverageResult> twisted_windows(const DynamicalSystem& base_sys, const Observable& f,
                                                  const Cocycle& gamma, const std::optional<Representation>& pi,
                                                  const std::vector<std::uint64_t>& windows,
                                                  const std::vector<StatePoint>& samples) {
    if (base_sys.kind == SystemKind::skew)
        throw std::invalid_argument("twisted_windows averages over the base system, not the skew product");
    UnitaryCocycle uc(gamma, pi);  // validates the pairing
    if (f.dim != uc.dim()) throw std::invalid_argument("observable dimension does not match the twist");
    std::vector<AverageResult> out;
    if (group_is_finite(gamma.fiber)) {
        out = detail::cesaro_windows_1d(base_sys, f, detail::FiniteCocycleWeight(&gamma, &*pi), windows, samples);
    } else {
        const std::int64_t k = pi ? pi->k : 1;
        out = detail::cesaro_windows_1d(base_sys, f, detail::TorusCocycleWeight(&gamma, k), windows, samples);
    }
    for (auto& r : out) r.meta["twist"] = uc.describe();
    return out;
}

inline AverageResult twisted_average(const DynamicalSystem& base_sys, const Observable& f, const Cocycle& gamma,
                                     const std::optional<Representation>& pi, const FolnerBox& box,
                                     const std::vector<StatePoint>& samples) {
    if (box.d != 1) throw std::invalid_argument("twisted averaging is d = 1");
    auto res = twisted_windows(base_sys, f, gamma, pi, {box.n}, samples);
    return std::move(res[0]);
}

}  // namespace ergolab
