#pragma once

// The system catalog: base systems plus skew products
// T_g(x, w) = (g x, w * gamma(g, x)) over a base and a fiber group.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "base_system.hpp"
#include "cocycle.hpp"
#include "groups.hpp"
#include "semigroup.hpp"
#include "state.hpp"

namespace ergolab {

enum class SystemKind { rotation, derndinger, skew };

struct DynamicalSystem {
    SystemKind kind = SystemKind::rotation;
    BaseSystem base = RotationSystem(std::vector<double>{0.0});
    std::optional<Cocycle> cocycle;  // skew only
    std::string id = "rotation";

    static DynamicalSystem rotation(std::vector<double> alpha) {
        DynamicalSystem s;
        s.kind = SystemKind::rotation;
        s.base = RotationSystem(std::move(alpha));
        s.id = "rotation";
        return s;
    }
    static DynamicalSystem rotation_multi(std::vector<std::vector<double>> gens) {
        DynamicalSystem s;
        s.kind = SystemKind::rotation;
        s.base = RotationSystem(std::move(gens));
        s.id = "rotation";
        return s;
    }
    static DynamicalSystem derndinger() {
        DynamicalSystem s;
        s.kind = SystemKind::derndinger;
        s.base = DerndingerSystem{};
        s.id = "derndinger-shift";
        return s;
    }
    static DynamicalSystem skew(Cocycle gamma) {
        DynamicalSystem s;
        s.kind = SystemKind::skew;
        s.base = gamma.base;
        s.id = "skew(" + gamma.describe() + ")";
        s.cocycle = std::move(gamma);
        return s;
    }

    std::size_t semigroup_dim() const { return kind == SystemKind::skew ? 1 : base_dim(base); }
    const Group& fiber() const {
        if (!cocycle) throw std::logic_error("fiber() on a non-skew system");
        return cocycle->fiber;
    }
};

inline StatePoint act(const DynamicalSystem& sys, const SemigroupElement& g, const StatePoint& p) {
    if (sys.kind != SystemKind::skew) return base_act(sys.base, g, p);
    if (g.dim() != 1) throw std::invalid_argument("act: skew products are d = 1");
    const auto& pr = p.product();
    StatePoint x = std::holds_alternative<TorusPoint>(pr.base) ? StatePoint(std::get<TorusPoint>(pr.base))
                                                               : StatePoint(std::get<SubshiftPoint>(pr.base));
    GroupElement w = g_mul(sys.fiber(), pr.fiber, cocycle_eval(*sys.cocycle, g, x));
    StatePoint gx = base_act(sys.base, g, x);
    ProductPoint out;
    if (gx.is_torus())
        out.base = gx.torus();
    else
        out.base = gx.subshift();
    out.fiber = w;
    return StatePoint(out);
}

// One application of the axis-th generator; the step the averaging engines
// iterate. For skew systems the fiber multiplies by gamma(1, x) with the
// pre-step base point, matching the cocycle recursion.
inline StatePoint system_step(const DynamicalSystem& sys, std::size_t axis, const StatePoint& p) {
    if (sys.kind != SystemKind::skew) return base_step(sys.base, axis, p);
    if (axis != 0) throw std::invalid_argument("system_step: skew products are d = 1");
    const auto& pr = p.product();
    StatePoint x = std::holds_alternative<TorusPoint>(pr.base) ? StatePoint(std::get<TorusPoint>(pr.base))
                                                               : StatePoint(std::get<SubshiftPoint>(pr.base));
    GroupElement w = g_mul(sys.fiber(), pr.fiber, sys.cocycle->step(x));
    StatePoint gx = base_step(sys.base, 0, x);
    ProductPoint out;
    if (gx.is_torus())
        out.base = gx.torus();
    else
        out.base = gx.subshift();
    out.fiber = w;
    return StatePoint(out);
}

// [x, act(g,x), act(2g,x), ...] of length count, computed incrementally.
inline std::vector<StatePoint> orbit(const DynamicalSystem& sys, const StatePoint& x0, const SemigroupElement& g,
                                     std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("orbit: count must be >= 1");
    std::vector<StatePoint> pts;
    pts.reserve(count);
    StatePoint p = x0;
    for (std::uint64_t j = 0; j < count; ++j) {
        pts.push_back(p);
        if (j + 1 < count) p = act(sys, g, p);
    }
    return pts;
}

// Orbit prefix x, phi x, ..., phi^(n-1) x along the axis-0 generator.
inline std::vector<StatePoint> orbit(const DynamicalSystem& sys, const StatePoint& x0, std::uint64_t n) {
    std::vector<std::uint64_t> e0(sys.semigroup_dim(), 0);
    e0[0] = 1;
    return orbit(sys, x0, SemigroupElement(std::move(e0)), n);
}

// Seeded uniform sample of the system's phase space.
inline StatePoint system_sample(const DynamicalSystem& sys, std::mt19937_64& rng) {
    if (sys.kind != SystemKind::skew) return base_sample(sys.base, rng);
    StatePoint x = base_sample(sys.base, rng);
    ProductPoint out;
    if (x.is_torus())
        out.base = x.torus();
    else
        out.base = x.subshift();
    const Group& fib = sys.fiber();
    if (group_is_finite(fib)) {
        std::uniform_int_distribution<std::uint32_t> d(0, group_finite(fib).order - 1);
        out.fiber = GroupElement::finite_el(d(rng));
    } else {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        out.fiber = GroupElement::torus_el(u(rng));
    }
    return StatePoint(out);
}

inline StatePoint make_product(const StatePoint& base, GroupElement fiber) {
    ProductPoint out;
    if (base.is_torus())
        out.base = base.torus();
    else
        out.base = base.subshift();
    out.fiber = fiber;
    return StatePoint(out);
}

}  // namespace ergolab
