#pragma once

// Cocycles over a base action, d = 1: gamma(0, x) = id and
// gamma(n+1, x) = gamma(n, x) * gamma(1, phi^n x), which is the orbit product
// gamma(n, x) = gamma(1, x) gamma(1, phi x) ... gamma(1, phi^(n-1) x) and
// satisfies gamma(g1+g2, x) = gamma(g2, x) * gamma(g1, g2 x).

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "base_system.hpp"
#include "groups.hpp"
#include "numeric.hpp"
#include "state.hpp"

namespace ergolab {

enum class CocycleKind {
    constant,     // gamma(1, .) = fixed element of the fiber
    torus_exp,    // gamma(1, x) = exp(2*pi*i*k*x) over a 1-dim torus rotation
    group_table,  // constant step into a multiplication-table-backed group
};

struct Cocycle {
    CocycleKind kind = CocycleKind::constant;
    Group fiber = TorusGroup{};
    BaseSystem base = DerndingerSystem{};
    GroupElement step_el;   // constant / group_table
    std::int64_t k = 1;     // torus_exp exponent

    static Cocycle constant_step(Group fiber, BaseSystem base, GroupElement step) {
        Cocycle c;
        c.kind = group_is_finite(fiber) ? CocycleKind::group_table : CocycleKind::constant;
        c.fiber = std::move(fiber);
        c.base = std::move(base);
        c.step_el = step;
        if (group_is_finite(c.fiber) != step.finite)
            throw std::invalid_argument("cocycle step element does not live in the fiber group");
        return c;
    }

    static Cocycle torus_exponential(std::int64_t k, RotationSystem base) {
        if (base.semigroup_dim() != 1 || base.torus_dim() != 1)
            throw std::invalid_argument("torus-exponential cocycle needs a 1-dim rotation base");
        Cocycle c;
        c.kind = CocycleKind::torus_exp;
        c.fiber = TorusGroup{};
        c.base = std::move(base);
        c.k = k;
        return c;
    }

    // gamma(1, x).
    GroupElement step(const StatePoint& x) const {
        switch (kind) {
            case CocycleKind::constant:
            case CocycleKind::group_table:
                return step_el;
            case CocycleKind::torus_exp:
                return GroupElement::torus_el(frac_mul_signed(x.torus().x[0], k));
        }
        throw std::logic_error("unreachable");
    }

    std::string describe() const {
        switch (kind) {
            case CocycleKind::constant:
                return "constant(angle=" + std::to_string(step_el.angle) + ")";
            case CocycleKind::group_table:
                return group_name(fiber) + "-table(step=" + std::to_string(step_el.idx) + ")";
            case CocycleKind::torus_exp:
                return "torus-exp(k=" + std::to_string(k) + ")";
        }
        return "?";
    }
};

namespace detail {

// Power c^n in a table-backed magma: walks until the power sequence cycles,
// then reduces n. Correct for groups and terminates for corrupted tables.
inline std::uint32_t table_power(const FiniteGroup& f, std::uint32_t c, std::uint64_t n) {
    if (n == 0) return f.identity;
    std::vector<std::uint32_t> seq{c};           // seq[t] = c^(t+1), left-to-right products
    std::vector<std::int64_t> seen(f.order, -1);
    seen[c] = 0;
    for (;;) {
        if (seq.size() >= n) return seq[n - 1];
        std::uint32_t next = f.mul(seq.back(), c);
        if (seen[next] >= 0) {
            const std::uint64_t pre = static_cast<std::uint64_t>(seen[next]);
            const std::uint64_t period = seq.size() - pre;
            return seq[pre + (n - 1 - pre) % period];
        }
        seen[next] = static_cast<std::int64_t>(seq.size());
        seq.push_back(next);
    }
}

}  // namespace detail

// gamma(g, x) for scalar g (d = 1). The torus-exponential closed form is
// exp(2*pi*i*k*(n*x + alpha*n*(n-1)/2)) with the triangular number handled in
// integers before the mod-1 reduction.
inline GroupElement cocycle_eval(const Cocycle& gamma, const SemigroupElement& g, const StatePoint& x) {
    if (g.dim() != 1) throw std::invalid_argument("cocycle_eval: cocycles are defined for d = 1");
    const std::uint64_t n = g.g[0];
    switch (gamma.kind) {
        case CocycleKind::constant:
            return GroupElement::torus_el(frac_mul(gamma.step_el.angle, n));
        case CocycleKind::group_table:
            return GroupElement::finite_el(detail::table_power(group_finite(gamma.fiber), gamma.step_el.idx, n));
        case CocycleKind::torus_exp: {
            const auto& rot = std::get<RotationSystem>(gamma.base);
            if (n > 3000000000ULL) throw std::invalid_argument("cocycle_eval: n too large");
            const std::uint64_t tri = (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
            double u = add_angle(frac_mul(x.torus().x[0], n), frac_mul(rot.gen[0][0], tri));
            return GroupElement::torus_el(frac(static_cast<double>(gamma.k) * u));
        }
    }
    throw std::logic_error("unreachable");
}

struct CocycleCheckReport {
    double max_deviation = 0.0;
    std::uint64_t worst_g1 = 0, worst_g2 = 0;
    std::string worst_sample;
    std::uint64_t trials = 0;
};

// Samples (g1, g2, x) and measures the defect of
// gamma(g1+g2, x) = gamma(g2, x) * gamma(g1, g2 x) in the fiber metric.
inline CocycleCheckReport cocycle_check(const Cocycle& gamma, std::uint64_t trials, std::uint64_t seed,
                                        std::uint64_t g_max = 30) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> gdist(0, g_max);
    CocycleCheckReport rep;
    rep.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t g1 = gdist(rng), g2 = gdist(rng);
        StatePoint x = base_sample(gamma.base, rng);
        GroupElement lhs = cocycle_eval(gamma, SemigroupElement::scalar(g1 + g2), x);
        StatePoint g2x = base_act(gamma.base, SemigroupElement::scalar(g2), x);
        GroupElement rhs = g_mul(gamma.fiber, cocycle_eval(gamma, SemigroupElement::scalar(g2), x),
                                 cocycle_eval(gamma, SemigroupElement::scalar(g1), g2x));
        double dev = group_metric(gamma.fiber, lhs, rhs);
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.worst_g1 = g1;
            rep.worst_g2 = g2;
            rep.worst_sample = state_id(x);
        }
    }
    return rep;
}

}  // namespace ergolab
