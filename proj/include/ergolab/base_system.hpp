#pragma once

// Base dynamics the cocycles sit over: torus rotations (one generator per
// semigroup axis) and the Derndinger shift on K = {+-x^(i)}.
//
// Shift dynamics in (sign, index) coordinates: phi(s, i) = (-s, max(i-1, 1)),
// since shifting x^(i) gives -x^(i-1) for i >= 2 and phi(x^(1)) = -x^(1).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "semigroup.hpp"
#include "state.hpp"

namespace ergolab {

struct RotationSystem {
    // gen[k] = rotation vector of the k-th semigroup generator; all
    // generators act on the same torus, so sizes must agree.
    std::vector<std::vector<double>> gen;

    explicit RotationSystem(std::vector<double> alpha) : gen{std::move(alpha)} { normalize(); }
    explicit RotationSystem(std::vector<std::vector<double>> generators) : gen(std::move(generators)) { normalize(); }

    std::size_t semigroup_dim() const { return gen.size(); }
    std::size_t torus_dim() const { return gen[0].size(); }

   private:
    void normalize() {
        if (gen.empty() || gen[0].empty()) throw std::invalid_argument("rotation needs a generator");
        for (auto& v : gen) {
            if (v.size() != gen[0].size()) throw std::invalid_argument("rotation generators disagree on torus dim");
            for (auto& a : v) a = frac(a);
        }
    }
};

struct DerndingerSystem {};

using BaseSystem = std::variant<RotationSystem, DerndingerSystem>;

inline std::size_t base_dim(const BaseSystem& s) {
    if (auto* r = std::get_if<RotationSystem>(&s)) return r->semigroup_dim();
    return 1;
}

// One application of the axis-th generator.
inline StatePoint base_step(const BaseSystem& s, std::size_t axis, const StatePoint& p) {
    if (auto* r = std::get_if<RotationSystem>(&s)) {
        if (axis >= r->semigroup_dim()) throw std::invalid_argument("base_step: axis out of range");
        TorusPoint q = p.torus();
        for (std::size_t k = 0; k < q.x.size(); ++k) q.x[k] = add_angle(q.x[k], r->gen[axis][k]);
        return StatePoint(q);
    }
    if (axis != 0) throw std::invalid_argument("base_step: shift acts along one axis");
    const auto& sp = p.subshift();
    return StatePoint(SubshiftPoint(-sp.sign, sp.index > 1 ? sp.index - 1 : 1));
}

// g applied in one shot; exact for large g via frac_mul / index arithmetic.
inline StatePoint base_act(const BaseSystem& s, const SemigroupElement& g, const StatePoint& p) {
    if (g.dim() != base_dim(s)) throw std::invalid_argument("base_act: semigroup dimension mismatch");
    if (auto* r = std::get_if<RotationSystem>(&s)) {
        TorusPoint q = p.torus();
        for (std::size_t k = 0; k < g.dim(); ++k)
            for (std::size_t c = 0; c < q.x.size(); ++c)
                q.x[c] = add_angle(q.x[c], frac_mul(r->gen[k][c], g.g[k]));
        return StatePoint(q);
    }
    const auto& sp = p.subshift();
    const std::uint64_t n = g.g[0];
    int sign = (n % 2 == 0) ? sp.sign : -sp.sign;
    std::uint64_t index = (n >= sp.index - 1) ? 1 : sp.index - n;
    return StatePoint(SubshiftPoint(sign, index));
}

// Seeded uniform sample of the base space. Subshift indices are drawn from
// 1..64 (the metric resolution), signs fair.
inline StatePoint base_sample(const BaseSystem& s, std::mt19937_64& rng) {
    if (auto* r = std::get_if<RotationSystem>(&s)) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> x(r->torus_dim());
        for (auto& c : x) c = u(rng);
        return StatePoint(TorusPoint(std::move(x)));
    }
    std::uniform_int_distribution<std::uint64_t> idx(1, subshift_metric_depth);
    std::uniform_int_distribution<int> sgn(0, 1);
    return StatePoint(SubshiftPoint(sgn(rng) ? +1 : -1, idx(rng)));
}

}  // namespace ergolab
