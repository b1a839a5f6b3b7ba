#pragma once

// The acting semigroup Z_+^d: elements, Folner boxes F_n = {0,...,n-1}^d,
// and characters g |-> prod_k exp(2*pi*i*theta_k*g_k).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace ergolab {

struct SemigroupElement {
    std::vector<std::uint64_t> g;

    SemigroupElement() = default;
    explicit SemigroupElement(std::vector<std::uint64_t> coords) : g(std::move(coords)) {}
    static SemigroupElement zero(std::size_t d) { return SemigroupElement(std::vector<std::uint64_t>(d, 0)); }
    static SemigroupElement scalar(std::uint64_t n) { return SemigroupElement({n}); }

    std::size_t dim() const { return g.size(); }
    bool is_zero() const {
        for (auto v : g)
            if (v != 0) return false;
        return true;
    }
    friend SemigroupElement operator+(const SemigroupElement& a, const SemigroupElement& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("semigroup dimension mismatch");
        SemigroupElement r = a;
        for (std::size_t k = 0; k < r.g.size(); ++k) r.g[k] += b.g[k];
        return r;
    }
    friend bool operator==(const SemigroupElement& a, const SemigroupElement& b) { return a.g == b.g; }
};

struct FolnerBox {
    std::uint64_t n = 1;  // side length, >= 1
    std::uint32_t d = 1;  // dimension, >= 1

    FolnerBox(std::uint64_t side, std::uint32_t dim_) : n(side), d(dim_) {
        if (n == 0) throw std::invalid_argument("Folner box side must be >= 1");
        if (d == 0) throw std::invalid_argument("Folner box dimension must be >= 1");
    }
    double size() const {
        double s = 1.0;
        for (std::uint32_t k = 0; k < d; ++k) s *= static_cast<double>(n);
        return s;
    }
    bool contains(const SemigroupElement& g) const {
        if (g.dim() != d) return false;
        for (auto v : g.g)
            if (v >= n) return false;
        return true;
    }
};

// |F_n symdiff (g + F_n)| / |F_n| = 2 * (1 - prod_k max(0, 1 - g_k/n)).
// Range [0, 2]; 0 iff g = 0; bounded by 2 * (sum_k g_k) / n.
inline double folner_defect(const FolnerBox& box, const SemigroupElement& g) {
    if (g.dim() != box.d) throw std::invalid_argument("folner_defect: dimension mismatch");
    double ratio = 1.0;
    for (auto v : g.g) {
        if (v >= box.n) {
            ratio = 0.0;
            break;
        }
        ratio *= static_cast<double>(box.n - v) / static_cast<double>(box.n);
    }
    return 2.0 * (1.0 - ratio);
}

struct Character {
    std::vector<double> angles;  // theta_k in [0, 1)

    Character() : angles{0.0} {}
    explicit Character(std::vector<double> a) : angles(std::move(a)) {
        if (angles.empty()) throw std::invalid_argument("character needs at least one angle");
        for (auto& t : angles) t = frac(t);
    }
    static Character trivial(std::size_t d) { return Character(std::vector<double>(d, 0.0)); }

    std::size_t dim() const { return angles.size(); }
    bool is_trivial() const {
        for (auto t : angles)
            if (t != 0.0) return false;
        return true;
    }
};

// Evaluates through angle arithmetic mod 1, not complex powering, so large
// coordinates of g do not drift.
inline cplx character_eval(const Character& chi, const SemigroupElement& g) {
    if (chi.dim() != g.dim()) throw std::invalid_argument("character_eval: dimension mismatch");
    double angle = 0.0;
    for (std::size_t k = 0; k < g.dim(); ++k) angle = add_angle(angle, frac_mul(chi.angles[k], g.g[k]));
    return unit(angle);
}

// Inclusive uniform grid on [lo, hi] per axis, cartesian product across axes
// (axis 0 slowest). lo == hi is allowed and yields repeated points.
inline std::vector<Character> character_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                                             std::uint32_t steps) {
    if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("character_grid: bad bounds");
    if (steps < 2) throw std::invalid_argument("character_grid: steps must be >= 2");
    const std::size_t d = lo.size();
    for (std::size_t k = 0; k < d; ++k) {
        if (!(lo[k] >= 0.0) || !(hi[k] <= 1.0) || lo[k] > hi[k])
            throw std::invalid_argument("character_grid: bounds must satisfy 0 <= lo <= hi <= 1");
    }
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= steps;
    std::vector<Character> out;
    out.reserve(total);
    std::vector<std::uint32_t> idx(d, 0);
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<double> angles(d);
        for (std::size_t k = 0; k < d; ++k)
            angles[k] = lo[k] + (hi[k] - lo[k]) * static_cast<double>(idx[k]) / static_cast<double>(steps - 1);
        out.push_back(Character(std::move(angles)));
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < steps) break;
            idx[k] = 0;
        }
    }
    return out;
}

inline std::vector<Character> character_grid(double lo, double hi, std::uint32_t steps) {
    return character_grid(std::vector<double>{lo}, std::vector<double>{hi}, steps);
}

}  // namespace ergolab
