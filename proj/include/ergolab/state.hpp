#pragma once

// Phase-space points: torus points, points of the two-sided-limit subshift
// closure K = {+-x^(i)}, and base x fiber products for skew systems.
//
// Subshift coordinates (1-indexed): x^(i)_n = (-1)^n for n < i and (-1)^(n+1)
// for n >= i; the point (sign, i) is sign * x^(i). As i -> inf, x^(i) -> -x^(1),
// so the family is already closed.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "groups.hpp"
#include "numeric.hpp"

namespace ergolab {

struct TorusPoint {
    std::vector<double> x;  // coordinates in [0, 1)

    TorusPoint() : x{0.0} {}
    explicit TorusPoint(std::vector<double> coords) : x(std::move(coords)) {
        if (x.empty()) throw std::invalid_argument("torus point needs at least one coordinate");
        for (auto& c : x) c = frac(c);
    }
    static TorusPoint scalar(double v) { return TorusPoint(std::vector<double>{v}); }
    friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.x == b.x; }
};

struct SubshiftPoint {
    std::int8_t sign = +1;     // +-1
    std::uint64_t index = 1;   // i >= 1

    SubshiftPoint() = default;
    SubshiftPoint(int s, std::uint64_t i) : sign(static_cast<std::int8_t>(s)), index(i) {
        if (s != 1 && s != -1) throw std::invalid_argument("subshift sign must be +-1");
        if (i == 0) throw std::invalid_argument("subshift index must be >= 1");
    }
    // x^(inf) has coordinates (-1)^n for every n, i.e. equals -x^(1).
    static SubshiftPoint at_infinity(int s) { return SubshiftPoint(-s, 1); }
    friend bool operator==(const SubshiftPoint& a, const SubshiftPoint& b) {
        return a.sign == b.sign && a.index == b.index;
    }
};

struct ProductPoint {
    std::variant<TorusPoint, SubshiftPoint> base;
    GroupElement fiber;

    friend bool operator==(const ProductPoint& a, const ProductPoint& b) {
        if (a.base.index() != b.base.index()) return false;
        bool base_eq = a.base.index() == 0 ? std::get<0>(a.base) == std::get<0>(b.base)
                                           : std::get<1>(a.base) == std::get<1>(b.base);
        if (!base_eq) return false;
        if (a.fiber.finite != b.fiber.finite) return false;
        return a.fiber.finite ? a.fiber.idx == b.fiber.idx : a.fiber.angle == b.fiber.angle;
    }
};

struct StatePoint {
    std::variant<TorusPoint, SubshiftPoint, ProductPoint> v;

    StatePoint() : v(TorusPoint{}) {}
    StatePoint(TorusPoint p) : v(std::move(p)) {}
    StatePoint(SubshiftPoint p) : v(p) {}
    StatePoint(ProductPoint p) : v(std::move(p)) {}

    bool is_torus() const { return std::holds_alternative<TorusPoint>(v); }
    bool is_subshift() const { return std::holds_alternative<SubshiftPoint>(v); }
    bool is_product() const { return std::holds_alternative<ProductPoint>(v); }
    const TorusPoint& torus() const { return std::get<TorusPoint>(v); }
    const SubshiftPoint& subshift() const { return std::get<SubshiftPoint>(v); }
    const ProductPoint& product() const { return std::get<ProductPoint>(v); }
    TorusPoint& torus() { return std::get<TorusPoint>(v); }
    SubshiftPoint& subshift() { return std::get<SubshiftPoint>(v); }
    ProductPoint& product() { return std::get<ProductPoint>(v); }

    friend bool operator==(const StatePoint& a, const StatePoint& b) { return a.v == b.v; }
};

// n-th coordinate (n >= 1) of the sequence sign * x^(index).
inline int subshift_coord(const SubshiftPoint& p, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("subshift coordinates are 1-indexed");
    int c = (n % 2 == 0) ? +1 : -1;  // (-1)^n
    if (n >= p.index) c = -c;        // (-1)^(n+1)
    return p.sign * c;
}

inline constexpr std::uint64_t subshift_metric_depth = 64;

// d(x, y) = sum_{n=1}^{64} 2^-n * |x_n - y_n| / 2; 0 iff the points agree up
// to coordinate 64 (truncation makes pairs that split later indistinguishable).
inline double subshift_metric(const SubshiftPoint& a, const SubshiftPoint& b) {
    double d = 0.0;
    for (std::uint64_t n = subshift_metric_depth; n >= 1; --n)
        if (subshift_coord(a, n) != subshift_coord(b, n)) d += std::ldexp(1.0, -static_cast<int>(n));
    return d;
}

// sup over coordinates of the circle distance.
inline double torus_metric(const TorusPoint& a, const TorusPoint& b) {
    if (a.x.size() != b.x.size()) throw std::invalid_argument("torus_metric: dimension mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k) d = std::max(d, circle_dist(a.x[k], b.x[k]));
    return d;
}

// Metric used for close-pair detection in verdicts; products take the max of
// base and fiber distances (fiber metric needs the group, passed by caller).
inline double state_metric(const StatePoint& a, const StatePoint& b, const Group* fiber = nullptr) {
    if (a.is_torus() && b.is_torus()) return torus_metric(a.torus(), b.torus());
    if (a.is_subshift() && b.is_subshift()) return subshift_metric(a.subshift(), b.subshift());
    if (a.is_product() && b.is_product() && fiber != nullptr) {
        const auto& pa = a.product();
        const auto& pb = b.product();
        double base_d;
        if (std::holds_alternative<TorusPoint>(pa.base) && std::holds_alternative<TorusPoint>(pb.base))
            base_d = torus_metric(std::get<TorusPoint>(pa.base), std::get<TorusPoint>(pb.base));
        else if (std::holds_alternative<SubshiftPoint>(pa.base) && std::holds_alternative<SubshiftPoint>(pb.base))
            base_d = subshift_metric(std::get<SubshiftPoint>(pa.base), std::get<SubshiftPoint>(pb.base));
        else
            throw std::invalid_argument("state_metric: incomparable product bases");
        return std::max(base_d, group_metric(*fiber, pa.fiber, pb.fiber));
    }
    throw std::invalid_argument("state_metric: incomparable points");
}

inline std::string state_id(const StatePoint& p) {
    std::ostringstream os;
    if (p.is_torus()) {
        os << "t:";
        const auto& x = p.torus().x;
        for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << x[k];
    } else if (p.is_subshift()) {
        const auto& s = p.subshift();
        os << "s:" << (s.sign > 0 ? "+" : "-") << s.index;
    } else {
        const auto& pr = p.product();
        os << "p:";
        if (std::holds_alternative<TorusPoint>(pr.base))
            os << state_id(StatePoint(std::get<TorusPoint>(pr.base)));
        else
            os << state_id(StatePoint(std::get<SubshiftPoint>(pr.base)));
        os << "|w:";
        if (pr.fiber.finite)
            os << pr.fiber.idx;
        else
            os << pr.fiber.angle;
    }
    return os.str();
}

}  // namespace ergolab
