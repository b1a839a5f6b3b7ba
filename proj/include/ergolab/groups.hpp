#pragma once

// Compact fiber groups: multiplication-table-backed finite groups and the
// circle group T = R/Z. Finite tables are validated on construction unless
// built through `unchecked` (negative controls corrupt single entries).

#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "numeric.hpp"

namespace ergolab {

struct FiniteGroup {
    std::string name;
    std::uint32_t order = 1;
    std::vector<std::uint32_t> table;  // row-major: table[a*order + b] = a*b
    std::uint32_t identity = 0;
    std::vector<std::uint32_t> inverse;

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
    std::uint32_t inv(std::uint32_t a) const { return inverse[a]; }

    static FiniteGroup checked(std::string name, std::uint32_t order, std::vector<std::uint32_t> table) {
        FiniteGroup g = assemble(std::move(name), order, std::move(table));
        g.validate();
        return g;
    }

    // Skips the group axioms; identity/inverses are best-effort. Only for
    // deliberately corrupted tables in negative controls.
    static FiniteGroup unchecked(std::string name, std::uint32_t order, std::vector<std::uint32_t> table) {
        return assemble(std::move(name), order, std::move(table));
    }

    static FiniteGroup cyclic(std::uint32_t m) {
        if (m == 0) throw std::invalid_argument("cyclic group order must be >= 1");
        std::vector<std::uint32_t> t(static_cast<std::size_t>(m) * m);
        for (std::uint32_t a = 0; a < m; ++a)
            for (std::uint32_t b = 0; b < m; ++b) t[a * m + b] = (a + b) % m;
        return checked("Z" + std::to_string(m), m, std::move(t));
    }

    // Elements {e, r, r^2, s, rs, r^2s} with r = (0 1 2), s = (1 2);
    // multiplication is permutation composition (a*b)(i) = a(b(i)).
    static FiniteGroup s3() {
        const int perms[6][3] = {
            {0, 1, 2},  // e
            {1, 2, 0},  // r
            {2, 0, 1},  // r^2
            {0, 2, 1},  // s
            {1, 0, 2},  // rs
            {2, 1, 0},  // r^2 s
        };
        auto find = [&](const int p[3]) -> std::uint32_t {
            for (std::uint32_t k = 0; k < 6; ++k)
                if (perms[k][0] == p[0] && perms[k][1] == p[1] && perms[k][2] == p[2]) return k;
            throw std::logic_error("s3: composition left the element set");
        };
        std::vector<std::uint32_t> t(36);
        for (std::uint32_t a = 0; a < 6; ++a)
            for (std::uint32_t b = 0; b < 6; ++b) {
                int p[3];
                for (int i = 0; i < 3; ++i) p[i] = perms[a][perms[b][i]];
                t[a * 6 + b] = find(p);
            }
        return checked("S3", 6, std::move(t));
    }

   private:
    static FiniteGroup assemble(std::string name, std::uint32_t order, std::vector<std::uint32_t> table) {
        if (order == 0) throw std::invalid_argument("group order must be >= 1");
        if (table.size() != static_cast<std::size_t>(order) * order)
            throw std::invalid_argument("group table size must be order^2");
        for (auto v : table)
            if (v >= order) throw std::invalid_argument("group table entry out of range");
        FiniteGroup g;
        g.name = std::move(name);
        g.order = order;
        g.table = std::move(table);
        g.identity = 0;
        for (std::uint32_t e = 0; e < order; ++e) {
            bool ok = true;
            for (std::uint32_t x = 0; x < order && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
            if (ok) {
                g.identity = e;
                break;
            }
        }
        g.inverse.assign(order, 0);
        for (std::uint32_t a = 0; a < order; ++a) {
            g.inverse[a] = a;
            for (std::uint32_t b = 0; b < order; ++b)
                if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
                    g.inverse[a] = b;
                    break;
                }
        }
        return g;
    }

    void validate() const {
        for (std::uint32_t a = 0; a < order; ++a) {
            std::vector<bool> row(order, false), col(order, false);
            for (std::uint32_t b = 0; b < order; ++b) {
                row[mul(a, b)] = true;
                col[mul(b, a)] = true;
            }
            for (std::uint32_t b = 0; b < order; ++b)
                if (!row[b] || !col[b]) throw std::invalid_argument(name + ": table is not a Latin square");
        }
        bool id_ok = true;
        for (std::uint32_t x = 0; x < order; ++x)
            id_ok = id_ok && mul(identity, x) == x && mul(x, identity) == x;
        if (!id_ok) throw std::invalid_argument(name + ": no two-sided identity");
        for (std::uint32_t a = 0; a < order; ++a)
            if (mul(a, inverse[a]) != identity || mul(inverse[a], a) != identity)
                throw std::invalid_argument(name + ": missing inverse");
        for (std::uint32_t a = 0; a < order; ++a)
            for (std::uint32_t b = 0; b < order; ++b)
                for (std::uint32_t c = 0; c < order; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument(name + ": table is not associative");
    }
};

struct TorusGroup {};

using Group = std::variant<FiniteGroup, TorusGroup>;

inline bool group_is_finite(const Group& g) { return std::holds_alternative<FiniteGroup>(g); }
inline const FiniteGroup& group_finite(const Group& g) { return std::get<FiniteGroup>(g); }
inline std::string group_name(const Group& g) {
    return group_is_finite(g) ? group_finite(g).name : std::string("T");
}

// A fiber element: index into a finite table, or an angle on T.
struct GroupElement {
    bool finite = true;
    std::uint32_t idx = 0;
    double angle = 0.0;

    static GroupElement finite_el(std::uint32_t i) {
        GroupElement e;
        e.finite = true;
        e.idx = i;
        return e;
    }
    static GroupElement torus_el(double a) {
        GroupElement e;
        e.finite = false;
        e.angle = frac(a);
        return e;
    }
};

inline GroupElement g_id(const Group& g) {
    if (group_is_finite(g)) return GroupElement::finite_el(group_finite(g).identity);
    return GroupElement::torus_el(0.0);
}

inline GroupElement g_mul(const Group& g, const GroupElement& a, const GroupElement& b) {
    if (group_is_finite(g)) {
        if (!a.finite || !b.finite) throw std::invalid_argument("g_mul: element kind mismatch");
        return GroupElement::finite_el(group_finite(g).mul(a.idx, b.idx));
    }
    if (a.finite || b.finite) throw std::invalid_argument("g_mul: element kind mismatch");
    return GroupElement::torus_el(add_angle(a.angle, b.angle));
}

inline GroupElement g_inv(const Group& g, const GroupElement& a) {
    if (group_is_finite(g)) return GroupElement::finite_el(group_finite(g).inv(a.idx));
    return GroupElement::torus_el(a.angle == 0.0 ? 0.0 : 1.0 - a.angle);
}

// Discrete metric on finite groups, chordal distance on T.
inline double group_metric(const Group& g, const GroupElement& a, const GroupElement& b) {
    if (group_is_finite(g)) return a.idx == b.idx ? 0.0 : 1.0;
    return std::abs(unit(a.angle) - unit(b.angle));
}

inline constexpr std::uint32_t torus_haar_grid = 1024;  // 2^10 points for Haar on T

// Haar measure as (point, weight) pairs: exact enumeration for finite groups,
// the 2^10 uniform grid for T (periodic trapezoid rule).
inline std::vector<std::pair<GroupElement, double>> haar_points(const Group& g) {
    std::vector<std::pair<GroupElement, double>> pts;
    if (group_is_finite(g)) {
        const auto& f = group_finite(g);
        pts.reserve(f.order);
        for (std::uint32_t i = 0; i < f.order; ++i)
            pts.emplace_back(GroupElement::finite_el(i), 1.0 / static_cast<double>(f.order));
    } else {
        pts.reserve(torus_haar_grid);
        for (std::uint32_t i = 0; i < torus_haar_grid; ++i)
            pts.emplace_back(GroupElement::torus_el(static_cast<double>(i) / torus_haar_grid),
                             1.0 / static_cast<double>(torus_haar_grid));
    }
    return pts;
}

// Plain-text group table format:
//   group <name> <order>
//   <order x order integers, row-major>
//   irrep <label> <dim>            (optional, repeatable)
//   <order * dim * dim "re im" pairs, element-major, row-major within each matrix>
struct RawIrrep {
    std::string label;
    std::uint32_t dim = 1;
    std::vector<std::vector<cplx>> matrices;  // per element, row-major dim x dim
};

struct GroupFile {
    FiniteGroup group;
    std::vector<RawIrrep> irreps;
};

inline GroupFile parse_group_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok) || tok != "group") throw std::invalid_argument("group file: expected 'group <name> <order>'");
    std::string name;
    std::uint32_t order = 0;
    if (!(in >> name >> order) || order == 0) throw std::invalid_argument("group file: bad group header");
    std::vector<std::uint32_t> table(static_cast<std::size_t>(order) * order);
    for (auto& v : table) {
        long long e = -1;
        if (!(in >> e) || e < 0 || e >= static_cast<long long>(order))
            throw std::invalid_argument("group file: bad table entry");
        v = static_cast<std::uint32_t>(e);
    }
    GroupFile out{FiniteGroup::checked(std::move(name), order, std::move(table)), {}};
    while (in >> tok) {
        if (tok != "irrep") throw std::invalid_argument("group file: expected 'irrep <label> <dim>'");
        RawIrrep r;
        if (!(in >> r.label >> r.dim) || r.dim == 0) throw std::invalid_argument("group file: bad irrep header");
        r.matrices.assign(order, std::vector<cplx>(static_cast<std::size_t>(r.dim) * r.dim));
        for (std::uint32_t el = 0; el < order; ++el)
            for (auto& z : r.matrices[el]) {
                double re = 0, im = 0;
                if (!(in >> re >> im)) throw std::invalid_argument("group file: truncated irrep block");
                z = {re, im};
            }
        out.irreps.push_back(std::move(r));
    }
    return out;
}

}  // namespace ergolab
