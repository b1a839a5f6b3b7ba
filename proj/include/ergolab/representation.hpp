#pragma once

// Finite-dimensional unitary representations of the fiber groups, matrix
// elements pi_ij(w) = <pi(w)e_i, e_j>, Schur orthogonality checks against
// Haar averages, and the pointwise modified Gram-Schmidt pass used to bound
// fixed-space dimensions.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "numeric.hpp"

namespace ergolab {

using Cvec = Eigen::VectorXcd;
using Cmat = Eigen::MatrixXcd;

inline double unitarity_defect(const Cmat& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    Cmat r = u.adjoint() * u - Cmat::Identity(u.rows(), u.cols());
    return r.cwiseAbs().maxCoeff();
}

inline constexpr double unitary_tol = 1e-10;

// A matrix certified unitary at construction: ||U*U - I||_max <= 1e-10.
struct UnitaryMatrix {
    Cmat m;

    explicit UnitaryMatrix(Cmat mat) : m(std::move(mat)) {
        double d = unitarity_defect(m);
        if (!(d <= unitary_tol))
            throw std::invalid_argument("matrix fails unitarity check (defect " + std::to_string(d) + ")");
    }
    Eigen::Index dim() const { return m.rows(); }
};

struct Representation {
    std::string label;
    int dim = 1;
    Group group = TorusGroup{};
    std::vector<Cmat> mats;  // finite groups: matrix per element
    std::int64_t k = 0;      // torus: character exponent

    bool finite_backed() const { return group_is_finite(group); }
    bool trivial() const {
        if (!finite_backed()) return k == 0;
        for (const auto& m : mats)
            if ((m - Cmat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-14) return false;
        return true;
    }

    Cmat apply(const GroupElement& w) const {
        if (finite_backed()) {
            if (!w.finite) throw std::invalid_argument("representation applied to wrong element kind");
            return mats[w.idx];
        }
        if (w.finite) throw std::invalid_argument("representation applied to wrong element kind");
        Cmat m(1, 1);
        m(0, 0) = unit(frac_mul_signed(w.angle, k));
        return m;
    }
};

// Character k of Z/m: angle of element j is exactly ((k*j) mod m)/m.
inline Representation cyclic_character(const FiniteGroup& zm, std::uint32_t k) {
    Representation r;
    r.label = "chi" + std::to_string(k);
    r.dim = 1;
    r.group = zm;
    r.mats.reserve(zm.order);
    for (std::uint32_t j = 0; j < zm.order; ++j) {
        Cmat m(1, 1);
        m(0, 0) = unit(static_cast<double>((static_cast<std::uint64_t>(k) * j) % zm.order) /
                       static_cast<double>(zm.order));
        r.mats.push_back(m);
    }
    return r;
}

inline Representation torus_character(std::int64_t k) {
    Representation r;
    r.label = "chi" + std::to_string(k);
    r.dim = 1;
    r.group = TorusGroup{};
    r.k = k;
    return r;
}

inline Representation finite_trivial(const FiniteGroup& g) {
    Representation r;
    r.label = "trivial";
    r.dim = 1;
    r.group = g;
    r.mats.assign(g.order, Cmat::Identity(1, 1));
    return r;
}

// The three irreps of S3 in the element order {e, r, r^2, s, rs, r^2s}:
// trivial, sign, and the 2-dim triangle representation with exact entries.
inline std::vector<Representation> s3_irreps(const FiniteGroup& s3) {
    if (s3.order != 6) throw std::invalid_argument("s3_irreps: wrong group");
    std::vector<Representation> out;
    out.push_back(finite_trivial(s3));

    Representation sign;
    sign.label = "sign";
    sign.dim = 1;
    sign.group = s3;
    for (int j = 0; j < 6; ++j) {
        Cmat m(1, 1);
        m(0, 0) = j < 3 ? 1.0 : -1.0;  // rotations even, reflections odd
        sign.mats.push_back(m);
    }
    out.push_back(sign);

    const double h = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    Representation std2;
    std2.label = "std";
    std2.dim = 2;
    std2.group = s3;
    auto mat = [](double a, double b, double c, double d) {
        Cmat m(2, 2);
        m(0, 0) = a;
        m(0, 1) = b;
        m(1, 0) = c;
        m(1, 1) = d;
        return m;
    };
    std2.mats = {
        mat(1, 0, 0, 1),       // e
        mat(-h, -s, s, -h),    // r   = rotation by 120
        mat(-h, s, -s, -h),    // r^2 = rotation by 240
        mat(-1, 0, 0, 1),      // s   = reflection fixing vertex 0
        mat(h, -s, -s, -h),    // rs
        mat(h, s, s, -h),      // r^2 s
    };
    out.push_back(std2);
    return out;
}

// Irrep catalog of a fiber group; for T the (infinite) dual is truncated to
// |k| <= max_torus_k with k = 0 first.
inline std::vector<Representation> irrep_catalog(const Group& g, std::int64_t max_torus_k = 3) {
    std::vector<Representation> out;
    if (!group_is_finite(g)) {
        out.push_back(torus_character(0));
        for (std::int64_t k = 1; k <= max_torus_k; ++k) {
            out.push_back(torus_character(k));
            out.push_back(torus_character(-k));
        }
        return out;
    }
    const auto& f = group_finite(g);
    if (f.name == "S3") return s3_irreps(f);
    // Cyclic groups: all characters. Other table-backed groups get at least
    // the trivial representation; further irreps come from group files.
    bool cyclic_like = true;
    for (std::uint32_t a = 0; a < f.order && cyclic_like; ++a)
        for (std::uint32_t b = 0; b < f.order && cyclic_like; ++b)
            cyclic_like = f.mul(a, b) == (a + b) % f.order;
    if (cyclic_like) {
        for (std::uint32_t k = 0; k < f.order; ++k) out.push_back(cyclic_character(f, k));
    } else {
        out.push_back(finite_trivial(f));
    }
    return out;
}

inline Representation representation_from_raw(const FiniteGroup& g, const RawIrrep& raw) {
    Representation r;
    r.label = raw.label;
    r.dim = static_cast<int>(raw.dim);
    r.group = g;
    for (const auto& flat : raw.matrices) {
        Cmat m(r.dim, r.dim);
        for (int i = 0; i < r.dim; ++i)
            for (int j = 0; j < r.dim; ++j) m(i, j) = flat[static_cast<std::size_t>(i) * r.dim + j];
        if (unitarity_defect(m) > unitary_tol)
            throw std::invalid_argument("group file: irrep '" + raw.label + "' has a non-unitary matrix");
        r.mats.push_back(std::move(m));
    }
    return r;
}

// pi_ij(w) = <pi(w)e_i, e_j> = (pi(w))_{j,i}; indices are 0-based.
inline std::function<cplx(const GroupElement&)> matrix_element(const Representation& pi, int i, int j) {
    if (i < 0 || j < 0 || i >= pi.dim || j >= pi.dim)
        throw std::invalid_argument("matrix_element: index out of range");
    return [&pi, i, j](const GroupElement& w) { return pi.apply(w)(j, i); };
}

struct SchurReport {
    double max_deviation = 0.0;
    std::string worst;
};

// Checks int pi_ij conj(rho_kl) dHaar = delta_{pi,rho} delta_ik delta_jl / N
// over all matrix-element pairs of the given representations.
inline SchurReport schur_check(const Group& g, const std::vector<Representation>& reps) {
    const auto haar = haar_points(g);
    SchurReport rep;
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b) {
            const auto& pi = reps[a];
            const auto& rho = reps[b];
            for (int i = 0; i < pi.dim; ++i)
                for (int j = 0; j < pi.dim; ++j)
                    for (int kk = 0; kk < rho.dim; ++kk)
                        for (int l = 0; l < rho.dim; ++l) {
                            cplx acc = 0.0;
                            for (const auto& [w, wt] : haar)
                                acc += wt * pi.apply(w)(j, i) * std::conj(rho.apply(w)(l, kk));
                            cplx expect = 0.0;
                            if (a == b && i == kk && j == l) expect = 1.0 / static_cast<double>(pi.dim);
                            double dev = std::abs(acc - expect);
                            if (dev > rep.max_deviation) {
                                rep.max_deviation = dev;
                                rep.worst = pi.label + "[" + std::to_string(i) + std::to_string(j) + "] vs " +
                                            rho.label + "[" + std::to_string(kk) + std::to_string(l) + "]";
                            }
                        }
        }
    return rep;
}

inline constexpr double gram_schmidt_tol = 1e-8;

// Modified Gram-Schmidt; vectors whose residual norm falls below tol are
// dropped, so the output size is the numerical rank of the input family.
inline std::vector<Cvec> gram_schmidt(const std::vector<Cvec>& vecs, double tol = gram_schmidt_tol) {
    std::vector<Cvec> basis;
    for (const auto& v0 : vecs) {
        Cvec v = v0;
        for (const auto& u : basis) v -= u.dot(v) * u;   // Eigen dot conjugates the left factor
        for (const auto& u : basis) v -= u.dot(v) * u;   // second pass for re-orthogonalization
        double n = v.norm();
        if (n > tol) basis.push_back(v / n);
    }
    return basis;
}

struct PointwiseFrame {
    std::vector<std::vector<Cvec>> orthonormal;  // per sample
    std::vector<std::size_t> dims;               // per-sample rank
    std::size_t max_dim = 0;
};

// Gram-Schmidt applied independently at each sample point; a frame that is
// linearly dependent at some sample is an error naming that sample.
inline PointwiseFrame pointwise_gram_schmidt(const std::vector<std::vector<Cvec>>& frame_at_sample,
                                             double tol = gram_schmidt_tol) {
    PointwiseFrame out;
    for (std::size_t s = 0; s < frame_at_sample.size(); ++s) {
        for (const auto& v : frame_at_sample[s])
            if (!v.allFinite())
                throw std::invalid_argument("pointwise_gram_schmidt: non-finite frame value at sample " +
                                            std::to_string(s));
        auto basis = gram_schmidt(frame_at_sample[s], tol);
        if (basis.size() < frame_at_sample[s].size())
            throw std::invalid_argument("pointwise_gram_schmidt: rank-deficient frame at sample " +
                                        std::to_string(s));
        out.dims.push_back(basis.size());
        out.max_dim = std::max(out.max_dim, basis.size());
        out.orthonormal.push_back(std::move(basis));
    }
    return out;
}

}  // namespace ergolab
