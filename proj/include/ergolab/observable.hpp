#pragma once

// Observables f: K -> C^N with a descriptor naming the catalog entry.

#include <functional>
#include <stdexcept>
#include <string>

#include "representation.hpp"
#include "state.hpp"

namespace ergolab {

struct Observable {
    int dim = 1;
    std::string descriptor = "custom";
    std::function<Cvec(const StatePoint&)> eval;

    Cvec operator()(const StatePoint& p) const { return eval(p); }
};

inline Cvec scalar_vec(cplx z) {
    Cvec v(1);
    v(0) = z;
    return v;
}

inline Observable obs_one() {
    return {1, "one", [](const StatePoint&) { return scalar_vec(1.0); }};
}

// exp(2*pi*i * sum_c k_c x_c) on torus (or product-over-torus) points.
inline Observable obs_exp(std::vector<std::int64_t> k) {
    std::string d = "exp:";
    for (std::size_t c = 0; c < k.size(); ++c) d += (c ? "," : "") + std::to_string(k[c]);
    return {1, d, [k](const StatePoint& p) {
                const TorusPoint& t = p.is_product() ? std::get<TorusPoint>(p.product().base) : p.torus();
                if (t.x.size() != k.size()) throw std::invalid_argument("exp observable: dimension mismatch");
                double angle = 0.0;
                for (std::size_t c = 0; c < k.size(); ++c)
                    angle = add_angle(angle, frac_mul_signed(t.x[c], k[c]));
                return scalar_vec(unit(angle));
            }};
}

inline Observable obs_exp(std::int64_t k) { return obs_exp(std::vector<std::int64_t>{k}); }

// n-th subshift coordinate as a +-1 scalar.
inline Observable obs_coord(std::uint64_t n) {
    return {1, "coord:" + std::to_string(n), [n](const StatePoint& p) {
                const SubshiftPoint& s = p.is_product() ? std::get<SubshiftPoint>(p.product().base) : p.subshift();
                return scalar_vec(static_cast<double>(subshift_coord(s, n)));
            }};
}

// Character of the fiber evaluated at the fiber coordinate of a product point:
// finite fibers use chi_k from the cyclic catalog convention, torus fibers
// exp(2*pi*i*k*w).
inline Observable obs_fiber_char(std::int64_t k, const Group& fiber) {
    const bool finite = group_is_finite(fiber);
    const std::uint32_t order = finite ? group_finite(fiber).order : 0;
    return {1, "fiberchar:" + std::to_string(k), [k, finite, order](const StatePoint& p) {
                const GroupElement& w = p.product().fiber;
                if (finite) {
                    if (!w.finite) throw std::invalid_argument("fiber character: element kind mismatch");
                    std::uint64_t kk = static_cast<std::uint64_t>(((k % order) + order) % order);
                    return scalar_vec(unit(static_cast<double>((kk * w.idx) % order) / order));
                }
                return scalar_vec(unit(frac_mul_signed(w.angle, k)));
            }};
}

// exp(2*pi*i*(k*x + l*w)) on torus-base, torus-fiber product points.
inline Observable obs_exp_fiber(std::int64_t k, std::int64_t l) {
    return {1, "expfiber:" + std::to_string(k) + "," + std::to_string(l), [k, l](const StatePoint& p) {
                const auto& pr = p.product();
                const TorusPoint& t = std::get<TorusPoint>(pr.base);
                double angle = add_angle(frac_mul_signed(t.x[0], k), frac_mul_signed(pr.fiber.angle, l));
                return scalar_vec(unit(angle));
            }};
}

// F(x, w) = f(x) * pi_ij(w) on product points; f scalar.
inline Observable obs_tensor_matrix_element(const Observable& f, const Representation& pi, int i, int j) {
    if (f.dim != 1) throw std::invalid_argument("tensor matrix element needs a scalar base observable");
    auto me = matrix_element(pi, i, j);
    Representation pi_copy = pi;
    std::string d = f.descriptor + "*" + pi.label + "[" + std::to_string(i) + std::to_string(j) + "]";
    return {1, d, [f, pi_copy, i, j](const StatePoint& p) {
                const auto& pr = p.product();
                StatePoint base = std::holds_alternative<TorusPoint>(pr.base)
                                      ? StatePoint(std::get<TorusPoint>(pr.base))
                                      : StatePoint(std::get<SubshiftPoint>(pr.base));
                return scalar_vec(f(base)(0) * pi_copy.apply(pr.fiber)(j, i));
            }};
}

// Constant coordinate vector e_i in C^N.
inline Observable obs_basis_vector(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("basis vector index out of range");
    return {n, "e" + std::to_string(i), [n, i](const StatePoint&) {
                Cvec v = Cvec::Zero(n);
                v(i) = 1.0;
                return v;
            }};
}

}  // namespace ergolab
