#pragma once

// Independent cross-checks for the averaging engines: empirical orbit
// measures with plain summation, and the closed-form geometric-series value
// of character-weighted rotation averages. Deliberately shares no code with
// the Kahan orbit-walk engines.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "numeric.hpp"
#include "observable.hpp"
#include "semigroup.hpp"
#include "systems.hpp"

namespace ergolab {

struct EmpiricalMeasure {
    std::vector<StatePoint> points;
    std::vector<double> weights;

    double mass_where(const std::function<bool(const StatePoint&)>& pred) const {
        double m = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (pred(points[i])) m += weights[i];
        return m;
    }
};

// Uniform measure on the orbit patch {g x : g in F_n}.
inline EmpiricalMeasure empirical_measure(const DynamicalSystem& sys, const StatePoint& x0, const FolnerBox& box) {
    if (box.d != sys.semigroup_dim()) throw std::invalid_argument("empirical_measure: dimension mismatch");
    EmpiricalMeasure m;
    const double w = 1.0 / box.size();
    std::vector<std::uint64_t> idx(box.d, 0);
    for (;;) {
        m.points.push_back(act(sys, SemigroupElement(idx), x0));
        m.weights.push_back(w);
        std::size_t k = box.d;
        while (k-- > 0) {
            if (++idx[k] < box.n) break;
            idx[k] = 0;
            if (k == 0) return m;
        }
    }
}

inline cplx integrate(const EmpiricalMeasure& m, const std::function<cplx(const StatePoint&)>& f) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < m.points.size(); ++i) acc += m.weights[i] * f(m.points[i]);
    return acc;
}

inline Cvec integrate(const EmpiricalMeasure& m, const Observable& f) {
    Cvec acc = Cvec::Zero(f.dim);
    for (std::size_t i = 0; i < m.points.size(); ++i) acc += m.weights[i] * f(m.points[i]);
    return acc;
}

// Closed form of (1/n) sum_{j=0}^{n-1} lambda^j exp(2 pi i k (x + j alpha)):
// exp(2 pi i k x) * (z^n - 1) / (n (z - 1)) with z = exp(2 pi i (lambda_angle
// + k alpha)), and exp(2 pi i k x) itself in the resonant case z = 1.
inline cplx geometric_oracle(double lambda_angle, double alpha, std::int64_t k, std::uint64_t n, double x) {
    if (n == 0) throw std::invalid_argument("geometric_oracle: n must be >= 1");
    const double step = add_angle(frac(lambda_angle), frac_mul_signed(frac(alpha), k));
    const cplx front = unit(frac_mul_signed(frac(x), k));
    if (step == 0.0) return front;
    const cplx z = unit(step);
    const cplx zn = unit(frac_mul(step, n));
    return front * (zn - 1.0) / (static_cast<double>(n) * (z - 1.0));
}

}  // namespace ergolab
