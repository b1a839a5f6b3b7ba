#pragma once

// Angle arithmetic on the circle R/Z and compensated summation.
// Angles are doubles in [0, 1); the unit circle value is exp(2*pi*i*angle).

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace ergolab {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Reduce to [0, 1). Guards against frac(x) == 1.0 from rounding near 0^-.
inline double frac(double a) {
    double r = a - std::floor(a);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r = 0.0;
    return r;
}

// Sum of two angles already in [0, 1); exact up to one rounding
// (the conditional subtraction is exact by Sterbenz).
inline double add_angle(double a, double b) {
    double r = a + b;
    if (r >= 1.0) r -= 1.0;
    return r;
}

// frac(a * n) for a >= 0 computed through the exact integer mantissa of a,
// so no precision is lost for large n (plain a*n loses ~log2(n) bits).
inline double frac_mul(double a, std::uint64_t n) {
    if (n == 0 || a == 0.0) return 0.0;
    int e2 = 0;
    double m2 = std::frexp(a, &e2);                      // a = m2 * 2^e2, m2 in [0.5, 1)
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m2, 53));  // exact 53-bit integer
    const int e = e2 - 53;                               // a = mant * 2^e
    unsigned __int128 x = static_cast<unsigned __int128>(mant) * n;
    if (e >= 0) return 0.0;                              // a*n is an integer
    const int j = -e;
    if (j < 128) x &= ((static_cast<unsigned __int128>(1) << j) - 1);  // x mod 2^j
    return static_cast<double>(std::ldexp(static_cast<long double>(x), -j));
}

// frac(k * a) for signed integer k and angle a in [0, 1).
inline double frac_mul_signed(double a, std::int64_t k) {
    if (k >= 0) return frac_mul(a, static_cast<std::uint64_t>(k));
    double r = frac_mul(a, static_cast<std::uint64_t>(-k));
    return r == 0.0 ? 0.0 : 1.0 - r;
}

// exp(2*pi*i*angle) for angle in [0, 1).
inline cplx unit(double angle) {
    return {std::cos(two_pi * angle), std::sin(two_pi * angle)};
}

// Distance on R/Z: min(|a-b|, 1-|a-b|).
inline double circle_dist(double a, double b) {
    double d = std::fabs(frac(a) - frac(b));
    return d > 0.5 ? 1.0 - d : d;
}

// Kahan compensated accumulator; keeps Cesaro sums accurate over 1e6 terms.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

struct KahanCplx {
    KahanSum re, im;
    void add(const cplx& z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.s, im.s}; }
};

// Coordinatewise compensated sum for fixed-dimension complex vectors.
struct KahanVec {
    std::vector<KahanCplx> coords;
    explicit KahanVec(std::size_t dim) : coords(dim) {}
    std::size_t dim() const { return coords.size(); }
};

}  // namespace ergolab
