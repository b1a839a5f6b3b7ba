#pragma once

// Weighted Cesaro averaging along Folner boxes:
//   A_n f(x) = (1/|F_n|) * sum_{g in F_n} chi(g) f(g x),
// which for d = 1 is (1/n) sum_{j=0}^{n-1} lambda^j f(phi^j x).
//
// The d = 1 engine makes one orbit pass per sample, accumulates the weight
// incrementally (character angles mod 1, cocycle weights by exact group
// walk), Kahan-compensates the sums, and snapshots every requested window.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "observable.hpp"
#include "representation.hpp"
#include "semigroup.hpp"
#include "systems.hpp"

namespace ergolab {

struct AverageResult {
    std::vector<Cvec> values;  // indexed by sample
    std::uint64_t window = 0;
    std::optional<Character> character;
    double sup_norm = 0.0;     // max over samples of ||value||_2
    double visited_sup = 0.0;  // max over visited orbit points of ||f||_2 (book-kept during the walk)
    std::map<std::string, std::string> meta;

    void finalize_sup() {
        sup_norm = 0.0;
        for (const auto& v : values) sup_norm = std::max(sup_norm, v.norm());
    }
};

struct TrivialWeight {
    void advance(const StatePoint&) {}
    Cvec apply(const Cvec& v) const { return v; }
};

// lambda^j as an accumulated angle; theta = 0 yields the exact factor 1 + 0i,
// so the trivial character reproduces the plain average bitwise.
struct CharacterWeight {
    double theta = 0.0;
    double angle = 0.0;
    explicit CharacterWeight(double t) : theta(frac(t)) {}
    void advance(const StatePoint&) { angle = add_angle(angle, theta); }
    Cvec apply(const Cvec& v) const { return v * unit(angle); }
};

namespace detail {

inline void check_windows(const std::vector<std::uint64_t>& windows) {
    if (windows.empty()) throw std::invalid_argument("averaging needs at least one window");
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i] == 0) throw std::invalid_argument("windows must be >= 1");
        if (i > 0 && windows[i] <= windows[i - 1])
            throw std::invalid_argument("windows must be strictly increasing");
    }
}

// One pass per sample over the orbit prefix of length windows.back().
template <class Weight>
std::vector<AverageResult> cesaro_windows_1d(const DynamicalSystem& sys, const Observable& f,
                                             const Weight& proto, const std::vector<std::uint64_t>& windows,
                                             const std::vector<StatePoint>& samples) {
    check_windows(windows);
    if (samples.empty()) throw std::invalid_argument("averaging needs at least one sample");
    if (sys.semigroup_dim() != 1) throw std::invalid_argument("1-d averaging on a multi-axis system");

    std::vector<AverageResult> out(windows.size());
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        out[wi].window = windows[wi];
        out[wi].values.resize(samples.size());
        out[wi].meta["system"] = sys.id;
        out[wi].meta["observable"] = f.descriptor;
    }

    const std::uint64_t n_max = windows.back();
    double visited = 0.0;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        StatePoint p = samples[si];
        Weight w = proto;
        KahanVec acc(static_cast<std::size_t>(f.dim));
        std::size_t wi = 0;
        for (std::uint64_t j = 0; j < n_max; ++j) {
            Cvec fv = f(p);
            if (fv.size() != f.dim) throw std::invalid_argument("observable returned wrong dimension");
            visited = std::max(visited, fv.norm());
            Cvec term = w.apply(fv);
            for (int c = 0; c < fv.size(); ++c) acc.coords[static_cast<std::size_t>(c)].add(term(c));
            while (wi < windows.size() && j + 1 == windows[wi]) {
                Cvec mean(f.dim);
                for (int c = 0; c < f.dim; ++c)
                    mean(c) = acc.coords[static_cast<std::size_t>(c)].value() / static_cast<double>(windows[wi]);
                out[wi].values[si] = std::move(mean);
                ++wi;
            }
            if (j + 1 < n_max) {
                w.advance(p);
                p = system_step(sys, 0, p);
            }
        }
    }
    for (auto& r : out) {
        r.visited_sup = visited;
        r.finalize_sup();
    }
    return out;
}

}  // namespace detail

// S_g f = f composed with the g-action.
inline Observable koopman_apply(const DynamicalSystem& sys, const Observable& f, const SemigroupElement& g) {
    DynamicalSystem sys_copy = sys;
    return {f.dim, f.descriptor + "@g", [sys_copy, f, g](const StatePoint& p) { return f(act(sys_copy, g, p)); }};
}

// (S_g f)(x) = f(act(g, x)).
inline Cvec koopman_apply(const DynamicalSystem& sys, const SemigroupElement& g, const Observable& f,
                          const StatePoint& x) {
    return f(act(sys, g, x));
}

inline StatePoint system_step_axis_checked(const DynamicalSystem& sys, std::size_t axis, const StatePoint& p) {
    if (sys.kind == SystemKind::skew) throw std::invalid_argument("multi-axis averaging over skew systems");
    return base_step(sys.base, axis, p);
}

// Weighted average over the box; d >= 2 iterates the box per axis with
// incremental points and angles (O(n^d) point evaluations, one window).
inline AverageResult weighted_average(const DynamicalSystem& sys, const Observable& f, const Character& chi,
                                      const FolnerBox& box, const std::vector<StatePoint>& samples) {
    if (chi.dim() != box.d) throw std::invalid_argument("weighted_average: character/box dimension mismatch");
    if (sys.semigroup_dim() != box.d) throw std::invalid_argument("weighted_average: system/box dimension mismatch");
    if (box.d == 1) {
        auto res = detail::cesaro_windows_1d(sys, f, CharacterWeight(chi.angles[0]), {box.n}, samples);
        res[0].character = chi;
        return std::move(res[0]);
    }
    if (samples.empty()) throw std::invalid_argument("averaging needs at least one sample");
    AverageResult out;
    out.window = box.n;
    out.character = chi;
    out.meta["system"] = sys.id;
    out.meta["observable"] = f.descriptor;
    out.values.resize(samples.size());
    double visited = 0.0;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        KahanVec acc(static_cast<std::size_t>(f.dim));
        auto walk = [&](auto&& self, std::size_t axis, StatePoint p, double angle) -> void {
            for (std::uint64_t i = 0; i < box.n; ++i) {
                if (axis + 1 == box.d) {
                    Cvec fv = f(p);
                    visited = std::max(visited, fv.norm());
                    Cvec term = fv * unit(angle);
                    for (int c = 0; c < fv.size(); ++c) acc.coords[static_cast<std::size_t>(c)].add(term(c));
                } else {
                    self(self, axis + 1, p, angle);
                }
                if (i + 1 < box.n) {
                    p = system_step_axis_checked(sys, axis, p);
                    angle = add_angle(angle, chi.angles[axis]);
                }
            }
        };
        walk(walk, 0, samples[si], 0.0);
        Cvec mean(f.dim);
        for (int c = 0; c < f.dim; ++c)
            mean(c) = acc.coords[static_cast<std::size_t>(c)].value() / box.size();
        out.values[si] = std::move(mean);
    }
    out.visited_sup = visited;
    out.finalize_sup();
    return out;
}

// Plain Cesaro averages at several windows in one orbit pass.
inline std::vector<AverageResult> average_windows(const DynamicalSystem& sys, const Observable& f,
                                                  const Character& chi, const std::vector<std::uint64_t>& windows,
                                                  const std::vector<StatePoint>& samples) {
    auto res = detail::cesaro_windows_1d(sys, f, CharacterWeight(chi.angles[0]), windows, samples);
    for (auto& r : res) r.character = chi;
    return res;
}

struct WwScanResult {
    std::vector<AverageResult> per_character;  // aligned with the input grid
    double overall_max = 0.0;                  // max sup_norm across characters
};

// Evaluates each grid character independently (parallel slots when asked);
// the decaying overall max is the uniform Wiener-Wintner diagnostic.
inline WwScanResult ww_scan(const DynamicalSystem& sys, const Observable& f, const std::vector<Character>& grid,
                            const FolnerBox& box, const std::vector<StatePoint>& samples, unsigned threads = 1) {
    if (grid.empty()) throw std::invalid_argument("ww_scan: empty character grid");
    WwScanResult out;
    out.per_character.resize(grid.size());
    auto eval_one = [&](std::size_t i) { out.per_character[i] = weighted_average(sys, f, grid[i], box, samples); };
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) eval_one(i);
    } else {
        std::vector<std::future<void>> futs;
        std::size_t chunk = (grid.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(grid.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) eval_one(i);
            }));
        }
        for (auto& ft : futs) ft.get();
    }
    for (const auto& r : out.per_character) out.overall_max = std::max(out.overall_max, r.sup_norm);
    return out;
}

struct CauchyReport {
    std::vector<std::uint64_t> windows;
    std::vector<AverageResult> results;        // per window
    std::vector<double> sup_dist_to_final;     // sup over samples of ||A_w f - A_final f||
};

// Convergence diagnostic: distance of each window's averages to the largest
// window's, sup over the sample set.
inline CauchyReport cauchy_diagnostic(const DynamicalSystem& sys, const Observable& f, const Character& chi,
                                      const std::vector<std::uint64_t>& windows,
                                      const std::vector<StatePoint>& samples) {
    if (windows.size() < 2) throw std::invalid_argument("cauchy_diagnostic needs at least two windows");
    CauchyReport rep;
    rep.windows = windows;
    rep.results = average_windows(sys, f, chi, windows, samples);
    const auto& last = rep.results.back();
    for (const auto& r : rep.results) {
        double d = 0.0;
        for (std::size_t si = 0; si < samples.size(); ++si) d = std::max(d, (r.values[si] - last.values[si]).norm());
        rep.sup_dist_to_final.push_back(d);
    }
    return rep;
}

// sup_x || A_n f(x) - A_n (chi(g) S_g f)(x) ||; bounded by
// folner_defect(box, g) * max visited ||f||.
inline double invariance_defect(const DynamicalSystem& sys, const Observable& f, const Character& chi,
                                const FolnerBox& box, const SemigroupElement& g,
                                const std::vector<StatePoint>& samples) {
    AverageResult a = weighted_average(sys, f, chi, box, samples);
    AverageResult b = weighted_average(sys, koopman_apply(sys, f, g), chi, box, samples);
    const cplx chig = character_eval(chi, g);
    double d = 0.0;
    for (std::size_t si = 0; si < samples.size(); ++si)
        d = std::max(d, (a.values[si] - chig * b.values[si]).norm());
    return d;
}

}  // namespace ergolab
