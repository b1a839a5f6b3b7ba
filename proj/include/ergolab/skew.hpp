#pragma once

// Group-extension analysis: Haar and fiber averages, per-irrep fixed-space
// probes, and the numerical ergodicity / mean-ergodicity verdict for skew
// products T_g(x, w) = (gx, w * gamma(g, x)).
//
// The reduction behind the verdict: matrix elements f tensor pi_ij generate
// C(K x Omega), and their skew averages are pi-twisted base averages, so the
// skew product is ergodic iff every nontrivial irrep's twisted fixed space
// is trivial; fixed-space dimensions are read off the rank of the matrix of
// limit vectors.

#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "koopman.hpp"
#include "observable.hpp"
#include "representation.hpp"
#include "systems.hpp"
#include "twisted.hpp"

namespace ergolab {

// int_Omega h dHaar (exact mean for finite fibers, 2^10 grid on T).
inline cplx haar_average(const Group& fiber, const std::function<cplx(const GroupElement&)>& h) {
    cplx acc = 0.0;
    for (const auto& [w, wt] : haar_points(fiber)) acc += wt * h(w);
    return acc;
}

// h_{pi,i}(x) = int_Omega F(x, w) pi(w)^{-1} e_i dHaar(w); F scalar on the
// product space. If F is invariant under the skew action, h_{pi,i} is fixed
// under the pi-twisted base operator.
inline Cvec fiber_average(const Group& fiber, const Observable& F, const Representation& pi,
                          const StatePoint& base_point, int i) {
    if (F.dim != 1) throw std::invalid_argument("fiber_average expects a scalar observable");
    if (i < 0 || i >= pi.dim) throw std::invalid_argument("fiber_average: basis index out of range");
    Cvec acc = Cvec::Zero(pi.dim);
    Cvec ei = Cvec::Zero(pi.dim);
    ei(i) = 1.0;
    for (const auto& [w, wt] : haar_points(fiber)) {
        cplx val = F(make_product(base_point, w))(0);
        acc += wt * val * (pi.apply(g_inv(fiber, w)) * ei);
    }
    return acc;
}

struct IrrepProbeReport {
    std::string label;
    int dim = 1;
    std::size_t est_fixed_dim = 0;
    double max_residual = 0.0;             // over probes: sup_x ||A_2n f - A_n f||
    std::vector<double> probe_residuals;
    std::vector<AverageResult> limits;     // per probe, at window 2n
    std::vector<double> singular_values;   // of the probe x (sample*N) limit matrix
};

// Twisted averages of the probes at windows n and 2n; the estimated fixed
// dimension is the rank of the limit-vector matrix above tol*sqrt(#samples).
inline IrrepProbeReport irrep_fixed_space_probe(const DynamicalSystem& base_sys, const Cocycle& gamma,
                                                const Representation& pi, const std::vector<Observable>& probes,
                                                const FolnerBox& box, const std::vector<StatePoint>& samples,
                                                double tol) {
    if (probes.empty()) throw std::invalid_argument("irrep_fixed_space_probe needs probes");
    if (box.d != 1) throw std::invalid_argument("irrep_fixed_space_probe is d = 1");
    IrrepProbeReport rep;
    rep.label = pi.label;
    rep.dim = pi.dim;
    const std::vector<std::uint64_t> windows{box.n, 2 * box.n};
    const Eigen::Index cols = static_cast<Eigen::Index>(samples.size()) * pi.dim;
    Cmat limit_matrix(static_cast<Eigen::Index>(probes.size()), cols);
    for (std::size_t p = 0; p < probes.size(); ++p) {
        auto res = twisted_windows(base_sys, probes[p], gamma, pi, windows, samples);
        double resid = 0.0;
        for (std::size_t si = 0; si < samples.size(); ++si) {
            resid = std::max(resid, (res[1].values[si] - res[0].values[si]).norm());
            for (int c = 0; c < pi.dim; ++c)
                limit_matrix(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(si) * pi.dim + c) =
                    res[1].values[si](c);
        }
        rep.probe_residuals.push_back(resid);
        rep.max_residual = std::max(rep.max_residual, resid);
        rep.limits.push_back(std::move(res[1]));
    }
    Eigen::JacobiSVD<Cmat> svd(limit_matrix);
    const double threshold = tol * std::sqrt(static_cast<double>(samples.size()));
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        double s = svd.singularValues()(k);
        rep.singular_values.push_back(s);
        if (s > threshold) ++rep.est_fixed_dim;
    }
    return rep;
}

enum class Verdict { supported, refuted, inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::supported: return "supported";
        case Verdict::refuted: return "refuted";
        default: return "inconclusive";
    }
}

struct IrrepRecord {
    std::string label;
    int dim = 1;
    std::size_t est_fixed_dim = 0;
    double max_residual = 0.0;
    bool converged = false;
    bool continuity_ok = true;
    double worst_jump = 0.0;                // across near-coincident sample pairs
    std::vector<std::string> probe_labels;  // aligned with probe_residuals
    std::vector<double> probe_residuals;
};

struct ErgodicityReport {
    std::vector<IrrepRecord> irreps;
    Verdict ergodic = Verdict::inconclusive;       // of the skew product
    Verdict mean_ergodic = Verdict::inconclusive;  // of the full twisted family
    std::string notes;
};

inline constexpr double close_pair_eps = 1e-6;

// Scalar probes are lifted to C^N per basis direction for N-dim irreps.
inline std::vector<Observable> lift_probes(const std::vector<Observable>& scalar_probes, int N) {
    if (N == 1) return scalar_probes;
    std::vector<Observable> out;
    for (const auto& f : scalar_probes)
        for (int i = 0; i < N; ++i) {
            Observable f_copy = f;
            out.push_back({N, f.descriptor + "*e" + std::to_string(i), [f_copy, N, i](const StatePoint& p) {
                               Cvec v = Cvec::Zero(N);
                               v(i) = f_copy(p)(0);
                               return v;
                           }});
        }
    return out;
}

// Runs the per-irrep probe over the fiber's irrep catalog and aggregates:
//  - ergodic: supported iff every nontrivial irrep shows fixed dimension 0
//    with converged averages; refuted if a nontrivial irrep has a converged
//    nonzero fixed space.
//  - mean_ergodic: refuted when limits jump across sample pairs closer than
//    close_pair_eps (jump > 10*tol), supported when everything converged
//    with no such jump.
inline ErgodicityReport mean_ergodicity_verdict(const DynamicalSystem& skew_sys,
                                                const std::vector<Observable>& scalar_probes, const FolnerBox& box,
                                                const std::vector<StatePoint>& samples, double tol,
                                                std::int64_t max_torus_k = 3) {
    if (skew_sys.kind != SystemKind::skew)
        throw std::invalid_argument("mean_ergodicity_verdict expects a skew system");
    const Cocycle& gamma = *skew_sys.cocycle;
    DynamicalSystem base_sys;
    if (std::holds_alternative<RotationSystem>(gamma.base)) {
        base_sys.kind = SystemKind::rotation;
        base_sys.id = "rotation";
    } else {
        base_sys.kind = SystemKind::derndinger;
        base_sys.id = "derndinger-shift";
    }
    base_sys.base = gamma.base;

    std::vector<std::pair<std::size_t, std::size_t>> close_pairs;
    for (std::size_t a = 0; a < samples.size(); ++a)
        for (std::size_t b = a + 1; b < samples.size(); ++b)
            if (state_metric(samples[a], samples[b]) < close_pair_eps) close_pairs.emplace_back(a, b);

    ErgodicityReport report;
    bool all_converged = true;
    bool any_nontrivial_fixed = false;
    bool any_jump = false;
    for (const auto& pi : irrep_catalog(skew_sys.fiber(), max_torus_k)) {
        const std::vector<Observable> lifted = lift_probes(scalar_probes, pi.dim);
        auto probe = irrep_fixed_space_probe(base_sys, gamma, pi, lifted, box, samples, tol);
        IrrepRecord rec;
        rec.label = pi.label;
        rec.dim = pi.dim;
        rec.est_fixed_dim = probe.est_fixed_dim;
        rec.max_residual = probe.max_residual;
        rec.converged = probe.max_residual <= tol;
        for (const auto& p : lifted) rec.probe_labels.push_back(p.descriptor);
        rec.probe_residuals = probe.probe_residuals;
        for (const auto& lim : probe.limits)
            for (const auto& [a, b] : close_pairs) {
                double jump = (lim.values[a] - lim.values[b]).norm();
                rec.worst_jump = std::max(rec.worst_jump, jump);
            }
        rec.continuity_ok = rec.worst_jump <= 10.0 * tol;
        if (!rec.continuity_ok) any_jump = true;
        if (!rec.converged) all_converged = false;
        if (!pi.trivial() && rec.converged && rec.est_fixed_dim > 0) any_nontrivial_fixed = true;
        report.irreps.push_back(rec);
    }

    if (any_nontrivial_fixed)
        report.ergodic = Verdict::refuted;
    else if (all_converged)
        report.ergodic = Verdict::supported;
    else
        report.ergodic = Verdict::inconclusive;

    if (any_jump)
        report.mean_ergodic = Verdict::refuted;
    else if (all_converged)
        report.mean_ergodic = Verdict::supported;
    else
        report.mean_ergodic = Verdict::inconclusive;

    if (!close_pairs.empty())
        report.notes = std::to_string(close_pairs.size()) + " near-coincident sample pair(s) checked";
    return report;
}

struct UniqueErgodicityReport {
    std::vector<StatePoint> starts;
    std::vector<Cvec> averages;  // Birkhoff averages at window box.n
    double spread = 0.0;         // max pairwise distance
};

// Birkhoff averages from seeded random starts; a uniquely ergodic system
// drives the spread to zero, distinct ergodic components keep it open.
inline UniqueErgodicityReport unique_ergodicity_probe(const DynamicalSystem& sys, const Observable& f,
                                                      const FolnerBox& box, std::uint32_t n_starts,
                                                      std::uint64_t seed) {
    if (n_starts < 2) throw std::invalid_argument("unique_ergodicity_probe needs at least two starts");
    std::mt19937_64 rng(seed);
    UniqueErgodicityReport rep;
    for (std::uint32_t s = 0; s < n_starts; ++s) rep.starts.push_back(system_sample(sys, rng));
    AverageResult avg = weighted_average(sys, f, Character::trivial(box.d), box, rep.starts);
    rep.averages = avg.values;
    for (std::size_t a = 0; a < rep.averages.size(); ++a)
        for (std::size_t b = a + 1; b < rep.averages.size(); ++b)
            rep.spread = std::max(rep.spread, (rep.averages[a] - rep.averages[b]).norm());
    return rep;
}

}  // namespace ergolab
