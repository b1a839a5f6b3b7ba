#pragma once

// Batch experiment runner: builds systems/observables/samples from a parsed
// config, dispatches to the averaging engines and emits a CSV table plus a
// human-readable summary with verdict lines.
//
// Exit codes: 0 success, 2 invalid config (including unknown catalog ids),
// 3 internal numerical failure (non-finite value in the result table).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "cocycle.hpp"
#include "csv.hpp"
#include "koopman.hpp"
#include "skew.hpp"
#include "state.hpp"
#include "systems.hpp"
#include "twisted.hpp"

namespace ergolab {

struct RunOutput {
    int exit_code = 0;
    std::string csv;      // empty on failure
    std::string summary;  // verdicts on success, diagnostic on failure
};

namespace detail {

inline bool starts_with(std::string_view s, std::string_view prefix) { return s.starts_with(prefix); }

// Flags any non-finite value routed through it; the runner maps that to exit 3.
struct NumericGuard {
    bool bad = false;
    double operator()(double v) {
        if (!std::isfinite(v)) bad = true;
        return v;
    }
};

inline Group build_fiber(const ExperimentConfig& cfg) {
    const std::string& f = cfg.fiber;
    if (f.empty()) throw ConfigError(0, "fiber: required for this command");
    Group g = TorusGroup{};
    if (f == "T") {
        if (!cfg.corrupt.empty()) throw ConfigError(0, "corrupt: only applies to finite fibers");
        return g;
    }
    if (f == "S3") {
        g = FiniteGroup::s3();
    } else if (f.size() >= 2 && f[0] == 'Z') {
        std::uint64_t m = parse_uint(std::string_view(f).substr(1), 0, "fiber");
        if (m < 2 || m > 64) throw ConfigError(0, "fiber: Z<m> needs 2 <= m <= 64");
        g = FiniteGroup::cyclic(static_cast<std::uint32_t>(m));
    } else if (f == "file") {
        if (cfg.group_file.empty()) throw ConfigError(0, "fiber=file needs group_file");
        std::ifstream in(cfg.group_file);
        if (!in) throw ConfigError(0, "group_file: cannot open '" + cfg.group_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        g = parse_group_text(buf.str()).group;
    } else {
        throw ConfigError(0, "fiber: unknown id '" + f + "' (expected Z<m>, S3, T or file)");
    }
    if (!cfg.corrupt.empty()) {
        FiniteGroup fg = group_finite(g);
        const std::uint64_t a = cfg.corrupt[0], b = cfg.corrupt[1], v = cfg.corrupt[2];
        if (a >= fg.order || b >= fg.order || v >= fg.order)
            throw ConfigError(0, "corrupt: indices must lie below the group order");
        std::vector<std::uint32_t> table = fg.table;
        table[a * fg.order + b] = static_cast<std::uint32_t>(v);
        g = FiniteGroup::unchecked(fg.name + "*", fg.order, std::move(table));
    }
    return g;
}

// Base dynamics for non-skew commands and for the base of a skew product:
// a rotation when alpha is given, the two-sided-limit subshift otherwise.
inline DynamicalSystem build_base(const ExperimentConfig& cfg) {
    if (cfg.system == "derndinger") return DynamicalSystem::derndinger();
    if (cfg.system == "rotation" || cfg.system == "skew") {
        if (cfg.system == "skew" && cfg.alpha.empty()) return DynamicalSystem::derndinger();
        if (cfg.alpha.empty()) throw ConfigError(0, "alpha: required for a rotation system");
        return DynamicalSystem::rotation(cfg.alpha);
    }
    throw ConfigError(0, "system: unknown id '" + cfg.system + "'");
}

inline Cocycle build_cocycle(const ExperimentConfig& cfg, const Group& fiber, const BaseSystem& base) {
    const std::string& c = cfg.cocycle;
    if (c.empty()) throw ConfigError(0, "cocycle: required for this command");
    if (starts_with(c, "constant:")) {
        std::string_view v = std::string_view(c).substr(9);
        GroupElement step = GroupElement::torus_el(0.0);
        if (group_is_finite(fiber)) {
            std::uint64_t idx = parse_uint(v, 0, "cocycle");
            if (idx >= group_finite(fiber).order) throw ConfigError(0, "cocycle: element index out of range");
            step = GroupElement::finite_el(static_cast<std::uint32_t>(idx));
        } else {
            step = GroupElement::torus_el(parse_double(v, 0, "cocycle"));
        }
        return Cocycle::constant_step(fiber, base, step);
    }
    if (starts_with(c, "torus-exp:")) {
        if (!cfg.fiber.empty() && cfg.fiber != "T")
            throw ConfigError(0, "cocycle: torus-exp lives on the fiber T");
        std::int64_t k = parse_int(std::string_view(c).substr(10), 0, "cocycle");
        const auto* rot = std::get_if<RotationSystem>(&base);
        if (!rot) throw ConfigError(0, "cocycle: torus-exp needs a rotation base");
        return Cocycle::torus_exponential(k, *rot);
    }
    throw ConfigError(0, "cocycle: unknown id '" + c + "' (expected constant:<v> or torus-exp:<k>)");
}

inline DynamicalSystem build_system(const ExperimentConfig& cfg) {
    if (cfg.system != "skew") return build_base(cfg);
    Group fiber = build_fiber(cfg);
    DynamicalSystem base = build_base(cfg);
    return DynamicalSystem::skew(build_cocycle(cfg, fiber, base.base));
}

inline Observable build_observable(const std::string& desc, const Group* fiber) {
    if (desc == "one") return obs_one();
    if (starts_with(desc, "exp:")) {
        std::vector<std::int64_t> k;
        for (const auto& item : split_list(std::string_view(desc).substr(4)))
            k.push_back(parse_int(item, 0, "observable"));
        if (k.empty()) throw ConfigError(0, "observable: exp needs at least one frequency");
        return obs_exp(std::move(k));
    }
    if (starts_with(desc, "coord:"))
        return obs_coord(parse_uint(std::string_view(desc).substr(6), 0, "observable"));
    if (starts_with(desc, "fiberchar:")) {
        if (!fiber) throw ConfigError(0, "observable: fiberchar needs a fiber group");
        return obs_fiber_char(parse_int(std::string_view(desc).substr(10), 0, "observable"), *fiber);
    }
    if (starts_with(desc, "expfiber:")) {
        auto parts = split_list(std::string_view(desc).substr(9));
        if (parts.size() != 2) throw ConfigError(0, "observable: expfiber needs 'k,l'");
        return obs_exp_fiber(parse_int(parts[0], 0, "observable"), parse_int(parts[1], 0, "observable"));
    }
    throw ConfigError(0, "observable: unknown id '" + desc + "'");
}

inline SubshiftPoint parse_subshift_token(const std::string& tok) {
    if (tok == "inf+") return SubshiftPoint::at_infinity(+1);
    if (tok == "inf-") return SubshiftPoint::at_infinity(-1);
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
        throw ConfigError(0, "samples: subshift entry must look like +3, -1 or inf+");
    int sign = tok[0] == '+' ? +1 : -1;
    std::uint64_t idx = parse_uint(std::string_view(tok).substr(1), 0, "samples");
    return SubshiftPoint(sign, idx);
}

// Sample-set grammar: uniform:<count> | torus:<x,...> | subshift:<+i,...> |
// product:<base;fiber,...>. Points are drawn for the system handed in, so
// skew commands that average over the base pass the base system here.
inline std::vector<StatePoint> build_samples(const ExperimentConfig& cfg, const DynamicalSystem& sys) {
    const std::string& s = cfg.samples;
    std::vector<StatePoint> out;
    if (starts_with(s, "uniform:")) {
        std::uint64_t count = parse_uint(std::string_view(s).substr(8), 0, "samples");
        if (count == 0) throw ConfigError(0, "samples: uniform count must be >= 1");
        std::mt19937_64 rng(cfg.seed);
        for (std::uint64_t i = 0; i < count; ++i) out.push_back(system_sample(sys, rng));
        return out;
    }
    if (starts_with(s, "torus:")) {
        for (const auto& item : split_list(std::string_view(s).substr(6)))
            out.push_back(TorusPoint::scalar(parse_double(item, 0, "samples")));
    } else if (starts_with(s, "subshift:")) {
        for (const auto& item : split_list(std::string_view(s).substr(9)))
            out.push_back(parse_subshift_token(item));
    } else if (starts_with(s, "product:")) {
        if (sys.kind != SystemKind::skew) throw ConfigError(0, "samples: product points need a skew system");
        const bool rot_base = std::holds_alternative<RotationSystem>(sys.base);
        const bool finite_fiber = group_is_finite(sys.fiber());
        for (const auto& item : split_list(std::string_view(s).substr(8))) {
            auto halves = split_list(item, ';');
            if (halves.size() != 2) throw ConfigError(0, "samples: product entry must look like x;w");
            StatePoint base = rot_base ? StatePoint(TorusPoint::scalar(parse_double(halves[0], 0, "samples")))
                                       : StatePoint(parse_subshift_token(halves[0]));
            GroupElement w = GroupElement::torus_el(0.0);
            if (finite_fiber) {
                std::uint64_t idx = parse_uint(halves[1], 0, "samples");
                if (idx >= group_finite(sys.fiber()).order)
                    throw ConfigError(0, "samples: fiber element index out of range");
                w = GroupElement::finite_el(static_cast<std::uint32_t>(idx));
            } else {
                w = GroupElement::torus_el(parse_double(halves[1], 0, "samples"));
            }
            out.push_back(make_product(base, w));
        }
    } else {
        throw ConfigError(0, "samples: unknown id '" + s + "'");
    }
    if (out.empty()) throw ConfigError(0, "samples: empty sample set");
    return out;
}

inline void require_windows(const ExperimentConfig& cfg) {
    if (cfg.windows.empty()) throw ConfigError(0, "windows: required for this command");
}

// Shared AverageResult table: one row per (window, sample).
inline void avg_header(CsvWriter& w) {
    w.field("system_id");
    w.field("observable");
    w.field("theta");
    w.field("n");
    w.field("sample_id");
    w.field("re");
    w.field("im");
    w.field("sup_norm");
    w.endrow();
}

inline void avg_rows(CsvWriter& w, NumericGuard& guard, const std::string& sys_id, const std::string& obs,
                     double theta, const AverageResult& r, const std::vector<StatePoint>& samples) {
    for (std::size_t si = 0; si < samples.size(); ++si) {
        w.field(sys_id);
        w.field(obs);
        w.field(guard(theta));
        w.field(r.window);
        w.field(std::string_view(state_id(samples[si])));
        w.field(guard(r.values[si](0).real()));
        w.field(guard(r.values[si](0).imag()));
        w.field(guard(r.sup_norm));
        w.endrow();
    }
}

inline std::string verdict_line(const std::string& subject, Verdict v, const std::string& detail) {
    std::string head;
    switch (v) {
        case Verdict::supported: head = subject + ": supported"; break;
        case Verdict::refuted: head = subject + ": REFUTED"; break;
        case Verdict::inconclusive: head = subject + ": inconclusive"; break;
    }
    return head + (detail.empty() ? "" : " (" + detail + ")") + "\n";
}

inline RunOutput cmd_avg(const ExperimentConfig& cfg) {
    require_windows(cfg);
    DynamicalSystem sys = build_system(cfg);
    const Group* fiber = sys.kind == SystemKind::skew ? &sys.fiber() : nullptr;
    Observable f = build_observable(cfg.observable, fiber);
    if (f.dim != 1) throw ConfigError(0, "observable: avg expects a scalar observable");
    const double theta = cfg.theta ? frac(*cfg.theta) : 0.0;
    std::vector<StatePoint> samples = build_samples(cfg, sys);

    auto res = average_windows(sys, f, Character({theta}), cfg.windows, samples);

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    avg_header(w);
    for (const auto& r : res) avg_rows(w, guard, sys.id, f.descriptor, theta, r, samples);
    out.csv = w.str();

    std::ostringstream sum;
    sum << "avg: " << sys.id << ", f = " << f.descriptor << ", theta = " << format_double(theta) << ", "
        << samples.size() << " sample(s)\n";
    for (const auto& r : res)
        sum << "  n = " << r.window << ": sup |A_n f| = " << format_double(r.sup_norm) << "\n";
    if (res.size() >= 2) {
        double resid = 0.0;
        for (std::size_t si = 0; si < samples.size(); ++si)
            resid = std::max(resid, (res.back().values[si] - res[res.size() - 2].values[si]).norm());
        sum << verdict_line("cauchy-convergence", resid <= cfg.tolerance ? Verdict::supported : Verdict::inconclusive,
                            "last-window residual " + format_double(resid) + " vs tolerance " +
                                format_double(cfg.tolerance));
    }
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite value in avg results"};
    return out;
}

inline RunOutput cmd_ww_scan(const ExperimentConfig& cfg) {
    require_windows(cfg);
    if (!cfg.theta_lo || !cfg.theta_hi || !cfg.theta_steps)
        throw ConfigError(0, "ww-scan needs theta_lo, theta_hi and theta_steps");
    DynamicalSystem sys = build_base(cfg);
    Observable f = build_observable(cfg.observable, nullptr);
    if (f.dim != 1) throw ConfigError(0, "observable: ww-scan expects a scalar observable");
    std::vector<StatePoint> samples = build_samples(cfg, sys);
    auto grid = character_grid(*cfg.theta_lo, *cfg.theta_hi, static_cast<std::uint32_t>(*cfg.theta_steps));
    FolnerBox box(cfg.windows.back(), 1);

    WwScanResult scan = ww_scan(sys, f, grid, box, samples, static_cast<unsigned>(cfg.threads));

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    avg_header(w);
    double arg_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = scan.per_character[i];
        if (r.sup_norm == scan.overall_max) arg_max = grid[i].angles[0];
        avg_rows(w, guard, sys.id, f.descriptor, grid[i].angles[0], r, samples);
    }
    out.csv = w.str();

    std::ostringstream sum;
    sum << "ww-scan: " << sys.id << ", f = " << f.descriptor << ", " << grid.size() << " characters, n = "
        << box.n << "\n";
    sum << "  max sup-norm over the grid = " << format_double(scan.overall_max) << " at theta = "
        << format_double(arg_max) << "\n";
    sum << verdict_line("uniform-decay", scan.overall_max <= cfg.tolerance ? Verdict::supported : Verdict::inconclusive,
                        "max " + format_double(scan.overall_max) + " vs tolerance " + format_double(cfg.tolerance));
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite value in ww-scan results"};
    return out;
}

inline RunOutput cmd_cocycle_check(const ExperimentConfig& cfg) {
    Group fiber = build_fiber(cfg);
    DynamicalSystem base = build_base(cfg);
    Cocycle gamma = build_cocycle(cfg, fiber, base.base);
    if (cfg.trials == 0) throw ConfigError(0, "trials must be >= 1");

    CocycleCheckReport rep = cocycle_check(gamma, cfg.trials, cfg.seed, cfg.gmax);

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    w.field("cocycle");
    w.field("trials");
    w.field("gmax");
    w.field("max_deviation");
    w.field("worst_g1");
    w.field("worst_g2");
    w.field("worst_sample");
    w.endrow();
    w.field(std::string_view(gamma.describe()));
    w.field(rep.trials);
    w.field(cfg.gmax);
    w.field(guard(rep.max_deviation));
    w.field(rep.worst_g1);
    w.field(rep.worst_g2);
    w.field(std::string_view(rep.worst_sample));
    w.endrow();
    out.csv = w.str();

    std::ostringstream sum;
    sum << "cocycle-check: " << gamma.describe() << ", " << rep.trials << " trials, g <= " << cfg.gmax << "\n";
    const bool ok = rep.max_deviation <= cfg.tolerance;
    sum << verdict_line("cocycle-equation", ok ? Verdict::supported : Verdict::refuted,
                        "max deviation " + format_double(rep.max_deviation) +
                            (ok ? "" : " at g1=" + std::to_string(rep.worst_g1) + ", g2=" +
                                           std::to_string(rep.worst_g2) + ", x=" + rep.worst_sample));
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite deviation in cocycle-check"};
    return out;
}

inline RunOutput cmd_skew_ergodicity(const ExperimentConfig& cfg) {
    require_windows(cfg);
    DynamicalSystem base = build_base(cfg);  // honors the declared base system
    Group fiber = build_fiber(cfg);
    DynamicalSystem sys = DynamicalSystem::skew(build_cocycle(cfg, fiber, base.base));
    std::vector<Observable> probes;
    for (const auto& p : cfg.probes) {
        if (starts_with(p, "fiberchar:") || starts_with(p, "expfiber:"))
            throw ConfigError(0, "probes: must be base observables (one, exp:k or coord:n)");
        probes.push_back(build_observable(p, nullptr));
    }
    std::vector<StatePoint> samples = build_samples(cfg, base);
    FolnerBox box(cfg.windows.back(), 1);

    ErgodicityReport rep = mean_ergodicity_verdict(sys, probes, box, samples, cfg.tolerance, cfg.max_torus_k);

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    w.field("irrep");
    w.field("dim");
    w.field("probe");
    w.field("probe_residual");
    w.field("est_fixed_dim");
    w.field("max_residual");
    w.field("converged");
    w.field("continuity_ok");
    w.field("worst_jump");
    w.endrow();
    for (const auto& rec : rep.irreps) {
        for (std::size_t p = 0; p < rec.probe_labels.size(); ++p) {
            w.field(std::string_view(rec.label));
            w.field(rec.dim);
            w.field(std::string_view(rec.probe_labels[p]));
            w.field(guard(rec.probe_residuals[p]));
            w.field(static_cast<std::uint64_t>(rec.est_fixed_dim));
            w.field(guard(rec.max_residual));
            w.field(rec.converged ? 1 : 0);
            w.field(rec.continuity_ok ? 1 : 0);
            w.field(guard(rec.worst_jump));
            w.endrow();
        }
    }
    out.csv = w.str();

    std::ostringstream sum;
    sum << "skew-ergodicity: " << sys.id << ", n = " << box.n << ", " << samples.size()
        << " base sample(s), tolerance " << format_double(cfg.tolerance) << "\n";
    for (const auto& rec : rep.irreps)
        sum << "  irrep " << rec.label << " (dim " << rec.dim << "): est fixed dim " << rec.est_fixed_dim
            << ", max residual " << format_double(rec.max_residual) << ", worst jump "
            << format_double(rec.worst_jump) << "\n";
    sum << verdict_line("ergodicity", rep.ergodic, "");
    sum << verdict_line("mean-ergodicity", rep.mean_ergodic, "");
    if (!rep.notes.empty()) sum << "  note: " << rep.notes << "\n";
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite value in skew-ergodicity results"};
    return out;
}

inline RunOutput cmd_unique_ergodicity(const ExperimentConfig& cfg) {
    require_windows(cfg);
    DynamicalSystem sys = build_system(cfg);
    const Group* fiber = sys.kind == SystemKind::skew ? &sys.fiber() : nullptr;
    Observable f = build_observable(cfg.observable, fiber);
    if (f.dim != 1) throw ConfigError(0, "observable: unique-ergodicity expects a scalar observable");
    if (cfg.starts < 2) throw ConfigError(0, "starts must be >= 2");
    FolnerBox box(cfg.windows.back(), 1);

    UniqueErgodicityReport rep =
        unique_ergodicity_probe(sys, f, box, static_cast<std::uint32_t>(cfg.starts), cfg.seed);

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    w.field("system_id");
    w.field("observable");
    w.field("n");
    w.field("start_id");
    w.field("re");
    w.field("im");
    w.field("spread");
    w.endrow();
    for (std::size_t si = 0; si < rep.starts.size(); ++si) {
        w.field(sys.id);
        w.field(f.descriptor);
        w.field(box.n);
        w.field(std::string_view(state_id(rep.starts[si])));
        w.field(guard(rep.averages[si](0).real()));
        w.field(guard(rep.averages[si](0).imag()));
        w.field(guard(rep.spread));
        w.endrow();
    }
    out.csv = w.str();

    std::ostringstream sum;
    sum << "unique-ergodicity: " << sys.id << ", f = " << f.descriptor << ", " << rep.starts.size()
        << " starts, n = " << box.n << "\n";
    sum << verdict_line("unique-ergodicity", rep.spread <= cfg.tolerance ? Verdict::supported : Verdict::refuted,
                        "start-average spread " + format_double(rep.spread) + " vs tolerance " +
                            format_double(cfg.tolerance));
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite value in unique-ergodicity results"};
    return out;
}

// Reproduces the counterexample at desk scale: plain averages of the first
// coordinate converge to 0 uniformly on {±x^(i) : i <= 100}, while the
// (-1)^n-twisted averages separate a pair of metrically indistinguishable
// points, so the twisted family has no continuous limit.
inline RunOutput cmd_derndinger_demo(const ExperimentConfig& cfg) {
    const std::uint64_t n = cfg.windows.empty() ? 10000 : cfg.windows.back();
    DynamicalSystem sys = DynamicalSystem::derndinger();
    Observable f = obs_coord(1);

    std::vector<StatePoint> fan;
    for (std::uint64_t i = 1; i <= 100; ++i) {
        fan.push_back(SubshiftPoint(+1, i));
        fan.push_back(SubshiftPoint(-1, i));
    }
    const StatePoint deep(SubshiftPoint(+1, 100));
    const StatePoint alias(SubshiftPoint(-1, 1));
    const std::vector<StatePoint> pair_pts{deep, alias};
    const double metric = subshift_metric(deep.subshift(), alias.subshift());

    const Character plain = Character::trivial(1);
    const Character twist({0.5});
    const std::vector<std::uint64_t> two_windows{n, 2 * n};

    auto plain_fan = average_windows(sys, f, plain, two_windows, fan);
    auto plain_pair = average_windows(sys, f, plain, two_windows, pair_pts);
    auto twist_pair = average_windows(sys, f, twist, two_windows, pair_pts);

    double plain_resid = 0.0, plain_jump = 0.0;
    for (std::size_t si = 0; si < fan.size(); ++si)
        plain_resid = std::max(plain_resid, (plain_fan[1].values[si] - plain_fan[0].values[si]).norm());
    plain_jump = (plain_pair[0].values[0] - plain_pair[0].values[1]).norm();
    const double twist_gap = (twist_pair[0].values[0] - twist_pair[0].values[1]).norm();
    const double twist_resid = (twist_pair[1].values[0] - twist_pair[0].values[0]).norm();

    RunOutput out;
    CsvWriter w;
    NumericGuard guard;
    w.field("quantity");
    w.field("value");
    w.endrow();
    auto row = [&](std::string_view q, double v) {
        w.field(q);
        w.field(guard(v));
        w.endrow();
    };
    row("n", static_cast<double>(n));
    row("plain_sup", plain_fan[0].sup_norm);
    row("plain_residual", plain_resid);
    row("plain_pair_jump", plain_jump);
    row("twisted_deep_re", twist_pair[0].values[0](0).real());
    row("twisted_alias_re", twist_pair[0].values[1](0).real());
    row("twisted_gap", twist_gap);
    row("twisted_residual", twist_resid);
    row("pair_metric", metric);
    out.csv = w.str();

    const double tol = cfg.tolerance;
    const bool plain_ok = plain_resid <= tol && plain_jump <= 10.0 * tol;
    const bool twist_refuted = twist_gap > 10.0 * tol && metric < close_pair_eps;

    std::ostringstream sum;
    sum << "derndinger-demo: n = " << n << ", f = first coordinate, samples {±x^(i) : i <= 100}\n";
    sum << "  untwisted sup-residual = " << format_double(plain_fan[0].sup_norm) << " (limit 0)\n";
    sum << "  twisted pair: A_n f(x^(100)) = " << format_double(twist_pair[0].values[0](0).real())
        << ", A_n f(-x^(1)) = " << format_double(twist_pair[0].values[1](0).real()) << "\n";
    sum << "  twisted gap = " << format_double(twist_gap) << " across metric distance "
        << format_double(metric) << "\n";
    sum << (plain_ok ? "S: mean-ergodic (supported)\n" : "S: mean-ergodic (inconclusive)\n");
    sum << (twist_refuted ? "-S: NOT mean-ergodic (refuted by continuity jump)\n"
                          : "-S: mean-ergodic (inconclusive)\n");
    out.summary = sum.str();
    if (guard.bad) return {3, "", "numerical failure: non-finite value in derndinger-demo results"};
    return out;
}

}  // namespace detail

inline RunOutput run_experiment(const ExperimentConfig& cfg) {
    try {
        if (cfg.command == "avg") return detail::cmd_avg(cfg);
        if (cfg.command == "ww-scan") return detail::cmd_ww_scan(cfg);
        if (cfg.command == "cocycle-check") return detail::cmd_cocycle_check(cfg);
        if (cfg.command == "skew-ergodicity") return detail::cmd_skew_ergodicity(cfg);
        if (cfg.command == "unique-ergodicity") return detail::cmd_unique_ergodicity(cfg);
        if (cfg.command == "derndinger-demo") return detail::cmd_derndinger_demo(cfg);
        throw ConfigError(0, cfg.command.empty() ? "command: required (config key or CLI subcommand)"
                                                 : "unknown command '" + cfg.command + "'");
    } catch (const std::exception& e) {
        return {2, "", std::string(e.what())};
    }
}

}  // namespace ergolab
