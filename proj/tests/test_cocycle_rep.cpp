#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <ergolab/systems.hpp>
#include <ergolab/twisted.hpp>

using namespace ergolab;

namespace {
const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

// Independent route to gamma(n, x) for the torus-exponential cocycle: the
// n-fold orbit product accumulated in C, never touching the triangular-number
// closed form used by the engine. Orbit points are formed one-shot per j so
// the position error stays O(eps) instead of the O(n eps) of a walked orbit.
cplx torus_exp_product(std::int64_t k, double alpha, double x, std::uint64_t n) {
    const double tau = 8.0 * std::atan(1.0);
    cplx acc(1.0, 0.0);
    for (std::uint64_t j = 0; j < n; ++j) {
        double xj = add_angle(x, frac_mul(alpha, j));
        acc *= std::polar(1.0, tau * static_cast<double>(k) * xj);
    }
    return acc;
}

std::vector<std::uint32_t> z4_corrupted_table() {
    std::vector<std::uint32_t> t(16);
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b) t[a * 4 + b] = (a + b) % 4;
    t[1 * 4 + 1] = 3;  // 1*1 should be 2
    return t;
}
}  // namespace

TEST_CASE("cocycle_eval pinned values") {
    // constant identity: gamma(g, x) = id for every g, x
    Cocycle id = Cocycle::constant_step(TorusGroup{}, DerndingerSystem{}, GroupElement::torus_el(0.0));
    REQUIRE(cocycle_eval(id, SemigroupElement::scalar(17), StatePoint(SubshiftPoint(+1, 5))).angle == 0.0);

    // torus-exponential k=1, n=2: gamma(2, x) = e^{2 pi i (2x + alpha)}
    const double alpha = 0.3, x = 0.15;
    Cocycle te = Cocycle::torus_exponential(1, RotationSystem(std::vector<double>{alpha}));
    GroupElement g2 = cocycle_eval(te, SemigroupElement::scalar(2), StatePoint(TorusPoint::scalar(x)));
    REQUIRE(std::abs(unit(g2.angle) - unit(frac(2.0 * x + alpha))) < 1e-12);
    // and as the two-step product gamma(1, x) gamma(1, phi x)
    double steps = add_angle(x, add_angle(x, alpha));
    REQUIRE(std::abs(unit(g2.angle) - unit(steps)) < 1e-12);

    // Z/2 with gamma(1, .) = the nonidentity element: parity of n
    Cocycle par = Cocycle::constant_step(FiniteGroup::cyclic(2), DerndingerSystem{}, GroupElement::finite_el(1));
    StatePoint p(SubshiftPoint(-1, 2));
    REQUIRE(cocycle_eval(par, SemigroupElement::scalar(3), p).idx == 1);
    REQUIRE(cocycle_eval(par, SemigroupElement::scalar(4), p).idx == 0);
    REQUIRE(cocycle_eval(par, SemigroupElement::scalar(0), p).idx == 0);

    // dyadic alpha keeps the closed form exact: alpha = 1/4, x = 0,
    // angle = (n(n-1)/2 mod 4) / 4
    Cocycle dy = Cocycle::torus_exponential(1, RotationSystem(std::vector<double>{0.25}));
    StatePoint zero(TorusPoint::scalar(0.0));
    REQUIRE(cocycle_eval(dy, SemigroupElement::scalar(3), zero).angle == 0.75);
    REQUIRE(cocycle_eval(dy, SemigroupElement::scalar(1000000), zero).angle == 0.0);

    REQUIRE_THROWS(cocycle_eval(te, SemigroupElement::zero(2), StatePoint(TorusPoint::scalar(0.0))));
}

TEST_CASE("torus-exponential closed form matches the orbit product up to n = 1e5") {
    for (std::int64_t k : {std::int64_t{1}, std::int64_t{2}, std::int64_t{-3}}) {
        for (double alpha : {golden, 0.3}) {
            Cocycle te = Cocycle::torus_exponential(k, RotationSystem(std::vector<double>{alpha}));
            for (double x : {0.0, 0.15}) {
                for (std::uint64_t n : {1ull, 2ull, 10ull, 1000ull, 100000ull}) {
                    GroupElement closed = cocycle_eval(te, SemigroupElement::scalar(n), StatePoint(TorusPoint::scalar(x)));
                    cplx oracle = torus_exp_product(k, alpha, x, n);
                    REQUIRE(std::abs(unit(closed.angle) - oracle) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("cocycle_check on built-in cocycles") {
    auto rot_g = RotationSystem(std::vector<double>{golden});

    auto r1 = cocycle_check(Cocycle::torus_exponential(1, rot_g), 1000, 7);
    REQUIRE(r1.trials == 1000);
    REQUIRE(r1.max_deviation <= 1e-10);

    auto r2 = cocycle_check(Cocycle::torus_exponential(2, RotationSystem(std::vector<double>{0.3})), 1000, 8);
    REQUIRE(r2.max_deviation <= 1e-10);

    auto rc = cocycle_check(
        Cocycle::constant_step(TorusGroup{}, rot_g, GroupElement::torus_el(0.3)), 1000, 9);
    REQUIRE(rc.max_deviation <= 1e-10);

    auto rid = cocycle_check(
        Cocycle::constant_step(TorusGroup{}, DerndingerSystem{}, GroupElement::torus_el(0.0)), 200, 10);
    REQUIRE(rid.max_deviation == 0.0);

    // table-backed fibers walk exactly: deviation is 0 or 1, and must be 0
    auto rz = cocycle_check(
        Cocycle::constant_step(FiniteGroup::cyclic(4), DerndingerSystem{}, GroupElement::finite_el(1)), 1000, 11);
    REQUIRE(rz.max_deviation == 0.0);

    auto rs = cocycle_check(
        Cocycle::constant_step(FiniteGroup::s3(), DerndingerSystem{}, GroupElement::finite_el(3)), 1000, 12);
    REQUIRE(rs.max_deviation == 0.0);
}

TEST_CASE("corrupted multiplication table is rejected and breaks the cocycle equation") {
    auto bad = z4_corrupted_table();
    REQUIRE_THROWS_WITH(FiniteGroup::checked("Z4", 4, bad), Catch::Matchers::ContainsSubstring("Latin"));

    FiniteGroup z4bad = FiniteGroup::unchecked("Z4*", 4, bad);
    Cocycle gamma = Cocycle::constant_step(z4bad, DerndingerSystem{}, GroupElement::finite_el(1));

    // (g1, g2) = (2, 2): gamma(4) = 1 but gamma(2)*gamma(2) = 3*3 = 2
    StatePoint p(SubshiftPoint(+1, 1));
    GroupElement lhs = cocycle_eval(gamma, SemigroupElement::scalar(4), p);
    GroupElement g2v = cocycle_eval(gamma, SemigroupElement::scalar(2), p);
    REQUIRE(lhs.idx != z4bad.mul(g2v.idx, g2v.idx));

    auto rep = cocycle_check(gamma, 1000, 13);
    REQUIRE(rep.max_deviation >= 0.1);
    REQUIRE(!rep.worst_sample.empty());
}

TEST_CASE("unitarity gate on matrices") {
    FiniteGroup s3 = FiniteGroup::s3();
    auto irreps = s3_irreps(s3);
    for (const auto& m : irreps[2].mats) {
        REQUIRE(unitarity_defect(m) <= 1e-14);
        REQUIRE_NOTHROW(UnitaryMatrix(m));
    }

    Cmat stretch = Cmat::Identity(2, 2);
    stretch(1, 1) = 2.0;
    REQUIRE(unitarity_defect(stretch) == 3.0);  // |2^2 - 1|
    REQUIRE_THROWS_WITH(UnitaryMatrix(stretch), Catch::Matchers::ContainsSubstring("unitarity"));

    Cmat shear = Cmat::Identity(2, 2);
    shear(1, 0) = 1.0;
    REQUIRE_THROWS(UnitaryMatrix(shear));
}

TEST_CASE("representation property and unitarity") {
    // finite groups: exhaustive over all pairs
    FiniteGroup z5 = FiniteGroup::cyclic(5);
    FiniteGroup s3 = FiniteGroup::s3();
    auto check_hom = [](const FiniteGroup& g, const Representation& pi) {
        for (std::uint32_t a = 0; a < g.order; ++a) {
            REQUIRE(unitarity_defect(pi.apply(GroupElement::finite_el(a))) <= 1e-12);
            for (std::uint32_t b = 0; b < g.order; ++b) {
                Cmat lhs = pi.apply(GroupElement::finite_el(g.mul(a, b)));
                Cmat rhs = pi.apply(GroupElement::finite_el(a)) * pi.apply(GroupElement::finite_el(b));
                REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    };
    for (const auto& pi : irrep_catalog(z5)) check_hom(z5, pi);
    for (const auto& pi : s3_irreps(s3)) check_hom(s3, pi);

    // torus characters: random pairs
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::int64_t k : {std::int64_t{-2}, std::int64_t{1}, std::int64_t{3}}) {
        Representation chi = torus_character(k);
        for (int t = 0; t < 1000; ++t) {
            GroupElement a = GroupElement::torus_el(u(rng)), b = GroupElement::torus_el(u(rng));
            Cmat lhs = chi.apply(g_mul(TorusGroup{}, a, b));
            Cmat rhs = chi.apply(a) * chi.apply(b);
            REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("twisted weights preserve the Euclidean norm") {
    FiniteGroup s3 = FiniteGroup::s3();
    Representation std2 = s3_irreps(s3)[2];
    Cocycle gamma = Cocycle::constant_step(s3, DerndingerSystem{}, GroupElement::finite_el(1));

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::uint64_t> gd(0, 30);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> idx(1, 64);
    for (int t = 0; t < 1000; ++t) {
        StatePoint x(SubshiftPoint(t % 2 == 0 ? +1 : -1, idx(rng)));
        Cmat m = std2.apply(cocycle_eval(gamma, SemigroupElement::scalar(gd(rng)), x));
        Cvec v(2);
        v << cplx(u(rng), u(rng)), cplx(u(rng), u(rng));
        REQUIRE(std::abs((m * v).norm() - v.norm()) <= 1e-10);
    }
}

TEST_CASE("matrix elements") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    Representation triv = finite_trivial(z4);
    auto t00 = matrix_element(triv, 0, 0);
    REQUIRE(t00(GroupElement::finite_el(3)) == cplx(1.0, 0.0));

    // chi_1 of Z/4 at the generator is i
    Representation chi1 = cyclic_character(z4, 1);
    REQUIRE(std::abs(matrix_element(chi1, 0, 0)(GroupElement::finite_el(1)) - cplx(0.0, 1.0)) < 1e-15);

    FiniteGroup s3 = FiniteGroup::s3();
    Representation std2 = s3_irreps(s3)[2];
    REQUIRE(matrix_element(std2, 0, 0)(GroupElement::finite_el(0)) == cplx(1.0, 0.0));
    // pi_ij(w) = <pi(w)e_i, e_j> picks the (j, i) entry
    const double s = std::sqrt(3.0) / 2.0;
    REQUIRE(matrix_element(std2, 0, 1)(GroupElement::finite_el(1)) == cplx(s, 0.0));
    REQUIRE(matrix_element(std2, 1, 0)(GroupElement::finite_el(1)) == cplx(-s, 0.0));

    REQUIRE_THROWS_WITH(matrix_element(std2, 2, 0), Catch::Matchers::ContainsSubstring("out of range"));
    REQUIRE_THROWS(matrix_element(std2, 0, -1));
}

TEST_CASE("matrix-element expansion reconstructs the twisted action") {
    FiniteGroup s3 = FiniteGroup::s3();
    Representation pi = s3_irreps(s3)[2];
    auto sh = DynamicalSystem::derndinger();
    Cocycle gamma = Cocycle::constant_step(s3, DerndingerSystem{}, GroupElement::finite_el(1));

    // F(x) in C^2 with both coordinates seeing the point
    Observable f = {2, "pair", [](const StatePoint& p) {
                        Cvec v(2);
                        v << cplx(static_cast<double>(subshift_coord(p.subshift(), 1)), 0.25),
                            cplx(0.5, static_cast<double>(subshift_coord(p.subshift(), 2)));
                        return v;
                    }};

    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::uint64_t> gd(0, 30);
    std::uniform_int_distribution<std::uint32_t> wd(0, 5);
    std::uniform_int_distribution<std::uint64_t> idx(1, 64);
    for (int t = 0; t < 300; ++t) {
        SemigroupElement g = SemigroupElement::scalar(gd(rng));
        StatePoint x(SubshiftPoint(t % 2 == 0 ? +1 : -1, idx(rng)));
        GroupElement w = GroupElement::finite_el(wd(rng));
        GroupElement gam = cocycle_eval(gamma, g, x);
        Cvec fx = f(act(sh, g, x));

        // sum_i sum_j f_i(gx) <pi(w gamma) e_i, e_j> e_j
        Cvec lhs = Cvec::Zero(2);
        GroupElement wg = g_mul(Group(s3), w, gam);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) lhs(j) += fx(i) * matrix_element(pi, i, j)(wg);

        Cvec rhs = pi.apply(w) * (pi.apply(gam) * fx);
        REQUIRE((lhs - rhs).norm() <= 1e-10);
    }
}

TEST_CASE("schur orthogonality") {
    FiniteGroup z5 = FiniteGroup::cyclic(5);
    auto haar5 = haar_points(Group(z5));

    // trivial representation: int |1|^2 = 1
    double mass = 0.0;
    for (const auto& [w, wt] : haar5) mass += wt;
    REQUIRE(std::abs(mass - 1.0) <= 1e-15);

    // chi_1 vs chi_2 over Z/5: geometric sum of fifth roots of unity
    Representation c1 = cyclic_character(z5, 1), c2 = cyclic_character(z5, 2);
    cplx ip = 0.0;
    for (const auto& [w, wt] : haar5) ip += wt * c1.apply(w)(0, 0) * std::conj(c2.apply(w)(0, 0));
    REQUIRE(std::abs(ip) <= 1e-15);

    // S3 2-dim irrep: int |pi_11|^2 = 1/2, exact six-term sum
    FiniteGroup s3 = FiniteGroup::s3();
    Representation std2 = s3_irreps(s3)[2];
    double sq = 0.0;
    for (std::uint32_t e = 0; e < 6; ++e) sq += std::norm(std2.apply(GroupElement::finite_el(e))(0, 0));
    REQUIRE(sq / 6.0 == 0.5);

    REQUIRE(schur_check(Group(z5), irrep_catalog(Group(z5))).max_deviation <= 1e-12);
    REQUIRE(schur_check(Group(s3), s3_irreps(s3)).max_deviation <= 1e-12);
    // truncated torus dual over the 2^10 Haar grid
    REQUIRE(schur_check(Group(TorusGroup{}), irrep_catalog(Group(TorusGroup{}), 3)).max_deviation <= 1e-12);
}

TEST_CASE("gram_schmidt examples") {
    Cvec e0(2), e1(2), v11(2), v20(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    v11 << 1.0, 1.0;
    v20 << 2.0, 0.0;

    auto basis = gram_schmidt({e0, v11});
    REQUIRE(basis.size() == 2);
    REQUIRE((basis[0] - e0).norm() <= 1e-15);
    REQUIRE((basis[1] - e1).norm() <= 1e-15);

    // already orthonormal: unchanged bitwise
    auto same = gram_schmidt({e0, e1});
    REQUIRE(same[0] == e0);
    REQUIRE(same[1] == e1);

    // collinear family has numerical rank 1
    REQUIRE(gram_schmidt({e0, v20}).size() == 1);

    // rank never exceeds the ambient dimension
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Cvec> many;
    for (int v = 0; v < 6; ++v) {
        Cvec w(3);
        for (int i = 0; i < 3; ++i) w(i) = cplx(u(rng), u(rng));
        many.push_back(w);
    }
    auto b3 = gram_schmidt(many);
    REQUIRE(b3.size() == 3);
    for (std::size_t i = 0; i < b3.size(); ++i)
        for (std::size_t j = 0; j < b3.size(); ++j) {
            cplx ip = b3[i].dot(b3[j]);
            REQUIRE(std::abs(ip - (i == j ? cplx(1.0) : cplx(0.0))) <= 1e-10);
        }
}

TEST_CASE("pointwise gram_schmidt flags the offending sample") {
    Cvec e0(2), v11(2), v20(2);
    e0 << 1.0, 0.0;
    v11 << 1.0, 1.0;
    v20 << 2.0, 0.0;

    auto frame = pointwise_gram_schmidt({{e0, v11}, {v11, e0}});
    REQUIRE(frame.dims == std::vector<std::size_t>{2, 2});
    REQUIRE(frame.max_dim == 2);
    for (const auto& basis : frame.orthonormal)
        REQUIRE(std::abs(basis[0].dot(basis[1])) <= 1e-12);

    REQUIRE_THROWS_WITH(pointwise_gram_schmidt({{e0, v11}, {e0, v20}}),
                        Catch::Matchers::ContainsSubstring("sample 1"));

    Cvec bad = v11;
    bad(0) = cplx(std::nan(""), 0.0);
    REQUIRE_THROWS_WITH(pointwise_gram_schmidt({{e0, bad}}),
                        Catch::Matchers::ContainsSubstring("sample 0"));
}

TEST_CASE("group file parsing") {
    const std::string z3 =
        "group Z3 3\n"
        "0 1 2\n"
        "1 2 0\n"
        "2 0 1\n";
    GroupFile gf = parse_group_text(z3);
    REQUIRE(gf.group.name == "Z3");
    REQUIRE(gf.group.order == 3);
    REQUIRE(gf.group.identity == 0);
    REQUIRE(gf.group.mul(1, 2) == 0);
    REQUIRE(gf.group.inv(1) == 2);
    REQUIRE(gf.irreps.empty());

    const std::string with_irrep = z3 +
                                   "irrep chi1 1\n"
                                   "1 0\n"
                                   "-0.5 0.86602540378443865\n"
                                   "-0.5 -0.86602540378443865\n";
    GroupFile gf2 = parse_group_text(with_irrep);
    REQUIRE(gf2.irreps.size() == 1);
    Representation chi = representation_from_raw(gf2.group, gf2.irreps[0]);
    REQUIRE(chi.dim == 1);
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b) {
            cplx lhs = chi.apply(GroupElement::finite_el(gf2.group.mul(a, b)))(0, 0);
            cplx rhs = chi.apply(GroupElement::finite_el(a))(0, 0) * chi.apply(GroupElement::finite_el(b))(0, 0);
            REQUIRE(std::abs(lhs - rhs) <= 1e-12);
        }

    REQUIRE_THROWS_WITH(parse_group_text("grp Z2 2\n0 1\n1 0\n"),
                        Catch::Matchers::ContainsSubstring("group"));
    REQUIRE_THROWS_WITH(parse_group_text("group Z2 2\n0 1\n1\n"),
                        Catch::Matchers::ContainsSubstring("table"));
    REQUIRE_THROWS_WITH(parse_group_text("group Z2 2\n0 1\n1 9\n"),
                        Catch::Matchers::ContainsSubstring("table"));
    REQUIRE_THROWS_WITH(parse_group_text("group Bad 2\n0 0\n0 0\n"),
                        Catch::Matchers::ContainsSubstring("Latin"));
    REQUIRE_THROWS_WITH(parse_group_text(z3 + "irrep x 0\n"),
                        Catch::Matchers::ContainsSubstring("irrep"));
    REQUIRE_THROWS_WITH(parse_group_text(z3 + "irrep x 1\n1 0\n"),
                        Catch::Matchers::ContainsSubstring("truncated"));

    const std::string nonunit = z3 + "irrep x 1\n0.5 0\n1 0\n1 0\n";
    GroupFile gf3 = parse_group_text(nonunit);
    REQUIRE_THROWS_WITH(representation_from_raw(gf3.group, gf3.irreps[0]),
                        Catch::Matchers::ContainsSubstring("non-unitary"));
}

TEST_CASE("twisted average with the identity twist reduces to the plain average") {
    auto rot = DynamicalSystem::rotation({0.3});
    Cocycle id = Cocycle::constant_step(TorusGroup{}, RotationSystem(std::vector<double>{0.3}),
                                        GroupElement::torus_el(0.0));
    std::vector<StatePoint> xs{StatePoint(TorusPoint::scalar(0.11)), StatePoint(TorusPoint::scalar(0.77))};
    Observable f = obs_exp(std::int64_t{1});

    auto tw = twisted_average(rot, f, id, std::nullopt, FolnerBox(500, 1), xs);
    auto pl = weighted_average(rot, f, Character::trivial(1), FolnerBox(500, 1), xs);
    for (std::size_t s = 0; s < xs.size(); ++s) {
        REQUIRE(tw.values[s](0).real() == pl.values[s](0).real());
        REQUIRE(tw.values[s](0).imag() == pl.values[s](0).imag());
    }
    REQUIRE(tw.sup_norm == pl.sup_norm);
}

TEST_CASE("twisted average pinned values") {
    // rotation by 1/2, torus-exponential twist, f = 1, x = 0, n = 4:
    // (1 + 1 + e^{pi i} + e^{3 pi i}) / 4 = 0
    auto rot = DynamicalSystem::rotation({0.5});
    Cocycle te = Cocycle::torus_exponential(1, RotationSystem(std::vector<double>{0.5}));
    std::vector<StatePoint> x0{StatePoint(TorusPoint::scalar(0.0))};

    auto a4 = twisted_average(rot, obs_one(), te, torus_character(1), FolnerBox(4, 1), x0);
    REQUIRE(std::abs(a4.values[0](0)) <= 1e-12);
    // absent representation defaults to the same k = 1 character
    auto a4n = twisted_average(rot, obs_one(), te, std::nullopt, FolnerBox(4, 1), x0);
    REQUIRE(a4n.values[0](0) == a4.values[0](0));

    // 2-dim irrep of S3 with a constant 3-cycle step: the n = 3 average is the
    // group average of a nontrivial irrep applied to e_1, which vanishes
    FiniteGroup s3 = FiniteGroup::s3();
    Representation std2 = s3_irreps(s3)[2];
    Cocycle rot3 = Cocycle::constant_step(s3, DerndingerSystem{}, GroupElement::finite_el(1));
    auto sh = DynamicalSystem::derndinger();
    std::vector<StatePoint> p{StatePoint(SubshiftPoint(+1, 7))};

    auto a3 = twisted_average(sh, obs_basis_vector(2, 0), rot3, std2, FolnerBox(3, 1), p);
    REQUIRE(a3.values[0].norm() <= 1e-15);
    REQUIRE(a3.visited_sup == 1.0);
    REQUIRE(a3.sup_norm <= a3.visited_sup);
}

TEST_CASE("twisted average rejects bad pairings") {
    FiniteGroup s3 = FiniteGroup::s3();
    Representation std2 = s3_irreps(s3)[2];
    Cocycle gamma = Cocycle::constant_step(s3, DerndingerSystem{}, GroupElement::finite_el(1));
    auto sh = DynamicalSystem::derndinger();
    std::vector<StatePoint> p{StatePoint(SubshiftPoint(+1, 1))};

    // observable dimension must match the twist dimension
    REQUIRE_THROWS_WITH(twisted_average(sh, obs_basis_vector(3, 0), gamma, std2, FolnerBox(4, 1), p),
                        Catch::Matchers::ContainsSubstring("dimension"));
    // a finite fiber cannot act on C^N without a representation
    REQUIRE_THROWS(twisted_average(sh, obs_one(), gamma, std::nullopt, FolnerBox(4, 1), p));
    // averaging runs over the base system, not a skew product
    auto skew = DynamicalSystem::skew(Cocycle::torus_exponential(1, RotationSystem(std::vector<double>{golden})));
    REQUIRE_THROWS(twisted_average(skew, obs_one(),
                                   Cocycle::torus_exponential(1, RotationSystem(std::vector<double>{golden})),
                                   std::nullopt, FolnerBox(4, 1), p));
}
