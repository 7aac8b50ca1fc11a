#include "kone/kone.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace kone;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows)
{
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

Vector vec(std::initializer_list<double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out[i++] = x;
    }
    return out;
}

Matrix rotated(double deg, const Matrix& d)
{
    const double t = deg * std::numbers::pi / 180.0;
    const Matrix r = mat({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}});
    return r * d * r.transpose();
}

MatrixFamily example8()
{
    return MatrixFamily({mat({{0, 1, 1}, {0, 1, 1}, {-1, 1, 0}}), mat({{-1, 0, 0}, {0, 1, 1}, {0, 1, 0}})});
}

MatrixFamily fig1()
{
    return MatrixFamily({mat({{2, 3, 6}, {4, 1, 8}, {0, 0, 14}}),
                         mat({{-1, -1, 0}, {1, -1, 0}, {0, 0, 1.4142135623730951}})});
}

MatrixFamily boolean_root10()
{
    return MatrixFamily({mat({{1, 1, 0}, {1, 1, 1}, {1, 0, 1}}), mat({{1, 1, 1}, {0, 0, 1}, {1, 0, 0}})});
}

MatrixFamily boolean_seven()
{
    return MatrixFamily({mat({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}), mat({{1, 1, 1}, {1, 0, 1}, {0, 0, 0}})});
}

/// Obtuse eigen-directions make every pair of invariant cones disjoint.
MatrixFamily disjoint_pair()
{
    const Matrix d = mat({{2, 0}, {0, -1}});
    return MatrixFamily({rotated(10, d), rotated(-100, d)});
}

MatrixFamily positive_pair()
{
    return MatrixFamily({mat({{2, 1, 1}, {1, 3, 1}, {1, 1, 1}}), mat({{1, 2, 1}, {1, 1, 1}, {3, 1, 2}})});
}

const std::vector<Vector> kmin8{vec({1, 1, 1}), vec({1, 1, 0}), vec({-1, 2, 1}), vec({-1, 1, 1})};

bool contains_cone(const GeneratorCone& outer, const GeneratorCone& inner, const Tolerances& tol)
{
    for (int i = 0; i < inner.size(); ++i) {
        if (!covers(outer, inner.generator(i), tol)) {
            return false;
        }
    }
    return true;
}

bool same_rays(const GeneratorCone& k, const std::vector<Vector>& rays, double eps)
{
    if (k.size() != static_cast<int>(rays.size())) {
        return false;
    }
    for (const auto& r : rays) {
        bool hit = false;
        for (int i = 0; i < k.size(); ++i) {
            hit = hit || oracle::ray_distance(k.generator(i), r) <= eps;
        }
        if (!hit) {
            return false;
        }
    }
    return true;
}

} // namespace

// ---- irreducibility -------------------------------------------------------

TEST(Irreducibility, Examples)
{
    const Tolerances tol;
    const auto diag = irreducibility_check(MatrixFamily({mat({{1, 0}, {0, 2}}), mat({{3, 0}, {0, 4}})}), tol);
    EXPECT_FALSE(diag.irreducible());
    EXPECT_EQ(diag.algebra_dim, 2);
    const auto e8 = irreducibility_check(example8(), tol);
    EXPECT_TRUE(e8.irreducible());
    EXPECT_EQ(e8.algebra_dim, 9);
    const double q = std::numbers::pi / 4;
    const Matrix r45 = mat({{std::cos(q), -std::sin(q)}, {std::sin(q), std::cos(q)}});
    const auto rot = irreducibility_check(MatrixFamily({r45}), tol);
    EXPECT_FALSE(rot.irreducible());
    EXPECT_EQ(rot.algebra_dim, 2);
}

// ---- direct ---------------------------------------------------------------

TEST(Direct, PositiveMatrixWithPerronSeedGivesNoVerdict)
{
    const Tolerances tol;
    const Matrix a = mat({{2, 1, 1}, {1, 3, 1}, {1, 1, 1}});
    DirectOptions opt;
    opt.budget = 50;
    opt.seed = std::get<PerronData>(leading_eigenpair(a, tol)).right_vector;
    const DirectResult r = direct_algorithm(MatrixFamily({a}), opt, tol);
    EXPECT_TRUE(std::holds_alternative<Inconclusive>(r.outcome));
    for (const auto& k : r.trace) {
        EXPECT_GE(k.matrix().minCoeff(), -1e-12);
    }
}

TEST(Direct, PositivePairStaysInOrthant)
{
    // Closure here is numerical: late images fall inside the cone within lp_feas.
    const Tolerances tol;
    DirectOptions opt;
    opt.budget = 50;
    const DirectResult r = direct_algorithm(positive_pair(), opt, tol);
    EXPECT_FALSE(std::holds_alternative<NoInvariantCone>(r.outcome));
    if (std::holds_alternative<ConeFound>(r.outcome)) {
        EXPECT_TRUE(verify_certificate(positive_pair(), r.outcome, tol).ok);
    }
    for (const auto& k : r.trace) {
        EXPECT_GE(k.matrix().minCoeff(), -1e-12);
    }
}

TEST(Direct, Fig1TraceIsNestedAndGrows)
{
    const Tolerances tol;
    DirectOptions opt;
    opt.budget = 50;
    const DirectResult r = direct_algorithm(fig1(), opt, tol);
    ASSERT_TRUE(std::holds_alternative<Inconclusive>(r.outcome));
    ASSERT_EQ(r.trace.size(), 51U);
    for (std::size_t j = 1; j < r.trace.size(); ++j) {
        EXPECT_TRUE(contains_cone(r.trace[j], r.trace[j - 1], tol)) << "step " << j;
        EXPECT_FALSE(contains_cone(r.trace[j - 1], r.trace[j], tol)) << "step " << j;
    }
    // Full dimension within d - 1 iterations.
    EXPECT_EQ(cone_dimension(r.trace[2]), 3);
}

TEST(Direct, SingularFamilyMayHalt)
{
    DirectOptions opt;
    opt.seed = vec({1, 1});
    EXPECT_NO_THROW(direct_algorithm(MatrixFamily({mat({{0, 1}, {0, 0}})}), opt, {}));
}

TEST(Direct, RejectsBadOptions)
{
    DirectOptions opt;
    opt.budget = 0;
    EXPECT_THROW(direct_algorithm(example8(), opt, {}), Error);
    opt.budget = 5;
    opt.seed = vec({1, 1});
    EXPECT_THROW(direct_algorithm(example8(), opt, {}), DimensionMismatch);
}

// ---- primal-dual ----------------------------------------------------------

TEST(PrimalDual, DisjointPairGivesNegativePairing)
{
    const Tolerances tol;
    const MatrixFamily f = disjoint_pair();
    const Outcome o = primal_dual(f, {}, tol);
    const auto* no = std::get_if<NoInvariantCone>(&o);
    ASSERT_NE(no, nullptr);
    const auto* np = std::get_if<NegativePairing>(&no->witness);
    ASSERT_NE(np, nullptr);
    EXPECT_LT(np->value, -tol.sign_eps);
    EXPECT_TRUE(verify_certificate(f, o, tol).ok);
}

TEST(PrimalDual, Example8IsInconclusive)
{
    for (int budget : {1, 5, 50}) {
        PrimalDualOptions opt;
        opt.budget = budget;
        EXPECT_TRUE(std::holds_alternative<Inconclusive>(primal_dual(example8(), opt, {}))) << budget;
    }
}

TEST(PrimalDual, RepeatedMatrixHasNoObtusePair)
{
    const Matrix a = mat({{2, 1}, {1, 3}});
    EXPECT_FALSE(std::holds_alternative<NoInvariantCone>(primal_dual(MatrixFamily({a, a}), {}, {})));
}

TEST(PrimalDual, NoPerronMeanIsCertified)
{
    const Tolerances tol;
    const Matrix r = mat({{0, -1}, {1, 0}});
    const MatrixFamily f({r, r});
    const Outcome o = primal_dual(f, {}, tol);
    ASSERT_TRUE(std::holds_alternative<NoInvariantCone>(o));
    EXPECT_TRUE(verify_certificate(f, o, tol).ok);
}

TEST(PrimalDual, GeneratorCapEndsRun)
{
    PrimalDualOptions opt;
    opt.max_generators = 3;
    const Outcome o = primal_dual(fig1(), opt, {});
    ASSERT_TRUE(std::holds_alternative<Inconclusive>(o));
    EXPECT_NE(std::get<Inconclusive>(o).reason.find("cap"), std::string::npos);
}

TEST(PrimalDual, NeverContradictsACertifiedCone)
{
    const Tolerances tol;
    for (const auto& f : {example8(), positive_pair(), boolean_root10(), boolean_seven()}) {
        EXPECT_FALSE(std::holds_alternative<NoInvariantCone>(primal_dual(f, {}, tol)));
    }
}

// ---- polyhedral -----------------------------------------------------------

TEST(Polyhedral, PositiveMatrices)
{
    const Tolerances tol;
    const MatrixFamily f = positive_pair();
    PolyhedralOptions opt;
    opt.t = 1.5;
    const PolyhedralResult r = polyhedral_cone(f, opt, tol);
    ASSERT_TRUE(std::holds_alternative<ConeFound>(r.outcome));
    const auto& cf = std::get<ConeFound>(r.outcome);
    EXPECT_TRUE(verify_invariance(f, cf.cone, tol).ok);
    EXPECT_FALSE(is_full_space(cf.cone, tol));
    EXPECT_TRUE(is_pointed(cf.cone, tol));
}

TEST(Polyhedral, Example8ContainsMinimalCone)
{
    const Tolerances tol;
    PolyhedralOptions opt;
    opt.t = 1.5;
    const PolyhedralResult r = polyhedral_cone(example8(), opt, tol);
    ASSERT_TRUE(std::holds_alternative<ConeFound>(r.outcome));
    const GeneratorCone& k = std::get<ConeFound>(r.outcome).cone;
    for (const auto& g : kmin8) {
        EXPECT_TRUE(membership(g, k, MembershipMode::Boundary, tol));
    }
    EXPECT_TRUE(verify_certificate(example8(), r.outcome, tol).ok);
}

TEST(Polyhedral, Example8AtTwoLeavesTheHalfSpace)
{
    PolyhedralOptions opt;
    opt.t = 2.0;
    const PolyhedralResult r = polyhedral_cone(example8(), opt, {});
    ASSERT_TRUE(std::holds_alternative<Inconclusive>(r.outcome));
    EXPECT_NE(std::get<Inconclusive>(r.outcome).reason.find("half-space"), std::string::npos);
}

TEST(Polyhedral, ScaleOneFollowsDirectTrajectory)
{
    const Tolerances tol;
    PolyhedralOptions po;
    po.t = 1.0;
    po.budget = 4;
    po.record_trace = true;
    const PolyhedralResult p = polyhedral_cone(fig1(), po, tol);
    DirectOptions dopt;
    dopt.budget = 4;
    const DirectResult d = direct_algorithm(fig1(), dopt, tol);
    ASSERT_GE(p.trace.size(), 4U);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_TRUE(contains_cone(p.trace[j], d.trace[j], Tolerances{1e-9, 1e-7, 1e-8, 1e-10, 1e-8})) << j;
        EXPECT_TRUE(contains_cone(d.trace[j], p.trace[j], Tolerances{1e-9, 1e-7, 1e-8, 1e-10, 1e-8})) << j;
    }
}

TEST(Polyhedral, RejectsScaleBelowOne)
{
    PolyhedralOptions opt;
    opt.t = 0.5;
    EXPECT_THROW(polyhedral_cone(example8(), opt, {}), Error);
}

// ---- minimal / maximal ----------------------------------------------------

TEST(Minimal, Example8)
{
    const Tolerances tol;
    const MatrixFamily f = example8();
    const MinimalResult r = minimal_cone(f, {}, tol);
    const auto* mc = std::get_if<MinimalConeFound>(&r.outcome);
    ASSERT_NE(mc, nullptr);
    EXPECT_TRUE(same_rays(mc->cone, kmin8, 1e-6));
    EXPECT_TRUE(verify_certificate(f, r.outcome, tol).ok);

    // K_min = cone(A_1 K_min u A_2 K_min).
    GeneratorCone images(3);
    for (int i = 0; i < f.size(); ++i) {
        for (int g = 0; g < mc->cone.size(); ++g) {
            const Vector y = f[i] * mc->cone.generator(g);
            if (y.norm() > 1e-12) {
                images.append(y, tol);
            }
        }
    }
    EXPECT_TRUE(contains_cone(mc->cone, images, tol));
    EXPECT_TRUE(contains_cone(images, mc->cone, tol));
}

TEST(Minimal, BooleanRootOfLengthTen)
{
    const MinimalResult r = minimal_cone(boolean_root10(), {}, {});
    const auto* mc = std::get_if<MinimalConeFound>(&r.outcome);
    ASSERT_NE(mc, nullptr);
    ASSERT_EQ(mc->trees.size(), 1U);
    EXPECT_EQ(mc->trees[0].word.length(), 10);
    EXPECT_TRUE(same_rotation_class(mc->trees[0].word, Word::from_printed({1, 1, 2, 2, 1, 2, 2, 1, 2, 2})));
}

TEST(Minimal, BooleanSevenTrees)
{
    const MinimalResult r = minimal_cone(boolean_seven(), {}, {});
    const auto* mc = std::get_if<MinimalConeFound>(&r.outcome);
    ASSERT_NE(mc, nullptr);
    const std::vector<std::vector<int>> expected{{1}, {1, 1, 1, 2}, {1, 1, 2}, {1, 1, 2, 2}, {1, 2}, {1, 2, 2}, {2}};
    ASSERT_EQ(mc->trees.size(), expected.size());
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& t : mc->trees) {
            found = found || same_rotation_class(t.word, Word::from_printed(e));
        }
        EXPECT_TRUE(found) << format_word(Word::from_printed(e));
    }
}

TEST(Minimal, ContainedInPolyhedralAndMaximal)
{
    const Tolerances tol;
    const MatrixFamily f = example8();
    const auto kmin = std::get<MinimalConeFound>(minimal_cone(f, {}, tol).outcome).cone;
    PolyhedralOptions po;
    po.t = 1.5;
    const auto k = std::get<ConeFound>(polyhedral_cone(f, po, tol).outcome).cone;
    EXPECT_TRUE(contains_cone(k, kmin, tol));
    const MaximalResult mx = maximal_cone(f, {}, tol);
    ASSERT_TRUE(mx.cone.has_value());
    for (int g = 0; g < kmin.size(); ++g) {
        EXPECT_TRUE(mx.cone->contains(kmin.generator(g), 1e-8));
    }
}

TEST(Maximal, SymmetricFamilyIsSelfDual)
{
    const Tolerances tol;
    const MatrixFamily f({mat({{2, 1}, {1, 1}}), mat({{1, 1}, {1, 2}})});
    const MaximalResult mx = maximal_cone(f, {}, tol);
    ASSERT_TRUE(mx.cone.has_value());
    const auto kmin = std::get<MinimalConeFound>(minimal_cone(f, {}, tol).outcome).cone;
    EXPECT_TRUE(same_rays(kmin, mx.cone->normals, 1e-8));
}

TEST(Minimal, RejectsZeroBudget)
{
    MinimalOptions opt;
    opt.budget_words = 0;
    EXPECT_THROW(minimal_cone(example8(), opt, {}), Error);
}

// ---- certificates ---------------------------------------------------------

TEST(Certificate, TamperedPairingIsRejected)
{
    const Tolerances tol;
    const MatrixFamily f = disjoint_pair();
    Outcome o = primal_dual(f, {}, tol);
    auto& np = std::get<NegativePairing>(std::get<NoInvariantCone>(o).witness);
    np.primal.path = np.dual.path;
    np.primal.transposed = np.dual.transposed;
    EXPECT_FALSE(verify_certificate(f, o, tol).ok);
}

TEST(Certificate, TamperedConeIsRejected)
{
    const Tolerances tol;
    const MatrixFamily f = example8();
    Outcome o = minimal_cone(f, {}, tol).outcome;
    auto& mc = std::get<MinimalConeFound>(o);
    mc.cone.remove(0);
    EXPECT_FALSE(verify_certificate(f, o, tol).ok);
    Outcome wrong = NoInvariantCone{mc.certificate, "tampered"};
    EXPECT_FALSE(verify_certificate(f, wrong, tol).ok);
    EXPECT_FALSE(verify_certificate(f, Outcome{Inconclusive{}}, tol).ok);
}

TEST(Certificate, OrthantIsInvariantForBooleanPairs)
{
    const Tolerances tol;
    const GeneratorCone orth(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, tol);
    for (std::uint32_t code : {0x1234U, 0x3FFFFU, 0x15555U, 0x0F0F0U}) {
        const MatrixFamily f({detail::boolean_matrix(code & 0x1FFU), detail::boolean_matrix(code >> 9)});
        EXPECT_TRUE(verify_invariance(f, orth, tol).ok);
    }
}

// ---- io -------------------------------------------------------------------

TEST(Io, OutcomeRoundTrip)
{
    const Tolerances tol;
    OutcomeMetadata meta;
    meta.command = "test";
    meta.budgets["words"] = 200;
    const std::vector<std::pair<MatrixFamily, Outcome>> cases{
        {example8(), minimal_cone(example8(), {}, tol).outcome},
        {disjoint_pair(), primal_dual(disjoint_pair(), {}, tol)},
        {positive_pair(), polyhedral_cone(positive_pair(), {}, tol).outcome},
        {example8(), primal_dual(example8(), {}, tol)},
    };
    for (const auto& [f, o] : cases) {
        const Json j = outcome_to_json({o, meta});
        const OutcomeFile back = outcome_from_json(Json::parse(j.dump()), f.dim());
        EXPECT_EQ(outcome_to_json(back).dump(), j.dump());
        EXPECT_EQ(back.outcome.index(), o.index());
        if (is_definitive(o)) {
            EXPECT_TRUE(verify_certificate(f, back.outcome, back.metadata.tol).ok);
        }
        EXPECT_EQ(back.metadata.command, "test");
    }
}

TEST(Io, DoublesRoundTripExactly)
{
    const Vector v = vec({0.1, 1.0 / 3.0, 1.4142135623730951, -2.5e-300, 6.02214076e23});
    EXPECT_EQ(io::vector_from(Json::parse(io::to_json(v).dump())), v);
}

TEST(Io, FamilyFiles)
{
    const MatrixFamily f = fig1();
    const MatrixFamily g = family_from_json(Json::parse(family_to_json(f).dump()));
    ASSERT_EQ(g.size(), 2);
    EXPECT_EQ(g[1], f[1]);
    EXPECT_THROW(family_from_json(Json::parse(R"({"dim":2,"matrices":[]})")), ParseError);
    EXPECT_THROW(family_from_json(Json::parse(R"({"dim":3,"matrices":[[[1,0],[0,1]]]})")), DimensionMismatch);
    EXPECT_THROW(family_from_json(Json::parse(R"({"matrices":[[[1,0],[0,1]],[[1]]]})")), Error);
    EXPECT_THROW(outcome_from_json(Json::parse(R"({"verdict":"Maybe"})"), 2), ParseError);
}

// ---- cross-sections -------------------------------------------------------

TEST(Section, Example8CenterPlane)
{
    const Tolerances tol;
    const GeneratorCone k(3, kmin8, tol);
    const Vector c = default_center(k);
    const CrossSection cs = cross_section(k, SectionPlane::Center, c, 2, tol);
    ASSERT_EQ(cs.points.size(), 4U);
    EXPECT_EQ(cs.dropped, 0);
    for (const auto& p : cs.points) {
        EXPECT_NEAR(p.dot(c), 1.0, 1e-12);
    }
    // Angular order around the centroid makes a simple convex polygon.
    double area = 0.0;
    for (std::size_t i = 0; i < cs.coords.size(); ++i) {
        const auto& a = cs.coords[i];
        const auto& b = cs.coords[(i + 1) % cs.coords.size()];
        area += a[0] * b[1] - a[1] * b[0];
    }
    EXPECT_GT(area, 0.0);
}

TEST(Section, AxisPlaneDropsRaysOffThePlane)
{
    const Tolerances tol;
    const GeneratorCone k(3, kmin8, tol);
    const CrossSection cs = cross_section(k, SectionPlane::Axis, Vector(), 2, tol);
    EXPECT_EQ(cs.points.size(), 3U);
    EXPECT_EQ(cs.dropped, 1);
    for (const auto& p : cs.points) {
        EXPECT_NEAR(p[2], 1.0, 1e-12);
    }
    EXPECT_THROW(cross_section(GeneratorCone(2, {vec({1, 0})}, tol), SectionPlane::Axis, Vector(), 1, tol),
                 DimensionMismatch);
}

// ---- experiments ----------------------------------------------------------

TEST(Experiments, RandomPairStudyIsDeterministicAndVerified)
{
    ExperimentConfig cfg;
    cfg.dim = 2;
    cfg.trials = 30;
    cfg.seed = 3;
    const StudySummary a = random_pair_study(cfg);
    const StudySummary b = random_pair_study(cfg);
    EXPECT_EQ(a.total(), 30);
    EXPECT_NEAR(a.fraction(Verdict::NoCone) + a.fraction(Verdict::ConeFound) + a.fraction(Verdict::Unknown), 1.0,
                1e-12);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].verdict, b.records[i].verdict);
        EXPECT_EQ(a.records[i].method, b.records[i].method);
        if (a.records[i].verdict != Verdict::Unknown) {
            EXPECT_TRUE(verify_certificate(a.records[i].family, a.records[i].outcome, cfg.tol).ok);
        }
    }
    cfg.distribution = EntryDistribution::Uniform;
    EXPECT_THROW(random_pair_study(cfg), Error);
}

TEST(Experiments, LambdaSweepBracketIsCertified)
{
    ExperimentConfig cfg;
    cfg.dim = 3;
    cfg.distribution = EntryDistribution::Uniform;
    cfg.bisection_steps = 6;
    const LambdaSweep s = lambda_sweep(cfg);
    EXPECT_LT(s.lambda_minus, s.lambda_plus);
    EXPECT_TRUE(verify_certificate(s.family.shifted(s.lambda_minus), s.lower, cfg.tol).ok);
    EXPECT_TRUE(verify_certificate(s.family.shifted(s.lambda_plus), s.upper, cfg.tol).ok);
    EXPECT_TRUE(std::holds_alternative<NoInvariantCone>(s.upper));
    // The bracket never widens: every probe past the initial doubling lies inside it.
    EXPECT_EQ(s.probes.front().lambda, 0.0);
    EXPECT_EQ(s.probes.front().verdict, Verdict::ConeFound);
}

TEST(Experiments, BooleanSweepSmall)
{
    ExperimentConfig cfg;
    cfg.dim = 3;
    cfg.distribution = EntryDistribution::Boolean;
    cfg.trials = 20;
    const BooleanSummary s = boolean_sweep(cfg);
    EXPECT_EQ(s.pairs, 20);
    EXPECT_GE(s.successes, 1);
    EXPECT_LE(s.successes, 20);
    for (const auto& r : s.records) {
        if (r.verdict == Verdict::ConeFound) {
            EXPECT_TRUE(verify_certificate(r.family, r.outcome, cfg.tol).ok);
        }
    }
}

TEST(Experiments, ApplicationCheck)
{
    const Tolerances tol;
    const MatrixFamily f = example8();
    const GeneratorCone k(3, kmin8, tol);
    const std::vector<Vector> s{vec({1, 1, 0}), vec({-1, 1, 1}), vec({2, 2, 2}), vec({-2, 4, 2})};
    const ApplicationReport r = application_check(f, k, s, tol);
    EXPECT_TRUE(r.lower_spectral_radius_at_least_one);
    EXPECT_TRUE(r.non_mortal);
    EXPECT_TRUE(r.non_stabilisable);

    // s = k1 + k2 + k3 + k4 alone: A_1 s - s has x > y, which no point of K has.
    Vector sum = Vector::Zero(3);
    for (const auto& g : kmin8) {
        sum += g;
    }
    EXPECT_THROW(application_check(f, k, {sum}, tol), InvarianceFailed);
    EXPECT_THROW(application_check(f, k, {vec({1, 0, 0})}, tol), Error);
    EXPECT_THROW(application_check(f, k, {}, tol), Error);
}
