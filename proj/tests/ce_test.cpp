#include "mchom/ce.hpp"

#include <random>

#include "gtest/gtest.h"
#include "mchom/fixture.hpp"
#include "mchom/fixtures.hpp"

using namespace mchom;

namespace {

LInfinityAlgebra load(const char* text) { return load_algebra(text); }

int ceil_half_kplus1(int k) { return (k + 2) / 2; }  // ceil((k+1)/2)

}  // namespace

TEST(ChevalleyEilenberg, AbelianHasZeroDifferential) {
    LInfinityAlgebra g(GradedBasis({{"e", 0}, {"x", -1}}, Convention::homological), 2);
    auto ce = chevalley_eilenberg(g);
    ASSERT_EQ(ce.algebra->num_generators(), 2);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(ce.algebra->differential_of(i).is_zero());
    EXPECT_EQ(ce.order.stage, (std::vector<int>{1, 1}));
}

TEST(ChevalleyEilenberg, FreeOddYMatchesTheWorkedExample) {
    auto g = load(fixtures::free_odd_y);
    auto ce = chevalley_eilenberg(g);
    const FreeCDGA& A = *ce.algebra;
    ASSERT_EQ(A.num_generators(), 2);
    // stage order: a = dual of sy first, then b = dual of sz
    EXPECT_EQ(ce.gen_to_basis, (std::vector<int>{0, 1}));
    EXPECT_EQ(A.degree_of(0), 0);
    EXPECT_EQ(A.degree_of(1), -1);
    EXPECT_TRUE(A.differential_of(0).is_zero());
    // db = a^2 - a on the nose
    const Element expect = A.sub(A.power(A.gen(0), 2), A.gen(0));
    EXPECT_TRUE(A.equal(A.differential_of(1), expect));
    EXPECT_EQ(ce.order.stage, (std::vector<int>{1, 2}));
    // morphism solution set of the quadratic relation is {0, 1}
    for (int v = -3; v <= 3; ++v) {
        AlgebraMorphism<GroundField> phi;
        phi.source = &A;
        phi.target = &ground();
        phi.values = {ground().unit(Scalar(v)), ground().zero()};
        EXPECT_EQ(check_morphism(phi).ok, v == 0 || v == 1);
    }
}

TEST(ChevalleyEilenberg, HeisenbergDifferential) {
    auto g = load(fixtures::heisenberg);
    auto ce = chevalley_eilenberg(g);
    const FreeCDGA& A = *ce.algebra;
    ASSERT_EQ(A.num_generators(), 3);
    // order: ^se, ^sx at stage 1, ^sy at stage 2
    EXPECT_EQ(ce.gen_to_basis, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(A.differential_of(0).is_zero());
    EXPECT_TRUE(A.differential_of(1).is_zero());
    // d(^sy) = 2 ^se ^sx under the normalization rho = -2
    const Element expect = A.scale(A.multiply(A.gen(0), A.gen(1)), Scalar(2));
    EXPECT_TRUE(A.equal(A.differential_of(2), expect));
}

TEST(ChevalleyEilenberg, JacobiViolationRejectedNamingTheDualGenerator) {
    auto fx = parse_fixture(fixtures::jacobi_violation);
    auto g = fixture_to_algebra(fx);
    try {
        ce_jacobi_check(g);
        FAIL() << "expected the d^2 check to fail";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("^sw"), std::string::npos) << e.what();
    }
}

TEST(ChevalleyEilenberg, AutoTruncationOfPositiveDegrees) {
    auto g = load(fixtures::g1_part);
    auto ce = chevalley_eilenberg(g);
    ASSERT_NE(ce.truncated, nullptr);
    EXPECT_EQ(ce.g->dim(), 4);  // f dropped, (u, e, x, y) survive
    EXPECT_EQ(ce.algebra->num_generators(), 4);
}

TEST(ChevalleyEilenberg, NonNilpotentRejected) {
    auto g = load(fixtures::unbounded);
    EXPECT_THROW(chevalley_eilenberg(g), Error);
    EXPECT_THROW(ce_sullivan_filtration(g), Error);
}

TEST(ChevalleyEilenberg, TernaryStructureNormalization) {
    // arity 3 carries rho^2 = 4 and the triple-repeat multiset divides by
    // 3!: d(^sz) = -a + a^2 - (2/3) a^3 on the cubic fixture
    auto g = load(fixtures::cubic_y);
    auto ce = chevalley_eilenberg(g);
    const FreeCDGA& A = *ce.algebra;
    const Element a = A.gen(0);
    Element expect = A.sub(A.power(a, 2), a);
    expect = A.sub(expect, A.scale(A.power(a, 3), Scalar(2, 3)));
    EXPECT_TRUE(A.equal(A.differential_of(1), expect));
    // the only rational Maurer-Cartan point is 0 and the only morphism is
    // the augmentation; the correspondence still round-trips
    auto phi = mc_to_morphism(ce, {});
    EXPECT_TRUE(check_morphism(phi).ok);
    EXPECT_TRUE(morphism_to_mc(ce, phi).empty());
    EXPECT_THROW(mc_to_morphism(ce, {{0, Scalar(-2)}}), Error);
    // S_1 now lists all three structure maps
    EXPECT_EQ(ce.filtration.s_sets[0], (std::vector<std::string>{"l1", "l2", "l3"}));
}

TEST(ChevalleyEilenberg, ArityThreeCoherenceViolationRejected) {
    auto fx = parse_fixture(fixtures::cubic_violation);
    auto g = fixture_to_algebra(fx);
    try {
        ce_jacobi_check(g);
        FAIL() << "expected the d^2 check to fail";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("^sw"), std::string::npos) << e.what();
    }
}

TEST(CeSullivanFiltration, FreeOddYHandComputation) {
    auto g = load(fixtures::free_odd_y);
    auto rep = ce_sullivan_filtration(g);
    // F^1 = span{z}, F^2 = 0
    ASSERT_GE(rep.f_spans.size(), 2u);
    EXPECT_EQ(rep.f_spans[0].dim(), 1);
    EXPECT_TRUE(rep.f_spans[0].contains(sparse_to_vec({{1, Scalar(1)}}, 2)));
    EXPECT_EQ(rep.f_spans[1].dim(), 0);
    EXPECT_EQ(rep.vanishing_index, 2);
    // V(1) = span{a}: the dual of sy annihilates sF^1
    EXPECT_EQ(rep.dual_stage.stage, (std::vector<int>{1, 2}));
    const auto& v1 = rep.annihilator_bases[1];
    ASSERT_TRUE(v1.count(-1));
    EXPECT_EQ(v1.at(-1).size(), 1u);  // the y-functional of the degree -1 slice
    ASSERT_TRUE(v1.count(-2));
    EXPECT_TRUE(v1.at(-2).empty());  // nothing annihilates z
    // descriptors: S_1 = {l1, l2}; S_2 has one composite per (l_i, f) pair
    EXPECT_EQ(rep.s_sets[0], (std::vector<std::string>{"l1", "l2"}));
    EXPECT_EQ(rep.s_sets[1].size(), 4u);
}

TEST(CeSullivanFiltration, StageConditionAndGreedyCrossValidation) {
    for (const char* text : {fixtures::heisenberg, fixtures::free_odd_y, fixtures::nonabelian,
                             fixtures::heisenberg3, fixtures::filiform4, fixtures::g1_part}) {
        auto g = load(text);
        auto ce = chevalley_eilenberg(g);
        // emitted order satisfies the literal stage condition
        EXPECT_TRUE(check_stage_condition(*ce.algebra, ce.order));
        // d V(i) lands in the subalgebra generated by V(i-1)
        EXPECT_TRUE(verify_annihilator_stage_condition(ce));
        // the greedy saturation succeeds and sits pointwise below the
        // filtration stages (agreement up to stage refinement)
        auto greedy = sullivan_order(*ce.algebra);
        ASSERT_TRUE(greedy.ok);
        for (std::size_t i = 0; i < greedy.order.stage.size(); ++i)
            EXPECT_LE(greedy.order.stage[i], ce.order.stage[i]);
        EXPECT_TRUE(check_stage_condition(*ce.algebra, greedy.order));
    }
}

TEST(CeSullivanFiltration, FSpanInsideLowerCentralSeries) {
    for (const char* text : {fixtures::heisenberg, fixtures::free_odd_y, fixtures::nonabelian,
                             fixtures::heisenberg3, fixtures::filiform4, fixtures::g1_part}) {
        auto g = load(text);
        auto rep = ce_sullivan_filtration(g);
        auto gamma = lower_central_series(g);
        for (std::size_t k = 1; k <= rep.f_spans.size(); ++k) {
            const int gk = ceil_half_kplus1(static_cast<int>(k));
            EXPECT_TRUE(gamma.at(gk).contains_span(rep.f_spans[k - 1]))
                << text << " F^" << k << " not inside Gamma^" << gk;
        }
    }
}

TEST(McCorrespondence, FreeOddYRootsAndBijection) {
    auto g = load(fixtures::free_odd_y);
    auto ce = chevalley_eilenberg(g);
    // lambda = -2 maps to a |-> 1 under the -1/2 pairing
    auto phi = mc_to_morphism(ce, {{0, Scalar(-2)}});
    EXPECT_EQ(phi.values[0].value, Scalar(1));
    EXPECT_TRUE(check_morphism(phi).ok);
    auto back = morphism_to_mc(ce, phi);
    EXPECT_EQ(back, (SparseVec{{0, Scalar(-2)}}));
    // lambda = 0 maps to the augmentation
    auto aug = mc_to_morphism(ce, {});
    EXPECT_EQ(aug.values[0].value, Scalar(0));
    EXPECT_TRUE(morphism_to_mc(ce, aug).empty());
    // non-MC input rejected with its residual
    EXPECT_THROW(mc_to_morphism(ce, {{0, Scalar(1)}}), Error);
}

TEST(McCorrespondence, RecordedIdentification) {
    // the identification is a degree 0 graded map pairing each generator
    // with its dual suspended basis element through the fixed scalar
    auto g = load(fixtures::heisenberg);
    auto ce = chevalley_eilenberg(g);
    ASSERT_NE(ce.identification, nullptr);
    EXPECT_EQ(ce.identification->shift(), 0);
    for (int i = 0; i < ce.algebra->num_generators(); ++i) {
        const std::string dual = "^s" + g.symbol_of(ce.gen_to_basis[static_cast<std::size_t>(i)]);
        EXPECT_EQ(ce.identification->get(ce.algebra->symbol_of(i), dual), ce_pairing());
    }
    EXPECT_EQ(ce.identification->entries().size(),
              static_cast<std::size_t>(ce.algebra->num_generators()));
}

TEST(McCorrespondence, HeisenbergRoundTrips) {
    auto g = load(fixtures::heisenberg);
    auto ce = chevalley_eilenberg(g);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        SparseVec x;
        if (int v = num(rng)) x[1] = Scalar(v, den(rng));
        if (int v = num(rng)) x[2] = Scalar(v, den(rng));
        auto phi = mc_to_morphism(ce, x);
        EXPECT_TRUE(check_morphism(phi).ok);
        EXPECT_EQ(morphism_to_mc(ce, phi), x);
        // direct pairing: ^sx carries -alpha/2, ^sy carries -beta/2, ^se zero
        auto get = [&](int b) { return phi.values[static_cast<std::size_t>(ce.gen_of_basis(b))].value; };
        EXPECT_EQ(get(1), (x.count(1) ? x.at(1) : Scalar(0)) * ce_pairing());
        EXPECT_EQ(get(2), (x.count(2) ? x.at(2) : Scalar(0)) * ce_pairing());
        EXPECT_EQ(get(0), Scalar(0));
    }
}

TEST(PathToHomotopy, HeisenbergGaugePath) {
    auto g = load(fixtures::heisenberg);
    auto ce = chevalley_eilenberg(g);
    const Scalar alpha(2), beta(-1), s(3, 2);
    GPath X;
    X.x[1] = Poly{alpha};
    X.x[2] = Poly{beta, s * alpha};
    X.xi[0] = Poly{s};
    auto h = path_to_homotopy(ce, X);
    EXPECT_TRUE(check_morphism(h).ok);
    const auto& IA = ground_interval();
    // endpoints match the pointwise correspondence
    auto phi0 = mc_to_morphism(ce, X.x_at(Scalar(0)));
    auto phi1 = mc_to_morphism(ce, X.x_at(Scalar(1)));
    for (int i = 0; i < ce.algebra->num_generators(); ++i) {
        EXPECT_TRUE(ground().equal(IA.ev(h.values[static_cast<std::size_t>(i)], Scalar(0)),
                                   phi0.values[static_cast<std::size_t>(i)]));
        EXPECT_TRUE(ground().equal(IA.ev(h.values[static_cast<std::size_t>(i)], Scalar(1)),
                                   phi1.values[static_cast<std::size_t>(i)]));
    }
    // exact round trip
    auto back = homotopy_to_path(ce, h);
    EXPECT_EQ(back.x, X.x);
    EXPECT_EQ(back.xi, X.xi);
    // a non-MC path is rejected
    GPath bad = X;
    bad.x[2] = Poly{beta};
    EXPECT_THROW(path_to_homotopy(ce, bad), Error);
}

TEST(PathToHomotopy, ConstantPathGivesConstantHomotopy) {
    auto g = load(fixtures::heisenberg);
    auto ce = chevalley_eilenberg(g);
    const SparseVec x{{1, Scalar(1)}, {2, Scalar(4, 3)}};
    auto h = path_to_homotopy(ce, GPath::constant(x));
    auto phi = mc_to_morphism(ce, x);
    const auto& IA = ground_interval();
    for (int i = 0; i < ce.algebra->num_generators(); ++i) {
        const auto& v = h.values[static_cast<std::size_t>(i)];
        EXPECT_EQ(v.dt_size(), 0u);
        EXPECT_LE(v.t_size(), 1u);
        EXPECT_TRUE(ground().equal(IA.ev(v, Scalar(0)), phi.values[static_cast<std::size_t>(i)]));
    }
}

TEST(PathToHomotopy, PolynomialXiProfile) {
    // time-dependent xi on the nonabelian fixture; the homotopy must still
    // be a dg algebra morphism, with two dt coefficients on a dual generator
    auto g = load(fixtures::nonabelian);
    auto ce = chevalley_eilenberg(g);
    GPath X;
    X.xi = {{0, Poly{Scalar(1)}}, {1, Poly{Scalar(0), Scalar(1)}}};  // xi = p + t q
    X.x = {{5, Poly{Scalar(1)}}};                                    // start at w3
    // integrate x'(t) = l2(xi(t), x(t)) coefficientwise
    for (int k = 0; k <= 8; ++k) {
        std::map<int, Poly> rhs;
        for (const auto& [e, pe] : X.xi)
            for (const auto& [v, pv] : X.x) {
                auto out = g.eval_basis(2, {e, v});
                const Poly prod = poly_mul(pe, pv);
                for (const auto& [o, c] : out) rhs[o] = poly_add(rhs[o], poly_scale(prod, c));
            }
        for (const auto& [o, p] : rhs) {
            if (static_cast<int>(p.size()) <= k || p[static_cast<std::size_t>(k)] == 0) continue;
            auto& xo = X.x[o];
            if (xo.size() <= static_cast<std::size_t>(k + 1))
                xo.resize(static_cast<std::size_t>(k + 2), Scalar(0));
            xo[static_cast<std::size_t>(k + 1)] = p[static_cast<std::size_t>(k)] / Scalar(k + 1);
        }
    }
    ASSERT_TRUE(mc_residual_path(g, X).is_zero());
    auto h = path_to_homotopy(ce, X);
    EXPECT_TRUE(check_morphism(h).ok);
    // the dual of sq carries a t dt coefficient
    const auto& vq = h.values[static_cast<std::size_t>(ce.gen_of_basis(1))];
    EXPECT_EQ(vq.dt_size(), 2u);
}
