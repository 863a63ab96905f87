#include "mchom/interval.hpp"

#include <memory>
#include <random>

#include "gtest/gtest.h"

using namespace mchom;

namespace {

// Base with mixed parities and a nontrivial differential:
// Lambda(a, u, b, w), |a| = 0, |u| = 1, |b| = -1, |w| = 2, db = a, du = w.
std::unique_ptr<FreeCDGA> make_base() {
    auto B = std::make_unique<FreeCDGA>(
        GradedBasis({{"a", 0}, {"u", 1}, {"b", -1}, {"w", 2}}, Convention::cohomological));
    B->set_differential(1, B->gen(3));
    B->set_differential(2, B->gen(0));
    B->validate();
    return B;
}

using IA = IntervalAlgebra<FreeCDGA>;
using IE = IntervalElement<FreeCDGA>;

IE random_interval(const IA& I, std::mt19937_64& rng) {
    const FreeCDGA& B = I.base();
    std::uniform_int_distribution<int> coef(-2, 2);
    const auto monos = enumerate_monomials(B, 2);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    auto rand_b = [&]() {
        Element e = B.zero();
        for (int i = 0; i < 2; ++i) {
            Element t = B.zero();
            t.add_term(monos[pick(rng)], Scalar(coef(rng)));
            e = B.add(e, t);
        }
        return e;
    };
    IE x = I.zero();
    for (std::size_t j = 0; j < 3; ++j) x.set_t_coeff(j, rand_b());
    for (std::size_t i = 0; i < 2; ++i) x.set_dt_coeff(i, rand_b());
    return x;
}

}  // namespace

TEST(IntervalMultiply, BasicCases) {
    auto B = make_base();
    IA I(B.get());
    const IE t = I.t_power(1, B->unit(Scalar(1)));
    const IE dt = I.dt_power(0, B->unit(Scalar(1)));

    EXPECT_TRUE(I.equal(I.multiply(t, t), I.t_power(2, B->unit(Scalar(1)))));
    EXPECT_TRUE(I.is_zero(I.multiply(dt, dt)));

    // (b + t dt)(t) = b t + t^2 dt
    IE x = I.from_base(B->gen(2));
    x = I.add(x, I.dt_power(1, B->unit(Scalar(1))));
    IE expect = I.t_power(1, B->gen(2));
    expect = I.add(expect, I.dt_power(2, B->unit(Scalar(1))));
    EXPECT_TRUE(I.equal(I.multiply(x, t), expect));

    // dt anticommutes with odd base elements
    const IE u = I.from_base(B->gen(1));
    EXPECT_TRUE(I.equal(I.multiply(dt, u), I.scale(I.multiply(u, dt), Scalar(-1))));
}

TEST(IntervalDifferential, BasicCases) {
    auto B = make_base();
    IA I(B.get());
    const IE t = I.t_power(1, B->unit(Scalar(1)));
    EXPECT_TRUE(I.equal(I.differential(t), I.dt_power(0, B->unit(Scalar(1)))));
    EXPECT_TRUE(I.equal(I.differential(I.multiply(t, t)),
                        I.dt_power(1, B->unit(Scalar(2)))));
    // d(b t) = (db) t + b dt for even db-carrier: use b of degree -1 (odd):
    // d(b t) = a t - b dt
    IE bt = I.t_power(1, B->gen(2));
    IE expect = I.t_power(1, B->gen(0));
    expect = I.add(expect, I.dt_power(0, B->scale(B->gen(2), Scalar(-1))));
    EXPECT_TRUE(I.equal(I.differential(bt), expect));
}

TEST(IntervalDifferential, SquareZeroOnRandomElements) {
    auto B = make_base();
    IA I(B.get());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const IE x = random_interval(I, rng);
        EXPECT_TRUE(I.is_zero(I.differential(I.differential(x))));
    }
}

TEST(IntervalMultiply, AssociativeAndLeibnizOnRandomElements) {
    auto B = make_base();
    IA I(B.get());
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        const IE x = random_interval(I, rng), y = random_interval(I, rng),
                 z = random_interval(I, rng);
        EXPECT_TRUE(I.equal(I.multiply(I.multiply(x, y), z), I.multiply(x, I.multiply(y, z))));
        // Leibniz per homogeneous component of x
        IE lhs = I.differential(I.multiply(x, y));
        IE rhs = I.multiply(I.differential(x), y);
        for (const auto& [dx, cx] : I.components(x)) {
            IE t = I.multiply(cx, I.differential(y));
            if (parity(dx) == 1) t = I.scale(t, Scalar(-1));
            rhs = I.add(rhs, t);
        }
        EXPECT_TRUE(I.equal(lhs, rhs));
    }
}

TEST(Ev, BasicCases) {
    auto B = make_base();
    IA I(B.get());
    // ev(b + c t + e dt, 0) = b
    IE x = I.from_base(B->gen(2));
    x = I.add(x, I.t_power(1, B->gen(0)));
    x = I.add(x, I.dt_power(0, B->unit(Scalar(3))));
    EXPECT_TRUE(B->equal(I.ev(x, Scalar(0)), B->gen(2)));
    // ev(t^2 + t dt, 1) = 1
    IE y = I.t_power(2, B->unit(Scalar(1)));
    y = I.add(y, I.dt_power(1, B->unit(Scalar(1))));
    EXPECT_TRUE(B->equal(I.ev(y, Scalar(1)), B->unit(Scalar(1))));
    // ev(phi + alpha t, 1) = phi + alpha
    IE z = I.from_base(B->gen(0));
    z = I.add(z, I.t_power(1, B->unit(Scalar(2))));
    EXPECT_TRUE(B->equal(I.ev(z, Scalar(1)), B->add(B->gen(0), B->unit(Scalar(2)))));
}

TEST(Ev, MorphismAndChainMapAtZeroAndOne) {
    auto B = make_base();
    IA I(B.get());
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const IE x = random_interval(I, rng), y = random_interval(I, rng);
        for (int a : {0, 1}) {
            EXPECT_TRUE(B->equal(I.ev(I.multiply(x, y), Scalar(a)),
                                 B->multiply(I.ev(x, Scalar(a)), I.ev(y, Scalar(a)))));
            EXPECT_TRUE(B->equal(I.ev(I.differential(x), Scalar(a)),
                                 B->differential(I.ev(x, Scalar(a)))));
        }
    }
}

TEST(ReparamRho, BasicCases) {
    auto B = make_base();
    IA I(B.get());
    const IE t = I.t_power(1, B->unit(Scalar(1)));
    const IE dt = I.dt_power(0, B->unit(Scalar(1)));
    EXPECT_TRUE(I.equal(I.reparam_rho(1, t), I.t_power(2, B->unit(Scalar(1)))));
    EXPECT_TRUE(I.equal(I.reparam_rho(1, dt), I.dt_power(1, B->unit(Scalar(2)))));
    // rho_0 = identity; chain rule consistency d(rho_1 t) = rho_1(dt)
    std::mt19937_64 rng(8);
    const IE x = random_interval(I, rng);
    EXPECT_TRUE(I.equal(I.reparam_rho(0, x), x));
    EXPECT_TRUE(I.equal(I.differential(I.reparam_rho(1, t)), I.reparam_rho(1, dt)));
    EXPECT_THROW(I.reparam_rho(-1, t), Error);
}

TEST(ReparamRho, CommutesWithDifferentialAndFixesEndpoints) {
    auto B = make_base();
    IA I(B.get());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        const IE x = random_interval(I, rng);
        for (int n = 0; n <= 4; ++n) {
            EXPECT_TRUE(I.equal(I.differential(I.reparam_rho(n, x)),
                                I.reparam_rho(n, I.differential(x))));
            EXPECT_TRUE(B->equal(I.ev(I.reparam_rho(n, x), Scalar(0)), I.ev(x, Scalar(0))));
            EXPECT_TRUE(B->equal(I.ev(I.reparam_rho(n, x), Scalar(1)), I.ev(x, Scalar(1))));
            EXPECT_TRUE(I.equal(I.multiply(I.reparam_rho(n, x), I.reparam_rho(n, x)),
                                I.reparam_rho(n, I.multiply(x, x))));
        }
    }
}

TEST(ChiCollapse, BasicCases) {
    auto B = make_base();
    IA I(B.get());
    IntervalAlgebra<IA> II(&I);
    const auto unit_inner = I.unit(Scalar(1));

    // chi(t s) = u^2
    BiIntervalElement<FreeCDGA> ts = II.t_power(1, I.t_power(1, B->unit(Scalar(1))));
    EXPECT_TRUE(I.equal(chi_collapse(II, ts), I.t_power(2, B->unit(Scalar(1)))));

    // chi(dt) = du, chi(t ds) = u du
    BiIntervalElement<FreeCDGA> dt_outer = II.t_power(0, I.dt_power(0, B->unit(Scalar(1))));
    EXPECT_TRUE(I.equal(chi_collapse(II, dt_outer), I.dt_power(0, B->unit(Scalar(1)))));
    BiIntervalElement<FreeCDGA> t_ds = II.dt_power(0, I.t_power(1, B->unit(Scalar(1))));
    EXPECT_TRUE(I.equal(chi_collapse(II, t_ds), I.dt_power(1, B->unit(Scalar(1)))));

    // chi(dt ds) = du^2 = 0
    BiIntervalElement<FreeCDGA> dt_ds = II.dt_power(0, I.dt_power(0, B->unit(Scalar(1))));
    EXPECT_TRUE(I.is_zero(chi_collapse(II, dt_ds)));
    (void)unit_inner;
}

TEST(ChiCollapse, ChainMapMorphismAndEvaluationDiagram) {
    auto B = make_base();
    IA I(B.get());
    IntervalAlgebra<IA> II(&I);
    std::mt19937_64 rng(10);
    auto random_bi = [&]() {
        BiIntervalElement<FreeCDGA> x = II.zero();
        for (std::size_t j = 0; j < 2; ++j) x.set_t_coeff(j, random_interval(I, rng));
        x.set_dt_coeff(0, random_interval(I, rng));
        return x;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_bi(), y = random_bi();
        // algebra morphism and chain map
        EXPECT_TRUE(I.equal(chi_collapse(II, II.multiply(x, y)),
                            I.multiply(chi_collapse(II, x), chi_collapse(II, y))));
        EXPECT_TRUE(I.equal(chi_collapse(II, II.differential(x)),
                            I.differential(chi_collapse(II, x))));
        // ev_{u=0} o chi = ev_{t=0} o ev_{s=0} and ev_{u=1} o chi = ev_{s=1} o ev_{t=1}
        EXPECT_TRUE(B->equal(I.ev(chi_collapse(II, x), Scalar(0)),
                             I.ev(II.ev(x, Scalar(0)), Scalar(0))));
        EXPECT_TRUE(B->equal(I.ev(chi_collapse(II, x), Scalar(1)),
                             I.ev(II.ev(x, Scalar(1)), Scalar(1))));
    }
}
