#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bfun/weyl.hpp"

using namespace bfun;

namespace {

WeylQ random_op(std::mt19937& rng, int arity, int max_exp, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> expo(0, max_exp);
    WeylQ op(arity);
    for (int t = 0; t < terms; ++t) {
        Expvec a(size_t(arity), 0), b(size_t(arity), 0);
        for (auto& x : a) x = expo(rng);
        for (auto& x : b) x = expo(rng);
        op.add_term(std::move(a), std::move(b), Rational(coef(rng)));
    }
    return op;
}

MPQ random_poly(std::mt19937& rng, int arity, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> expo(0, max_deg);
    MPQ p(arity);
    for (int t = 0; t < terms; ++t) {
        Expvec e(size_t(arity), 0);
        for (auto& x : e) x = expo(rng);
        p.add_term(std::move(e), Rational(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("normal ordering of d1 x1") {
    WeylQ d1 = WeylQ::partial(2, 0, 1);
    WeylQ x1 = WeylQ::multiplication(MPQ::variable(2, 0, 1));
    WeylQ prod = weyl_mul(d1, x1);
    // x1 d1 + 1
    WeylQ expected(2);
    expected.add_term({1, 0}, {1, 0}, 1);
    expected.add_term({0, 0}, {0, 0}, 1);
    CHECK(prod == expected);

    // commuting pair: d1 x2 = x2 d1
    WeylQ x2 = WeylQ::multiplication(MPQ::variable(2, 1, 1));
    WeylQ expected2(2);
    expected2.add_term({0, 1}, {1, 0}, 1);
    CHECK(weyl_mul(d1, x2) == expected2);
}

TEST_CASE("euler operator squared") {
    // (x1 d1)(x1 d1) = x1^2 d1^2 + x1 d1; check against action on x1^m
    WeylQ e(1);
    e.add_term({1}, {1}, 1);
    WeylQ sq = weyl_mul(e, e);
    WeylQ expected(1);
    expected.add_term({2}, {2}, 1);
    expected.add_term({1}, {1}, 1);
    CHECK(sq == expected);
    for (int m = 0; m <= 5; ++m) {
        MPQ xm = MPQ::monomial(1, {m}, 1);
        CHECK(sq.apply(xm) == xm.scaled(Rational(m * m)));
    }
}

TEST_CASE("weyl_apply examples") {
    // d_v applied to v^3 -> 3 v^2
    WeylQ dv = WeylQ::partial(1, 0, 1);
    CHECK(dv.apply(MPQ::monomial(1, {3}, 1)) == MPQ::monomial(1, {2}, 3));
    // (x d + 1) applied to x -> 2x
    WeylQ op(1);
    op.add_term({1}, {1}, 1);
    op.add_term({0}, {0}, 1);
    CHECK(op.apply(MPQ::variable(1, 0, 1)) == MPQ::variable(1, 0, 2));
}

TEST_CASE("representation soundness: mul matches composed application") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        WeylQ a = random_op(rng, 2, 2, 3);
        WeylQ b = random_op(rng, 2, 2, 3);
        MPQ p = random_poly(rng, 2, 3, 4);
        CHECK(weyl_mul(a, b).apply(p) == a.apply(b.apply(p)));
    }
}

TEST_CASE("weyl_mul associativity") {
    std::mt19937 rng(100);
    for (int trial = 0; trial < 10; ++trial) {
        WeylQ a = random_op(rng, 2, 2, 2);
        WeylQ b = random_op(rng, 2, 2, 2);
        WeylQ c = random_op(rng, 2, 2, 2);
        CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
    }
}

TEST_CASE("order and grade") {
    WeylQ op(2);
    op.add_term({2, 0}, {0, 1}, 1);  // x1^2 d2: order 1, grade +1
    CHECK(op.op_order() == 1);
    CHECK(op.op_grade() == 1);

    WeylQ inhom(2);
    inhom.add_term({1, 0}, {0, 0}, 1);
    inhom.add_term({0, 0}, {1, 0}, 1);
    CHECK(!inhom.op_grade().has_value());

    WeylQ zero(2);
    CHECK_THROWS_AS(zero.op_grade(), usage_error);
}

TEST_CASE("grade additivity and order subadditivity") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        // homogeneous operators: single terms
        WeylQ a = random_op(rng, 2, 2, 1);
        WeylQ b = random_op(rng, 2, 2, 1);
        if (a.is_zero() || b.is_zero()) continue;
        WeylQ ab = weyl_mul(a, b);
        CHECK(ab.op_order() <= a.op_order() + b.op_order());
        if (!ab.is_zero()) {
            auto g = ab.op_grade();
            REQUIRE(g.has_value());
            CHECK(*g == *a.op_grade() + *b.op_grade());
        }
    }
}
