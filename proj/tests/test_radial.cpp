#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bfun/radial.hpp"

using namespace bfun;

namespace {

MPK random_poly_k(std::mt19937& rng, int arity, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> expo(0, max_deg);
    MPK p(arity);
    for (int t = 0; t < terms; ++t) {
        Expvec e(size_t(arity), 0);
        for (auto& x : e) x = expo(rng);
        p.add_term(std::move(e), UniPoly(coef(rng)));
    }
    return p;
}

RadialOp random_radial(std::mt19937& rng, const RootSystemA& rs, int terms) {
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<int> dpow(0, 1);
    RadialOp op(rs);
    for (int t = 0; t < terms; ++t) {
        Expvec b(size_t(rs.n), 0);
        for (auto& x : b) x = expo(rng);
        std::vector<int> den(size_t(rs.count()), 0);
        for (auto& x : den) x = dpow(rng);
        op.add_term(std::move(b), RatCoef(random_poly_k(rng, rs.n, 2, 2), std::move(den)));
    }
    return op;
}

}  // namespace

TEST_CASE("rational coefficient reduction") {
    RootSystemA rs(2);
    // (t1 - t2)^2 / alpha -> t1 - t2
    RatCoef c(rs.alpha(0) * rs.alpha(0), {1});
    rc_normalize(rs, c);
    CHECK(c.num == rs.alpha(0));
    CHECK(c.den == std::vector<int>{0});

    RatCoef a = rc_poly(rs, rs.alpha(0));
    RatCoef inv(MPK::constant(2, UniPoly(1)), {1});
    CHECK(rc_mul(rs, a, inv) == rc_scalar(rs, UniPoly(1)));
    CHECK(rc_add(rs, a, rc_neg(a)).is_zero());
}

TEST_CASE("d1 composed with 1/alpha") {
    // d1 . alpha^{-1} = alpha^{-1} d1 - alpha^{-2}
    RootSystemA rs(2);
    RatCoef inv(MPK::constant(2, UniPoly(1)), {1});
    RadialOp prod = radial_mul(rad_partial(rs, 0), rad_mult(rs, inv));
    RadialOp expected(rs);
    expected.add_term({1, 0}, inv);
    expected.add_term({0, 0}, RatCoef(MPK::constant(2, UniPoly(-1)), {2}));
    CHECK(prod == expected);

    CHECK(radial_mul(prod, rad_identity(rs)) == prod);
}

TEST_CASE("squared P+ summand checked against application to t1^3") {
    RootSystemA rs(2);
    RadialOp pp = p_plus(rs);
    RadialOp sq = radial_mul(pp, pp);
    MPK g = MPK::monomial(2, {3, 0}, UniPoly(1));
    RatCoef once = pp.apply_rc(g);
    RatCoef twice = radial_mul(pp, rad_mult(rs, once)).coeff({0, 0});
    CHECK(sq.apply_rc(g) == twice);
}

TEST_CASE("l_h applications for A1") {
    RootSystemA rs(2);
    UniPoly k = UniPoly::variable();
    RadialOp L = l_h(rs, k);
    CHECK(L.apply(MPK::constant(2, UniPoly(1))).is_zero());
    MPK t1 = MPK::variable(2, 0, UniPoly(1)), t2 = MPK::variable(2, 1, UniPoly(1));
    CHECK(L.apply(t1 + t2).is_zero());
    // Delta gives 4, 2k alpha^{-1}(d1-d2)(t1^2+t2^2) = 4k
    CHECK(L.apply(t1 * t1 + t2 * t2) == MPK::constant(2, UniPoly({4, 4})));
}

TEST_CASE("pole detection names the root") {
    RootSystemA rs(2);
    RadialOp pp = p_plus(rs);
    MPK t1 = MPK::variable(2, 0, UniPoly(1));
    CHECK_THROWS_WITH(pp.apply(t1 * t1), Catch::Matchers::ContainsSubstring("t1-t2"));
}

TEST_CASE("radial_mul soundness against sequential application") {
    std::mt19937 rng(7);
    for (int n = 2; n <= 3; ++n) {
        RootSystemA rs(n);
        for (int trial = 0; trial < 6; ++trial) {
            RadialOp a = random_radial(rng, rs, 2);
            RadialOp b = random_radial(rng, rs, 2);
            MPK g = random_poly_k(rng, n, 3, 3);
            RatCoef inner = b.apply_rc(g);
            // push the inner result through a as a multiplication operator
            RatCoef lhs = radial_mul(a, rad_mult(rs, inner)).coeff(Expvec(size_t(n), 0));
            RatCoef rhs = radial_mul(a, b).apply_rc(g);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("conjugation by delta") {
    for (int n = 2; n <= 3; ++n) {
        RootSystemA rs(n);
        RadialOp lap = laplacian(rs);
        CHECK(conjugate_by_delta_int(lap, 1) == lap + p_plus(rs).scaled(UniPoly(2)));
        CHECK(conjugate_by_delta_int(lap, 0) == lap);
        CHECK(conjugate_by_delta_power(lap, UniPoly(1)) == conjugate_by_delta_int(lap, 1));
        CHECK(conjugate_by_delta_power(lap, UniPoly(0)) == lap);
    }
}

TEST_CASE("W equivariance of the standard operators") {
    for (int n = 2; n <= 4; ++n) {
        RootSystemA rs(n);
        std::vector<std::vector<int>> perms;
        std::vector<int> swap01(size_t(n), 0);
        for (int i = 0; i < n; ++i) swap01[size_t(i)] = i;
        std::swap(swap01[0], swap01[1]);
        perms.push_back(swap01);
        std::vector<int> cycle(size_t(n), 0);
        for (int i = 0; i < n; ++i) cycle[size_t(i)] = (i + 1) % n;
        perms.push_back(cycle);
        UniPoly k = UniPoly::variable();
        for (const auto& p : perms) {
            CHECK(radial_permute(p_plus(rs), p) == p_plus(rs));
            CHECK(radial_permute(l_h(rs, k), p) == l_h(rs, k));
            CHECK(radial_permute(l_cm(rs, k), p) == l_cm(rs, k));
        }
    }
}

TEST_CASE("radial identity reports") {
    for (int n = 2; n <= 4; ++n) {
        RadialReport rep = verify_radial_identity(n);
        INFO("n = " << n);
        CHECK(rep.laplace_conj_ok);
        CHECK(rep.pplus_conj_ok);
        CHECK(rep.pplus_coeff == 1);
        CHECK(rep.main_identity_ok);
        CHECK(rep.specialization_ok);
    }
    CHECK_THROWS_AS(verify_radial_identity(9), usage_error);
}
