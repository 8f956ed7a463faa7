#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bfun/interpolate.hpp"
#include "bfun/jet.hpp"
#include "bfun/multipoly.hpp"
#include "bfun/ratfunc.hpp"
#include "bfun/unipoly.hpp"

using namespace bfun;

namespace {

// deterministic random polynomials for property tests
MPQ random_poly(std::mt19937& rng, int arity, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> expo(0, max_deg);
    MPQ p(arity);
    for (int t = 0; t < terms; ++t) {
        Expvec e(size_t(arity), 0);
        int budget = max_deg;
        for (auto& x : e) {
            x = expo(rng) % (budget + 1);
            budget -= x;
        }
        p.add_term(e, Rational(coef(rng)));
    }
    return p;
}

std::vector<Rational> random_point(std::mt19937& rng, int arity) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rational> pt;
    for (int i = 0; i < arity; ++i) pt.push_back(rat(num(rng), den(rng)));
    return pt;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat_str(rat(-6, 4)) == "-3/2");
    CHECK(parse_rational("-3/2") == rat(-3, 2));
    CHECK(factorial(5) == 120);
    CHECK(binomial(7, 3) == 35);
    CHECK(falling(3, 2) == 6);
}

TEST_CASE("unipoly arithmetic and gcd") {
    UniPoly k = UniPoly::variable();
    UniPoly p = (k + UniPoly(1)) * (k + UniPoly(1)) * (UniPoly(2) * k + UniPoly(3));
    CHECK(p.degree() == 3);
    CHECK(p.eval(0) == 3);
    CHECK(p.eval(1) == 20);

    UniPoly g = UniPoly::gcd(p, (k + UniPoly(1)) * (k - UniPoly(5)));
    CHECK(g == k + UniPoly(1));
    CHECK(UniPoly::exact_div(p, k + UniPoly(1)) == (k + UniPoly(1)) * (UniPoly(2) * k + UniPoly(3)));
    CHECK_THROWS_AS(UniPoly::exact_div(p, k - UniPoly(7)), math_error);

    // p(k+2)
    UniPoly sh = p.shift(2);
    CHECK(sh.eval(0) == p.eval(2));
    CHECK(sh.eval(-5) == p.eval(-3));
}

TEST_CASE("ratfunc canonical form") {
    UniPoly k = UniPoly::variable();
    RatFunc f((k + UniPoly(1)) * (k + UniPoly(2)), UniPoly(2) * (k + UniPoly(1)));
    CHECK(f.is_polynomial());
    CHECK(f.as_poly() == (Rational(1) / 2) * (k + UniPoly(2)));
    RatFunc g(k, k * k - UniPoly(1));
    CHECK(!g.is_polynomial());
    CHECK(g + RatFunc(UniPoly(Rational(0))) == g);
    CHECK((g - g).is_zero());
    CHECK(g * RatFunc(k * k - UniPoly(1), k) == RatFunc(UniPoly(Rational(1))));
}

TEST_CASE("poly_mul examples") {
    // (x+y)(x-y) = x^2 - y^2
    MPQ x = MPQ::variable(2, 0, 1), y = MPQ::variable(2, 1, 1);
    CHECK(x * y == y * x);
    CHECK((x + y) * (x - y) == x * x - y * y);
    std::mt19937 rng(7);
    MPQ p = random_poly(rng, 2, 3, 5);
    CHECK(p * MPQ::constant(2, Rational(1)) == p);
    // (t1-t2)^2 = t1^2 - 2 t1 t2 + t2^2
    MPQ d = x - y;
    MPQ sq = d * d;
    CHECK(sq.coeff({1, 1}) == Rational(-2));
    CHECK(sq.coeff({2, 0}) == Rational(1));
    CHECK(sq.coeff({0, 2}) == Rational(1));
}

TEST_CASE("poly ring axioms on random instances") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        MPQ a = random_poly(rng, 3, 3, 4);
        MPQ b = random_poly(rng, 3, 3, 4);
        MPQ c = random_poly(rng, 3, 3, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("poly_exact_div") {
    MPQ x = MPQ::variable(2, 0, 1), y = MPQ::variable(2, 1, 1);
    CHECK(MPQ::exact_div(x * x - y * y, x - y) == x + y);
    CHECK_THROWS_AS(MPQ::exact_div(x * x + y, x - y), math_error);

    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        MPQ a = random_poly(rng, 3, 3, 4);
        MPQ b = random_poly(rng, 3, 2, 3);
        if (b.is_zero()) continue;
        CHECK(MPQ::exact_div(a * b, b) == a);
    }
}

TEST_CASE("exact_div over Q[k] coefficients") {
    UniPoly k = UniPoly::variable();
    MPK x = MPK::variable(2, 0, UniPoly(1)), y = MPK::variable(2, 1, UniPoly(1));
    MPK a = x.scaled(k) + y;
    MPK b = x - y.scaled(k + UniPoly(3));
    CHECK(MPK::exact_div(a * b, b) == a);
}

TEST_CASE("interpolate") {
    // n=2 b-hat samples -> 4k^3 + 14k^2 + 16k + 6
    std::vector<std::pair<Rational, Rational>> pts = {{0, 6}, {1, 40}, {2, 126}, {3, 288}};
    UniPoly p = interpolate(pts, 3);
    CHECK(p == UniPoly({6, 16, 14, 4}));

    CHECK(interpolate({{0, 1}, {1, 2}}, 1) == UniPoly({1, 1}));
    CHECK(interpolate({{0, 7}, {1, 7}}, 0) == UniPoly(Rational(7)));

    // inconsistent extra point
    CHECK_THROWS_AS(interpolate({{0, 1}, {1, 2}, {2, 5}}, 1), math_error);
    // duplicate abscissa
    CHECK_THROWS_AS(interpolate({{0, 1}, {0, 2}}, 1), usage_error);

    // interpolation is exact at every supplied node
    std::mt19937 rng(44);
    std::uniform_int_distribution<int> cf(-20, 20);
    for (int trial = 0; trial < 10; ++trial) {
        UniPoly q({Rational(cf(rng)), Rational(cf(rng)), Rational(cf(rng)), Rational(cf(rng))});
        std::vector<std::pair<Rational, Rational>> nodes;
        for (int i = 0; i <= 4; ++i) nodes.push_back({rat(i), q.eval(rat(i))});
        UniPoly r = interpolate(nodes, 3);
        for (const auto& [a, b] : nodes) CHECK(r.eval(a) == b);
        CHECK(r == q);
    }
}

TEST_CASE("jet of x^2 at base 1 order 2") {
    MPQ x = MPQ::variable(1, 0, 1);
    Jet j = jet_of_poly(x * x, {Rational(1)}, 2);
    CHECK(j.coeff({0}) == 1);
    CHECK(j.coeff({1}) == 2);
    CHECK(j.coeff({2}) == 1);
}

TEST_CASE("jet truncation and homomorphism") {
    std::mt19937 rng(45);
    for (int trial = 0; trial < 12; ++trial) {
        MPQ p = random_poly(rng, 3, 3, 4);
        MPQ q = random_poly(rng, 3, 3, 4);
        auto base = random_point(rng, 3);
        int order = 3;
        Jet jp = jet_of_poly(p, base, order);
        Jet jq = jet_of_poly(q, base, order);
        CHECK(jet_of_poly(p + q, base, order) == jp + jq);
        CHECK(jet_of_poly(p * q, base, order) == jp * jq);
    }
}

TEST_CASE("jet coefficients are taylor coefficients") {
    std::mt19937 rng(46);
    MPQ p = random_poly(rng, 2, 4, 6);
    auto base = random_point(rng, 2);
    Jet j = jet_of_poly(p, base, 4);
    for (const auto& [e, c] : j.terms()) {
        MPQ d = p.derivative_multi(e);
        Rational fact = 1;
        for (int x : e) fact *= Rational(factorial((unsigned long)x));
        CHECK(c * fact == d.eval(base));
    }
}

TEST_CASE("homogeneity and degree bookkeeping") {
    MPQ x = MPQ::variable(2, 0, 1), y = MPQ::variable(2, 1, 1);
    CHECK((x * x - y * y).is_homogeneous());
    CHECK(!(x * x - y).is_homogeneous());
    CHECK((x * x * y).total_degree() == 3);
    CHECK(MPQ(2).total_degree() == -1);
}
