// Acceptance suite: one printed pass/fail line per criterion.  Run with -s
// (the ctest registration does) to see every line.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "bfun/bernstein.hpp"
#include "bfun/cyclic.hpp"
#include "bfun/interpolate.hpp"
#include "bfun/radial.hpp"
#include "bfun/serialize.hpp"
#include "bfun/shift.hpp"

using namespace bfun;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string name;
    Clock::time_point start = Clock::now();

    Criterion(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

    void done(bool ok, const std::string& detail = "") {
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::cout << "criterion " << id << " [" << (ok ? "PASS" : "FAIL") << "] " << name;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << " (" << secs << " s)" << std::endl;
        CHECK(ok);
    }

    void skip(const std::string& why) {
        std::cout << "criterion " << id << " [SKIP] " << name << " -- " << why << std::endl;
    }

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
};

}  // namespace

TEST_CASE("criterion 1: n=1 b-hat") {
    Criterion c(1, "n=1: b-hat = s+1");
    BFunctionResult r = bhat_poly(1, BMethod::jet);
    bool ok = r.bhat == UniPoly({1, 1}) && r.matches_theorem && c.elapsed() < 0.1;
    c.done(ok, r.bhat.to_string());
}

TEST_CASE("criterion 2: n=2 b-hat with constant") {
    Criterion c(2, "n=2: b-hat = 4k^3+14k^2+16k+6, monic (s+1)^2(s+3/2), alpha_2 = 4");
    BFunctionResult r = bhat_poly(2, BMethod::jet);
    UniPoly s = UniPoly::variable(UniPoly::Var::s);
    UniPoly btilde = (s + UniPoly(1, UniPoly::Var::s)).pow(2) *
                     (s + UniPoly(Rational(3, 2), UniPoly::Var::s));
    bool ok = r.bhat == UniPoly({6, 16, 14, 4}) && r.bhat.monic().coeffs() == btilde.coeffs() &&
              r.constant_ratio == 4 && r.alpha == 4 && r.matches_theorem && c.elapsed() < 5;
    c.done(ok, "leading constant " + r.constant_ratio.get_str());
}

TEST_CASE("criterion 3: n=3 b-hat by jets") {
    Criterion c(3, "n=3 (jets): b-hat = 6(k+1)^3(2k+3)(3k+4)(3k+5)");
    BFunctionResult r = bhat_poly(3, BMethod::jet);
    std::map<Rational, int> expect_roots{
        {Rational(-1), 3}, {Rational(-3, 2), 1}, {Rational(-4, 3), 1}, {Rational(-5, 3), 1}};
    UniPoly k = UniPoly::variable();
    UniPoly closed = UniPoly(6) * (k + UniPoly(1)).pow(3) * (UniPoly(2) * k + UniPoly(3)) *
                     (UniPoly(3) * k + UniPoly(4)) * (UniPoly(3) * k + UniPoly(5));
    bool ok = r.bhat == closed && r.btilde_roots == expect_roots && r.matches_theorem &&
              c.elapsed() < 600;
    c.done(ok, r.bhat.to_string());
}

TEST_CASE("criterion 4: symbolic Bernstein identity") {
    Criterion c(4, "n=2: S f^{k+1} - b-hat(k) f^k = 0 term by term, k=0..3");
    bool ok = true;
    for (int k = 0; k <= 3; ++k) ok = ok && verify_bernstein_identity(2, k);
    ok = ok && c.elapsed() < 60;
    c.done(ok);
}

TEST_CASE("criterion 5: semi-invariance") {
    Criterion c(5, "f(TMT^-1, Tv) = det(T) f(M,v), 100 random triples per n=2,3,4");
    std::mt19937 rng(909090);
    std::uniform_int_distribution<int> entry(-6, 6);
    bool ok = true;
    for (int n = 2; n <= 4 && ok; ++n) {
        size_t nn = size_t(n);
        int done = 0;
        while (done < 100) {
            MatQ T(nn, VecQ(nn, Rational(0))), M(nn, VecQ(nn, Rational(0)));
            VecQ v(nn, Rational(0));
            for (auto& row : T)
                for (auto& x : row) x = rat(entry(rng), 1 + (entry(rng) + 7) % 3);
            for (auto& row : M)
                for (auto& x : row) x = rat(entry(rng), 1 + (entry(rng) + 7) % 3);
            for (auto& x : v) x = rat(entry(rng), 1);
            if (bfun::is_zero(mat_det(T))) continue;
            ++done;
            ok = ok && semiinvariance_check(T, M, v);
        }
    }
    ok = ok && c.elapsed() < 60;
    c.done(ok);
}

TEST_CASE("criterion 6: local chart identity") {
    Criterion c(6, "f in the chart equals det(T) prod v_i prod (a_j - a_i), n=2,3");
    bool ok = local_chart_identity(2) && local_chart_identity(3);
    c.done(ok);
}

TEST_CASE("criterion 7: radial identities") {
    Criterion c(7, "conjugation identities for Delta, P+, and L_k over Q[k], n=2,3,4");
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 4; ++n) {
        RadialReport rep = verify_radial_identity(n);
        ok = ok && rep.ok();
        if (n == 2) detail = "observed P+ conjugation coefficient " + rep.pplus_coeff.get_str();
    }
    ok = ok && c.elapsed() < 120;
    c.done(ok, detail);
}

TEST_CASE("criterion 8: shift generator") {
    Criterion c(8, "generator found for n=2,3: N=(1,..,1), unique up to scalar, "
                   "p_N divisible by prod alpha, recursion residuals zero");
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 3; ++n) {
        RootSystemA rs(n);
        ShiftGenerator g = solve_shift_generator(n);
        std::vector<int> ones(size_t(rs.count()), 1);
        bool div_ok = true;
        try {
            MPK q = MPK::exact_div(g.D.coeff(ones), rs.alpha_prod(ones));
            div_ok = q.total_degree() == 0;
        } catch (const math_error&) {
            div_ok = false;
        }
        bool this_ok = !g.op.is_zero() && g.N == ones &&
                       g.defect_nullity == g.syzygy_dim + 1 && div_ok && g.recursion_ok &&
                       shift_defect(g.op, -1).is_zero();
        if (n == 2) this_ok = this_ok && residual_map(rs, g.D, -1).empty();
        ok = ok && this_ok;
        detail += (n == 2 ? "" : "; ") + std::string("n=") + std::to_string(n) +
                  " nullity " + std::to_string(g.defect_nullity - g.syzygy_dim);
    }
    ok = ok && c.elapsed() < 300;
    c.done(ok, detail);
}

TEST_CASE("criterion 9: factorization of b-hat") {
    Criterion c(9, "monic CT(k->k+2) = monic ct_formula(n); b-hat/((k+1)^n CT) constant");
    FactorizationReport r2 = verify_factorization(2);
    FactorizationReport r3 = verify_factorization(3);
    bool ok = r2.ok() && r3.ok();
    c.done(ok, "constants " + r2.observed_constant.get_str() + ", " +
                   r3.observed_constant.get_str());
}

TEST_CASE("criterion 10: n=4 spot checks (stretch)") {
    Criterion c(10, "n=4: b-hat(0) = 302400 and b-hat(1) matches the closed form");
    if (!std::getenv("BFUN_FORCE_N4")) {
        c.skip("guarded; set BFUN_FORCE_N4=1 to run");
        return;
    }
    Rational v0 = bhat_eval(4, 0, BMethod::jet, nullptr, 4);
    Rational v1 = bhat_eval(4, 1, BMethod::jet, nullptr, 4);
    UniPoly closed = bhat_closed_form(4);
    bool ok = v0 == 302400 && v0 == closed.eval(0) && v1 == closed.eval(1) &&
              v1 == Rational(b1_closed_form(4).eval(1) * b2_closed_form(4).eval(1));
    c.done(ok, "b-hat(0) = " + v0.get_str() + ", b-hat(1) = " + v1.get_str());
}

TEST_CASE("criterion 11: property suites") {
    Criterion c(11, "representation soundness, jet homomorphism, interpolation, "
                    "serialization round trips");
    std::mt19937 rng(7777);
    std::uniform_int_distribution<int> coef(-8, 8);
    std::uniform_int_distribution<int> expo(0, 3);
    bool ok = true;

    // jet homomorphism: jet(p*q) == jet(p)*jet(q), jet(p+q) == jet(p)+jet(q)
    for (int trial = 0; trial < 10 && ok; ++trial) {
        int arity = 2 + trial % 3;
        MPQ p(arity), q(arity);
        for (int t = 0; t < 4; ++t) {
            Expvec e1(size_t(arity), 0), e2(size_t(arity), 0);
            for (auto& x : e1) x = expo(rng);
            for (auto& x : e2) x = expo(rng);
            p.add_term(std::move(e1), Rational(coef(rng)));
            q.add_term(std::move(e2), Rational(coef(rng)));
        }
        std::vector<Rational> base(size_t(arity), Rational(0));
        for (auto& x : base) x = Rational(coef(rng));
        int order = 4;
        Jet jp = jet_of_poly(p, base, order), jq = jet_of_poly(q, base, order);
        ok = ok && jet_of_poly(p * q, base, order) == jp * jq;
        ok = ok && jet_of_poly(p + q, base, order) == jp + jq;
    }

    // interpolation recovers random polynomials exactly
    for (int trial = 0; trial < 10 && ok; ++trial) {
        int deg = 1 + trial % 5;
        std::vector<Rational> cs(size_t(deg) + 1);
        for (auto& x : cs) x = rat(coef(rng), 1 + trial % 3);
        UniPoly p(cs);
        std::vector<std::pair<Rational, Rational>> pts;
        for (int x = 0; x <= deg + 1; ++x) pts.push_back({Rational(x), p.eval(Rational(x))});
        ok = ok && interpolate(pts, deg) == p;
    }

    // serialization round trips on live objects
    MPQ f3 = cyclic_det(3);
    ok = ok && parse_mpoly_q(mpoly_to_text(f3)) == f3;
    WeylQ s3 = WeylQ::from_poly_partial(f3);
    ok = ok && parse_weyl_q(weyl_to_text(s3)) == s3;
    RootSystemA rs(3);
    RadialOp l = l_cm(rs, UniPoly::variable());
    ok = ok && parse_lweyl(lweyl_to_text(l)) == l;

    // representation soundness: operator product matches composed application
    MPQ g(3), h(3);
    for (int t = 0; t < 3; ++t) {
        Expvec e1(3, 0), e2(3, 0);
        for (auto& x : e1) x = expo(rng);
        for (auto& x : e2) x = expo(rng);
        g.add_term(std::move(e1), Rational(coef(rng)));
        h.add_term(std::move(e2), Rational(coef(rng)));
    }
    WeylQ a = WeylQ::from_poly_partial(h);
    WeylQ d1 = WeylQ::partial(3, 0, Rational(1));
    WeylQ prod = weyl_mul(a, d1);
    ok = ok && prod.apply(g) == a.apply(d1.apply(g));

    c.done(ok);
}
