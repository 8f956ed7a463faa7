#pragma once

// Shift operators for the rational operator L_h(k) = Delta + 2k P+:
// a generator of the shift -1 family is found as the nullspace of an exact
// linear system over Q(k), then cross-validated against the coefficient
// recursion that arises from applying both sides of the intertwining
// relation to an exponential.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bfun/bernstein.hpp"
#include "bfun/linalg.hpp"
#include "bfun/radial.hpp"
#include "bfun/ratfunc.hpp"

namespace bfun {

// D = sum_j abar^j d(p_j): explicit indexed form over the positive roots
struct IndexedOp {
    int n = 0;
    std::map<std::vector<int>, MPK> p;

    void add(const std::vector<int>& j, const MPK& q) {
        if (q.is_zero()) return;
        auto [it, inserted] = p.emplace(j, q);
        if (!inserted) {
            it->second += q;
            if (it->second.is_zero()) p.erase(it);
        }
    }

    MPK coeff(const std::vector<int>& j) const {
        auto it = p.find(j);
        return it == p.end() ? MPK(n) : it->second;
    }
};

inline RadialOp indexed_to_radial(const RootSystemA& rs, const IndexedOp& D) {
    RadialOp out(rs);
    for (const auto& [j, pj] : D.p) {
        std::vector<int> pos(size_t(rs.count()), 0), neg(size_t(rs.count()), 0);
        for (int r = 0; r < rs.count(); ++r) {
            if (j[size_t(r)] > 0) pos[size_t(r)] = j[size_t(r)];
            if (j[size_t(r)] < 0) neg[size_t(r)] = -j[size_t(r)];
        }
        MPK apos = rs.alpha_prod(pos);
        for (const auto& [e, c] : pj.terms())
            out.add_term(e, RatCoef(apos.scaled(c), neg));
    }
    return out;
}

// substitute k -> k + a in every coefficient
inline IndexedOp indexed_shift_k(const IndexedOp& D, const Rational& a) {
    IndexedOp out;
    out.n = D.n;
    for (const auto& [j, pj] : D.p) {
        MPK q(D.n);
        for (const auto& [e, c] : pj.terms()) q.add_term(e, c.shift(a));
        out.add(j, q);
    }
    return out;
}

// D L_h(k) - L_h(k+r) D
inline RadialOp shift_defect(const RadialOp& D, int r) {
    const RootSystemA& rs = D.roots();
    UniPoly k = UniPoly::variable();
    return radial_mul(D, l_h(rs, k)) - radial_mul(l_h(rs, k + UniPoly(Rational(r))), D);
}

inline Rational av_coeff(const Expvec& r) {
    long total = 0;
    Rational denom = 1;
    for (int x : r) {
        total += x;
        denom *= Rational(factorial((unsigned long)x));
    }
    Rational out = Rational(factorial((unsigned long)total)) / denom;
    return total % 2 == 1 ? -out : out;
}

// the coefficient of abar^M in the expansion of the intertwining defect
// applied to e^{t.lambda}; a polynomial in lambda over Q[k]
inline MPK recursion_residual(const RootSystemA& rs, const IndexedOp& D, int shift_r,
                              const std::vector<int>& M) {
    int n = rs.n;
    int m = rs.count();
    UniPoly k = UniPoly::variable();
    UniPoly kr = k + UniPoly(Rational(shift_r));
    int maxdeg = 0;
    for (const auto& [j, pj] : D.p) maxdeg = std::max(maxdeg, pj.total_degree());

    auto root_linear = [&](int r) {  // alpha_r as a polynomial in lambda
        MPK a(n);
        Expvec ei(size_t(n), 0), ej(size_t(n), 0);
        ei[size_t(rs.pairs[size_t(r)].first)] = 1;
        ej[size_t(rs.pairs[size_t(r)].second)] = 1;
        a.add_term(ei, UniPoly(1));
        a.add_term(ej, UniPoly(-1));
        return a;
    };

    MPK res(n);

    // 2k sum_beta beta(lambda) sum_r AV(r) (grad beta)^r p_{M+(1+|r|)e_beta}^{(r)}
    for (int b = 0; b < m; ++b) {
        int hi = rs.pairs[size_t(b)].first, lo = rs.pairs[size_t(b)].second;
        MPK acc(n);
        for (int s = 0; s <= maxdeg; ++s) {
            std::vector<int> idx = M;
            idx[size_t(b)] += 1 + s;
            MPK pj = D.coeff(idx);
            if (pj.is_zero()) continue;
            for (int ri = 0; ri <= s; ++ri) {
                int rj = s - ri;
                Expvec r(size_t(n), 0);
                r[size_t(hi)] = ri;
                r[size_t(lo)] = rj;
                MPK d = pj.derivative_multi(r);
                if (d.is_zero()) continue;
                Rational c = av_coeff(r);
                if (rj % 2 == 1) c = -c;  // (grad beta)^r = (-1)^{r_j}
                acc += d.scaled(UniPoly(c));
            }
        }
        if (!acc.is_zero()) res += root_linear(b) * acc.scaled(Rational(2) * k);
    }

    for (int a = 0; a < m; ++a) {
        long Ma = M[size_t(a)];
        // - (M_a+2)(M_a+1)(a,a) p_{M+2e_a} - 2(k+r)(M_a+2)(a,a) p_{M+2e_a}
        std::vector<int> j2 = M;
        j2[size_t(a)] += 2;
        MPK p2 = D.coeff(j2);
        if (!p2.is_zero()) {
            UniPoly c = UniPoly(Rational(-(Ma + 2) * (Ma + 1) * rs.grad_dot(a, a))) -
                        Rational(2 * (Ma + 2) * rs.grad_dot(a, a)) * kr;
            res += p2.scaled(c);
        }
        // - 2(M_a+1) a(lambda) p_{M+e_a} - 2(k+r) a(lambda) p_{M+e_a}
        std::vector<int> j1 = M;
        j1[size_t(a)] += 1;
        MPK p1 = D.coeff(j1);
        if (!p1.is_zero()) {
            UniPoly c = UniPoly(Rational(-2 * (Ma + 1))) - Rational(2) * kr;
            res += root_linear(a) * p1.scaled(c);
        }
        // ordered pairs a != b
        for (int b = 0; b < m; ++b) {
            if (b == a) continue;
            long Mb = M[size_t(b)];
            std::vector<int> jab = M;
            jab[size_t(a)] += 1;
            jab[size_t(b)] += 1;
            MPK pab = D.coeff(jab);
            if (pab.is_zero()) continue;
            int dot = rs.grad_dot(a, b);
            if (dot == 0) continue;
            // - (M_a+1)(M_b+1)(grad a . grad b) - 2(k+r)(M_b+1)(grad a . grad b)
            UniPoly c = UniPoly(Rational(-(Ma + 1) * (Mb + 1) * dot)) -
                        Rational(2 * (Mb + 1) * dot) * kr;
            res += pab.scaled(c);
        }
    }
    return res;
}

// every index M at which some term of the residual could appear
inline std::set<std::vector<int>> residual_support(const RootSystemA& rs, const IndexedOp& D) {
    int m = rs.count();
    int maxdeg = 0;
    for (const auto& [j, pj] : D.p) maxdeg = std::max(maxdeg, pj.total_degree());
    std::set<std::vector<int>> out;
    for (const auto& [j, pj] : D.p) {
        for (int a = 0; a < m; ++a) {
            for (int s = 1; s <= maxdeg + 1; ++s) {
                std::vector<int> M = j;
                M[size_t(a)] -= s;
                out.insert(M);
            }
            std::vector<int> M2 = j;
            M2[size_t(a)] -= 2;
            out.insert(M2);
            for (int b = 0; b < m; ++b) {
                if (b == a) continue;
                std::vector<int> Mab = j;
                Mab[size_t(a)] -= 1;
                Mab[size_t(b)] -= 1;
                out.insert(Mab);
            }
        }
    }
    return out;
}

inline std::map<std::vector<int>, MPK> residual_map(const RootSystemA& rs, const IndexedOp& D,
                                                    int shift_r) {
    std::map<std::vector<int>, MPK> out;
    for (const auto& M : residual_support(rs, D)) {
        MPK r = recursion_residual(rs, D, shift_r, M);
        if (!r.is_zero()) out.emplace(M, std::move(r));
    }
    return out;
}

// re-embed an m- or n-variable polynomial into 2n variables at an offset
inline MPK mpk_embed(const MPK& p, int offset, int total) {
    MPK out(total);
    for (const auto& [e, c] : p.terms()) {
        Expvec ne(size_t(total), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[size_t(offset) + i] = e[i];
        out.add_term(std::move(ne), c);
    }
    return out;
}

// sum_M abar^M(t) residual_M(lambda), cleared of denominators: a polynomial
// identity in (t, lambda) over Q[k].  For a single root the abar^M are
// linearly independent and the residuals must vanish index by index; for
// three or more roots they satisfy relations (for A_2, a12 + a23 = a13), so
// only this assembled sum is representation independent.
inline MPK recursion_aggregate(const RootSystemA& rs, const IndexedOp& D, int shift_r) {
    int n = rs.n;
    int m = rs.count();
    auto residuals = residual_map(rs, D, shift_r);
    std::vector<int> clear(size_t(m), 0);
    for (const auto& [M, poly] : residuals)
        for (int i = 0; i < m; ++i) clear[size_t(i)] = std::max(clear[size_t(i)], -M[size_t(i)]);
    MPK total(2 * n);
    for (const auto& [M, poly] : residuals) {
        std::vector<int> pw = clear;
        for (int i = 0; i < m; ++i) pw[size_t(i)] += M[size_t(i)];
        total += mpk_embed(rs.alpha_prod(pw), 0, 2 * n) * mpk_embed(poly, n, 2 * n);
    }
    return total;
}

// the recursion criterion in its representation-independent form: the
// residual family must represent the zero operator.  With one positive root
// this is equivalent to every residual vanishing.
inline bool recursion_check(const RootSystemA& rs, const IndexedOp& D, int shift_r) {
    if (rs.count() == 1) return residual_map(rs, D, shift_r).empty();
    return recursion_aggregate(rs, D, shift_r).is_zero();
}

// homogeneous degree-zero ansatz for the shift family: indices j <= N with
// sum j >= 0, coefficient p_j homogeneous of degree sum j
struct ShiftAnsatz {
    int n = 0;
    int r = 0;
    std::vector<int> N;
    std::vector<std::pair<std::vector<int>, Expvec>> unknowns;  // (index, monomial)
};

inline void enumerate_monomials(int arity, int deg, Expvec& cur, int pos,
                                std::vector<Expvec>& out) {
    if (pos == arity - 1) {
        cur[size_t(pos)] = deg;
        out.push_back(cur);
        return;
    }
    for (int d = 0; d <= deg; ++d) {
        cur[size_t(pos)] = d;
        enumerate_monomials(arity, deg - d, cur, pos + 1, out);
    }
}

inline ShiftAnsatz make_ansatz(int n, int r = -1) {
    if (r >= 0) throw usage_error("make_ansatz: only negative shifts supported");
    RootSystemA rs(n);
    int m = rs.count();
    ShiftAnsatz az;
    az.n = n;
    az.r = r;
    az.N.assign(size_t(m), -r);
    int top = -r;
    int lo = -(m - 1) * top;  // sum j >= 0 and j <= N force each entry >= lo
    std::vector<int> j(size_t(m), lo);
    for (;;) {
        int sum = 0;
        for (int x : j) sum += x;
        if (sum >= 0) {
            std::vector<Expvec> mons;
            Expvec cur(size_t(n), 0);
            enumerate_monomials(n, sum, cur, 0, mons);
            for (auto& e : mons) az.unknowns.emplace_back(j, e);
        }
        size_t v = 0;
        for (; v < j.size(); ++v) {
            if (j[v] < top) {
                ++j[v];
                break;
            }
            j[v] = lo;
        }
        if (v == j.size()) break;
    }
    return az;
}

inline IndexedOp ansatz_basis_op(const ShiftAnsatz& az, size_t u) {
    IndexedOp D;
    D.n = az.n;
    const auto& [j, e] = az.unknowns[u];
    D.add(j, MPK::monomial(az.n, e, UniPoly(1)));
    return D;
}

// rows of the system "op == 0", linearized over a family of operators: each
// (partial exponent, monomial) pair contributes one Q[k]-row after the
// coefficients are put over a common root denominator
inline std::vector<std::vector<UniPoly>> operator_rows(const RootSystemA& rs,
                                                       const std::vector<RadialOp>& ops) {
    std::map<Expvec, std::vector<int>, GrlexGreater> maxden;
    for (const auto& op : ops)
        for (const auto& [b, c] : op.terms()) {
            auto [it, inserted] = maxden.emplace(b, c.den);
            if (!inserted)
                for (size_t r = 0; r < c.den.size(); ++r)
                    it->second[r] = std::max(it->second[r], c.den[r]);
        }
    std::map<std::pair<Expvec, Expvec>, std::vector<UniPoly>> rows;
    for (size_t u = 0; u < ops.size(); ++u)
        for (const auto& [b, c] : ops[u].terms()) {
            std::vector<int> up(size_t(rs.count()), 0);
            const auto& md = maxden.at(b);
            for (size_t r = 0; r < up.size(); ++r) up[r] = md[r] - c.den[r];
            MPK num = c.num * rs.alpha_prod(up);
            for (const auto& [e, coef] : num.terms()) {
                auto [it, inserted] =
                    rows.emplace(std::make_pair(b, e), std::vector<UniPoly>(ops.size()));
                it->second[u] = coef;
            }
        }
    std::vector<std::vector<UniPoly>> out;
    out.reserve(rows.size());
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

// rows of "all recursion residuals vanish", linearized over the ansatz
inline std::vector<std::vector<UniPoly>> recursion_rows(const ShiftAnsatz& az) {
    RootSystemA rs(az.n);
    std::map<std::pair<std::vector<int>, Expvec>, std::vector<UniPoly>> rows;
    for (size_t u = 0; u < az.unknowns.size(); ++u) {
        IndexedOp B = ansatz_basis_op(az, u);
        for (const auto& [M, poly] : residual_map(rs, B, az.r))
            for (const auto& [e, coef] : poly.terms()) {
                auto [it, inserted] = rows.emplace(std::make_pair(M, e),
                                                   std::vector<UniPoly>(az.unknowns.size()));
                it->second[u] = coef;
            }
    }
    std::vector<std::vector<UniPoly>> out;
    out.reserve(rows.size());
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

struct ShiftGenerator {
    int n = 0;
    int r = -1;
    std::vector<int> N;
    IndexedOp D;            // an indexed representative (unique up to syzygies)
    RadialOp op;            // the operator itself (representation independent)
    UniPoly pN_scale;       // p_N = pN_scale * prod alpha
    RatFunc ct;             // constant term = op(1) / pN_scale
    size_t defect_nullity = 0;  // nullity of the intertwining system
    size_t syzygy_dim = 0;      // indexed representations of the zero operator
    bool recursion_ok = false;  // residual family represents the zero operator

    ShiftGenerator() : op(RootSystemA(1)) {}
};

inline IndexedOp assemble_indexed(const ShiftAnsatz& az, const std::vector<UniPoly>& vec) {
    IndexedOp D;
    D.n = az.n;
    for (size_t u = 0; u < az.unknowns.size(); ++u) {
        if (vec[u].is_zero()) continue;
        const auto& [j, e] = az.unknowns[u];
        D.add(j, MPK::monomial(az.n, e, vec[u]));
    }
    return D;
}

inline ShiftGenerator solve_shift_generator(int n, int r = -1, int max_n = 3) {
    if (n < 2) throw usage_error("solve_shift_generator: n >= 2 required");
    if (n > max_n)
        throw usage_error("solve_shift_generator: n=" + std::to_string(n) +
                          " exceeds resource guard (max " + std::to_string(max_n) + ")");
    RootSystemA rs(n);
    ShiftAnsatz az = make_ansatz(n, r);
    size_t nu = az.unknowns.size();

    std::vector<RadialOp> basis_ops, defect_ops;
    for (size_t u = 0; u < nu; ++u) {
        RadialOp B = indexed_to_radial(rs, ansatz_basis_op(az, u));
        defect_ops.push_back(shift_defect(B, r));
        basis_ops.push_back(std::move(B));
    }

    ShiftGenerator g;
    g.n = n;
    g.r = r;
    g.N = az.N;

    auto defect_null = nullspace_k(operator_rows(rs, defect_ops), nu);
    auto syzygies = nullspace_k(operator_rows(rs, basis_ops), nu);
    g.defect_nullity = defect_null.size();
    g.syzygy_dim = syzygies.size();
    if (g.defect_nullity == g.syzygy_dim)
        throw math_error("solve_shift_generator: empty nullspace, ansatz bounds too small");
    if (g.defect_nullity != g.syzygy_dim + 1)
        throw math_error("solve_shift_generator: solution space is not one-dimensional");

    // pick a representative that is nonzero as an operator; the solutions
    // modulo syzygies form a line, so any such choice is the generator up
    // to a Q(k)-scalar
    for (const auto& vec : defect_null) {
        IndexedOp cand = assemble_indexed(az, vec);
        RadialOp cop = indexed_to_radial(rs, cand);
        if (cop.is_zero()) continue;
        g.D = std::move(cand);
        g.op = std::move(cop);
        break;
    }
    if (g.op.is_zero())
        throw math_error("solve_shift_generator: every nullspace vector is a zero operator");
    if (!shift_defect(g.op, r).is_zero())
        throw math_error("solve_shift_generator: solution fails the defect recheck");
    g.recursion_ok = recursion_check(rs, g.D, r);
    if (!g.recursion_ok)
        throw math_error("solve_shift_generator: solution fails the recursion check");

    // p_N is representation independent: a syzygy with a nonzero top-index
    // coefficient would be a nonzero operator at partial order sum(N)
    std::vector<int> ones(size_t(rs.count()), 1);
    MPK pN = g.D.coeff(az.N);
    MPK q = MPK::exact_div(pN, rs.alpha_prod(ones));  // throws when not divisible
    if (q.term_count() != 1 || q.total_degree() != 0)
        throw math_error("solve_shift_generator: p_N / prod alpha is not a scalar");
    g.pN_scale = q.terms().begin()->second;

    // CT(g) = g(1): the only summand surviving on constants is the scalar one
    RatCoef applied = g.op.apply_rc(MPK::constant(n, UniPoly(1)));
    UniPoly ct_num;
    if (!applied.is_zero()) {
        bool clean = true;
        for (int d : applied.den) clean = clean && d == 0;
        if (!clean || applied.num.total_degree() != 0)
            throw math_error("solve_shift_generator: g(1) is not a scalar");
        ct_num = applied.num.terms().begin()->second;
    }
    g.ct = RatFunc(ct_num, g.pN_scale);
    return g;
}

// n! prod_{d=2}^n prod_{j=1}^{d-1} (d(k+1) + j)
inline UniPoly ct_formula(int n) {
    UniPoly out(Rational(factorial((unsigned long)n)));
    UniPoly k = UniPoly::variable();
    for (int d = 2; d <= n; ++d)
        for (int j = 1; j < d; ++j)
            out *= Rational(d) * k + UniPoly(Rational(d + j));
    return out;
}

inline RatFunc ratfunc_monic(const RatFunc& f) {
    if (f.is_zero()) return f;
    Rational lead = f.num().lc() / f.den().lc();
    return f / RatFunc(lead);
}

inline RatFunc ratfunc_shift(const RatFunc& f, const Rational& a) {
    return RatFunc(f.num().shift(a), f.den().shift(a));
}

struct FactorizationReport {
    int n = 0;
    UniPoly bhat;            // closed-form b-hat in k
    RatFunc ct_shifted;      // CT of the generator with k -> k+2
    bool ct_matches = false; // monic CT(k+2) == monic ct_formula(n)
    bool ratio_constant = false;
    Rational observed_constant = 0;  // bhat / ((k+1)^n * monic CT)
    Rational alpha_expected = 0;
    bool ok() const { return ct_matches && ratio_constant && observed_constant == alpha_expected; }
};

inline FactorizationReport verify_factorization(int n, int max_n = 3) {
    FactorizationReport rep;
    rep.n = n;
    rep.bhat = bhat_closed_form(n);
    rep.alpha_expected = alpha_constant(n);
    if (n == 1) {
        // no roots, the generator is scalar: CT = 1 and b-hat = k+1
        rep.ct_shifted = RatFunc(Rational(1));
        rep.ct_matches = ct_formula(1) == UniPoly(1);
        rep.observed_constant = rep.bhat.lc();
        rep.ratio_constant = rep.bhat == UniPoly({1, 1});
        return rep;
    }
    ShiftGenerator g = solve_shift_generator(n, -1, max_n);
    rep.ct_shifted = ratfunc_shift(g.ct, 2);
    RatFunc monic_ct = ratfunc_monic(rep.ct_shifted);
    rep.ct_matches = monic_ct == ratfunc_monic(RatFunc(ct_formula(n)));
    if (!monic_ct.is_polynomial()) return rep;
    UniPoly denom = UniPoly::linear(1, 1).pow((unsigned long)n) * monic_ct.as_poly();
    auto [quot, rem] = UniPoly::divrem(rep.bhat, denom);
    rep.ratio_constant = rem.is_zero() && quot.is_constant();
    if (rep.ratio_constant) rep.observed_constant = quot.constant();
    return rep;
}

}  // namespace bfun
