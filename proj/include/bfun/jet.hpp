#pragma once

// Truncated Taylor expansions of polynomials at a rational base point.
// Coefficient of exponent e is (d^e p)(base)/e!. Storage is a sparse map
// over the simplex |e| <= order; the heavy use case (n=3 jets, 12 variables,
// order 6) stays comfortably sparse.

#include <map>
#include <vector>

#include "bfun/multipoly.hpp"

namespace bfun {

class Jet {
public:
    using Terms = std::map<Expvec, Rational, GrlexGreater>;

    Jet(std::vector<Rational> base, int order)
        : base_(std::move(base)), order_(order) {}

    int arity() const { return int(base_.size()); }
    int order() const { return order_; }
    const std::vector<Rational>& base() const { return base_; }
    const Terms& terms() const { return t_; }

    Rational coeff(const Expvec& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? Rational(0) : it->second;
    }

    void add_term(Expvec e, const Rational& c) {
        if (bfun::is_zero(c) || total_deg(e) > order_) return;
        auto [it, inserted] = t_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (bfun::is_zero(it->second)) t_.erase(it);
        }
    }

    bool operator==(const Jet& o) const {
        return base_ == o.base_ && order_ == o.order_ && t_ == o.t_;
    }

    Jet& operator+=(const Jet& o) {
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.base_, a.order_);
        for (const auto& [ea, ca] : a.t_) {
            int da = total_deg(ea);
            for (const auto& [eb, cb] : b.t_) {
                if (da + total_deg(eb) > a.order_) continue;
                Expvec e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }

    Jet pow(unsigned long n) const {
        Jet r(base_, order_);
        r.add_term(Expvec(base_.size(), 0), 1);
        Jet b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    // value of (d^e p)(base) for the underlying polynomial, |e| <= order
    Rational deriv_at_base(const Expvec& e) const {
        Rational f = 1;
        for (int x : e) f *= Rational(factorial((unsigned long)x));
        return coeff(e) * f;
    }

private:
    std::vector<Rational> base_;
    int order_;
    Terms t_;
};

// number of slots a dense order-m jet in `vars` variables would need;
// used by the CLI memory estimator
inline Integer jet_simplex_size(int vars, int order) {
    return binomial((unsigned long)(vars + order), (unsigned long)order);
}

inline Jet jet_of_poly(const MPQ& p, const std::vector<Rational>& base, int order) {
    if (int(base.size()) != p.arity()) throw usage_error("jet_of_poly: base arity mismatch");
    Jet jet(base, order);
    // expand each monomial prod (base_i + u_i)^{e_i}, truncating as we go
    for (const auto& [e, c] : p.terms()) {
        std::map<Expvec, Rational, GrlexGreater> acc;
        acc.emplace(Expvec(base.size(), 0), c);
        for (size_t v = 0; v < base.size(); ++v) {
            if (e[v] == 0) continue;
            std::map<Expvec, Rational, GrlexGreater> next;
            for (const auto& [pe, pc] : acc) {
                int room = order - total_deg(pe);
                for (int j = 0; j <= e[v] && j <= room + 0; ++j) {
                    // (base + u)^n = sum_j C(n,j) base^{n-j} u^j
                    if (j > room) break;
                    Rational term = pc * Rational(binomial((unsigned long)e[v], (unsigned long)j)) *
                                    rat_pow(base[v], (unsigned long)(e[v] - j));
                    if (bfun::is_zero(term)) continue;
                    Expvec ne = pe;
                    ne[v] += j;
                    auto [it, ins] = next.emplace(std::move(ne), term);
                    if (!ins) it->second += term;
                }
            }
            acc = std::move(next);
        }
        for (const auto& [pe, pc] : acc) jet.add_term(pe, pc);
    }
    return jet;
}

}  // namespace bfun
