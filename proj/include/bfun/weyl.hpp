#pragma once

// Normal-ordered differential operators with polynomial coefficients on
// affine space. Every term is x^a d^b with the coordinate factors on the
// left; the commutation [d_i, x_i] = 1 is applied eagerly in products, so
// equality of operators is structural equality of term maps.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "bfun/multipoly.hpp"

namespace bfun {

struct WeylKeyLess {
    bool operator()(const std::pair<Expvec, Expvec>& a,
                    const std::pair<Expvec, Expvec>& b) const {
        GrlexGreater g;
        if (a.first != b.first) return g(a.first, b.first);
        return g(a.second, b.second);
    }
};

template <class C>
class WeylOp {
public:
    using Key = std::pair<Expvec, Expvec>;  // (x-exponents, d-exponents)
    using Terms = std::map<Key, C, WeylKeyLess>;

    WeylOp() : arity_(0) {}
    explicit WeylOp(int arity) : arity_(arity) {}

    // the operator d(p): every variable of p replaced by the matching
    // partial derivative
    static WeylOp from_poly_partial(const MultiPoly<C>& p) {
        WeylOp op(p.arity());
        for (const auto& [e, c] : p.terms())
            op.add_term(Expvec(size_t(p.arity()), 0), e, c);
        return op;
    }

    static WeylOp multiplication(const MultiPoly<C>& p) {
        WeylOp op(p.arity());
        for (const auto& [e, c] : p.terms())
            op.add_term(e, Expvec(size_t(p.arity()), 0), c);
        return op;
    }

    static WeylOp partial(int arity, int var, const C& one) {
        WeylOp op(arity);
        Expvec b(size_t(arity), 0);
        b[size_t(var)] = 1;
        op.add_term(Expvec(size_t(arity), 0), std::move(b), one);
        return op;
    }

    int arity() const { return arity_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(Expvec a, Expvec b, const C& c) {
        if (bfun::is_zero(c)) return;
        if (int(a.size()) != arity_ || int(b.size()) != arity_)
            throw usage_error("WeylOp: exponent arity mismatch");
        auto [it, inserted] = t_.emplace(Key{std::move(a), std::move(b)}, c);
        if (!inserted) {
            it->second += c;
            if (bfun::is_zero(it->second)) t_.erase(it);
        }
    }

    bool operator==(const WeylOp& o) const { return arity_ == o.arity_ && t_ == o.t_; }
    bool operator!=(const WeylOp& o) const { return !(*this == o); }

    WeylOp& operator+=(const WeylOp& o) {
        check_arity(o);
        for (const auto& [key, c] : o.t_) add_term(key.first, key.second, c);
        return *this;
    }
    WeylOp& operator-=(const WeylOp& o) {
        check_arity(o);
        for (const auto& [key, c] : o.t_) add_term(key.first, key.second, -c);
        return *this;
    }
    friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }

    WeylOp scaled(const C& c) const {
        WeylOp r(arity_);
        for (const auto& [key, v] : t_) r.add_term(key.first, key.second, v * c);
        return r;
    }

    // order = top total derivative count (the classical filtration)
    int op_order() const {
        int m = 0;
        for (const auto& [key, c] : t_) m = std::max(m, total_deg(key.second));
        return m;
    }

    // grade = |a| - |b| when uniform across terms, otherwise nullopt
    std::optional<int> op_grade() const {
        if (t_.empty()) throw usage_error("op_grade of zero operator");
        std::optional<int> g;
        for (const auto& [key, c] : t_) {
            int d = total_deg(key.first) - total_deg(key.second);
            if (!g)
                g = d;
            else if (*g != d)
                return std::nullopt;
        }
        return g;
    }

    MultiPoly<C> apply(const MultiPoly<C>& p) const {
        if (p.arity() != arity_) throw usage_error("WeylOp::apply: arity mismatch");
        MultiPoly<C> r(arity_);
        for (const auto& [key, c] : t_) {
            const auto& [a, b] = key;
            for (const auto& [e, pc] : p.terms()) {
                // d^b x^e = prod falling(e_i, b_i) x^{e-b}, zero if any e_i < b_i
                Rational scale = 1;
                Expvec ne(size_t(arity_), 0);
                bool dead = false;
                for (size_t i = 0; i < ne.size(); ++i) {
                    if (e[i] < b[i]) {
                        dead = true;
                        break;
                    }
                    scale *= Rational(falling(e[i], (unsigned long)b[i]));
                    ne[i] = e[i] - b[i] + a[i];
                }
                if (dead || bfun::is_zero(scale)) continue;
                r.add_term(std::move(ne), scale * (c * pc));
            }
        }
        return r;
    }

    friend WeylOp weyl_mul(const WeylOp& A, const WeylOp& B) {
        A.check_arity(B);
        WeylOp r(A.arity_);
        for (const auto& [ka, ca] : A.t_) {
            const auto& [a1, b1] = ka;
            for (const auto& [kb, cb] : B.t_) {
                const auto& [a2, b2] = kb;
                // d^{b1} x^{a2} = sum_j prod_i C(b1_i,j_i) falling(a2_i,j_i)
                //                 x^{a2-j} d^{b1-j}
                Expvec j(size_t(A.arity_), 0);
                for (;;) {
                    Rational scale = 1;
                    for (size_t i = 0; i < j.size(); ++i)
                        scale *= Rational(binomial((unsigned long)b1[i], (unsigned long)j[i]) *
                                          falling(a2[i], (unsigned long)j[i]));
                    if (!bfun::is_zero(scale)) {
                        Expvec na(size_t(A.arity_), 0), nb(size_t(A.arity_), 0);
                        for (size_t i = 0; i < j.size(); ++i) {
                            na[i] = a1[i] + a2[i] - j[i];
                            nb[i] = b1[i] - j[i] + b2[i];
                        }
                        r.add_term(std::move(na), std::move(nb), scale * (ca * cb));
                    }
                    // advance multi-index j <= min(b1, a2)
                    size_t v = 0;
                    for (; v < j.size(); ++v) {
                        if (j[v] < std::min(b1[v], a2[v])) {
                            ++j[v];
                            break;
                        }
                        j[v] = 0;
                    }
                    if (v == j.size()) break;
                }
            }
        }
        return r;
    }

private:
    void check_arity(const WeylOp& o) const {
        if (arity_ != o.arity_) throw usage_error("WeylOp: arity mismatch");
    }

    int arity_;
    Terms t_;
};

using WeylQ = WeylOp<Rational>;
using WeylK = WeylOp<UniPoly>;

}  // namespace bfun
