#pragma once

// Sparse multivariate polynomials with exact coefficients (Q or Q[s]).
// Terms are kept in a map under graded-lex order, so iteration order is the
// canonical serialization order.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bfun/errors.hpp"
#include "bfun/rational.hpp"
#include "bfun/unipoly.hpp"

namespace bfun {

using Expvec = std::vector<int>;

inline int total_deg(const Expvec& e) { return std::accumulate(e.begin(), e.end(), 0); }

// graded lexicographic: higher total degree first, ties broken by the
// exponent of the earliest variable
struct GrlexGreater {
    bool operator()(const Expvec& a, const Expvec& b) const {
        int da = total_deg(a), db = total_deg(b);
        if (da != db) return da > db;
        return a > b;
    }
};

template <class C>
class MultiPoly {
public:
    using Terms = std::map<Expvec, C, GrlexGreater>;

    MultiPoly() : arity_(0) {}
    explicit MultiPoly(int arity) : arity_(arity) {}

    static MultiPoly constant(int arity, const C& c) {
        MultiPoly p(arity);
        p.add_term(Expvec(size_t(arity), 0), c);
        return p;
    }
    static MultiPoly variable(int arity, int i, const C& one) {
        MultiPoly p(arity);
        Expvec e(size_t(arity), 0);
        e[size_t(i)] = 1;
        p.add_term(e, one);
        return p;
    }
    static MultiPoly monomial(int arity, Expvec e, const C& c) {
        MultiPoly p(arity);
        p.add_term(std::move(e), c);
        return p;
    }

    int arity() const { return arity_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }

    void add_term(Expvec e, const C& c) {
        if (bfun::is_zero(c)) return;
        if (int(e.size()) != arity_) throw usage_error("MultiPoly: exponent arity mismatch");
        auto [it, inserted] = t_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (bfun::is_zero(it->second)) t_.erase(it);
        }
    }

    C coeff(const Expvec& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? C{} : it->second;
    }

    int total_degree() const {  // -1 for zero
        return t_.empty() ? -1 : total_deg(t_.begin()->first);
    }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = total_deg(t_.begin()->first);
        for (const auto& [e, c] : t_)
            if (total_deg(e) != d) return false;
        return true;
    }

    bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && t_ == o.t_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.arity_);
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Expvec e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const C& c) const {
        MultiPoly r(arity_);
        for (const auto& [e, v] : t_) r.add_term(e, v * c);
        return r;
    }

    MultiPoly pow(unsigned long n, const C& one) const {
        MultiPoly r = constant(arity_, one);
        MultiPoly b = *this;
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : t_) {
            if (e[size_t(var)] == 0) continue;
            Expvec d = e;
            d[size_t(var)] -= 1;
            r.add_term(std::move(d), Rational(e[size_t(var)]) * c);
        }
        return r;
    }

    // iterated partial derivative, one order per variable
    MultiPoly derivative_multi(const Expvec& order) const {
        MultiPoly r = *this;
        for (int v = 0; v < arity_; ++v)
            for (int i = 0; i < order[size_t(v)]; ++i) r = r.derivative(v);
        return r;
    }

    C eval(const std::vector<Rational>& point) const {
        if (int(point.size()) != arity_) throw usage_error("MultiPoly::eval: bad point arity");
        C r{};
        for (const auto& [e, c] : t_) {
            Rational m = 1;
            for (size_t i = 0; i < e.size(); ++i) m *= rat_pow(point[i], (unsigned long)e[i]);
            r += m * c;
        }
        return r;
    }

    // single-divisor division; returns nullopt when the remainder is nonzero.
    // For coefficient rings that are not fields (Q[s]) coefficient division
    // must itself be exact, otherwise the quotient does not exist here.
    static std::optional<MultiPoly> try_div(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        if (b.is_zero()) throw usage_error("MultiPoly division by zero");
        MultiPoly rem = a;
        MultiPoly q(a.arity_);
        const auto& [eb, cb] = *b.t_.begin();
        while (!rem.is_zero()) {
            const auto& [er, cr] = *rem.t_.begin();
            Expvec d(size_t(a.arity_), 0);
            for (size_t i = 0; i < d.size(); ++i) {
                d[i] = er[i] - eb[i];
                if (d[i] < 0) return std::nullopt;
            }
            C cq;
            if (!coeff_div(cr, cb, cq)) return std::nullopt;
            MultiPoly m = monomial(a.arity_, std::move(d), cq);
            q += m;
            rem -= m * b;
        }
        return q;
    }

    static MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
        auto q = try_div(a, b);
        if (!q) throw math_error("MultiPoly: not divisible");
        return *q;
    }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void check_arity(const MultiPoly& o) const {
        if (arity_ != o.arity_) throw usage_error("MultiPoly: arity mismatch");
    }

    static bool coeff_div(const Rational& a, const Rational& b, Rational& out) {
        out = a / b;
        return true;
    }
    static bool coeff_div(const UniPoly& a, const UniPoly& b, UniPoly& out) {
        auto [q, r] = UniPoly::divrem(a, b);
        if (!r.is_zero()) return false;
        out = q;
        return true;
    }

    int arity_;
    Terms t_;
};

template <class C>
inline bool is_zero(const MultiPoly<C>& p) { return p.is_zero(); }

inline std::string coeff_repr(const Rational& c) { return c.get_str(); }
inline std::string coeff_repr(const UniPoly& c) { return "(" + c.to_string() + ")"; }

template <class C>
std::string MultiPoly<C>::to_string(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : t_) {
        if (!out.empty()) out += " + ";
        out += coeff_repr(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out += "*" + names[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

using MPQ = MultiPoly<Rational>;
using MPK = MultiPoly<UniPoly>;

// lift a Q-coefficient polynomial into Q[k] coefficients
inline MPK lift(const MPQ& p, UniPoly::Var v = UniPoly::Var::k) {
    MPK r(p.arity());
    for (const auto& [e, c] : p.terms()) r.add_term(e, UniPoly(c, v));
    return r;
}

}  // namespace bfun
