#pragma once

// Dense univariate polynomials over Q, used for everything living in Q[s]
// (equivalently Q[k]). Coefficients are stored lowest degree first with no
// trailing zeros.

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "bfun/errors.hpp"
#include "bfun/rational.hpp"

namespace bfun {

class UniPoly {
public:
    enum class Var { s, k };

    UniPoly() = default;
    explicit UniPoly(const Rational& c, Var v = Var::k) : var_(v) {
        if (!bfun::is_zero(c)) c_.push_back(c);
    }
    UniPoly(std::vector<Rational> coeffs, Var v = Var::k)
        : var_(v), c_(std::move(coeffs)) {
        trim();
    }
    UniPoly(long c, Var v = Var::k) : UniPoly(Rational(c), v) {}
    UniPoly(std::initializer_list<long> coeffs, Var v = Var::k) : var_(v) {
        for (long x : coeffs) c_.push_back(Rational(x));
        trim();
    }

    static UniPoly variable(Var v = Var::k) { return UniPoly({0, 1}, v); }
    // a*x + b
    static UniPoly linear(const Rational& a, const Rational& b, Var v = Var::k) {
        return UniPoly({b, a}, v);
    }

    Var var() const { return var_; }
    void set_var(Var v) { var_ = v; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    // degree of the zero polynomial is -1
    int degree() const { return int(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational constant() const { return coeff(0); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (is_constant() && !o.is_constant()) var_ = o.var_;
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        UniPoly r;
        r.var_ = a.is_constant() ? b.var_ : a.var_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend UniPoly operator*(const Rational& a, const UniPoly& b) {
        if (bfun::is_zero(a)) return UniPoly();
        UniPoly r = b;
        for (auto& x : r.c_) x *= a;
        return r;
    }

    Rational eval(const Rational& x) const {  // Horner
        Rational r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(Rational(0), var_);
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(long(i)) * c_[i];
        return UniPoly(std::move(d), var_);
    }

    // p(x + a)
    UniPoly shift(const Rational& a) const {
        UniPoly r(Rational(0), var_);
        UniPoly xa = linear(1, a, var_);
        UniPoly pw(Rational(1), var_);
        for (size_t i = 0; i < c_.size(); ++i) {
            r += c_[i] * pw;
            pw *= xa;
        }
        return r;
    }

    UniPoly pow(unsigned long e) const {
        UniPoly r(Rational(1), var_);
        UniPoly b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // quotient and remainder; divisor must be nonzero
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw usage_error("UniPoly division by zero");
        UniPoly r = a;
        UniPoly q(Rational(0), a.var_);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int d = r.degree() - b.degree();
            Rational c = r.lc() / b.lc();
            std::vector<Rational> m(size_t(d) + 1, Rational(0));
            m[size_t(d)] = c;
            UniPoly t(std::move(m), a.var_);
            q += t;
            r -= t * b;
        }
        return {q, r};
    }

    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw math_error("UniPoly: not divisible");
        return q;
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            a = divrem(a, b).second;
            std::swap(a, b);
        }
        return a.is_zero() ? a : a.monic();
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return (Rational(1) / lc()) * *this;
    }

    std::string var_name() const { return var_ == Var::s ? "s" : "k"; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c_.size(); i-- > 0;) {
            if (bfun::is_zero(c_[i])) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].get_str();
            if (i >= 1) out += "*" + var_name();
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && bfun::is_zero(c_.back())) c_.pop_back();
    }

    Var var_ = Var::k;
    std::vector<Rational> c_;
};

inline bool is_zero(const UniPoly& p) { return p.is_zero(); }

}  // namespace bfun
