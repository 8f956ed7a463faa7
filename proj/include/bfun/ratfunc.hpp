#pragma once

// Rational functions in one variable (the field Q(k) over which shift
// operator nullspaces live). Stored coprime with monic denominator.

#include <string>
#include <utility>

#include "bfun/unipoly.hpp"

namespace bfun {

class RatFunc {
public:
    RatFunc() : num_(Rational(0)), den_(Rational(1)) {}
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    explicit RatFunc(const UniPoly& p) : num_(p), den_(UniPoly(Rational(1), p.var())) {}
    explicit RatFunc(const Rational& c) : num_(UniPoly(c)), den_(UniPoly(Rational(1))) {}

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // only valid when is_polynomial()
    UniPoly as_poly() const {
        if (!is_polynomial()) throw math_error("RatFunc is not a polynomial");
        return (Rational(1) / den_.lc()) * num_;
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw usage_error("RatFunc division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    std::string to_string() const {
        if (is_polynomial()) return as_poly().to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw usage_error("RatFunc with zero denominator");
        if (num_.is_zero()) {
            den_ = UniPoly(Rational(1), den_.var());
            return;
        }
        UniPoly g = UniPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = UniPoly::exact_div(num_, g);
            den_ = UniPoly::exact_div(den_, g);
        }
        Rational lead = den_.lc();
        num_ = (Rational(1) / lead) * num_;
        den_ = (Rational(1) / lead) * den_;
    }

    UniPoly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace bfun
