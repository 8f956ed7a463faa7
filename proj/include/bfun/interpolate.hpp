#pragma once

// Exact univariate interpolation through rational points (Newton form).
// Extra points beyond degree_bound+1 are consistency-checked against the
// interpolant; an inconsistency means the data does not come from a
// polynomial of the claimed degree.

#include <utility>
#include <vector>

#include "bfun/errors.hpp"
#include "bfun/unipoly.hpp"

namespace bfun {

inline UniPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points,
                           int degree_bound, UniPoly::Var var = UniPoly::Var::k) {
    size_t need = size_t(degree_bound) + 1;
    if (points.size() < need)
        throw usage_error("interpolate: need at least degree_bound+1 points");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw usage_error("interpolate: duplicate abscissa");

    // Newton divided differences on the first degree_bound+1 points
    std::vector<Rational> x(need), dd(need);
    for (size_t i = 0; i < need; ++i) {
        x[i] = points[i].first;
        dd[i] = points[i].second;
    }
    for (size_t level = 1; level < need; ++level)
        for (size_t i = need - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);

    UniPoly p(Rational(0), var);
    UniPoly basis(Rational(1), var);
    for (size_t i = 0; i < need; ++i) {
        p += dd[i] * basis;
        basis *= UniPoly::linear(1, -x[i], var);
    }

    for (size_t i = 0; i < points.size(); ++i)
        if (p.eval(points[i].first) != points[i].second)
            throw math_error("interpolate: degree bound violated at extra point");
    return p;
}

}  // namespace bfun
