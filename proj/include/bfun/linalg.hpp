#pragma once

// Exact nullspace of a matrix over Q(k), entered with Q[k] entries.
// Fraction-free (Bareiss) forward elimination keeps every intermediate in
// Q[k]; back substitution runs over Q(k) and the resulting basis vectors are
// cleared back to Q[k] with unit content.

#include <vector>

#include "bfun/ratfunc.hpp"

namespace bfun {

inline std::vector<std::vector<UniPoly>> nullspace_k(std::vector<std::vector<UniPoly>> a,
                                                     size_t ncols) {
    for (const auto& row : a)
        if (row.size() != ncols) throw usage_error("nullspace_k: ragged matrix");

    std::vector<size_t> pivot_col;
    UniPoly prev(Rational(1));
    size_t rank = 0;
    for (size_t c = 0; c < ncols && rank < a.size(); ++c) {
        // pivot of least degree keeps intermediate growth down
        size_t piv = a.size();
        for (size_t i = rank; i < a.size(); ++i) {
            if (a[i][c].is_zero()) continue;
            if (piv == a.size() || a[i][c].degree() < a[piv][c].degree()) piv = i;
        }
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        for (size_t i = rank + 1; i < a.size(); ++i) {
            for (size_t j = c + 1; j < ncols; ++j)
                a[i][j] = UniPoly::exact_div(a[rank][c] * a[i][j] - a[i][c] * a[rank][j], prev);
            a[i][c] = UniPoly();
        }
        prev = a[rank][c];
        pivot_col.push_back(c);
        ++rank;
    }

    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<UniPoly>> basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RatFunc> x(ncols, RatFunc(UniPoly()));
        x[f] = RatFunc(UniPoly(Rational(1)));
        for (size_t r = rank; r-- > 0;) {
            size_t pc = pivot_col[r];
            RatFunc s{UniPoly()};
            for (size_t j = pc + 1; j < ncols; ++j) {
                if (a[r][j].is_zero()) continue;
                s = s + RatFunc(a[r][j]) * x[j];
            }
            x[pc] = RatFunc(UniPoly()) - s / RatFunc(a[r][pc]);
        }
        // clear denominators and divide out the polynomial content
        UniPoly lcm(Rational(1));
        for (const auto& v : x) {
            if (v.is_zero()) continue;
            UniPoly g = UniPoly::gcd(lcm, v.den());
            lcm = UniPoly::exact_div(lcm * v.den(), g.is_zero() ? UniPoly(Rational(1)) : g);
        }
        std::vector<UniPoly> vec(ncols);
        for (size_t i = 0; i < ncols; ++i)
            vec[i] = x[i].is_zero() ? UniPoly()
                                    : x[i].num() * UniPoly::exact_div(lcm, x[i].den());
        UniPoly content;
        for (const auto& v : vec)
            if (!v.is_zero()) content = UniPoly::gcd(content, v);
        if (!content.is_zero())
            for (auto& v : vec) v = UniPoly::exact_div(v, content);
        basis.push_back(std::move(vec));
    }
    return basis;
}

}  // namespace bfun
