#pragma once

// The matrix side: Krylov matrices, the cyclic-pair polynomial f, the
// constant-coefficient operator S, semi-invariance checks, and the local
// chart around a diagonalizable point.
//
// Variable layout for the space of pairs (M, v), arity n^2 + n:
//   index(m^i_j) = (i-1)*n + (j-1)   for 1 <= i, j <= n   (row-major)
//   index(v_i)   = n^2 + (i-1)
// This order is fixed; the serialization and the cache depend on it.

#include <string>
#include <vector>

#include "bfun/multipoly.hpp"
#include "bfun/weyl.hpp"

namespace bfun {

struct CyclicPairSpace {
    int n;
    explicit CyclicPairSpace(int n_) : n(n_) {}
    int arity() const { return n * n + n; }
    int m_index(int i, int j) const { return (i - 1) * n + (j - 1); }  // 1-based
    int v_index(int i) const { return n * n + (i - 1); }               // 1-based
    int f_degree() const { return n * (n + 1) / 2; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                out.push_back("m" + std::to_string(i) + "_" + std::to_string(j));
        for (int i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
        return out;
    }
};

using MatQ = std::vector<std::vector<Rational>>;
using VecQ = std::vector<Rational>;

inline MatQ mat_mul(const MatQ& a, const MatQ& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    MatQ r(n, VecQ(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

inline VecQ mat_vec(const MatQ& a, const VecQ& x) {
    VecQ r(a.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
    return r;
}

inline Rational mat_det(MatQ a) {  // exact Gaussian elimination
    size_t n = a.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && bfun::is_zero(a[piv][col])) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (bfun::is_zero(a[r][col])) continue;
            Rational fac = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= fac * a[col][c];
        }
    }
    return det;
}

inline int mat_rank(MatQ a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && bfun::is_zero(a[piv][col])) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        for (size_t r = row + 1; r < rows; ++r) {
            if (bfun::is_zero(a[r][col])) continue;
            Rational fac = a[r][col] / a[row][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= fac * a[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline MatQ mat_inverse(const MatQ& a) {
    size_t n = a.size();
    MatQ aug(n, VecQ(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && bfun::is_zero(aug[piv][col])) ++piv;
        if (piv == n) throw usage_error("mat_inverse: singular matrix");
        std::swap(aug[piv], aug[col]);
        Rational d = aug[col][col];
        for (size_t c = 0; c < 2 * n; ++c) aug[col][c] /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || bfun::is_zero(aug[r][col])) continue;
            Rational fac = aug[r][col];
            for (size_t c = 0; c < 2 * n; ++c) aug[r][c] -= fac * aug[col][c];
        }
    }
    MatQ inv(n, VecQ(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

template <class C>
C unit_coeff();
template <>
inline Rational unit_coeff<Rational>() { return Rational(1); }
template <>
inline UniPoly unit_coeff<UniPoly>() { return UniPoly(Rational(1)); }

// determinant of a small symbolic matrix: cofactor expansion along the
// first remaining row, minors memoized by column bitmask
template <class C>
MultiPoly<C> det_symbolic(const std::vector<std::vector<MultiPoly<C>>>& m) {
    size_t n = m.size();
    std::vector<std::optional<MultiPoly<C>>> memo(size_t(1) << n);
    auto rec = [&](auto&& self, unsigned cols) -> MultiPoly<C> {
        if (memo[cols]) return *memo[cols];
        size_t row = n - size_t(__builtin_popcount(cols));
        MultiPoly<C> det(m[0][0].arity());
        int sign = 1;
        for (size_t c = 0; c < n; ++c) {
            if (!(cols & (1u << c))) continue;
            MultiPoly<C> minor = self(self, cols & ~(1u << c));
            MultiPoly<C> contrib = m[row][c] * minor;
            if (sign < 0) contrib = -contrib;
            det += contrib;
            sign = -sign;
        }
        memo[cols] = det;
        return det;
    };
    // base case: empty minor = 1
    memo[0] = MultiPoly<C>::constant(m[0][0].arity(), unit_coeff<C>());
    return rec(rec, (1u << n) - 1);
}

// columns of the Krylov matrix [v  Mv  M^2 v ... M^{n-1} v] as symbolic
// polynomials; krylov[i][j] is row i, column j (0-based)
inline std::vector<std::vector<MPQ>> krylov_matrix(int n) {
    if (n < 1) throw usage_error("krylov_matrix: n >= 1 required");
    CyclicPairSpace sp(n);
    int arity = sp.arity();
    std::vector<MPQ> col(size_t(n), MPQ{arity});
    for (int i = 1; i <= n; ++i)
        col[size_t(i - 1)] = MPQ::variable(arity, sp.v_index(i), Rational(1));
    std::vector<std::vector<MPQ>> k(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) k[size_t(i)][size_t(j)] = col[size_t(i)];
        if (j + 1 < n) {
            std::vector<MPQ> next(size_t(n), MPQ{arity});
            for (int i = 1; i <= n; ++i)
                for (int l = 1; l <= n; ++l)
                    next[size_t(i - 1)] +=
                        MPQ::variable(arity, sp.m_index(i, l), Rational(1)) * col[size_t(l - 1)];
            col = std::move(next);
        }
    }
    return k;
}

inline void check_resource_guard(int n, int max_n, const char* what) {
    if (n > max_n)
        throw usage_error(std::string(what) + ": n=" + std::to_string(n) +
                          " exceeds resource guard (max " + std::to_string(max_n) + ")");
}

// f(M, v) = det C(M, v), homogeneous of degree n(n+1)/2
inline MPQ cyclic_det(int n, int max_n = 4) {
    check_resource_guard(n, max_n, "cyclic_det");
    return det_symbolic(krylov_matrix(n));
}

// S = f with every variable replaced by the matching partial derivative
inline WeylQ build_S(int n, int max_n = 4) {
    MPQ f = cyclic_det(n, max_n);
    return WeylQ::from_poly_partial(f);
}

// exact rank test of the numeric Krylov matrix
inline bool is_cyclic(const MatQ& m, const VecQ& v) {
    size_t n = v.size();
    if (m.size() != n) throw usage_error("is_cyclic: dimension mismatch");
    for (const auto& row : m)
        if (row.size() != n) throw usage_error("is_cyclic: matrix not square");
    MatQ kry(n, VecQ(n));
    VecQ col = v;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) kry[i][j] = col[i];
        if (j + 1 < n) col = mat_vec(m, col);
    }
    return mat_rank(kry) == int(n);
}

inline Rational eval_f(const MatQ& m, const VecQ& v) {
    size_t n = v.size();
    MatQ kry(n, VecQ(n));
    VecQ col = v;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) kry[i][j] = col[i];
        if (j + 1 < n) col = mat_vec(m, col);
    }
    return mat_det(kry);
}

// f(T M T^-1, T v) == det(T) f(M, v), checked exactly
inline bool semiinvariance_check(const MatQ& t, const MatQ& m, const VecQ& v) {
    Rational dt = mat_det(t);
    if (bfun::is_zero(dt)) throw usage_error("semiinvariance_check: singular T");
    MatQ conj = mat_mul(mat_mul(t, m), mat_inverse(t));
    return eval_f(conj, mat_vec(t, v)) == dt * eval_f(m, v);
}

// Chart variables for n: off-diagonal t^i_j, then diagonal a_i, then v_i.
struct LocalChart {
    int n;
    explicit LocalChart(int n_) : n(n_) {}
    int arity() const { return n * n + n; }  // (n^2 - n) + n + n
    int t_index(int i, int j) const {        // 1-based, i != j
        int idx = 0;
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c) {
                if (r == c) continue;
                if (r == i && c == j) return idx;
                ++idx;
            }
        throw usage_error("LocalChart: bad off-diagonal index");
    }
    int a_index(int i) const { return (n * n - n) + (i - 1); }
    int v_index(int i) const { return (n * n - n) + n + (i - 1); }
};

// Verifies det[w, Mhat w, ..., Mhat^{n-1} w] ==
//   det(T)^{n(n-1)/2} * det(T) * prod v_i * prod_{i<j} (a_j - a_i)
// where Mhat = T A adj(T) = det(T) * T A T^{-1} and w = T v. This is the
// denominator-cleared form of f(T A T^{-1}, T v) = det(T) det(C(A, v)).
inline bool local_chart_identity(int n, int max_n = 3) {
    check_resource_guard(n, max_n, "local_chart_identity");
    LocalChart ch(n);
    int arity = ch.arity();
    auto var = [&](int idx) { return MPQ::variable(arity, idx, Rational(1)); };

    std::vector<std::vector<MPQ>> T(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            T[size_t(i - 1)][size_t(j - 1)] =
                (i == j) ? MPQ::constant(arity, Rational(1)) : var(ch.t_index(i, j));

    Rational one(1);
    MPQ detT = det_symbolic(T);

    // adj(T): cofactor matrix transposed
    std::vector<std::vector<MPQ>> adj(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<MPQ>> minor;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<MPQ> row;
                for (int c = 0; c < n; ++c)
                    if (c != j) row.push_back(T[size_t(r)][size_t(c)]);
                minor.push_back(std::move(row));
            }
            MPQ cof = (n == 1) ? MPQ::constant(arity, one) : det_symbolic(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj[size_t(j)][size_t(i)] = cof;
        }

    // Mhat = T A adj(T)
    std::vector<std::vector<MPQ>> TA(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) TA[size_t(i)][size_t(j)] = T[size_t(i)][size_t(j)] * var(ch.a_index(j + 1));
    std::vector<std::vector<MPQ>> Mhat(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                Mhat[size_t(i)][size_t(j)] += TA[size_t(i)][size_t(l)] * adj[size_t(l)][size_t(j)];

    std::vector<MPQ> w(size_t(n), MPQ{arity});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[size_t(i)] += T[size_t(i)][size_t(j)] * var(ch.v_index(j + 1));

    std::vector<std::vector<MPQ>> kry(size_t(n), std::vector<MPQ>(size_t(n), MPQ{arity}));
    std::vector<MPQ> col = w;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) kry[size_t(i)][size_t(j)] = col[size_t(i)];
        if (j + 1 < n) {
            std::vector<MPQ> next(size_t(n), MPQ{arity});
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) next[size_t(i)] += Mhat[size_t(i)][size_t(l)] * col[size_t(l)];
            col = std::move(next);
        }
    }
    MPQ lhs = det_symbolic(kry);

    MPQ rhs = detT.pow((unsigned long)(n * (n - 1) / 2), one) * detT;
    for (int i = 1; i <= n; ++i) rhs *= var(ch.v_index(i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) rhs *= var(ch.a_index(j)) - var(ch.a_index(i));

    return lhs == rhs;
}

// d_{v_1}...d_{v_n} (v_1...v_n)^{k+1} = (k+1)^n (v_1...v_n)^k.
// Some sources carry an extra n! in this factor; only the monic part
// matters for roots, so we return (s+1)^n and report the observed scalar.
struct LocalB1Result {
    UniPoly monic_factor;      // (s+1)^n
    Rational observed_scalar;  // (k+1)^n as computed
    Rational alt_scalar;       // n! (k+1)^n, the variant carrying the n!
};

inline LocalB1Result local_b1_check(int n, int k, int max_n = 3) {
    check_resource_guard(n, max_n, "local_b1_check");
    MPQ prod = MPQ::constant(n, Rational(1));
    for (int i = 0; i < n; ++i) prod *= MPQ::variable(n, i, Rational(1));
    MPQ p = prod.pow((unsigned long)(k + 1), Rational(1));
    for (int i = 0; i < n; ++i) p = p.derivative(i);
    MPQ q = (k == 0) ? p : MPQ::exact_div(p, prod.pow((unsigned long)k, Rational(1)));
    if (q.term_count() != 1 || q.total_degree() != 0)
        throw math_error("local_b1_check: quotient is not a scalar");
    Rational scalar = q.terms().begin()->second;
    Rational expected = rat_pow(Rational(k + 1), (unsigned long)n);
    if (scalar != expected) throw math_error("local_b1_check: scalar != (k+1)^n");
    return {UniPoly::linear(1, 1, UniPoly::Var::s).pow((unsigned long)n), scalar,
            Rational(factorial((unsigned long)n)) * expected};
}

}  // namespace bfun
