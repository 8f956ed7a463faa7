#pragma once

// Text serialization for polynomials and operators.  One term per line in
// canonical (graded-lex) map order, so output is deterministic and suitable
// for content-addressed caching.
//
//   MPOLY arity=<n> ring=Q      num/den e1 ... en
//   MPOLY arity=<n> ring=Qk     num/den e1 ... en kdeg   (one line per k-power)
//   WEYL  arity=<n> ring=<...>  num/den a1..an | b1..bn [kdeg]
//   LWEYL n=<n>                 num/den | j over R+ | d-exps | t-exps | kdeg
//
// Rationals always print with an explicit denominator.  Coefficients in
// Q[s] / Q[k] are flattened one line per power of the parameter, highest
// power first; the ring tag names the parameter (Qs or Qk).

#include <sstream>
#include <string>
#include <vector>

#include "bfun/multipoly.hpp"
#include "bfun/radial.hpp"
#include "bfun/weyl.hpp"

namespace bfun {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
    }
    return out;
}

// header of the form "TAG key1=v1 key2=v2"; returns the values in order
inline std::vector<std::string> parse_header(const std::string& line, const std::string& tag,
                                             const std::vector<std::string>& keys) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != tag)
        throw usage_error("serialize: expected " + tag + " header");
    if (toks.size() != keys.size() + 1)
        throw usage_error("serialize: malformed " + tag + " header");
    std::vector<std::string> vals;
    for (size_t i = 0; i < keys.size(); ++i) {
        const std::string& t = toks[i + 1];
        auto eq = t.find('=');
        if (eq == std::string::npos || t.substr(0, eq) != keys[i])
            throw usage_error("serialize: bad header field '" + t + "'");
        vals.push_back(t.substr(eq + 1));
    }
    return vals;
}

inline int parse_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw usage_error("serialize: bad integer '" + s + "'");
    return v;
}

inline std::string ring_name(UniPoly::Var v) { return v == UniPoly::Var::s ? "Qs" : "Qk"; }

}  // namespace detail

// ---------------------------------------------------------------- MPOLY --

inline std::string mpoly_to_text(const MPQ& p) {
    std::ostringstream out;
    out << "MPOLY arity=" << p.arity() << " ring=Q\n";
    for (const auto& [e, c] : p.terms()) {
        out << rat_str(c);
        for (int x : e) out << ' ' << x;
        out << '\n';
    }
    return out.str();
}

inline std::string mpoly_to_text(const MPK& p) {
    UniPoly::Var v = UniPoly::Var::k;
    for (const auto& [e, c] : p.terms())
        if (!c.is_constant()) v = c.var();
    std::ostringstream out;
    out << "MPOLY arity=" << p.arity() << " ring=" << detail::ring_name(v) << "\n";
    for (const auto& [e, c] : p.terms())
        for (size_t d = c.coeffs().size(); d-- > 0;) {
            if (bfun::is_zero(c.coeffs()[d])) continue;
            out << rat_str(c.coeffs()[d]);
            for (int x : e) out << ' ' << x;
            out << ' ' << d << '\n';
        }
    return out.str();
}

inline MPQ parse_mpoly_q(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw usage_error("parse_mpoly_q: empty input");
    auto vals = detail::parse_header(lines[0], "MPOLY", {"arity", "ring"});
    if (vals[1] != "Q") throw usage_error("parse_mpoly_q: ring is " + vals[1] + ", expected Q");
    int arity = detail::parse_int(vals[0]);
    MPQ p(arity);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i]);
        if (int(toks.size()) != arity + 1) throw usage_error("parse_mpoly_q: bad term line");
        Expvec e(size_t(arity), 0);
        for (int v = 0; v < arity; ++v) e[size_t(v)] = detail::parse_int(toks[size_t(v) + 1]);
        p.add_term(std::move(e), parse_rational(toks[0]));
    }
    return p;
}

inline MPK parse_mpoly_k(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw usage_error("parse_mpoly_k: empty input");
    auto vals = detail::parse_header(lines[0], "MPOLY", {"arity", "ring"});
    UniPoly::Var var;
    if (vals[1] == "Qk")
        var = UniPoly::Var::k;
    else if (vals[1] == "Qs")
        var = UniPoly::Var::s;
    else
        throw usage_error("parse_mpoly_k: ring is " + vals[1] + ", expected Qk or Qs");
    int arity = detail::parse_int(vals[0]);
    MPK p(arity);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i]);
        if (int(toks.size()) != arity + 2) throw usage_error("parse_mpoly_k: bad term line");
        Expvec e(size_t(arity), 0);
        for (int v = 0; v < arity; ++v) e[size_t(v)] = detail::parse_int(toks[size_t(v) + 1]);
        int kd = detail::parse_int(toks.back());
        if (kd < 0) throw usage_error("parse_mpoly_k: negative parameter degree");
        std::vector<Rational> c(size_t(kd) + 1, Rational(0));
        c[size_t(kd)] = parse_rational(toks[0]);
        p.add_term(std::move(e), UniPoly(std::move(c), var));
    }
    return p;
}

// ----------------------------------------------------------------- WEYL --

inline std::string weyl_to_text(const WeylQ& op) {
    std::ostringstream out;
    out << "WEYL arity=" << op.arity() << " ring=Q\n";
    for (const auto& [key, c] : op.terms()) {
        out << rat_str(c);
        for (int x : key.first) out << ' ' << x;
        out << " |";
        for (int x : key.second) out << ' ' << x;
        out << '\n';
    }
    return out.str();
}

inline std::string weyl_to_text(const WeylK& op) {
    UniPoly::Var v = UniPoly::Var::k;
    for (const auto& [key, c] : op.terms())
        if (!c.is_constant()) v = c.var();
    std::ostringstream out;
    out << "WEYL arity=" << op.arity() << " ring=" << detail::ring_name(v) << "\n";
    for (const auto& [key, c] : op.terms())
        for (size_t d = c.coeffs().size(); d-- > 0;) {
            if (bfun::is_zero(c.coeffs()[d])) continue;
            out << rat_str(c.coeffs()[d]);
            for (int x : key.first) out << ' ' << x;
            out << " |";
            for (int x : key.second) out << ' ' << x;
            out << ' ' << d << '\n';
        }
    return out.str();
}

namespace detail {

// splits "num a.. | b.. [k]" into coefficient token and integer blocks
inline std::pair<std::string, std::vector<std::vector<int>>> split_blocks(
    const std::string& line) {
    auto toks = split_ws(line);
    if (toks.empty()) throw usage_error("serialize: empty term line");
    std::vector<std::vector<int>> blocks(1);
    for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i] == "|")
            blocks.emplace_back();
        else
            blocks.back().push_back(parse_int(toks[i]));
    }
    return {toks[0], std::move(blocks)};
}

}  // namespace detail

inline WeylQ parse_weyl_q(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw usage_error("parse_weyl_q: empty input");
    auto vals = detail::parse_header(lines[0], "WEYL", {"arity", "ring"});
    if (vals[1] != "Q") throw usage_error("parse_weyl_q: ring is " + vals[1] + ", expected Q");
    int arity = detail::parse_int(vals[0]);
    WeylQ op(arity);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto [coef, blocks] = detail::split_blocks(lines[i]);
        if (blocks.size() != 2 || int(blocks[0].size()) != arity ||
            int(blocks[1].size()) != arity)
            throw usage_error("parse_weyl_q: bad term line");
        Expvec a(blocks[0].begin(), blocks[0].end());
        Expvec b(blocks[1].begin(), blocks[1].end());
        op.add_term(std::move(a), std::move(b), parse_rational(coef));
    }
    return op;
}

inline WeylK parse_weyl_k(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw usage_error("parse_weyl_k: empty input");
    auto vals = detail::parse_header(lines[0], "WEYL", {"arity", "ring"});
    UniPoly::Var var;
    if (vals[1] == "Qk")
        var = UniPoly::Var::k;
    else if (vals[1] == "Qs")
        var = UniPoly::Var::s;
    else
        throw usage_error("parse_weyl_k: ring is " + vals[1] + ", expected Qk or Qs");
    int arity = detail::parse_int(vals[0]);
    WeylK op(arity);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto [coef, blocks] = detail::split_blocks(lines[i]);
        if (blocks.size() != 2 || int(blocks[0].size()) != arity ||
            int(blocks[1].size()) != arity + 1)
            throw usage_error("parse_weyl_k: bad term line");
        Expvec a(blocks[0].begin(), blocks[0].end());
        Expvec b(blocks[1].begin(), blocks[1].end() - 1);
        int kd = blocks[1].back();
        if (kd < 0) throw usage_error("parse_weyl_k: negative parameter degree");
        std::vector<Rational> c(size_t(kd) + 1, Rational(0));
        c[size_t(kd)] = parse_rational(coef);
        op.add_term(std::move(a), std::move(b), UniPoly(std::move(c), var));
    }
    return op;
}

// ---------------------------------------------------------------- LWEYL --

// Terms of a radial (Laurent) operator: the root-index block carries the
// signed power of each positive root alpha multiplying the term; stored
// denominators print as negative entries.
inline std::string lweyl_to_text(const RadialOp& op) {
    const RootSystemA& rs = op.roots();
    std::ostringstream out;
    out << "LWEYL n=" << rs.n << "\n";
    for (const auto& [b, c] : op.terms())
        for (const auto& [e, u] : c.num.terms())
            for (size_t d = u.coeffs().size(); d-- > 0;) {
                if (bfun::is_zero(u.coeffs()[d])) continue;
                out << rat_str(u.coeffs()[d]) << " |";
                for (int x : c.den) out << ' ' << -x;
                out << " |";
                for (int x : b) out << ' ' << x;
                out << " |";
                for (int x : e) out << ' ' << x;
                out << " | " << d << '\n';
            }
    return out.str();
}

inline RadialOp parse_lweyl(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw usage_error("parse_lweyl: empty input");
    auto vals = detail::parse_header(lines[0], "LWEYL", {"n"});
    int n = detail::parse_int(vals[0]);
    RootSystemA rs(n);
    int m = rs.count();
    RadialOp op(rs);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto [coef, blocks] = detail::split_blocks(lines[i]);
        if (blocks.size() != 5 || int(blocks[1].size()) != m || int(blocks[2].size()) != n ||
            int(blocks[3].size()) != n || blocks[4].size() != 1)
            throw usage_error("parse_lweyl: bad term line");
        int kd = blocks[4][0];
        if (kd < 0) throw usage_error("parse_lweyl: negative parameter degree");
        std::vector<Rational> cv(size_t(kd) + 1, Rational(0));
        cv[size_t(kd)] = parse_rational(coef);
        MPK num = MPK::monomial(n, Expvec(blocks[3].begin(), blocks[3].end()),
                                UniPoly(std::move(cv)));
        std::vector<int> den(size_t(m), 0);
        for (int r = 0; r < m; ++r) {
            int j = blocks[1][size_t(r)];
            if (j < 0)
                den[size_t(r)] = -j;  // denominator power
            else if (j > 0)
                num = num * rs.alpha(r).pow((unsigned long)j, UniPoly(1));
        }
        op.add_term(Expvec(blocks[2].begin(), blocks[2].end()),
                    RatCoef(std::move(num), std::move(den)));
    }
    return op;
}

}  // namespace bfun
