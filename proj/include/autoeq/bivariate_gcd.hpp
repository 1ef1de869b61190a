#pragma once

#include "autoeq/uni_poly.hpp"

namespace autoeq {

namespace detail {

// Element of Q[x][y]: coefficient of y^i is a polynomial in x.
using RecPoly = std::vector<UniPoly>;

inline void trim(RecPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RecPoly to_rec(const CommPoly& u) {
    RecPoly r;
    for (const auto& [m, c] : u.terms()) {
        if (r.size() <= m[1]) r.resize(m[1] + 1);
        r[m[1]] = r[m[1]] + UniPoly::monomial(m[0], c);
    }
    trim(r);
    return r;
}

inline CommPoly from_rec(const RecPoly& r) {
    std::vector<CommPoly::Term> t;
    for (std::size_t j = 0; j < r.size(); ++j)
        for (std::size_t i = 0; i < r[j].coeffs().size(); ++i) {
            const Scalar& c = r[j].coeffs()[i];
            if (is_zero(c)) continue;
            Monomial m(2);
            m[0] = static_cast<std::uint32_t>(i);
            m[1] = static_cast<std::uint32_t>(j);
            t.emplace_back(std::move(m), c);
        }
    return CommPoly::from_terms(xy_vars(), std::move(t));
}

inline UniPoly content(const RecPoly& p) {
    UniPoly g;
    for (const auto& c : p) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : euclid_gcd(g, c);
    }
    return g;
}

inline RecPoly divide_coeffs(const RecPoly& p, const UniPoly& d) {
    RecPoly r;
    for (const auto& c : p) {
        auto [q, rem] = divmod(c, d);
        if (!rem.is_zero()) throw error("inexact coefficient division");
        r.push_back(q);
    }
    trim(r);
    return r;
}

inline RecPoly scale(const RecPoly& p, const UniPoly& s) {
    RecPoly r;
    for (const auto& c : p) r.push_back(c * s);
    trim(r);
    return r;
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b, computed without division in Q[x].
inline RecPoly pseudo_remainder(RecPoly a, const RecPoly& b) {
    int db = static_cast<int>(b.size()) - 1;
    int delta = static_cast<int>(a.size()) - 1 - db;
    const UniPoly& lb = b.back();
    int steps = 0;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int da = static_cast<int>(a.size()) - 1;
        UniPoly la = a.back();
        for (auto& c : a) c = c * lb;
        for (int j = 0; j <= db; ++j) a[da - db + j] = a[da - db + j] - la * b[j];
        trim(a);
        ++steps;
    }
    for (; steps < delta + 1; ++steps)
        for (auto& c : a) c = c * lb;
    trim(a);
    return a;
}

inline UniPoly upow(const UniPoly& p, int e) {
    UniPoly r = UniPoly::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

}  // namespace detail

/// GCD in Q[x,y] by the subresultant remainder sequence in y over Q[x],
/// with contents handled separately. Normalized so the lex-leading
/// coefficient (x before y) is 1.
inline CommPoly bivariate_gcd(const CommPoly& u, const CommPoly& v) {
    using namespace detail;
    if (u.nvars() != 2 || v.nvars() != 2) throw error("bivariate gcd needs variables (x, y)");
    if (u.is_zero() && v.is_zero()) throw error("gcd(0,0) undefined");
    RecPoly a = to_rec(u), b = to_rec(v);
    RecPoly g;
    if (a.empty()) {
        g = b;
    } else if (b.empty()) {
        g = a;
    } else {
        UniPoly ca = content(a), cb = content(b);
        UniPoly c = euclid_gcd(ca, cb);
        a = divide_coeffs(a, ca);
        b = divide_coeffs(b, cb);
        if (a.size() < b.size()) std::swap(a, b);
        UniPoly gg = UniPoly::constant(1), h = UniPoly::constant(1);
        while (true) {
            int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
            RecPoly r = pseudo_remainder(a, b);
            if (r.empty()) break;
            if (r.size() == 1) {
                b = RecPoly{UniPoly::constant(1)};
                break;
            }
            a = b;
            b = divide_coeffs(r, gg * upow(h, delta));
            gg = a.back();
            if (delta == 0) {
                // h unchanged
            } else {
                h = divmod(upow(gg, delta), upow(h, delta - 1)).first;
            }
        }
        g = scale(divide_coeffs(b, content(b)), c);
    }
    CommPoly result = from_rec(g);
    // Lex-leading term: largest x exponent, then largest y exponent.
    const CommPoly::Term* lead = nullptr;
    for (const auto& t : result.terms())
        if (!lead || t.first[0] > lead->first[0] || (t.first[0] == lead->first[0] && t.first[1] > lead->first[1]))
            lead = &t;
    return Scalar(1 / lead->second) * result;
}

}  // namespace autoeq
