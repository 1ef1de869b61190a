#pragma once

#include "autoeq/automorphism.hpp"
#include "autoeq/groebner.hpp"

#include <unordered_map>

namespace autoeq {

/// Free polynomial whose coefficients are polynomials in unknown parameters.
using ParamFreePoly = BasicFreePoly<CommPoly>;

/// Deterministic parameter names.
namespace pname {
inline std::string xi(unsigned j) { return "xi_" + std::to_string(j); }
inline std::string xip(unsigned j) { return "xip_" + std::to_string(j); }
inline std::string xipp(unsigned j) { return "xipp_" + std::to_string(j); }
inline std::string zeta(unsigned j) { return "zeta_" + std::to_string(j); }
inline std::string eta(unsigned j) { return "eta_" + std::to_string(j); }
inline std::string etap(unsigned j) { return "etap_" + std::to_string(j); }
inline std::string omega(unsigned j, unsigned k) { return "omega_" + std::to_string(j) + "_" + std::to_string(k); }
inline std::string mu(unsigned j) { return "mu_" + std::to_string(j); }
inline std::string theta(unsigned s) { return "theta_" + std::to_string(s); }
inline std::string lambda() { return "lambda"; }
}  // namespace pname

inline ParamFreePoly lift(const FreePoly& u, const VarsPtr& ring) {
    return u.map_coefficients<CommPoly>([&](const Scalar& c) { return CommPoly(ring, c); }, CommPoly(ring));
}

inline ParamFreePoly param_word(const Word& w, const CommPoly& c) { return ParamFreePoly::word(w, c); }

/// Specializes every parameter to a rational value.
inline FreePoly specialize(const ParamFreePoly& w, const std::vector<Scalar>& point) {
    std::vector<FreePoly::Term> t;
    for (const auto& [word, c] : w.terms()) t.emplace_back(word, c.evaluate(point));
    return FreePoly::from_terms(std::move(t));
}

/// An automorphism with unknown coefficients.
struct ParamAut {
    enum class Kind { affine, triangular, tau, coset };
    Kind kind = Kind::tau;
    unsigned index = 0;
    // affine: y-image without x term when true (a triangular affine template)
    bool upper = false;
    // triangular: p has one unknown per degree in [p_lo, p_hi]
    unsigned p_lo = 1, p_hi = 0;
    bool unit_linear = false;       // alpha = beta = 1 and no y-shift
    bool require_nonaffine = true;  // the top coefficient of p enters the inequation

    static ParamAut affine(unsigned j, bool upper = false) {
        ParamAut a;
        a.kind = Kind::affine;
        a.index = j;
        a.upper = upper;
        return a;
    }
    static ParamAut triangular(unsigned j, unsigned p_lo, unsigned p_hi, bool unit_linear = false,
                               bool require_nonaffine = true) {
        ParamAut a;
        a.kind = Kind::triangular;
        a.index = j;
        a.p_lo = p_lo;
        a.p_hi = p_hi;
        a.unit_linear = unit_linear;
        a.require_nonaffine = require_nonaffine;
        return a;
    }
    static ParamAut tau() { return ParamAut{}; }
    /// (mu_j x + y, x).
    static ParamAut coset(unsigned j) {
        ParamAut a;
        a.kind = Kind::coset;
        a.index = j;
        return a;
    }

    std::vector<std::string> slots() const {
        using namespace pname;
        switch (kind) {
        case Kind::affine:
            if (upper) return {xi(index), xip(index), xipp(index), eta(index), etap(index)};
            return {xi(index), xip(index), xipp(index), zeta(index), eta(index), etap(index)};
        case Kind::triangular: {
            std::vector<std::string> s;
            if (!unit_linear) s.push_back(xi(index));
            for (unsigned k = p_lo; k <= p_hi; ++k) s.push_back(omega(index, k));
            if (!unit_linear) {
                s.push_back(eta(index));
                s.push_back(etap(index));
            }
            return s;
        }
        case Kind::coset:
            return {mu(index)};
        case Kind::tau:
            return {};
        }
        return {};
    }

    std::pair<ParamFreePoly, ParamFreePoly> images(const VarsPtr& ring) const {
        auto var = [&](const std::string& n) { return CommPoly::variable(ring, n); };
        CommPoly one(ring, Scalar(1));
        using namespace pname;
        switch (kind) {
        case Kind::affine: {
            ParamFreePoly ix = param_word("x", var(xi(index))) + param_word("y", var(xip(index))) + param_word("", var(xipp(index)));
            ParamFreePoly iy = param_word("y", var(eta(index))) + param_word("", var(etap(index)));
            if (!upper) iy += param_word("x", var(zeta(index)));
            return {ix, iy};
        }
        case Kind::triangular: {
            ParamFreePoly ix = param_word("x", unit_linear ? one : var(xi(index)));
            for (unsigned k = p_lo; k <= p_hi; ++k) ix += param_word(std::string(k, 'y'), var(omega(index, k)));
            ParamFreePoly iy = unit_linear ? param_word("y", one) : param_word("y", var(eta(index))) + param_word("", var(etap(index)));
            return {ix, iy};
        }
        case Kind::coset:
            return {param_word("x", var(mu(index))) + param_word("y", one), param_word("x", one)};
        case Kind::tau:
            return {param_word("y", one), param_word("x", one)};
        }
        throw error("bad template");
    }

    /// Product of the slots that must be nonzero for an automorphism.
    CommPoly nondegeneracy(const VarsPtr& ring) const {
        auto var = [&](const std::string& n) { return CommPoly::variable(ring, n); };
        CommPoly one(ring, Scalar(1));
        using namespace pname;
        switch (kind) {
        case Kind::affine:
            if (upper) return var(xi(index)) * var(eta(index));
            return var(xi(index)) * var(eta(index)) - var(xip(index)) * var(zeta(index));
        case Kind::triangular: {
            CommPoly f = unit_linear ? one : var(xi(index)) * var(eta(index));
            if (require_nonaffine && p_hi >= 2 && p_lo <= p_hi) f = f * var(omega(index, p_hi));
            return f;
        }
        default:
            return one;
        }
    }

    ElementaryAut specialize(const VarsPtr& ring, const std::vector<Scalar>& point) const {
        auto val = [&](const std::string& n) {
            auto it = std::find(ring->begin(), ring->end(), n);
            if (it == ring->end()) throw error("parameter " + n + " missing");
            return point[static_cast<std::size_t>(it - ring->begin())];
        };
        using namespace pname;
        switch (kind) {
        case Kind::affine:
            return Affine{val(xi(index)), val(xip(index)), val(xipp(index)), upper ? Scalar(0) : val(zeta(index)),
                          val(eta(index)), val(etap(index))};
        case Kind::triangular: {
            std::vector<Scalar> c(p_hi + 1, Scalar(0));
            for (unsigned k = p_lo; k <= p_hi; ++k) c[k] = val(omega(index, k));
            if (unit_linear) return Triangular{1, UniPoly(c), 1, 0};
            return Triangular{val(xi(index)), UniPoly(c), val(eta(index)), val(etap(index))};
        }
        case Kind::coset:
            return Affine{val(mu(index)), 1, 0, 1, 0, 0};
        case Kind::tau:
            return ElementaryAut::tau();
        }
        throw error("bad template");
    }
};

/// Product of the nondegeneracy factors of all templates.
inline CommPoly nondegeneracy(const std::vector<ParamAut>& templates, const VarsPtr& ring) {
    CommPoly f(ring, Scalar(1));
    for (const auto& t : templates) f = f * t.nondegeneracy(ring);
    return f;
}

namespace detail {

using ParamTerms = std::vector<std::pair<Word, CommPoly>>;

inline void expand_word(const Word& w, std::size_t pos, Word& cur, const CommPoly& coeff, const ParamTerms& ix,
                        const ParamTerms& iy, const std::vector<std::size_t>& max_rest, std::size_t min_len,
                        std::unordered_map<Word, CommPoly>& acc) {
    if (cur.size() + max_rest[pos] < min_len) return;
    if (pos == w.size()) {
        ParamFreePoly::accumulate(acc, cur, coeff);
        return;
    }
    const ParamTerms& img = w[pos] == 'x' ? ix : iy;
    for (const auto& [iw, ic] : img) {
        std::size_t keep = cur.size();
        cur += iw;
        expand_word(w, pos + 1, cur, coeff * ic, ix, iy, max_rest, min_len, acc);
        cur.resize(keep);
    }
}

}  // namespace detail

/// Symbolic substitution; image words shorter than `min_len` are dropped.
inline ParamFreePoly param_substitute(const ParamFreePoly& u, const ParamFreePoly& image_x, const ParamFreePoly& image_y,
                                      std::size_t min_len = 0) {
    if (min_len == 0) return u.substitute(image_x, image_y);
    detail::ParamTerms ix(image_x.terms().begin(), image_x.terms().end());
    detail::ParamTerms iy(image_y.terms().begin(), image_y.terms().end());
    std::size_t lx = image_x.is_zero() ? 0 : image_x.degree(), ly = image_y.is_zero() ? 0 : image_y.degree();
    std::unordered_map<Word, CommPoly> acc;
    for (const auto& [w, c] : u.terms()) {
        std::vector<std::size_t> max_rest(w.size() + 1, 0);
        for (std::size_t i = w.size(); i-- > 0;) max_rest[i] = max_rest[i + 1] + (w[i] == 'x' ? lx : ly);
        Word cur;
        detail::expand_word(w, 0, cur, c, ix, iy, max_rest, min_len, acc);
    }
    return ParamFreePoly::from_map(std::move(acc), u.zero_coeff());
}

/// rho(u) with the template's unknowns; `min_len` truncates as above.
inline ParamFreePoly param_apply(const ParamAut& rho, const ParamFreePoly& u, const VarsPtr& ring, std::size_t min_len = 0) {
    auto [ix, iy] = rho.images(ring);
    return param_substitute(u, ix, iy, min_len);
}

struct ExtractedEquations {
    VarsPtr vars;  // input ring plus the theta unknowns introduced
    std::vector<CommPoly> equations;
    std::vector<std::string> thetas;
};

/// Equations forcing every homogeneous component of degree in
/// (target_qdeg, hard_degree_cap] to lie in V: unbalanced words vanish and
/// the balanced component equals theta_s [x,y]^{s/2}.
inline ExtractedEquations extract_equations(const ParamFreePoly& w, unsigned target_qdeg, unsigned hard_degree_cap,
                                            const VarsPtr& ring,
                                            const std::function<std::string(unsigned)>& theta_namer = pname::theta) {
    if (target_qdeg > hard_degree_cap) throw error("target degree exceeds cap");
    for (const auto& [word, c] : w.terms())
        if (word.size() > hard_degree_cap) throw error("internal: word beyond the degree cap");
    std::vector<unsigned> balanced;
    for (unsigned s = target_qdeg + 1; s <= hard_degree_cap; ++s) {
        if (s % 2) continue;
        bool present = std::any_of(w.terms().begin(), w.terms().end(), [&](const auto& t) {
            return t.first.size() == s && deg_x(t.first) == s / 2;
        });
        if (present) balanced.push_back(s);
    }
    VarList names(*ring);
    std::vector<std::string> thetas;
    for (unsigned s : balanced) {
        thetas.push_back(theta_namer(s));
        if (std::find(names.begin(), names.end(), thetas.back()) != names.end()) throw error("theta name clash");
        names.push_back(thetas.back());
    }
    VarsPtr ext = thetas.empty() ? ring : make_vars(names);
    ExtractedEquations out{ext, {}, thetas};
    for (const auto& [word, c] : w.terms()) {
        if (word.size() <= target_qdeg || 2 * deg_x(word) == word.size()) continue;
        out.equations.push_back(c.embed(ext));
    }
    for (std::size_t i = 0; i < balanced.size(); ++i) {
        unsigned s = balanced[i];
        FreePoly cp = commutator_xy().pow(s / 2);
        CommPoly th = CommPoly::variable(ext, thetas[i]);
        std::map<Word, CommPoly> eq;
        for (const auto& [word, c] : w.terms())
            if (word.size() == s && 2 * deg_x(word) == s) eq.emplace(word, c.embed(ext));
        for (const auto& [word, c] : cp.terms()) {
            auto it = eq.find(word);
            CommPoly rhs = c * th;
            if (it == eq.end())
                eq.emplace(word, -rhs);
            else
                it->second = it->second - rhs;
        }
        for (auto& [word, e] : eq)
            if (!e.is_zero()) out.equations.push_back(std::move(e));
    }
    return out;
}

/// Commutative counterpart of ParamFreePoly: exponent pair (a, b) of x^a y^b
/// to a parameter polynomial.
struct ParamCommPoly {
    VarsPtr ring;
    std::map<std::pair<unsigned, unsigned>, CommPoly> terms;

    explicit ParamCommPoly(VarsPtr r) : ring(std::move(r)) {}

    void add(std::pair<unsigned, unsigned> e, const CommPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    unsigned degree() const {
        if (terms.empty()) throw error("degree of zero undefined");
        unsigned d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e.first + e.second);
        return d;
    }
    friend ParamCommPoly operator+(ParamCommPoly a, const ParamCommPoly& b) {
        for (const auto& [e, c] : b.terms) a.add(e, c);
        return a;
    }
    friend ParamCommPoly operator-(ParamCommPoly a, const ParamCommPoly& b) {
        for (const auto& [e, c] : b.terms) a.add(e, -c);
        return a;
    }
    friend ParamCommPoly operator*(const ParamCommPoly& a, const ParamCommPoly& b) {
        ParamCommPoly r(a.ring);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) r.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return r;
    }
    friend ParamCommPoly operator*(const CommPoly& s, const ParamCommPoly& a) {
        ParamCommPoly r(a.ring);
        for (const auto& [e, c] : a.terms) r.add(e, s * c);
        return r;
    }
};

inline ParamCommPoly lift(const CommPoly& u, const VarsPtr& ring) {
    ParamCommPoly r(ring);
    for (const auto& [m, c] : u.terms()) r.add({m[0], m[1]}, CommPoly(ring, c));
    return r;
}

inline ParamCommPoly abelianize(const ParamFreePoly& w, const VarsPtr& ring) {
    ParamCommPoly r(ring);
    for (const auto& [word, c] : w.terms()) r.add({deg_x(word), deg_y(word)}, c);
    return r;
}

inline CommPoly specialize(const ParamCommPoly& w, const std::vector<Scalar>& point) {
    std::vector<CommPoly::Term> t;
    for (const auto& [e, c] : w.terms) {
        Monomial m(2);
        m[0] = e.first;
        m[1] = e.second;
        t.emplace_back(std::move(m), c.evaluate(point));
    }
    return CommPoly::from_terms(xy_vars(), std::move(t));
}

/// u(image_x, image_y) with powers cached.
inline ParamCommPoly param_substitute(const ParamCommPoly& u, const ParamCommPoly& image_x, const ParamCommPoly& image_y) {
    std::vector<ParamCommPoly> px{lift(CommPoly(xy_vars(), Scalar(1)), u.ring)}, py{px.front()};
    ParamCommPoly r(u.ring);
    for (const auto& [e, c] : u.terms) {
        while (px.size() <= e.first) px.push_back(px.back() * image_x);
        while (py.size() <= e.second) py.push_back(py.back() * image_y);
        r = r + c * (px[e.first] * py[e.second]);
    }
    return r;
}

inline ParamCommPoly param_apply(const ParamAut& rho, const ParamCommPoly& u, const VarsPtr& ring) {
    auto [ix, iy] = rho.images(ring);
    return param_substitute(u, abelianize(ix, ring), abelianize(iy, ring));
}

}  // namespace autoeq
