#pragma once

#include "autoeq/comm_basis.hpp"
#include "autoeq/uni_poly.hpp"

#include <random>
#include <variant>

namespace autoeq {

/// (a x + c y + e, b x + d y + f), invertible linear part.
struct Affine {
    Scalar a, c, e, b, d, f;
    friend bool operator==(const Affine&, const Affine&) = default;
};

/// (alpha x + p(y), beta y + eta), alpha and beta nonzero.
struct Triangular {
    Scalar alpha;
    UniPoly p;
    Scalar beta, eta;
    friend bool operator==(const Triangular& s, const Triangular& t) {
        return s.alpha == t.alpha && s.p == t.p && s.beta == t.beta && s.eta == t.eta;
    }
};

class ElementaryAut {
public:
    ElementaryAut(Affine a) : v_(std::move(a)) {
        const auto& m = std::get<Affine>(v_);
        if (is_zero(m.a * m.d - m.c * m.b)) throw error("affine map is not invertible");
    }
    ElementaryAut(Triangular t) : v_(std::move(t)) {
        const auto& m = std::get<Triangular>(v_);
        if (is_zero(m.alpha) || is_zero(m.beta)) throw error("triangular map needs nonzero alpha and beta");
    }

    static ElementaryAut tau() { return Affine{0, 1, 0, 1, 0, 0}; }
    static ElementaryAut identity() { return Triangular{1, UniPoly(), 1, 0}; }

    bool is_affine_kind() const { return std::holds_alternative<Affine>(v_); }
    const Affine& affine() const { return std::get<Affine>(v_); }
    const Triangular& triangular() const { return std::get<Triangular>(v_); }

    /// In the triangular subgroup: y maps to a polynomial in y alone.
    bool is_triangular() const { return !is_affine_kind() || is_zero(affine().b); }
    /// Degree of the map is at most one.
    bool is_affine() const { return is_affine_kind() || triangular().p.degree() <= 1; }
    bool is_tau() const { return is_affine_kind() && affine() == Affine{0, 1, 0, 1, 0, 0}; }
    bool is_identity() const {
        if (is_affine_kind()) return affine() == Affine{1, 0, 0, 0, 1, 0};
        const auto& t = triangular();
        return t.alpha == 1 && t.p.is_zero() && t.beta == 1 && is_zero(t.eta);
    }

    /// Triangular view of a map in the triangular subgroup.
    Triangular as_triangular() const {
        if (!is_affine_kind()) return triangular();
        const auto& m = affine();
        if (!is_zero(m.b)) throw error("affine map is not triangular");
        return Triangular{m.a, UniPoly({m.e, m.c}), m.d, m.f};
    }

    /// Determinant of the linear part.
    Scalar theta() const {
        if (is_affine_kind()) {
            const auto& m = affine();
            return m.a * m.d - m.c * m.b;
        }
        return triangular().alpha * triangular().beta;
    }

    std::pair<FreePoly, FreePoly> free_images() const {
        FreePoly x = free_x(), y = free_y();
        if (is_affine_kind()) {
            const auto& m = affine();
            return {m.a * x + m.c * y + free_const(m.e), m.b * x + m.d * y + free_const(m.f)};
        }
        const auto& t = triangular();
        FreePoly py;
        for (std::size_t i = 0; i < t.p.coeffs().size(); ++i)
            if (!is_zero(t.p.coeffs()[i])) py += FreePoly::word(std::string(i, 'y'), t.p.coeffs()[i]);
        return {t.alpha * x + py, t.beta * y + free_const(t.eta)};
    }

    std::pair<CommPoly, CommPoly> comm_images() const {
        CommPoly x = poly_x(), y = poly_y();
        if (is_affine_kind()) {
            const auto& m = affine();
            return {m.a * x + m.c * y + m.e, m.b * x + m.d * y + m.f};
        }
        const auto& t = triangular();
        return {t.alpha * x + t.p.to_comm(xy_vars(), 1), t.beta * y + t.eta};
    }

    ElementaryAut inverse() const {
        if (is_affine_kind()) {
            const auto& m = affine();
            Scalar det = m.a * m.d - m.c * m.b;
            Scalar ia = m.d / det, ic = -m.c / det, ib = -m.b / det, id = m.a / det;
            // x' = M^{-1} (x - e, y - f)
            return Affine{ia, ic, -(ia * m.e + ic * m.f), ib, id, -(ib * m.e + id * m.f)};
        }
        const auto& t = triangular();
        Scalar ia = 1 / t.alpha, ib = 1 / t.beta;
        UniPoly inner({Scalar(-t.eta * ib), ib});  // (y - eta) / beta
        return Triangular{ia, Scalar(-ia) * t.p.compose(inner), ib, Scalar(-t.eta * ib)};
    }

    /// `tau`, `affine(a,c,e; b,d,f)` or `tri(alpha; p(y); beta; eta)`.
    std::string to_string() const {
        if (is_tau()) return "tau";
        if (is_affine_kind()) {
            const auto& m = affine();
            return "affine(" + autoeq::to_string(m.a) + "," + autoeq::to_string(m.c) + "," + autoeq::to_string(m.e) +
                   "; " + autoeq::to_string(m.b) + "," + autoeq::to_string(m.d) + "," + autoeq::to_string(m.f) + ")";
        }
        const auto& t = triangular();
        return "tri(" + autoeq::to_string(t.alpha) + "; " + t.p.to_string("y") + "; " + autoeq::to_string(t.beta) +
               "; " + autoeq::to_string(t.eta) + ")";
    }

    friend bool operator==(const ElementaryAut& s, const ElementaryAut& t) { return s.v_ == t.v_; }

private:
    std::variant<Affine, Triangular> v_;
};

/// Composition of two triangular maps: `second` applied after `first`.
inline Triangular compose_triangular(const Triangular& second, const Triangular& first) {
    // first = (a2 x + p2(y), b2 y + e2), second = (a1 x + p1(y), b1 y + e1):
    // result = (a2 (a1 x + p1(y)) + p2(b1 y + e1), b2 (b1 y + e1) + e2).
    UniPoly inner({second.eta, second.beta});
    return Triangular{first.alpha * second.alpha, first.alpha * second.p + first.p.compose(inner),
                      first.beta * second.beta, first.beta * second.eta + first.eta};
}

/// A word in elementary automorphisms; factors[0] is applied last, so the
/// word reads like the composition psi_n ... psi_1.
struct AutWord {
    std::vector<ElementaryAut> factors;

    static AutWord identity() { return {}; }
    static AutWord of(ElementaryAut e) { return AutWord{{std::move(e)}}; }

    bool empty() const { return factors.empty(); }

    /// Images of x and y under the composed map.
    std::pair<FreePoly, FreePoly> free_images() const {
        FreePoly x = free_x(), y = free_y();
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            // (psi phi)(x) = phi_x evaluated at psi's images.
            auto [px, py] = it->free_images();
            FreePoly nx = x.substitute(px, py), ny = y.substitute(px, py);
            x = std::move(nx);
            y = std::move(ny);
        }
        return {x, y};
    }

    std::string to_string() const {
        if (factors.empty()) return "tri(1; 0; 1; 0)";
        std::string out;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) out += " . ";
            out += factors[i].to_string();
        }
        return out;
    }
};

/// psi phi: apply phi first, then psi.
inline AutWord compose(const AutWord& psi, const AutWord& phi) {
    AutWord r;
    for (const auto* w : {&psi, &phi})
        for (const auto& e : w->factors)
            if (!e.is_identity()) r.factors.push_back(e);
    return r;
}

inline ElementaryAut invert(const ElementaryAut& e) { return e.inverse(); }

inline AutWord invert(const AutWord& w) {
    AutWord r;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) r.factors.push_back(it->inverse());
    return r;
}

inline FreePoly apply(const ElementaryAut& e, const FreePoly& u) {
    auto [ix, iy] = e.free_images();
    return u.substitute(ix, iy);
}
inline CommPoly apply(const ElementaryAut& e, const CommPoly& u) {
    auto [ix, iy] = e.comm_images();
    return u.substitute({ix, iy});
}

/// Applies factors right to left.
template <class Poly>
Poly apply(const AutWord& phi, const Poly& u) {
    Poly r = u;
    for (auto it = phi.factors.rbegin(); it != phi.factors.rend(); ++it) r = apply(*it, r);
    return r;
}

inline Scalar theta(const AutWord& phi) {
    Scalar t = 1;
    for (const auto& f : phi.factors) t *= f.theta();
    return t;
}

/// Writes a non-triangular affine map as c1 tau c2 with c1, c2 triangular affine.
inline std::array<ElementaryAut, 3> bruhat_split(const Affine& m) {
    if (is_zero(m.b)) throw error("bruhat_split needs a non-triangular affine map");
    Scalar s = m.a / m.b;
    Scalar det = m.a * m.d - m.c * m.b;
    Triangular c2{1, UniPoly({Scalar(0), s}), 1, 0};
    Triangular c1{m.b, UniPoly({m.f, m.d}), Scalar(-det / m.b), Scalar(m.e - m.a * m.f / m.b)};
    return {ElementaryAut(c1), ElementaryAut::tau(), ElementaryAut(c2)};
}

/// rho_n tau ... tau rho_1 tau rho_0 with every rho triangular, interior
/// factors nonaffine and normalized to (x + p_i(y), y), p_i(0) = 0.
struct SimplifiedForm {
    std::vector<Triangular> rhos;  // rhos[0] = rho_0, applied first

    std::size_t length() const { return rhos.empty() ? 0 : rhos.size() - 1; }

    AutWord to_word() const {
        AutWord w;
        for (std::size_t i = rhos.size(); i-- > 0;) {
            w.factors.emplace_back(rhos[i]);
            if (i > 0) w.factors.push_back(ElementaryAut::tau());
        }
        return w;
    }
    bool is_identity() const { return rhos.size() == 1 && ElementaryAut(rhos[0]).is_identity(); }
};

inline SimplifiedForm to_simplified(const AutWord& phi) {
    // Tokens in application order (first applied first); nullopt marks tau.
    std::vector<std::optional<Triangular>> tokens;
    for (auto it = phi.factors.rbegin(); it != phi.factors.rend(); ++it) {
        if (it->is_tau()) {
            tokens.emplace_back(std::nullopt);
        } else if (it->is_triangular()) {
            tokens.emplace_back(it->as_triangular());
        } else {
            auto parts = bruhat_split(it->affine());
            tokens.emplace_back(parts[2].as_triangular());
            tokens.emplace_back(std::nullopt);
            tokens.emplace_back(parts[0].as_triangular());
        }
    }
    const Triangular id{1, UniPoly(), 1, 0};

    // Alternate T tau T ... tau T, then collapse until every interior factor is nonaffine.
    std::vector<Triangular> ts{id};
    for (const auto& tok : tokens) {
        if (tok)
            ts.back() = compose_triangular(*tok, ts.back());
        else
            ts.push_back(id);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
            const Triangular& t = ts[i];
            if (t.p.degree() > 1) continue;
            // tau t tau is affine: (beta x + eta, p1 x + alpha y + p0) for t = (alpha x + p1 y + p0, beta y + eta).
            Affine conj{t.beta, 0, t.eta, t.p.coeff(1), t.alpha, t.p.coeff(0)};
            std::vector<Triangular> next(ts.begin(), ts.begin() + static_cast<long>(i) - 1);
            if (is_zero(conj.b)) {
                Triangular merged = compose_triangular(ts[i + 1], compose_triangular(ElementaryAut(conj).as_triangular(), ts[i - 1]));
                next.push_back(merged);
            } else {
                auto parts = bruhat_split(conj);
                next.push_back(compose_triangular(parts[2].as_triangular(), ts[i - 1]));
                next.push_back(compose_triangular(ts[i + 1], parts[0].as_triangular()));
            }
            next.insert(next.end(), ts.begin() + static_cast<long>(i) + 2, ts.end());
            ts = std::move(next);
            changed = true;
            break;
        }
    }
    // Normalize rho_n, ..., rho_1 to (x + q(y), y), pushing diagonal parts toward rho_0.
    for (std::size_t i = ts.size() - 1; i >= 1; --i) {
        Triangular& t = ts[i];
        Scalar p0 = t.p.coeff(0);
        UniPoly q = Scalar(1 / t.alpha) * (t.p - UniPoly::constant(p0));
        // t = (x + q(y), y) after (alpha x + p0, beta y + eta); conjugating the
        // latter by tau gives (beta x + eta, alpha y + p0).
        Triangular pushed{t.beta, UniPoly::constant(t.eta), t.alpha, p0};
        ts[i - 1] = compose_triangular(pushed, ts[i - 1]);
        t = Triangular{1, q, 1, 0};
    }
    return SimplifiedForm{ts};
}

/// Reproducible random word of elementary automorphisms.
inline AutWord random_tame(std::uint64_t seed, int max_factors, int max_p_degree, int coeff_bound) {
    if (max_factors < 1 || max_p_degree < 1 || coeff_bound < 1) throw error("random_tame bounds must be positive");
    std::mt19937_64 rng(seed);
    auto nonzero = [&] {
        std::uniform_int_distribution<int> d(1, coeff_bound);
        int v = d(rng);
        return Scalar(std::bernoulli_distribution(0.5)(rng) ? v : -v);
    };
    int count = std::uniform_int_distribution<int>(1, max_factors)(rng);
    AutWord w;
    for (int i = 0; i < count; ++i) {
        if (std::bernoulli_distribution(0.5)(rng)) {
            while (true) {
                Affine m{nonzero(), nonzero(), nonzero(), nonzero(), nonzero(), nonzero()};
                if (!is_zero(m.a * m.d - m.c * m.b)) {
                    w.factors.emplace_back(m);
                    break;
                }
            }
        } else {
            int deg = std::uniform_int_distribution<int>(0, max_p_degree)(rng);
            std::vector<Scalar> c;
            for (int k = 0; k <= deg; ++k) c.push_back(nonzero());
            w.factors.emplace_back(Triangular{nonzero(), UniPoly(c), nonzero(), nonzero()});
        }
    }
    return w;
}

}  // namespace autoeq
