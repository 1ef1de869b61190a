#pragma once

#include "autoeq/comm_poly.hpp"

#include <optional>

namespace autoeq {

/// Dense univariate polynomial over Q, lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Scalar& s) { return UniPoly(std::vector<Scalar>{s}); }
    static UniPoly monomial(unsigned deg, const Scalar& s) {
        std::vector<Scalar> c(deg + 1, Scalar(0));
        c[deg] = s;
        return UniPoly(std::move(c));
    }
    static UniPoly identity() { return monomial(1, 1); }

    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
    const Scalar& leading() const {
        if (c_.empty()) throw error("leading coefficient of zero");
        return c_.back();
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& s : r.c_) s = -s;
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Scalar& s, const UniPoly& a) {
        std::vector<Scalar> r(a.c_);
        for (auto& v : r) v *= s;
        return UniPoly(std::move(r));
    }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw error("division by zero polynomial");
        std::vector<Scalar> rem(a.c_);
        int db = b.degree();
        std::vector<Scalar> q(std::max(0, a.degree() - db + 1), Scalar(0));
        for (int i = a.degree(); i >= db; --i) {
            if (autoeq::is_zero(rem[i])) continue;
            Scalar f = rem[i] / b.leading();
            q[i - db] = f;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return Scalar(1 / leading()) * *this;
    }

    Scalar operator()(const Scalar& t) const {
        Scalar acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    /// Composition p(q).
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }
    UniPoly derivative() const {
        std::vector<Scalar> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<unsigned long>(i));
        return UniPoly(std::move(r));
    }

    /// Views the polynomial as an element of a CommPoly ring in variable `var`.
    CommPoly to_comm(const VarsPtr& vars, std::size_t var) const {
        std::vector<CommPoly::Term> t;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (autoeq::is_zero(c_[i])) continue;
            Monomial m(vars->size());
            m[var] = static_cast<std::uint32_t>(i);
            t.emplace_back(std::move(m), c_[i]);
        }
        return CommPoly::from_terms(vars, std::move(t));
    }
    /// Requires p to involve only variable `var`.
    static UniPoly from_comm(const CommPoly& p, std::size_t var) {
        std::vector<Scalar> c;
        for (const auto& [m, s] : p.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != var && m[i]) throw error("polynomial is not univariate");
            if (c.size() <= m[var]) c.resize(m[var] + 1, Scalar(0));
            c[m[var]] += s;
        }
        return UniPoly(std::move(c));
    }

    std::string to_string(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (autoeq::is_zero(c_[i])) continue;
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            append_term(out, c_[i], mono);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && autoeq::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

/// Monic greatest common divisor by the Euclidean algorithm.
inline UniPoly euclid_gcd(UniPoly f, UniPoly g) {
    if (f.is_zero() && g.is_zero()) throw error("gcd(0,0) undefined");
    while (!g.is_zero()) {
        UniPoly r = divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

namespace detail {

/// Number of sign changes in a sequence of nonzero-filtered values.
inline int sign_changes(const std::vector<Scalar>& values) {
    int changes = 0, last = 0;
    for (const auto& v : values) {
        int s = sgn(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

inline int sturm_count(const std::vector<UniPoly>& chain, const Scalar& t) {
    std::vector<Scalar> v;
    v.reserve(chain.size());
    for (const auto& q : chain) v.push_back(q(t));
    return sign_changes(v);
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Scalar simplest_between(Scalar lo, Scalar hi) {
    // Continued-fraction walk.
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Scalar(fl) == lo) return lo;
    if (Scalar(fl + 1) <= hi) return Scalar(fl + 1);
    Scalar a = lo - Scalar(fl), b = hi - Scalar(fl);
    // a in (0,1), b in (a, 1): recurse on reciprocals.
    Scalar inner = simplest_between(Scalar(1 / b), Scalar(1 / a));
    return Scalar(fl) + 1 / inner;
}

}  // namespace detail

/// Rational roots of p, ascending and without repetition.
inline std::vector<Scalar> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw error("roots of zero polynomial");
    std::vector<Scalar> roots;
    if (p.degree() <= 0) return roots;
    UniPoly f = p;
    if (autoeq::is_zero(f.coeff(0))) {
        roots.emplace_back(0);
        std::size_t k = 0;
        while (autoeq::is_zero(f.coeff(k))) ++k;
        f = UniPoly(std::vector<Scalar>(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end()));
    }
    if (f.degree() >= 1) {
        f = divmod(f, euclid_gcd(f, f.derivative())).first;  // square-free part
        // Clear denominators so the leading coefficient bounds root denominators.
        Integer lcm_den = 1;
        for (const auto& c : f.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
        f = Scalar(lcm_den) * f;
        Integer lead = abs(f.leading().get_num());
        Scalar bound = 1;
        for (const auto& c : f.coeffs()) bound += abs(c) / abs(f.leading());
        auto chain = detail::sturm_chain(f);
        // Bisect [-bound, bound] into isolating intervals.
        struct Interval { Scalar lo, hi; int clo, chi; };
        std::vector<Interval> work{{-bound, bound, detail::sturm_count(chain, -bound), detail::sturm_count(chain, bound)}};
        Scalar min_width = Scalar(1, 1) / Scalar(2 * lead * lead);
        min_width.canonicalize();
        while (!work.empty()) {
            Interval iv = work.back();
            work.pop_back();
            int n = iv.clo - iv.chi;
            if (n == 0) continue;
            if (n == 1 && iv.hi - iv.lo < min_width) {
                Scalar cand = detail::simplest_between(iv.lo, iv.hi);
                for (const Scalar& c : {cand, iv.lo, iv.hi})
                    if (autoeq::is_zero(f(c)) && c.get_den() <= lead) {
                        roots.push_back(c);
                        break;
                    }
                continue;
            }
            Scalar mid = (iv.lo + iv.hi) / 2;
            int cm = detail::sturm_count(chain, mid);
            if (autoeq::is_zero(f(mid))) {
                roots.push_back(mid);
                // Nudge the split point off the root.
                Scalar eps = (iv.hi - iv.lo) / 1024;
                while (detail::sturm_count(chain, mid - eps) - detail::sturm_count(chain, mid + eps) != 1) eps /= 2;
                work.push_back({iv.lo, Scalar(mid - eps), iv.clo, detail::sturm_count(chain, mid - eps)});
                work.push_back({Scalar(mid + eps), iv.hi, detail::sturm_count(chain, mid + eps), iv.chi});
                continue;
            }
            work.push_back({iv.lo, mid, iv.clo, cm});
            work.push_back({mid, iv.hi, cm, iv.chi});
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace autoeq
