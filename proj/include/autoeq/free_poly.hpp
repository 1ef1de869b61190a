#pragma once

#include "autoeq/comm_poly.hpp"

#include <unordered_map>

namespace autoeq {

/// A word over {x, y}; the empty word is the unit.
using Word = std::string;

inline unsigned deg_x(const Word& w) { return static_cast<unsigned>(std::count(w.begin(), w.end(), 'x')); }
inline unsigned deg_y(const Word& w) { return static_cast<unsigned>(std::count(w.begin(), w.end(), 'y')); }

/// Length first, then lexicographic with x < y.
inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

/// Printing order: longest words first, lexicographic within a length.
inline bool word_print_before(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

/// `x*y*x^2`; the empty word prints as the empty string.
inline std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += '*';
        out += w[i];
        if (j - i > 1) out += '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

inline bool coeff_is_zero(const Scalar& s) { return is_zero(s); }
inline bool coeff_is_zero(const CommPoly& p) { return p.is_zero(); }

/// Noncommutative polynomial in x, y with coefficients in `Coeff`
/// (Q for concrete elements, a parameter ring for symbolic ones).
template <class Coeff>
class BasicFreePoly {
public:
    using Term = std::pair<Word, Coeff>;

    BasicFreePoly() = default;
    /// `zero` fixes the coefficient ring (needed for parameter rings).
    explicit BasicFreePoly(Coeff zero) : zero_(std::move(zero)) {}

    static BasicFreePoly from_terms(std::vector<Term> terms, Coeff zero = Coeff()) {
        BasicFreePoly p(std::move(zero));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }
    static BasicFreePoly word(Word w, Coeff c) {
        Coeff zero = c * 0;
        BasicFreePoly p(zero);
        if (!coeff_is_zero(c)) p.terms_.emplace_back(std::move(w), std::move(c));
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const Coeff& zero_coeff() const { return zero_; }

    Coeff coefficient(const Word& w) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                                   [](const Term& t, const Word& k) { return word_less(t.first, k); });
        if (it != terms_.end() && it->first == w) return it->second;
        return zero_;
    }

    /// Maximal word length; error on zero.
    unsigned degree() const {
        if (terms_.empty()) throw error("degree of zero undefined");
        return static_cast<unsigned>(terms_.back().first.size());
    }
    unsigned degree_x() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, deg_x(t.first));
        return d;
    }
    unsigned degree_y() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, deg_y(t.first));
        return d;
    }
    BasicFreePoly homogeneous_component(unsigned s) const {
        BasicFreePoly r(zero_);
        for (const auto& t : terms_)
            if (t.first.size() == s) r.terms_.push_back(t);
        return r;
    }
    BasicFreePoly leading_form() const { return homogeneous_component(degree()); }

    friend bool operator==(const BasicFreePoly& a, const BasicFreePoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
        return true;
    }
    friend bool operator!=(const BasicFreePoly& a, const BasicFreePoly& b) { return !(a == b); }

    BasicFreePoly operator-() const {
        BasicFreePoly r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    friend BasicFreePoly operator+(const BasicFreePoly& a, const BasicFreePoly& b) { return merge(a, b, false); }
    friend BasicFreePoly operator-(const BasicFreePoly& a, const BasicFreePoly& b) { return merge(a, b, true); }
    BasicFreePoly& operator+=(const BasicFreePoly& b) { return *this = *this + b; }
    BasicFreePoly& operator-=(const BasicFreePoly& b) { return *this = *this - b; }

    friend BasicFreePoly operator*(const BasicFreePoly& a, const BasicFreePoly& b) {
        std::unordered_map<Word, Coeff> acc;
        acc.reserve(a.size() * b.size());
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) accumulate(acc, wa + wb, ca * cb);
        return from_map(std::move(acc), a.zero_);
    }
    BasicFreePoly& operator*=(const BasicFreePoly& b) { return *this = *this * b; }

    friend BasicFreePoly operator*(const Coeff& s, const BasicFreePoly& a) {
        BasicFreePoly r(a.zero_);
        if (coeff_is_zero(s)) return r;
        for (const auto& [w, c] : a.terms_) {
            Coeff v = s * c;
            if (!coeff_is_zero(v)) r.terms_.emplace_back(w, std::move(v));
        }
        return r;
    }

    BasicFreePoly pow(long exp) const {
        if (exp < 0) throw error("negative exponent");
        BasicFreePoly r = word("", one()), base(*this);
        for (; exp > 0; --exp) r *= base;
        return r;
    }

    /// Coefficient ring unit, sharing the ring of zero_.
    Coeff one() const { return zero_ + 1; }

    /// Letter-by-letter substitution x -> image_x, y -> image_y.
    template <class C2>
    BasicFreePoly<C2> substitute(const BasicFreePoly<C2>& image_x, const BasicFreePoly<C2>& image_y) const {
        const C2 zero2 = image_x.zero_coeff();
        std::unordered_map<Word, C2> acc;
        std::vector<Term> sorted(terms_);
        std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        // prefix[i] = image of the first i letters of the previous word.
        std::vector<BasicFreePoly<C2>> prefix{BasicFreePoly<C2>::word("", zero2 + 1)};
        Word prev;
        for (const auto& [w, c] : sorted) {
            std::size_t common = 0;
            while (common < w.size() && common < prev.size() && w[common] == prev[common]) ++common;
            prefix.resize(common + 1);
            for (std::size_t i = common; i < w.size(); ++i)
                prefix.push_back(prefix.back() * (w[i] == 'x' ? image_x : image_y));
            for (const auto& [iw, ic] : prefix.back().terms()) BasicFreePoly<C2>::accumulate(acc, iw, lift<C2>(c, zero2) * ic);
            prev = w;
        }
        return BasicFreePoly<C2>::from_map(std::move(acc), zero2);
    }

    /// Applies f to each coefficient.
    template <class C2, class F>
    BasicFreePoly<C2> map_coefficients(F&& f, C2 zero2) const {
        std::vector<typename BasicFreePoly<C2>::Term> out;
        for (const auto& [w, c] : terms_) out.emplace_back(w, f(c));
        return BasicFreePoly<C2>::from_terms(std::move(out), std::move(zero2));
    }

    static void accumulate(std::unordered_map<Word, Coeff>& acc, const Word& w, const Coeff& c) {
        auto it = acc.find(w);
        if (it == acc.end())
            acc.emplace(w, c);
        else
            it->second = it->second + c;
    }
    static BasicFreePoly from_map(std::unordered_map<Word, Coeff>&& acc, Coeff zero) {
        BasicFreePoly p(std::move(zero));
        p.terms_.reserve(acc.size());
        for (auto& [w, c] : acc)
            if (!coeff_is_zero(c)) p.terms_.emplace_back(w, std::move(c));
        std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return word_less(a.first, b.first); });
        return p;
    }

private:
    template <class C2>
    static C2 lift(const Coeff& c, const C2& zero2) {
        if constexpr (std::is_same_v<Coeff, C2>)
            return c;
        else
            return zero2 + c;
    }

    static BasicFreePoly merge(const BasicFreePoly& a, const BasicFreePoly& b, bool subtract) {
        BasicFreePoly r(a.terms_.empty() ? b.zero_ : a.zero_);
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && word_less(a.terms_[i].first, b.terms_[j].first))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || word_less(b.terms_[j].first, a.terms_[i].first)) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? Coeff(-b.terms_[j].second) : b.terms_[j].second);
                ++j;
            } else {
                Coeff c = subtract ? Coeff(a.terms_[i].second - b.terms_[j].second)
                                   : Coeff(a.terms_[i].second + b.terms_[j].second);
                if (!coeff_is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    void normalize() {
        std::unordered_map<Word, Coeff> acc;
        for (auto& [w, c] : terms_) accumulate(acc, w, c);
        *this = from_map(std::move(acc), zero_);
    }

    template <class>
    friend class BasicFreePoly;

    Coeff zero_{};
    std::vector<Term> terms_;
};

using FreePoly = BasicFreePoly<Scalar>;

inline FreePoly free_const(const Scalar& c) { return FreePoly::word("", c); }
inline FreePoly free_x() { return FreePoly::word("x", 1); }
inline FreePoly free_y() { return FreePoly::word("y", 1); }
inline FreePoly commutator(const FreePoly& f, const FreePoly& g) { return f * g - g * f; }
inline FreePoly commutator_xy() { return commutator(free_x(), free_y()); }

inline FreePoly operator*(const FreePoly& a, long s) { return Scalar(s) * a; }

inline std::string to_string(const FreePoly& p) {
    if (p.is_zero()) return "0";
    std::vector<FreePoly::Term> t(p.terms());
    std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return word_print_before(a.first, b.first); });
    std::string out;
    for (const auto& [w, c] : t) append_term(out, c, word_to_string(w));
    return out;
}

inline FreePoly free_substitute(const FreePoly& u, const FreePoly& image_x, const FreePoly& image_y) {
    return u.substitute(image_x, image_y);
}

/// Abelianization K<x,y> -> K[x,y].
inline CommPoly abelianize(const FreePoly& u) {
    std::vector<CommPoly::Term> t;
    for (const auto& [w, c] : u.terms()) {
        Monomial m(2);
        m[0] = deg_x(w);
        m[1] = deg_y(w);
        t.emplace_back(std::move(m), c);
    }
    return CommPoly::from_terms(xy_vars(), std::move(t));
}

}  // namespace autoeq
