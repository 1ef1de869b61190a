#pragma once

#include "autoeq/scalar.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace autoeq {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

inline VarsPtr make_vars(VarList names) { return std::make_shared<const VarList>(std::move(names)); }

inline const VarsPtr& xy_vars() {
    static const VarsPtr v = make_vars({"x", "y"});
    return v;
}

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) { return a == b || *a == *b; }

/// Exponent vector indexed by the ambient variable list.
class Monomial {
public:
    using Exps = boost::container::small_vector<std::uint32_t, 8>;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(Exps e) : e_(std::move(e)) {}

    std::size_t size() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    const Exps& exps() const { return e_; }

    unsigned degree() const { return std::accumulate(e_.begin(), e_.end(), 0u); }
    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](auto v) { return v == 0; });
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    /// o / *this, assuming divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r(o);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != 0 && o.e_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::size_t hash() const {
        std::size_t h = e_.size();
        for (auto v : e_) h = h * 1000003u ^ v;
        return h;
    }

private:
    Exps e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded lexicographic: total degree first, then earlier variables dominate.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

inline std::string monomial_to_string(const Monomial& m, const VarList& names) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += names[i];
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

/// Appends one signed term to a sum being printed.
inline void append_term(std::string& out, const Scalar& c, const std::string& mono) {
    bool neg = sgn(c) < 0;
    Scalar a = neg ? Scalar(-c) : c;
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (mono.empty()) {
        out += to_string(a);
    } else {
        if (a != 1) out += to_string(a) + "*";
        out += mono;
    }
}

/// Sparse polynomial over Q in an ordered list of commuting variables.
/// Terms are kept in decreasing graded-lex order with no zero coefficients.
class CommPoly {
public:
    using Term = std::pair<Monomial, Scalar>;

    CommPoly() : vars_(xy_vars()) {}
    explicit CommPoly(VarsPtr vars) : vars_(std::move(vars)) {}
    CommPoly(VarsPtr vars, const Scalar& c) : vars_(std::move(vars)) {
        if (!autoeq::is_zero(c)) terms_.emplace_back(Monomial(vars_->size()), c);
    }

    static CommPoly variable(VarsPtr vars, std::size_t index) {
        CommPoly p(vars);
        Monomial m(vars->size());
        m[index] = 1;
        p.terms_.emplace_back(std::move(m), Scalar(1));
        return p;
    }
    static CommPoly variable(VarsPtr vars, const std::string& name) {
        auto it = std::find(vars->begin(), vars->end(), name);
        if (it == vars->end()) throw error("unknown variable " + name);
        return variable(vars, static_cast<std::size_t>(it - vars->begin()));
    }
    static CommPoly monomial(VarsPtr vars, Monomial m, const Scalar& c) {
        CommPoly p(std::move(vars));
        if (!autoeq::is_zero(c)) p.terms_.emplace_back(std::move(m), c);
        return p;
    }
    /// Builds from unsorted terms, combining duplicates.
    static CommPoly from_terms(VarsPtr vars, std::vector<Term> terms) {
        CommPoly p(std::move(vars));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    Scalar constant_term() const {
        if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
        return 0;
    }
    const Scalar& leading_coefficient() const {
        if (terms_.empty()) throw error("leading coefficient of zero");
        return terms_.front().second;
    }

    Scalar coefficient(const Monomial& m) const {
        for (const auto& [mono, c] : terms_)
            if (mono == m) return c;
        return 0;
    }

    friend bool operator==(const CommPoly& a, const CommPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
        return a.terms_.empty() || same_vars(a.vars_, b.vars_);
    }
    friend bool operator!=(const CommPoly& a, const CommPoly& b) { return !(a == b); }

    CommPoly operator-() const {
        CommPoly r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend CommPoly operator+(const CommPoly& a, const CommPoly& b) { return merge(a, b, false); }
    friend CommPoly operator-(const CommPoly& a, const CommPoly& b) { return merge(a, b, true); }
    CommPoly& operator+=(const CommPoly& b) { return *this = *this + b; }
    CommPoly& operator-=(const CommPoly& b) { return *this = *this - b; }

    friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
        check_vars(a, b);
        CommPoly r(a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        r.terms_.reserve(a.size() * b.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
        r.normalize();
        return r;
    }
    CommPoly& operator*=(const CommPoly& b) { return *this = *this * b; }

    friend CommPoly operator*(const Scalar& s, const CommPoly& a) {
        CommPoly r(a.vars_);
        if (autoeq::is_zero(s)) return r;
        r.terms_ = a.terms_;
        for (auto& t : r.terms_) t.second *= s;
        return r;
    }
    CommPoly operator*(const Scalar& s) const { return s * *this; }

    CommPoly pow(long exp) const {
        if (exp < 0) throw error("negative exponent");
        CommPoly result(vars_, Scalar(1)), base(*this);
        auto e = static_cast<unsigned long>(exp);
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    unsigned total_degree() const {
        if (is_zero()) throw error("degree of zero undefined");
        return terms_.front().first.degree();
    }
    unsigned degree_in(std::size_t var) const {
        if (is_zero()) throw error("degree of zero undefined");
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first[var]);
        return d;
    }
    /// Homogeneous component of maximal total degree.
    CommPoly leading_form() const {
        if (is_zero()) throw error("degree of zero undefined");
        CommPoly r(vars_);
        unsigned d = total_degree();
        for (const auto& t : terms_) {
            if (t.first.degree() != d) break;
            r.terms_.push_back(t);
        }
        return r;
    }

    CommPoly derivative(std::size_t var) const {
        std::vector<Term> out;
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d(m);
            d[var] -= 1;
            out.emplace_back(std::move(d), c * m[var]);
        }
        return from_terms(vars_, std::move(out));
    }

    /// Replaces variable i by images[i]; all images share one variable list.
    CommPoly substitute(const std::vector<CommPoly>& images) const {
        if (images.size() != nvars()) throw error("substitution arity mismatch");
        if (images.empty()) return *this;
        const VarsPtr& target = images.front().vars();
        std::vector<std::vector<CommPoly>> powers(images.size());
        auto power_of = [&](std::size_t i, unsigned e) -> const CommPoly& {
            auto& cache = powers[i];
            if (cache.empty()) cache.emplace_back(target, Scalar(1));
            while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
            return cache[e];
        };
        std::vector<Term> acc;
        for (const auto& [m, c] : terms_) {
            CommPoly t(target, c);
            for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
                if (m[i]) t *= power_of(i, m[i]);
            acc.insert(acc.end(), t.terms_.begin(), t.terms_.end());
        }
        return from_terms(target, std::move(acc));
    }

    /// Fixes variable `var` to a scalar value, keeping the variable list.
    CommPoly specialize(std::size_t var, const Scalar& value) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial r(m);
            r[var] = 0;
            out.emplace_back(std::move(r), c * power(value, m[var]));
        }
        return from_terms(vars_, std::move(out));
    }

    Scalar evaluate(const std::vector<Scalar>& point) const {
        Scalar s = 0;
        for (const auto& [m, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= power(point[i], m[i]);
            s += t;
        }
        return s;
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable actually used.
    CommPoly embed(const VarsPtr& target) const {
        if (same_vars(vars_, target)) {
            CommPoly r(*this);
            r.vars_ = target;
            return r;
        }
        std::vector<std::size_t> where(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) {
            auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
            where[i] = it == target->end() ? target->size() : static_cast<std::size_t>(it - target->begin());
        }
        std::vector<Term> out;
        for (const auto& [m, c] : terms_) {
            Monomial r(target->size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                if (where[i] == target->size()) throw error("variable " + (*vars_)[i] + " missing from target ring");
                r[where[i]] = m[i];
            }
            out.emplace_back(std::move(r), c);
        }
        return from_terms(target, std::move(out));
    }

    /// Variables with a nonzero exponent somewhere.
    std::vector<bool> support() const {
        std::vector<bool> used(nvars(), false);
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < nvars(); ++i)
                if (t.first[i]) used[i] = true;
        return used;
    }

    /// Terms in decreasing lexicographic order, e.g. `x^2*y + 2*x*y^3 + y^5`.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<const Term*> order;
        for (const auto& t : terms_) order.push_back(&t);
        std::stable_sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
            return std::lexicographical_compare(b->first.exps().begin(), b->first.exps().end(),
                                                a->first.exps().begin(), a->first.exps().end());
        });
        std::string out;
        for (const Term* t : order) append_term(out, t->second, monomial_to_string(t->first, *vars_));
        return out;
    }

private:
    static void check_vars(const CommPoly& a, const CommPoly& b) {
        if (!same_vars(a.vars_, b.vars_)) throw error("variable lists differ");
    }

    static CommPoly merge(const CommPoly& a, const CommPoly& b, bool subtract) {
        check_vars(a, b);
        CommPoly r(a.vars_);
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? Scalar(-b.terms_[j].second) : b.terms_[j].second);
                ++j;
            } else {
                Scalar c = subtract ? Scalar(a.terms_[i].second - b.terms_[j].second)
                                    : Scalar(a.terms_[i].second + b.terms_[j].second);
                if (!autoeq::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return autoeq::is_zero(t.second); });
        terms_ = std::move(out);
    }

    VarsPtr vars_;
    std::vector<Term> terms_;
};

inline CommPoly operator+(const CommPoly& a, const Scalar& s) { return a + CommPoly(a.vars(), s); }
inline CommPoly operator-(const CommPoly& a, const Scalar& s) { return a - CommPoly(a.vars(), s); }

inline CommPoly poly_x() { return CommPoly::variable(xy_vars(), 0); }
inline CommPoly poly_y() { return CommPoly::variable(xy_vars(), 1); }

struct DegreeInfo {
    unsigned total_degree;
    unsigned deg_x;
    unsigned deg_y;
    CommPoly leading_form;
    bool biased;
};

/// Degree data of a bivariate polynomial; biased means the leading form has
/// x-degree at least its y-degree.
inline DegreeInfo degree_calculus(const CommPoly& u) {
    if (u.nvars() != 2) throw error("degree calculus needs variables (x, y)");
    if (u.is_zero()) throw error("degree of zero undefined");
    CommPoly lf = u.leading_form();
    return {u.total_degree(), u.degree_in(0), u.degree_in(1), lf, lf.degree_in(0) >= lf.degree_in(1)};
}

inline CommPoly substitute(const CommPoly& u, const CommPoly& image_x, const CommPoly& image_y) {
    return u.substitute({image_x, image_y});
}

inline std::pair<CommPoly, CommPoly> partials(const CommPoly& u) { return {u.derivative(0), u.derivative(1)}; }

}  // namespace autoeq
