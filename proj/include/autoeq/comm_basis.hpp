#pragma once

#include "autoeq/free_poly.hpp"

#include <map>
#include <optional>

namespace autoeq {

/// x^{a1} y^{b1} [x,y] x^{a2} y^{b2} ... [x,y] x^{a_{r+1}} y^{b_{r+1}};
/// r = blocks.size() - 1 commutator factors.
struct CommBasisTerm {
    struct Block {
        std::uint32_t a = 0, b = 0;
        friend bool operator==(const Block&, const Block&) = default;
        friend auto operator<=>(const Block&, const Block&) = default;
    };
    std::vector<Block> blocks{Block{}};

    std::size_t commutators() const { return blocks.size() - 1; }
    unsigned degree() const {
        unsigned d = 2 * static_cast<unsigned>(commutators());
        for (const auto& bl : blocks) d += bl.a + bl.b;
        return d;
    }
    /// A pure power of the commutator (an element of V).
    bool is_commutator_power() const {
        return std::all_of(blocks.begin(), blocks.end(), [](const Block& bl) { return bl.a == 0 && bl.b == 0; });
    }
    bool all_a_zero() const {
        return std::all_of(blocks.begin(), blocks.end(), [](const Block& bl) { return bl.a == 0; });
    }

    friend bool operator==(const CommBasisTerm&, const CommBasisTerm&) = default;
};

/// Higher degree first, then fewer commutators, then blocks ascending.
struct CommBasisOrder {
    bool operator()(const CommBasisTerm& s, const CommBasisTerm& t) const {
        if (s.degree() != t.degree()) return s.degree() > t.degree();
        if (s.blocks.size() != t.blocks.size()) return s.blocks.size() < t.blocks.size();
        return s.blocks < t.blocks;
    }
};

/// Coordinates of an element in the commutator basis.
class CommBasisForm {
public:
    using Map = std::map<CommBasisTerm, Scalar, CommBasisOrder>;

    CommBasisForm() = default;
    explicit CommBasisForm(Map terms) : terms_(std::move(terms)) { prune(); }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const CommBasisTerm& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add(const CommBasisTerm& t, const Scalar& c) {
        if (autoeq::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (autoeq::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend CommBasisForm operator+(CommBasisForm a, const CommBasisForm& b) {
        for (const auto& [t, c] : b.terms_) a.add(t, c);
        return a;
    }
    friend CommBasisForm operator*(const Scalar& s, const CommBasisForm& a) {
        CommBasisForm r;
        if (autoeq::is_zero(s)) return r;
        for (const auto& [t, c] : a.terms_) r.terms_.emplace(t, s * c);
        return r;
    }
    friend bool operator==(const CommBasisForm& a, const CommBasisForm& b) { return a.terms_ == b.terms_; }

    bool all_a_zero() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.all_a_zero(); });
    }

    /// `x^a1*y^b1*C*...`, C standing for [x,y].
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [t, c] : terms_) {
            // Adjacent commutators with empty blocks between them print as a power.
            std::vector<std::string> factors;
            unsigned run = 0;
            auto flush = [&] {
                if (run) factors.push_back(run == 1 ? "C" : "C^" + std::to_string(run));
                run = 0;
            };
            for (std::size_t i = 0; i < t.blocks.size(); ++i) {
                if (i > 0) ++run;
                Word w = std::string(t.blocks[i].a, 'x') + std::string(t.blocks[i].b, 'y');
                if (w.empty()) continue;
                flush();
                factors.push_back(word_to_string(w));
            }
            flush();
            std::string mono;
            for (const auto& f : factors) mono += (mono.empty() ? "" : "*") + f;
            append_term(out, c, mono);
        }
        return out;
    }

private:
    void prune() {
        std::erase_if(terms_, [](const auto& kv) { return autoeq::is_zero(kv.second); });
    }
    Map terms_;
};

namespace detail {

/// Left multiplication of a basis form by a letter. Moving y across the
/// leading x^a block uses y x^a = x^a y - sum_i x^i [x,y] x^{a-1-i},
/// which is the rule yx = xy - [x,y] applied a times.
inline CommBasisForm left_multiply(char letter, const CommBasisForm& f) {
    CommBasisForm r;
    for (const auto& [t, c] : f.terms()) {
        if (letter == 'x') {
            CommBasisTerm s = t;
            s.blocks.front().a += 1;
            r.add(s, c);
            continue;
        }
        const auto first = t.blocks.front();
        CommBasisTerm s = t;
        s.blocks.front().b += 1;
        r.add(s, c);
        for (std::uint32_t i = 0; i < first.a; ++i) {
            CommBasisTerm q;
            q.blocks.clear();
            q.blocks.push_back({i, 0});
            q.blocks.push_back({first.a - 1 - i, first.b});
            q.blocks.insert(q.blocks.end(), t.blocks.begin() + 1, t.blocks.end());
            r.add(q, -c);
        }
    }
    return r;
}

}  // namespace detail

/// Commutator-basis coordinates of u; expansion of the result equals u.
inline CommBasisForm to_comm_basis(const FreePoly& u) {
    CommBasisForm result;
    std::map<Word, CommBasisForm> memo;  // normal forms of word suffixes
    CommBasisForm unit;
    unit.add(CommBasisTerm{}, 1);
    memo.emplace("", unit);
    std::function<const CommBasisForm&(const Word&)> nf = [&](const Word& w) -> const CommBasisForm& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        CommBasisForm f = detail::left_multiply(w.front(), nf(w.substr(1)));
        return memo.emplace(w, std::move(f)).first->second;
    };
    for (const auto& [w, c] : u.terms())
        for (const auto& [t, k] : nf(w).terms()) result.add(t, c * k);
    return result;
}

inline FreePoly expand_basis_term(const CommBasisTerm& t) {
    FreePoly c = commutator_xy();
    FreePoly r = free_const(1);
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        if (i > 0) r *= c;
        r *= FreePoly::word(std::string(t.blocks[i].a, 'x') + std::string(t.blocks[i].b, 'y'), 1);
    }
    return r;
}

inline FreePoly from_comm_basis(const CommBasisForm& f) {
    FreePoly r;
    for (const auto& [t, c] : f.terms()) r += c * expand_basis_term(t);
    return r;
}

/// Coefficients lambda_k when u = sum lambda_k [x,y]^k, otherwise empty.
inline std::optional<std::vector<Scalar>> v_membership(const FreePoly& u) {
    std::vector<Scalar> lambda;
    const CommBasisForm form = to_comm_basis(u);
    for (const auto& [t, c] : form.terms()) {
        if (!t.is_commutator_power()) return std::nullopt;
        if (lambda.size() <= t.commutators()) lambda.resize(t.commutators() + 1, Scalar(0));
        lambda[t.commutators()] = c;
    }
    return lambda;
}

/// Basis form with the V component removed.
inline CommBasisForm quotient_form(const FreePoly& u) {
    CommBasisForm::Map kept;
    const CommBasisForm form = to_comm_basis(u);
    for (const auto& [t, c] : form.terms())
        if (!t.is_commutator_power()) kept.emplace(t, c);
    return CommBasisForm(std::move(kept));
}

/// Canonical representative of the class of u modulo V.
inline FreePoly quotient_project(const FreePoly& u) { return from_comm_basis(quotient_form(u)); }

/// V component of u, so that u = quotient_project(u) + v_part(u).
inline FreePoly v_part(const FreePoly& u) { return u - quotient_project(u); }

struct QuotientDegrees {
    unsigned qdeg;
    unsigned qdeg_x;
    unsigned qdeg_y;
    bool q_biased;
};

inline QuotientDegrees quotient_degrees(const FreePoly& u) {
    FreePoly rep = quotient_project(u);
    if (rep.is_zero()) throw error("element lies in V");
    FreePoly top = rep.leading_form();
    return {rep.degree(), rep.degree_x(), rep.degree_y(), top.degree_x() >= top.degree_y()};
}

inline unsigned qdeg(const FreePoly& u) { return quotient_degrees(u).qdeg; }

}  // namespace autoeq
