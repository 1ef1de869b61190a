#pragma once

#include "autoeq/uni_poly.hpp"

#include <chrono>
#include <optional>
#include <numeric>
#include <set>

namespace autoeq {

/// Raised when a computation exceeds its resource budget.
class budget_exceeded : public error {
public:
    using error::error;
};

/// Pair-reduction and wall-clock limits shared by a whole decision run.
struct Budget {
    std::size_t max_pairs = 2'000'000;
    std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
    std::size_t pairs_used = 0;

    static Budget unlimited() { return {}; }
    static Budget with_timeout(double seconds, std::size_t max_pairs = 2'000'000) {
        Budget b;
        b.max_pairs = max_pairs;
        b.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
        return b;
    }
    void charge_pair() {
        if (++pairs_used > max_pairs) throw budget_exceeded("pair budget exhausted");
        check_clock();
    }
    void check_clock() const {
        if (std::chrono::steady_clock::now() > deadline) throw budget_exceeded("time budget exhausted");
    }
};

struct MonomialOrder {
    enum class Kind { lex, degrevlex, block };
    Kind kind = Kind::degrevlex;
    std::size_t split = 0;  // block: variables [0, split) form the eliminated block

    static MonomialOrder lex() { return {Kind::lex, 0}; }
    static MonomialOrder degrevlex() { return {Kind::degrevlex, 0}; }
    static MonomialOrder block(std::size_t split) { return {Kind::block, split}; }

    /// Strictly greater.
    bool greater(const Monomial& a, const Monomial& b) const {
        switch (kind) {
        case Kind::lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] > b[i];
            return false;
        case Kind::degrevlex:
            return grevlex_greater(a, b, 0, a.size());
        case Kind::block:
            if (grevlex_greater(a, b, 0, split)) return true;
            if (grevlex_greater(b, a, 0, split)) return false;
            return grevlex_greater(a, b, split, a.size());
        }
        return false;
    }

private:
    static bool grevlex_greater(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        unsigned da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct GroebnerBasis {
    VarsPtr vars;
    std::vector<CommPoly> generators;  // reduced, monic, leading monomials descending
    MonomialOrder order;
};

namespace detail {

struct ITerm {
    Monomial m;
    Integer c;
};
using IPoly = std::vector<ITerm>;  // descending in the active order

inline Integer content(const IPoly& f) {
    Integer g = 0;
    for (const auto& t : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void make_primitive(IPoly& f) {
    if (f.empty()) return;
    Integer g = content(f);
    if (sgn(f.front().c) < 0) g = -g;
    if (g != 1)
        for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

inline IPoly to_ipoly(const CommPoly& p, const MonomialOrder& ord) {
    Integer den = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IPoly f;
    f.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        Integer v = c.get_num() * (den / c.get_den());
        f.push_back({m, v});
    }
    std::sort(f.begin(), f.end(), [&](const ITerm& a, const ITerm& b) { return ord.greater(a.m, b.m); });
    make_primitive(f);
    return f;
}

inline CommPoly to_comm(const IPoly& f, const VarsPtr& vars) {
    std::vector<CommPoly::Term> t;
    if (f.empty()) return CommPoly(vars);
    Scalar lead(f.front().c);
    for (const auto& [m, c] : f) t.emplace_back(m, Scalar(c) / lead);
    return CommPoly::from_terms(vars, std::move(t));
}

/// a*f - b*mono*g, with the order used to merge.
inline IPoly combine(const Integer& a, const IPoly& f, std::size_t from, const Integer& b, const Monomial& mono,
                     const IPoly& g, const MonomialOrder& ord) {
    IPoly r;
    r.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < f.size() || j < g.size()) {
        if (j == g.size()) {
            r.push_back({f[i].m, a * f[i].c});
            ++i;
            continue;
        }
        Monomial gm = g[j].m * mono;
        if (i == f.size() || ord.greater(gm, f[i].m)) {
            r.push_back({std::move(gm), -b * g[j].c});
            ++j;
        } else if (ord.greater(f[i].m, gm)) {
            r.push_back({f[i].m, a * f[i].c});
            ++i;
        } else {
            Integer c = a * f[i].c - b * g[j].c;
            if (sgn(c) != 0) r.push_back({f[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

/// Full fraction-free reduction; result is primitive (up to sign normalization).
inline IPoly reduce(IPoly f, const std::vector<const IPoly*>& basis, const MonomialOrder& ord, Budget* budget) {
    IPoly rem;
    std::size_t steps = 0, head = 0;
    while (head < f.size()) {
        const ITerm& lead = f[head];
        const IPoly* div = nullptr;
        for (const IPoly* g : basis)
            if (g->front().m.divides(lead.m)) {
                div = g;
                break;
            }
        if (!div) {
            rem.push_back(std::move(f[head++]));
            continue;
        }
        Integer gg;
        mpz_gcd(gg.get_mpz_t(), lead.c.get_mpz_t(), div->front().c.get_mpz_t());
        Integer a = div->front().c / gg, b = lead.c / gg;
        Monomial q = div->front().m.quotient_of(lead.m);
        f = combine(a, f, head, b, q, *div, ord);
        head = 0;
        if (a != 1)
            for (auto& t : rem) t.c *= a;
        if (++steps % 16 == 0) {
            if (budget) budget->check_clock();
            Integer g = content(f);
            for (const auto& t : rem) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
            if (g > 1) {
                for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
                for (auto& t : rem) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
            }
        }
    }
    make_primitive(rem);
    return rem;
}

inline IPoly s_poly(const IPoly& f, const IPoly& g, const MonomialOrder& ord) {
    Monomial l = f.front().m.lcm(g.front().m);
    Integer gg;
    mpz_gcd(gg.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
    Integer a = g.front().c / gg, b = f.front().c / gg;
    IPoly fs;
    Monomial qf = f.front().m.quotient_of(l);
    for (const auto& t : f) fs.push_back({t.m * qf, t.c});
    return combine(a, fs, 0, b, g.front().m.quotient_of(l), g, ord);
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `generators`.
inline GroebnerBasis buchberger(const std::vector<CommPoly>& generators, const MonomialOrder& order, VarsPtr vars = nullptr,
                                Budget* budget = nullptr) {
    using namespace detail;
    if (!vars) vars = generators.empty() ? make_vars({}) : generators.front().vars();
    if (order.kind == MonomialOrder::Kind::block && order.split > vars->size()) throw error("block split out of range");
    std::vector<IPoly> g;
    std::vector<bool> alive;
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<std::size_t, std::size_t>> pending;
    bool unit = false;

    auto live_basis = [&] {
        std::vector<const IPoly*> b;
        for (std::size_t k = 0; k < g.size(); ++k)
            if (alive[k]) b.push_back(&g[k]);
        return b;
    };
    auto insert = [&](IPoly h) {
        if (h.empty()) return;
        if (h.front().m.is_one()) {
            unit = true;
            return;
        }
        std::size_t k = g.size();
        for (std::size_t i = 0; i < k; ++i) {
            pairs.push_back({i, k, g[i].front().m.lcm(h.front().m)});
            pending.emplace(i, k);
        }
        g.push_back(std::move(h));
        alive.push_back(true);
        // Older elements whose leading monomial is a multiple are redundant for
        // reduction but keep their pairs, so the chain criterion stays sound.
        for (std::size_t i = 0; i < k; ++i)
            if (alive[i] && g[k].front().m.divides(g[i].front().m)) alive[i] = false;
    };

    for (const auto& p : generators) {
        CommPoly q = p.embed(vars);
        if (q.is_zero()) continue;
        insert(reduce(to_ipoly(q, order), live_basis(), order, budget));
        if (unit) break;
    }
    while (!unit && !pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(),
                                     [&](const Pair& a, const Pair& b) { return order.greater(b.lcm, a.lcm); });
        Pair pr = *best;
        *best = pairs.back();
        pairs.pop_back();
        pending.erase({pr.i, pr.j});
        const Monomial& li = g[pr.i].front().m;
        const Monomial& lj = g[pr.j].front().m;
        if (li.coprime(lj)) continue;
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || !g[k].front().m.divides(pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            chain = !pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k));
        }
        if (chain) continue;
        if (budget) budget->charge_pair();
        IPoly h = reduce(s_poly(g[pr.i], g[pr.j], order), live_basis(), order, budget);
        insert(std::move(h));
    }

    GroebnerBasis out{vars, {}, order};
    if (unit) {
        out.generators.push_back(CommPoly(vars, Scalar(1)));
        return out;
    }
    // Minimal basis, then interreduce.
    std::vector<IPoly> minimal;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!alive[k]) continue;
        bool redundant = false;
        for (std::size_t i = 0; i < g.size() && !redundant; ++i) {
            if (i == k || !alive[i]) continue;
            if (g[i].front().m.divides(g[k].front().m) && (g[i].front().m != g[k].front().m || i < k)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[k]);
    }
    std::vector<IPoly> reduced;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<const IPoly*> others;
        for (std::size_t i = 0; i < minimal.size(); ++i)
            if (i != k) others.push_back(&minimal[i]);
        // The lead is not divisible by any other lead, so only the tail changes.
        reduced.push_back(reduce(minimal[k], others, order, budget));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const IPoly& a, const IPoly& b) { return order.greater(a.front().m, b.front().m); });
    for (const auto& f : reduced) out.generators.push_back(to_comm(f, vars));
    return out;
}

/// Remainder of f modulo a Groebner basis, made monic (zero stays zero).
inline CommPoly normal_form(const CommPoly& f, const GroebnerBasis& gb) {
    using namespace detail;
    std::vector<IPoly> basis;
    for (const auto& g : gb.generators) basis.push_back(to_ipoly(g.embed(gb.vars), gb.order));
    std::vector<const IPoly*> ptrs;
    for (const auto& g : basis) ptrs.push_back(&g);
    return to_comm(reduce(to_ipoly(f.embed(gb.vars), gb.order), ptrs, gb.order, nullptr), gb.vars);
}

/// True iff the basis generates the unit ideal.
inline bool ideal_is_trivial(const GroebnerBasis& gb) {
    return std::any_of(gb.generators.begin(), gb.generators.end(), [](const CommPoly& g) { return g.is_constant() && !g.is_zero(); });
}

namespace detail {

inline VarsPtr with_fresh_variable(const VarsPtr& vars, std::string& name) {
    name = "z_";
    while (std::find(vars->begin(), vars->end(), name) != vars->end()) name += "_";
    VarList v(*vars);
    v.push_back(name);
    return make_vars(std::move(v));
}

inline VarsPtr common_vars(const std::vector<CommPoly>& polys, const CommPoly* extra) {
    if (!polys.empty()) return polys.front().vars();
    if (extra) return extra->vars();
    return make_vars({});
}

/// Triviality of I + (1 - z f0).
inline bool rabinowitsch_trivial(const CommPoly& f0, const std::vector<CommPoly>& generators, VarsPtr vars, Budget* budget) {
    std::string z;
    VarsPtr ext = with_fresh_variable(vars, z);
    std::vector<CommPoly> gens;
    for (const auto& g : generators) gens.push_back(g.embed(ext));
    gens.push_back(CommPoly(ext, Scalar(1)) - CommPoly::variable(ext, z) * f0.embed(ext));
    return ideal_is_trivial(buchberger(gens, MonomialOrder::degrevlex(), ext, budget));
}

}  // namespace detail

/// Some power of f0 lies in the ideal generated by `generators`.
inline bool radical_member(const CommPoly& f0, const std::vector<CommPoly>& generators, Budget* budget = nullptr) {
    return detail::rabinowitsch_trivial(f0, generators, detail::common_vars(generators, &f0), budget);
}

/// Equations f_j = 0 with an optional inequation f_0 != 0.
struct AlgebraicSystem {
    VarsPtr vars = make_vars({});
    std::vector<CommPoly> equations;
    std::optional<CommPoly> inequation;

    /// `vars: ...`, then `eq: ...` lines and an optional `neq: ...` line.
    std::string to_text() const {
        std::string out = "vars:";
        for (const auto& v : *vars) out += " " + v;
        out += "\n";
        for (const auto& e : equations) out += "eq: " + e.embed(vars).to_string() + "\n";
        if (inequation) out += "neq: " + inequation->embed(vars).to_string() + "\n";
        return out;
    }
};

/// Common zero over the algebraic closure with the inequation nonzero.
inline bool solvable(const AlgebraicSystem& sys, const MonomialOrder& order = MonomialOrder::degrevlex(),
                     Budget* budget = nullptr) {
    if (sys.inequation) {
        if (sys.inequation->is_zero()) return false;
        return !detail::rabinowitsch_trivial(*sys.inequation, sys.equations, sys.vars, budget);
    }
    return !ideal_is_trivial(buchberger(sys.equations, order, sys.vars, budget));
}

/// Generators of the elimination ideal in the variables `keep`, expressed
/// over the original variable list.
inline std::vector<CommPoly> eliminate(const std::vector<CommPoly>& generators, const std::vector<std::string>& keep,
                                       Budget* budget = nullptr) {
    if (generators.empty()) return {};
    const VarsPtr& vars = generators.front().vars();
    for (const auto& k : keep)
        if (std::find(vars->begin(), vars->end(), k) == vars->end()) throw error("unknown variable " + k);
    VarList order;
    for (const auto& v : *vars)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) order.push_back(v);
    std::size_t split = order.size();
    for (const auto& v : *vars)
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) order.push_back(v);
    VarsPtr ordered = make_vars(order);
    std::vector<CommPoly> gens;
    for (const auto& g : generators) gens.push_back(g.embed(ordered));
    GroebnerBasis gb = buchberger(gens, MonomialOrder::block(split), ordered, budget);
    std::vector<CommPoly> out;
    for (const auto& g : gb.generators) {
        auto sup = g.support();
        if (std::none_of(sup.begin(), sup.begin() + static_cast<long>(split), [](bool b) { return b; }))
            out.push_back(g.embed(vars));
    }
    return out;
}

namespace detail {

/// Rationals p/q ordered by height max(|p|, q), up to 12.
inline const std::vector<Scalar>& free_candidates() {
    static const std::vector<Scalar> c = [] {
        std::vector<Scalar> out{0};
        for (long h = 1; h <= 12; ++h)
            for (long q = 1; q <= h; ++q)
                for (long p = (q == h ? 1 : h); p <= h; ++p) {
                    if (std::gcd(p, q) != 1) continue;
                    out.emplace_back(p, q);
                    out.emplace_back(-p, q);
                }
        for (auto& s : out) s.canonicalize();
        return out;
    }();
    return c;
}

/// Assigns variables from the last one down; `free` is how many leading
/// variables are still unassigned.
inline std::optional<std::vector<Scalar>> point_search(const VarsPtr& vars, std::vector<CommPoly> eqs,
                                                      const std::optional<CommPoly>& ineq, std::size_t free,
                                                      Budget* budget) {
    if (free == 0) {
        for (const auto& e : eqs)
            if (!e.is_zero()) return std::nullopt;
        if (ineq && ineq->is_zero()) return std::nullopt;
        return std::vector<Scalar>(vars->size());
    }
    std::size_t var = free - 1;
    GroebnerBasis gb = buchberger(eqs, MonomialOrder::lex(), vars, budget);
    if (ideal_is_trivial(gb)) return std::nullopt;
    std::optional<UniPoly> eliminant;
    for (const auto& g : gb.generators) {
        auto sup = g.support();
        bool only = true;
        for (std::size_t i = 0; i < sup.size(); ++i)
            if (sup[i] && i != var) only = false;
        if (only && sup[var]) {
            eliminant = UniPoly::from_comm(g, var);
            break;
        }
    }
    const std::vector<Scalar> candidates = eliminant ? rational_roots(*eliminant) : free_candidates();
    for (const auto& c : candidates) {
        std::vector<CommPoly> next;
        for (const auto& g : gb.generators) {
            CommPoly h = g.specialize(var, c);
            if (!h.is_zero()) next.push_back(std::move(h));
        }
        std::optional<CommPoly> nineq;
        if (ineq) nineq = ineq->specialize(var, c);
        AlgebraicSystem sub{vars, next, nineq};
        if (!solvable(sub, MonomialOrder::degrevlex(), budget)) continue;
        auto rest = point_search(vars, next, nineq, free - 1, budget);
        if (rest) {
            (*rest)[var] = c;
            return rest;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Best-effort rational solution; absent when none was found.
inline std::optional<std::vector<Scalar>> rational_point(const AlgebraicSystem& sys, Budget* budget = nullptr) {
    if (!solvable(sys, MonomialOrder::degrevlex(), budget)) throw error("no solution exists");
    auto p = detail::point_search(sys.vars, sys.equations, sys.inequation, sys.vars->size(), budget);
    if (p) {
        for (const auto& e : sys.equations)
            if (!is_zero(e.embed(sys.vars).evaluate(*p))) throw error("rational point check failed");
        if (sys.inequation && is_zero(sys.inequation->embed(sys.vars).evaluate(*p)))
            throw error("rational point check failed");
    }
    return p;
}

}  // namespace autoeq
