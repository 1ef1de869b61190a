#pragma once

#include "autoeq/bivariate_gcd.hpp"
#include "autoeq/param.hpp"

namespace autoeq {

enum class Verdict { equivalent, not_equivalent, semiinvariant, not_semiinvariant, unknown };

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::equivalent: return "EQUIVALENT";
    case Verdict::not_equivalent: return "NOT_EQUIVALENT";
    case Verdict::semiinvariant: return "SEMIINVARIANT";
    case Verdict::not_semiinvariant: return "NOT_SEMIINVARIANT";
    case Verdict::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

struct Certificate {
    Verdict verdict = Verdict::unknown;
    std::optional<AutWord> witness;
    std::optional<Scalar> lambda;
    std::optional<AlgebraicSystem> ideal;  // solvable over the closure, no rational point found
    std::vector<std::string> trace;

    std::string to_text() const {
        std::string out = "RESULT: " + verdict_name(verdict) + "\n";
        if (witness) out += "WITNESS: " + witness->to_string() + "\n";
        if (lambda) out += "LAMBDA: " + autoeq::to_string(*lambda) + "\n";
        if (ideal) out += "IDEAL:\n" + ideal->to_text();
        out += "TRACE:\n";
        for (const auto& t : trace) out += "  " + t + "\n";
        return out;
    }
};

struct Limits {
    std::size_t max_seqs = 400;
    std::size_t max_pairs = 2'000'000;
    double timeout_secs = 120;
};

inline bool verify_witness(const AutWord& phi, const FreePoly& u, const FreePoly& v) { return apply(phi, u) == v; }
inline bool verify_witness(const AutWord& phi, const CommPoly& u, const CommPoly& v) { return apply(phi, u) == v; }

/// Decides whether sum lam_k C^k and sum mu_k C^k are related by an
/// automorphism, i.e. whether lam_k w^k = mu_k has a common root w != 0.
inline Certificate case1_decide(std::vector<Scalar> lam, std::vector<Scalar> mu) {
    Certificate cert;
    std::size_t n = std::max(lam.size(), mu.size());
    lam.resize(n, Scalar(0));
    mu.resize(n, Scalar(0));
    std::optional<UniPoly> g;
    for (std::size_t k = 0; k < n; ++k) {
        if (is_zero(lam[k]) && is_zero(mu[k])) continue;
        UniPoly t = UniPoly::monomial(static_cast<unsigned>(k), lam[k]) - UniPoly::constant(mu[k]);
        cert.trace.push_back("t_" + std::to_string(k) + " = " + t.to_string("w"));
        if (t.is_zero()) continue;
        g = g ? euclid_gcd(*g, t) : t.monic();
    }
    if (!g) {
        cert.verdict = Verdict::equivalent;
        cert.witness = AutWord::identity();
        cert.trace.push_back("all t_k vanish; identity");
        return cert;
    }
    // Only nonzero roots give automorphisms.
    UniPoly h = *g;
    while (h.degree() >= 1 && is_zero(h.coeff(0))) h = divmod(h, UniPoly::identity()).first;
    cert.trace.push_back("gcd = " + h.to_string("w"));
    if (h.degree() < 1) {
        cert.verdict = Verdict::not_equivalent;
        return cert;
    }
    cert.verdict = Verdict::equivalent;
    auto roots = rational_roots(h);
    if (!roots.empty()) {
        cert.witness = AutWord::of(Triangular{1, UniPoly(), roots.front(), 0});
        cert.trace.push_back("w0 = " + autoeq::to_string(roots.front()));
    } else {
        VarsPtr vars = make_vars({"w"});
        cert.ideal = AlgebraicSystem{vars, {h.to_comm(vars, 0)}, CommPoly::variable(vars, 0)};
        cert.trace.push_back("no rational root; witness (x, w0 y) with w0 a root of the ideal");
    }
    return cert;
}

struct DegreeSequence {
    std::vector<unsigned> values;  // d_{-1}, d_0, ..., d_n
    std::size_t valley_index = 0;  // position of d_m in values
    bool first_affine = true, last_affine = true;

    std::size_t length() const { return values.size() - 2; }
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + std::to_string(values[i]);
        return s;
    }
    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

namespace detail {

/// d_{i-1} > ... > d_m <= d_{m+1} < ... < d_k over values[lo..hi].
inline std::optional<std::size_t> valley_of(const std::vector<unsigned>& v, std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m <= hi; ++m) {
        bool ok = true;
        for (std::size_t j = lo; j < m && ok; ++j) ok = v[j] > v[j + 1];
        if (ok && m < hi) ok = v[m] <= v[m + 1];
        for (std::size_t j = m + 1; j < hi && ok; ++j) ok = v[j] < v[j + 1];
        if (ok) return m;
    }
    return std::nullopt;
}

}  // namespace detail

/// Valley-shaped degree sequences from d_start to d_end, shorter first,
/// then lexicographic.
inline std::vector<DegreeSequence> enumerate_sequences(unsigned d_start, unsigned d_end, bool first_affine, bool last_affine) {
    if (d_start < 1 || d_end < 1) throw error("degrees must be positive");
    std::vector<DegreeSequence> out;
    unsigned top = std::max(d_start, d_end);
    for (std::size_t n = 0; n <= d_start + d_end; ++n) {
        if (n == 0 && first_affine != last_affine) continue;
        std::vector<unsigned> v(n + 2, 1);
        v.front() = d_start;
        v.back() = d_end;
        std::size_t inner = n;  // free positions 1..n
        std::vector<unsigned> digits(inner, 1);
        while (true) {
            for (std::size_t i = 0; i < inner; ++i) v[i + 1] = digits[i];
            bool ok = true;
            if (first_affine && v[1] != v[0]) ok = false;
            if (last_affine && v[n + 1] != v[n]) ok = false;
            std::size_t lo = first_affine ? 1 : 0;
            std::size_t hi = last_affine ? n : n + 1;
            if (ok && lo > hi) ok = false;
            std::optional<std::size_t> m;
            if (ok) m = detail::valley_of(v, lo, hi);
            if (ok && m) out.push_back(DegreeSequence{v, *m, first_affine, last_affine});
            std::size_t i = 0;
            while (i < inner && digits[i] == top) digits[i++] = 1;
            if (i == inner) break;
            ++digits[i];
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const DegreeSequence& a, const DegreeSequence& b) {
        if (a.values.size() != b.values.size()) return a.values.size() < b.values.size();
        return a.values < b.values;
    });
    return out;
}

/// Parametric system for phi = rho_n tau ... tau rho_0 following `seq`:
/// the u side descends through rho_0..rho_m, the v side through templates
/// sigma_j standing for rho_j^{-1}, and the two meet as w1 = tau w2.
struct TwoSidedSystem {
    AlgebraicSystem system;
    std::vector<ParamAut> u_side;  // rho_0 .. rho_m
    std::vector<ParamAut> v_side;  // sigma_n .. sigma_{m+1}, in application order to v

    /// Rebuilds phi from a point of the system.
    AutWord witness(const std::vector<Scalar>& point) const {
        const VarsPtr& ring = system.vars;
        AutWord w;
        // phi = sigma_n^{-1} tau ... tau sigma_{m+1}^{-1} tau rho_m tau ... tau rho_0
        for (std::size_t i = 0; i < v_side.size(); ++i) {
            w.factors.push_back(v_side[i].specialize(ring, point).inverse());
            if (i + 1 < v_side.size() || !u_side.empty()) w.factors.push_back(ElementaryAut::tau());
        }
        for (std::size_t i = u_side.size(); i-- > 0;) {
            w.factors.push_back(u_side[i].specialize(ring, point));
            if (i > 0) w.factors.push_back(ElementaryAut::tau());
        }
        return w;
    }
};

inline TwoSidedSystem build_two_sided_system(const FreePoly& u, const FreePoly& v, const DegreeSequence& seq) {
    const auto& d = seq.values;
    std::size_t n = seq.length();
    if (quotient_project(u).is_zero() || quotient_project(v).is_zero()) throw error("sequence mismatch");
    if (qdeg(u) != d.front() || qdeg(v) != d.back()) throw error("sequence mismatch");
    // values[p] is d_{p-1}; rho_0 .. rho_m act on the u side.
    std::size_t u_count = seq.valley_index;
    auto make = [&](std::size_t j, bool inverse_side) {
        bool affine = (j == 0 && seq.first_affine) || (j == n && seq.last_affine);
        if (affine) return ParamAut::affine(static_cast<unsigned>(inverse_side ? 100 + j : j));
        unsigned bound = std::max(d[j], d[j + 1]);
        return ParamAut::triangular(static_cast<unsigned>(inverse_side ? 100 + j : j), 0, std::max(bound, 2u));
    };
    TwoSidedSystem out;
    for (std::size_t j = 0; j < u_count; ++j) out.u_side.push_back(make(j, false));
    for (std::size_t j = n + 1; j-- > u_count;) out.v_side.push_back(make(j, true));
    VarList names;
    for (const auto& t : out.u_side)
        for (const auto& s : t.slots()) names.push_back(s);
    for (const auto& t : out.v_side)
        for (const auto& s : t.slots()) names.push_back(s);
    VarsPtr ring = make_vars(names);
    std::vector<CommPoly> eqs;
    VarList thetas;
    ParamAut tau = ParamAut::tau();
    auto add_degree_bound = [&](const ParamFreePoly& w, unsigned target, const std::string& tag) {
        if (w.is_zero() || w.degree() <= target) return;
        auto ex = extract_equations(w, target, w.degree(), ring,
                                    [&](unsigned s) { return "theta_" + tag + "_" + std::to_string(s); });
        thetas.insert(thetas.end(), ex.thetas.begin(), ex.thetas.end());
        eqs.insert(eqs.end(), ex.equations.begin(), ex.equations.end());
    };
    // u side: w1 = rho_m tau ... tau rho_0 u
    ParamFreePoly w1 = lift(u, ring);
    for (std::size_t j = 0; j < out.u_side.size(); ++j) {
        if (j > 0) w1 = param_apply(tau, w1, ring);
        w1 = param_apply(out.u_side[j], w1, ring);
        add_degree_bound(w1, d[j + 1], "u" + std::to_string(j));
    }
    // v side: w2 = sigma_{m+1} tau ... tau sigma_n v
    ParamFreePoly w2 = lift(v, ring);
    for (std::size_t i = 0; i < out.v_side.size(); ++i) {
        if (i > 0) w2 = param_apply(tau, w2, ring);
        w2 = param_apply(out.v_side[i], w2, ring);
        std::size_t j = n - i;  // sigma_j applied; the degree is now d_{j-1}
        add_degree_bound(w2, d[j], "v" + std::to_string(j));
    }
    ParamFreePoly gap = (out.u_side.empty() || out.v_side.empty()) ? w1 - w2 : w1 - param_apply(tau, w2, ring);
    for (const auto& [word, c] : gap.terms()) eqs.push_back(c);
    VarList all_names = names;
    all_names.insert(all_names.end(), thetas.begin(), thetas.end());
    VarsPtr full = make_vars(all_names);
    for (auto& e : eqs) e = e.embed(full);
    std::vector<ParamAut> all = out.u_side;
    all.insert(all.end(), out.v_side.begin(), out.v_side.end());
    out.system = AlgebraicSystem{full, eqs, nondegeneracy(all, full)};
    return out;
}

namespace detail {

/// Shared state of one decision run.
struct Run {
    Budget budget;
    std::size_t max_systems;
    std::size_t systems = 0;
    std::vector<std::string> trace;

    explicit Run(const Limits& l) : budget(Budget::with_timeout(l.timeout_secs, l.max_pairs)), max_systems(l.max_seqs) {}
    void count_system() {
        if (++systems > max_systems) throw budget_exceeded("system budget exhausted");
        budget.check_clock();
    }
};

struct FreeModel {
    using Elem = FreePoly;
    using PElem = ParamFreePoly;
    static constexpr const char* degree_name = "qdeg";

    static unsigned degree(const Elem& w) { return qdeg(w); }
    static Elem rep(const Elem& w) { return quotient_project(w); }
    static bool biased(const Elem& rep) { return quotient_degrees(rep).q_biased; }
    static std::vector<std::pair<unsigned, Scalar>> top_terms(const Elem& rep) {
        std::vector<std::pair<unsigned, Scalar>> r;
        const auto lf = rep.leading_form();
        for (const auto& [w, c] : lf.terms()) r.emplace_back(deg_x(w), c);
        return r;
    }
    static PElem lift(const Elem& w, const VarsPtr& ring) { return autoeq::lift(w, ring); }
    static PElem papply(const ParamAut& t, const PElem& w, const VarsPtr& ring, std::size_t min_len = 0) {
        return param_apply(t, w, ring, min_len);
    }
    static ExtractedEquations over_degree(const PElem& w, unsigned target, const VarsPtr& ring) {
        if (w.is_zero() || w.degree() <= target) return {ring, {}, {}};
        return extract_equations(w, target, w.degree(), ring);
    }
    static std::vector<CommPoly> coefficients(const PElem& w) {
        std::vector<CommPoly> r;
        for (const auto& [word, c] : w.terms()) r.push_back(c);
        return r;
    }
    static PElem scaled(const CommPoly& s, const PElem& w) { return s * w; }
    static PElem embed(const PElem& w, const VarsPtr& ring) {
        return w.map_coefficients<CommPoly>([&](const CommPoly& c) { return c.embed(ring); }, CommPoly(ring));
    }
    static Elem specialize(const PElem& w, const std::vector<Scalar>& pt) { return autoeq::specialize(w, pt); }
};

struct CommModel {
    using Elem = CommPoly;
    using PElem = ParamCommPoly;
    static constexpr const char* degree_name = "deg";

    static unsigned degree(const Elem& w) { return w.total_degree(); }
    static Elem rep(const Elem& w) { return w - Scalar(w.constant_term()); }
    static bool biased(const Elem& rep) { return degree_calculus(rep).biased; }
    static std::vector<std::pair<unsigned, Scalar>> top_terms(const Elem& rep) {
        std::vector<std::pair<unsigned, Scalar>> r;
        const auto lf = rep.leading_form();
        for (const auto& [m, c] : lf.terms()) r.emplace_back(m[0], c);
        return r;
    }
    static PElem lift(const Elem& w, const VarsPtr& ring) { return autoeq::lift(w, ring); }
    static PElem papply(const ParamAut& t, const PElem& w, const VarsPtr& ring, std::size_t = 0) {
        return param_apply(t, w, ring);
    }
    static ExtractedEquations over_degree(const PElem& w, unsigned target, const VarsPtr& ring) {
        ExtractedEquations out{ring, {}, {}};
        for (const auto& [e, c] : w.terms)
            if (e.first + e.second > target) out.equations.push_back(c);
        return out;
    }
    static std::vector<CommPoly> coefficients(const PElem& w) {
        std::vector<CommPoly> r;
        for (const auto& [e, c] : w.terms) r.push_back(c);
        return r;
    }
    static PElem scaled(const CommPoly& s, const PElem& w) { return s * w; }
    static PElem embed(const PElem& w, const VarsPtr& ring) {
        PElem r(ring);
        for (const auto& [e, c] : w.terms) r.add(e, c.embed(ring));
        return r;
    }
    static Elem specialize(const PElem& w, const std::vector<Scalar>& pt) { return autoeq::specialize(w, pt); }
};

inline ElementaryAut coset_rep(const Scalar& mu) { return Affine{mu, 1, 0, 1, 0, 0}; }

/// Affine maps (mu x + y, x) or the identity placed before a triangular step.
struct CosetChoice {
    bool identity = true;
    std::optional<Scalar> mu;      // concrete mu
    std::optional<UniPoly> mu_eq;  // symbolic mu constrained by mu_eq(mu) = 0 (none: free)

    std::string describe() const {
        if (identity) return "id";
        if (mu) return "(" + autoeq::to_string(*mu) + "x+y, x)";
        return mu_eq ? "(mu x+y, x), mu root of " + mu_eq->to_string("mu") : "(mu x+y, x), mu free";
    }
};

/// Coset representatives after which a nonaffine triangular map can keep
/// or lower the degree: the image must be unbiased.
template <class M>
std::vector<CosetChoice> coset_choices(const typename M::Elem& rep) {
    std::vector<CosetChoice> out;
    if (!M::biased(rep)) out.push_back({true, std::nullopt, std::nullopt});
    // Coefficient of x^d after (mu x + y, x).
    UniPoly g;
    for (const auto& [a, c] : M::top_terms(rep)) g = g + UniPoly::monomial(a, c);
    if (g.is_zero()) {
        out.push_back({false, std::nullopt, std::nullopt});
        return out;
    }
    auto roots = rational_roots(g);
    for (const auto& r : roots) {
        typename M::Elem img = M::rep(apply(AutWord::of(coset_rep(r)), rep));
        if (!M::biased(img)) out.push_back({false, r, std::nullopt});
    }
    UniPoly sq = divmod(g, euclid_gcd(g, g.derivative())).first;
    if (sq.degree() > static_cast<int>(roots.size())) out.push_back({false, std::nullopt, sq});
    return out;
}

inline VarsPtr ring_of(const std::vector<ParamAut>& templates, const VarList& extra = {}) {
    VarList names;
    for (const auto& t : templates)
        for (const auto& s : t.slots()) names.push_back(s);
    names.insert(names.end(), extra.begin(), extra.end());
    return make_vars(names);
}

template <class M>
struct StepResult {
    std::optional<AutWord> step;           // found a lowering step
    std::optional<AlgebraicSystem> stuck;  // a step exists over the closure only
};

/// One lowering step T R0 with T = (x + p(y), y), p in span(y^2..y^k).
template <class M>
StepResult<M> find_step(const typename M::Elem& w, Run& run) {
    using Elem = typename M::Elem;
    Elem rep = M::rep(w);
    unsigned d = M::degree(w);
    StepResult<M> res;
    if (d < 2) return res;
    for (const auto& choice : coset_choices<M>(rep)) {
        for (unsigned k = 2; k <= d; ++k) {
            run.count_system();
            ParamAut T = ParamAut::triangular(1, 2, k, true, false);
            ParamAut R = ParamAut::coset(0);
            bool symbolic = !choice.identity && !choice.mu;
            std::vector<ParamAut> templates;
            if (symbolic) templates.push_back(R);
            templates.push_back(T);
            VarsPtr ring = ring_of(templates);
            typename M::PElem base = symbolic ? M::papply(R, M::lift(rep, ring), ring)
                                     : M::lift(choice.identity ? rep : M::rep(apply(AutWord::of(coset_rep(*choice.mu)), rep)), ring);
            typename M::PElem img = M::papply(T, base, ring, d);
            ExtractedEquations ex = M::over_degree(img, d - 1, ring);
            AlgebraicSystem sys{ex.vars, ex.equations, std::nullopt};
            if (symbolic && choice.mu_eq) sys.equations.push_back(choice.mu_eq->to_comm(ex.vars, 0));
            if (!solvable(sys, MonomialOrder::degrevlex(), &run.budget)) continue;
            auto pt = rational_point(sys, &run.budget);
            if (!pt) {
                res.stuck = sys;
                run.trace.push_back("lowering step from " + std::string(M::degree_name) + " " + std::to_string(d) +
                                    " exists only over the closure (" + choice.describe() + ", deg p <= " + std::to_string(k) + ")");
                return res;
            }
            AutWord step;
            step.factors.push_back(T.specialize(sys.vars, *pt));
            if (!choice.identity) step.factors.push_back(symbolic ? R.specialize(sys.vars, *pt) : coset_rep(*choice.mu));
            res.step = step;
            return res;
        }
    }
    return res;
}

template <class M>
struct Descent {
    AutWord psi;  // psi(u) = star
    typename M::Elem star;
    std::vector<unsigned> degrees;
    std::optional<AlgebraicSystem> stuck;
};

template <class M>
Descent<M> descend(const typename M::Elem& u, Run& run, const std::string& label) {
    Descent<M> ds{AutWord::identity(), u, {M::degree(u)}, std::nullopt};
    while (true) {
        auto r = find_step<M>(ds.star, run);
        if (r.stuck) {
            ds.stuck = r.stuck;
            break;
        }
        if (!r.step) break;
        typename M::Elem next = apply(*r.step, ds.star);
        unsigned nd = M::degree(next);
        if (nd >= ds.degrees.back()) throw error("internal: lowering step did not lower the degree");
        ds.psi = compose(*r.step, ds.psi);
        ds.star = next;
        ds.degrees.push_back(nd);
    }
    std::string s;
    for (unsigned d : ds.degrees) s += " " + std::to_string(d);
    run.trace.push_back("descent " + label + ":" + s);
    return ds;
}

/// Search for chi with chi(us) = lambda * vs; chi = B^{-1} T0 R0 or an
/// affine map. Nontrivial mode requires chi != id and leaves lambda free.
struct MeetResult {
    std::optional<AutWord> chi;
    std::optional<Scalar> lambda;
    std::optional<AlgebraicSystem> ideal;
};

template <class M>
MeetResult meet(const typename M::Elem& us, const typename M::Elem& vs, bool semiinvariant, bool prefer_scaling, Run& run) {
    using PElem = typename M::PElem;
    MeetResult res;
    unsigned N = M::degree(us);
    ParamAut B = ParamAut::affine(2);

    struct Shape {
        std::optional<CosetChoice> coset;  // nullopt: pure affine
    };
    std::vector<Shape> shapes{{std::nullopt}};
    if (N >= 2)
        for (const auto& c : coset_choices<M>(M::rep(us))) shapes.push_back({c});

    for (const auto& shape : shapes) {
        ParamAut T = ParamAut::triangular(1, 2, N, true, false);
        ParamAut R = ParamAut::coset(0);
        bool symbolic = shape.coset && !shape.coset->identity && !shape.coset->mu;
        std::vector<ParamAut> templates;
        if (symbolic) templates.push_back(R);
        if (shape.coset) templates.push_back(T);
        templates.push_back(B);
        VarList extra;
        if (semiinvariant) extra.push_back(pname::lambda());
        VarsPtr ring = ring_of(templates, extra);
        CommPoly lam = semiinvariant ? CommPoly::variable(ring, pname::lambda()) : CommPoly(ring, Scalar(1));

        // Left side: T0 R0 us (or us), right side: lambda B(vs).
        PElem left = M::lift(us, ring);
        ParamFreePoly cx = param_word("x", CommPoly(ring, Scalar(1))), cy = param_word("y", CommPoly(ring, Scalar(1)));
        if (shape.coset) {
            if (!shape.coset->identity) {
                if (symbolic) {
                    left = M::papply(R, left, ring);
                    auto im = R.images(ring);
                    cx = im.first;
                    cy = im.second;
                } else {
                    left = M::lift(apply(AutWord::of(coset_rep(*shape.coset->mu)), us), ring);
                    auto im = coset_rep(*shape.coset->mu).free_images();
                    cx = lift(im.first, ring);
                    cy = lift(im.second, ring);
                }
            }
            left = M::papply(T, left, ring);
            auto [tx, ty] = T.images(ring);
            cx = param_substitute(cx, tx, ty);
            cy = param_substitute(cy, tx, ty);
        }
        PElem right = M::scaled(lam, M::papply(B, M::lift(vs, ring), ring));
        std::vector<CommPoly> eqs = M::coefficients(left - right);
        CommPoly base_neq = B.nondegeneracy(ring) * lam;
        if (prefer_scaling) base_neq = base_neq * (lam - Scalar(1));
        if (shape.coset && shape.coset->mu_eq && symbolic) eqs.push_back(shape.coset->mu_eq->to_comm(ring, 0));

        std::vector<CommPoly> disjuncts;
        if (semiinvariant) {
            auto [bx, by] = B.images(ring);
            for (const auto& c : FreeModel::coefficients(cx - bx)) disjuncts.push_back(c);
            for (const auto& c : FreeModel::coefficients(cy - by)) disjuncts.push_back(c);
        } else {
            disjuncts.push_back(CommPoly(ring, Scalar(1)));
        }
        std::string shape_name = shape.coset ? "B^-1 T0 " + shape.coset->describe() : "affine";
        for (const auto& dj : disjuncts) {
            if (dj.is_constant() && dj.is_zero()) continue;
            run.count_system();
            AlgebraicSystem sys{ring, eqs, base_neq * dj};
            if (!solvable(sys, MonomialOrder::degrevlex(), &run.budget)) continue;
            auto pt = rational_point(sys, &run.budget);
            if (!pt) {
                if (!res.ideal) res.ideal = sys;
                continue;
            }
            AutWord chi;
            chi.factors.push_back(B.specialize(ring, *pt).inverse());
            if (shape.coset) {
                chi.factors.push_back(T.specialize(ring, *pt));
                if (!shape.coset->identity)
                    chi.factors.push_back(symbolic ? R.specialize(ring, *pt) : coset_rep(*shape.coset->mu));
            }
            res.chi = chi;
            if (semiinvariant) res.lambda = lam.evaluate(*pt);
            run.trace.push_back("meet at " + std::string(M::degree_name) + " " + std::to_string(N) + ": " + shape_name);
            return res;
        }
    }
    return res;
}

template <class M>
Certificate equiv_core(const typename M::Elem& u, const typename M::Elem& v, Run& run) {
    Certificate cert;
    auto du = descend<M>(u, run, "u");
    auto dv = descend<M>(v, run, "v");
    if (du.stuck || dv.stuck) {
        cert.verdict = Verdict::unknown;
        cert.ideal = du.stuck ? du.stuck : dv.stuck;
        run.trace.push_back("a lowering step needs irrational coefficients");
        return cert;
    }
    std::vector<unsigned> seq = du.degrees;
    for (std::size_t i = dv.degrees.size(); i-- > 0;) seq.push_back(dv.degrees[i]);
    if (du.degrees.back() != dv.degrees.back()) {
        run.trace.push_back("minimal degrees differ: " + std::to_string(du.degrees.back()) + " vs " +
                            std::to_string(dv.degrees.back()));
        cert.verdict = Verdict::not_equivalent;
        return cert;
    }
    MeetResult mr = meet<M>(du.star, dv.star, false, false, run);
    if (mr.chi) {
        AutWord phi = compose(invert(dv.psi), compose(*mr.chi, du.psi));
        if (!verify_witness(phi, u, v)) throw error("internal: witness failed verification");
        std::string s;
        for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? " " : "") + std::to_string(seq[i]);
        run.trace.push_back("sequence: " + s);
        cert.verdict = Verdict::equivalent;
        cert.witness = phi;
        return cert;
    }
    if (mr.ideal) {
        run.trace.push_back("meeting map exists only over the closure");
        cert.verdict = Verdict::equivalent;
        cert.ideal = mr.ideal;
        return cert;
    }
    run.trace.push_back("no meeting map at minimal degree");
    cert.verdict = Verdict::not_equivalent;
    return cert;
}

template <class M>
Certificate semiinv_core(const typename M::Elem& u, Run& run) {
    Certificate cert;
    auto du = descend<M>(u, run, "u");
    if (du.stuck) {
        cert.verdict = Verdict::unknown;
        cert.ideal = du.stuck;
        return cert;
    }
    std::optional<AlgebraicSystem> ideal;
    for (bool prefer : {true, false}) {
        MeetResult mr = meet<M>(du.star, du.star, true, prefer, run);
        if (mr.chi) {
            AutWord phi = compose(invert(du.psi), compose(*mr.chi, du.psi));
            if (apply(phi, u) != *mr.lambda * u) throw error("internal: semiinvariant witness failed verification");
            cert.verdict = Verdict::semiinvariant;
            cert.witness = phi;
            cert.lambda = mr.lambda;
            return cert;
        }
        if (mr.ideal && !ideal) ideal = mr.ideal;
    }
    if (ideal) {
        cert.verdict = Verdict::semiinvariant;
        cert.ideal = ideal;
        run.trace.push_back("eigen-automorphism exists only over the closure");
        return cert;
    }
    cert.verdict = Verdict::not_semiinvariant;
    run.trace.push_back("no nontrivial eigen-automorphism at minimal degree");
    return cert;
}

template <class F>
Certificate guarded(const Limits& limits, F&& body) {
    Run run(limits);
    Certificate cert;
    try {
        cert = body(run);
    } catch (const budget_exceeded& e) {
        cert = Certificate{};
        cert.verdict = Verdict::unknown;
        run.trace.push_back(std::string("budget: ") + e.what());
    }
    cert.trace.insert(cert.trace.end(), run.trace.begin(), run.trace.end());
    return cert;
}

}  // namespace detail

/// Decides whether v = phi(u) for an automorphism phi of the free algebra.
inline Certificate equiv_decide(const FreePoly& u, const FreePoly& v, const Limits& limits = {}) {
    return detail::guarded(limits, [&](detail::Run& run) {
        auto lu = v_membership(u), lv = v_membership(v);
        if (lu && lv) {
            run.trace.push_back("both inputs lie in V");
            Certificate c = case1_decide(*lu, *lv);
            if (c.witness && !verify_witness(*c.witness, u, v)) throw error("internal: witness failed verification");
            return c;
        }
        if (lu || lv) {
            run.trace.push_back("exactly one input lies in V");
            return Certificate{Verdict::not_equivalent, {}, {}, {}, {}};
        }
        return detail::equiv_core<detail::FreeModel>(u, v, run);
    });
}

/// Decides whether phi(u) = lambda u for a nontrivial automorphism phi.
inline Certificate semiinv_decide(const FreePoly& u, const Limits& limits = {}) {
    if (u.is_zero()) throw error("zero element");
    return detail::guarded(limits, [&](detail::Run& run) {
        if (auto lam = v_membership(u)) {
            run.trace.push_back("u lies in V: phi(u) = sum lambda_k theta^k C^k");
            std::vector<std::size_t> support;
            for (std::size_t k = 0; k < lam->size(); ++k)
                if (!is_zero((*lam)[k])) support.push_back(k);
            Certificate c;
            c.verdict = Verdict::semiinvariant;
            if (support.size() == 1) {
                std::size_t k0 = support.front();
                run.trace.push_back("lambda = theta^" + std::to_string(k0) + " for every automorphism");
                c.witness = AutWord::of(Triangular{2, UniPoly(), 1, 0});
                c.lambda = power(Scalar(2), static_cast<unsigned>(k0));
            } else {
                run.trace.push_back("every automorphism with theta = 1 fixes u");
                c.witness = AutWord::of(Triangular{1, UniPoly::constant(1), 1, 0});
                c.lambda = Scalar(1);
            }
            if (apply(*c.witness, u) != *c.lambda * u) throw error("internal: semiinvariant witness failed verification");
            return c;
        }
        return detail::semiinv_core<detail::FreeModel>(u, run);
    });
}

inline Certificate comm_equiv_decide(const CommPoly& u, const CommPoly& v, const Limits& limits = {}) {
    return detail::guarded(limits, [&](detail::Run& run) {
        CommPoly a = u.embed(xy_vars()), b = v.embed(xy_vars());
        if (a.is_constant() || b.is_constant()) {
            Certificate c;
            if (a.is_constant() && b.is_constant() && a == b) {
                run.trace.push_back("equal constants");
                c.verdict = Verdict::equivalent;
                c.witness = AutWord::identity();
            } else {
                run.trace.push_back(a.is_constant() && b.is_constant() ? "distinct constants" : "exactly one input is constant");
                c.verdict = Verdict::not_equivalent;
            }
            return c;
        }
        return detail::equiv_core<detail::CommModel>(a, b, run);
    });
}

inline Certificate comm_semiinv_decide(const CommPoly& u, const Limits& limits = {}) {
    if (u.is_zero()) throw error("zero element");
    return detail::guarded(limits, [&](detail::Run& run) {
        CommPoly a = u.embed(xy_vars());
        if (a.is_constant()) {
            run.trace.push_back("constants are fixed by every automorphism");
            Certificate c;
            c.verdict = Verdict::semiinvariant;
            c.witness = AutWord::of(Triangular{1, UniPoly::constant(1), 1, 0});
            c.lambda = Scalar(1);
            return c;
        }
        return detail::semiinv_core<detail::CommModel>(a, run);
    });
}

struct HeuristicReport {
    CommPoly gcd;
    bool single_variable = false;
    bool positive = false;

    std::string to_text() const {
        return "gcd(u_x, u_y) = " + gcd.to_string() + "\nsingle variable: " + (single_variable ? "yes" : "no") +
               "\ncases (ii)/(iii) shape: " + (positive ? "positive" : "negative") + "\n(heuristic; not a decision)\n";
    }
};

/// Partial test from the gcd of the partial derivatives; never a verdict.
inline HeuristicReport comm_semiinv_heuristic(const CommPoly& u) {
    CommPoly a = u.embed(xy_vars());
    if (a.is_constant()) throw error("constant input");
    auto [ux, uy] = partials(a);
    HeuristicReport r;
    r.gcd = bivariate_gcd(ux, uy);
    r.single_variable = ux.is_zero() || uy.is_zero();
    r.positive = r.single_variable || !r.gcd.is_constant();
    return r;
}

}  // namespace autoeq
