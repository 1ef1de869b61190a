#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace autoeq;
using namespace testing_support;

namespace {

CommPoly var(const VarsPtr& ring, const std::string& name) { return CommPoly::variable(ring, name); }

VarsPtr ring_of(const std::vector<ParamAut>& ts) {
    VarList names;
    for (const auto& t : ts)
        for (const auto& s : t.slots())
            if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
    return make_vars(names);
}

std::vector<Scalar> random_point(std::mt19937_64& rng, const VarsPtr& ring) {
    std::vector<Scalar> p;
    for (std::size_t i = 0; i < ring->size(); ++i) p.emplace_back(nonzero(rng, 4));
    return p;
}

ParamAut random_template(std::mt19937_64& rng, unsigned index) {
    switch (uniform(rng, 0, 4)) {
    case 0: return ParamAut::affine(index);
    case 1: return ParamAut::affine(index, true);
    case 2: {
        unsigned lo = static_cast<unsigned>(uniform(rng, 0, 1));
        return ParamAut::triangular(index, lo, lo + static_cast<unsigned>(uniform(rng, 0, 2)), uniform(rng, 0, 1) == 1);
    }
    case 3: return ParamAut::coset(index);
    default: return ParamAut::tau();
    }
}

/// Value of one parameter per name, zero for names not listed.
std::vector<Scalar> assign(const VarsPtr& ring, const std::map<std::string, Scalar>& values) {
    std::vector<Scalar> p(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i) {
        auto it = values.find((*ring)[i]);
        if (it != values.end()) p[i] = it->second;
    }
    return p;
}

}  // namespace

TEST_CASE("application examples with unknown coefficients") {
    ParamAut a = ParamAut::affine(0, true);
    VarsPtr ra = ring_of({a});
    ParamFreePoly ix = param_apply(a, lift(X(), ra), ra);
    CHECK(ix == param_word("x", var(ra, "xi_0")) + param_word("y", var(ra, "xip_0")) + param_word("", var(ra, "xipp_0")));

    ParamAut t = ParamAut::tau();
    VarsPtr rt = make_vars({"d", "e"});
    ParamFreePoly w = param_word("xxy", var(rt, "d")) + param_word("y", var(rt, "e"));
    CHECK(param_apply(t, w, rt) == param_word("yyx", var(rt, "d")) + param_word("x", var(rt, "e")));

    ParamAut tri = ParamAut::triangular(1, 1, 2);
    VarsPtr rr = ring_of({tri});
    CHECK(param_apply(tri, lift(X(), rr), rr) ==
          param_word("x", var(rr, "xi_1")) + param_word("yy", var(rr, "omega_1_2")) + param_word("y", var(rr, "omega_1_1")));
}

TEST_CASE("equation extraction examples") {
    VarsPtr ring = make_vars({"d", "dp"});
    ParamFreePoly w = param_word("xy", var(ring, "d")) + param_word("yx", var(ring, "dp"));
    ExtractedEquations e = extract_equations(w, 1, 2, ring);
    REQUIRE(e.thetas.size() == 1);
    CHECK(e.thetas[0] == "theta_2");
    CommPoly th = var(e.vars, "theta_2");
    REQUIRE(e.equations.size() == 2);
    CHECK(std::find(e.equations.begin(), e.equations.end(), var(e.vars, "d") - th) != e.equations.end());
    CHECK(std::find(e.equations.begin(), e.equations.end(), var(e.vars, "dp") + th) != e.equations.end());

    VarsPtr r1 = make_vars({"d"});
    ExtractedEquations k = extract_equations(param_word("xxy", var(r1, "d")), 2, 3, r1);
    REQUIRE(k.equations.size() == 1);
    CHECK(k.equations[0] == var(r1, "d"));
    CHECK(k.thetas.empty());

    CHECK(extract_equations(param_word("x", var(r1, "d")), 1, 1, r1).equations.empty());
    CHECK_THROWS_WITH(extract_equations(param_word("xxy", var(r1, "d")), 1, 2, r1),
                      Catch::Matchers::ContainsSubstring("degree cap"));
    CHECK_THROWS_AS(extract_equations(param_word("x", var(r1, "d")), 3, 2, r1), error);
}

TEST_CASE("nondegeneracy examples") {
    ParamAut tri = ParamAut::triangular(1, 1, 2);
    VarsPtr rr = ring_of({tri});
    CHECK(nondegeneracy({tri}, rr) == var(rr, "xi_1") * var(rr, "eta_1") * var(rr, "omega_1_2"));
    ParamAut a = ParamAut::affine(0);
    VarsPtr ra = ring_of({a});
    CHECK(nondegeneracy({a}, ra) == var(ra, "xi_0") * var(ra, "eta_0") - var(ra, "xip_0") * var(ra, "zeta_0"));
    CHECK(nondegeneracy({}, ra) == CommPoly(ra, Scalar(1)));
}

TEST_CASE("parameter names are deterministic") {
    ParamAut a = ParamAut::affine(3);
    CHECK(a.slots() == std::vector<std::string>{"xi_3", "xip_3", "xipp_3", "zeta_3", "eta_3", "etap_3"});
    CHECK(ParamAut::triangular(2, 1, 3, true).slots() == std::vector<std::string>{"omega_2_1", "omega_2_2", "omega_2_3"});
    CHECK(ParamAut::coset(4).slots() == std::vector<std::string>{"mu_4"});
}

TEST_CASE("specialization commutes with application") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        std::vector<ParamAut> ts{random_template(rng, 0), random_template(rng, 1)};
        VarsPtr ring = ring_of(ts);
        auto point = random_point(rng, ring);
        while (is_zero(nondegeneracy(ts, ring).evaluate(point))) point = random_point(rng, ring);
        FreePoly u = random_free(rng, 3, 4, 5);
        ParamFreePoly w = param_apply(ts[1], param_apply(ts[0], lift(u, ring), ring), ring);
        AutWord concrete{{ts[1].specialize(ring, point), ts[0].specialize(ring, point)}};
        CHECK(specialize(w, point) == apply(concrete, u));

        CommPoly cu = random_comm(rng, 3, 4, 5);
        ParamCommPoly cw = param_apply(ts[1], param_apply(ts[0], lift(cu, ring), ring), ring);
        CHECK(specialize(cw, point) == apply(concrete, cu));
        CHECK(specialize(abelianize(w, ring), point) == abelianize(apply(concrete, u)));
    }
}

TEST_CASE("truncated application keeps the long words") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        ParamAut t = random_template(rng, 0);
        VarsPtr ring = ring_of({t});
        ParamFreePoly u = lift(random_free(rng, 3, 4, 5), ring);
        std::size_t m = static_cast<std::size_t>(uniform(rng, 0, 4));
        ParamFreePoly full = param_apply(t, u, ring), cut = param_apply(t, u, ring, m);
        ParamFreePoly expected(full.zero_coeff());
        for (const auto& [w, c] : full.terms())
            if (w.size() >= m) expected += param_word(w, c);
        CHECK(cut == expected);
    }
}

TEST_CASE("extracted equations match a grid of specializations") {
    std::mt19937_64 rng(43);
    int low = 0, high = 0;
    for (int i = 0; i < 40; ++i) {
        // Three unknowns: omega_0_0, omega_0_1, omega_0_2.
        ParamAut t = ParamAut::triangular(0, 0, 2, true);
        VarsPtr ring = ring_of({t});
        FreePoly u = random_free(rng, 2, 3, 3, 1);
        if (quotient_project(u).is_zero()) continue;
        ParamFreePoly w = param_apply(ParamAut::tau(), param_apply(t, lift(u, ring), ring), ring);
        unsigned cap = w.degree();
        unsigned target = static_cast<unsigned>(uniform(rng, 1, static_cast<int>(cap)));
        ExtractedEquations e = extract_equations(w, target, cap, ring);

        std::set<std::string> seen;
        for (const auto& th : e.thetas) CHECK(seen.insert(th).second);
        for (const auto& eq : e.equations) {
            int count = 0;
            auto sup = eq.support();
            for (std::size_t k = ring->size(); k < sup.size(); ++k) count += sup[k];
            CHECK(count <= 1);
        }

        for (int a = -1; a <= 1; ++a)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c) {
                    std::map<std::string, Scalar> val{{"omega_0_0", a}, {"omega_0_1", b}, {"omega_0_2", c}};
                    FreePoly v = apply(AutWord{{ElementaryAut::tau(), t.specialize(ring, assign(ring, val))}}, u);
                    bool small = quotient_project(v).is_zero() || qdeg(v) <= target;
                    // Each equation is linear in its theta: solve, then check all.
                    std::vector<Scalar> point = assign(e.vars, val);
                    for (std::size_t k = ring->size(); k < e.vars->size(); ++k) {
                        for (const auto& eq : e.equations) {
                            if (!eq.support()[k]) continue;
                            CommPoly lin = eq;
                            for (std::size_t q = 0; q < ring->size(); ++q) lin = lin.specialize(q, point[q]);
                            Monomial m(e.vars->size());
                            m[k] = 1;
                            Scalar slope = lin.coefficient(m);
                            if (!is_zero(slope)) {
                                point[k] = -lin.constant_term() / slope;
                                break;
                            }
                        }
                    }
                    bool satisfied = std::all_of(e.equations.begin(), e.equations.end(),
                                                 [&](const CommPoly& eq) { return is_zero(eq.evaluate(point)); });
                    CHECK(satisfied == small);
                    (small ? low : high)++;
                }
    }
    CHECK(low > 0);
    CHECK(high > 0);
}
