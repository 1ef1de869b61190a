#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace autoeq;
using namespace testing_support;

namespace {

using Blocks = std::vector<std::pair<unsigned, unsigned>>;

CommBasisTerm term(const Blocks& blocks) {
    CommBasisTerm t;
    t.blocks.clear();
    for (auto [a, b] : blocks) t.blocks.push_back({a, b});
    return t;
}

FreePoly power(const FreePoly& f, unsigned k) {
    FreePoly r = K(1);
    for (unsigned i = 0; i < k; ++i) r = r * f;
    return r;
}

/// x^a1 y^b1 C x^a2 y^b2 ... multiplied out letter by letter.
FreePoly expand(const CommBasisTerm& t) {
    FreePoly r = K(1);
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        if (i > 0) r = r * (X() * Y() - Y() * X());
        r = r * power(X(), t.blocks[i].a) * power(Y(), t.blocks[i].b);
    }
    return r;
}

FreePoly expand(const CommBasisForm& f) {
    FreePoly r;
    for (const auto& [t, c] : f.terms()) r = r + c * expand(t);
    return r;
}

/// Random combination of basis terms, optionally with every a_i zero.
FreePoly random_basis_element(std::mt19937_64& rng, bool no_x_blocks, int max_commutators, int max_block) {
    FreePoly u;
    int terms = uniform(rng, 1, 3);
    for (int i = 0; i < terms; ++i) {
        Blocks b;
        int r = uniform(rng, 0, max_commutators);
        for (int j = 0; j <= r; ++j)
            b.emplace_back(no_x_blocks ? 0 : uniform(rng, 0, max_block), uniform(rng, 0, max_block));
        u = u + nonzero(rng, 5) * expand(term(b));
    }
    return u;
}

}  // namespace

TEST_CASE("free ring operations") {
    CHECK(X() * Y() == FreePoly::word("xy", 1));
    CHECK(X() * Y() - Y() * X() == C());
    CHECK((X() + Y()) * (X() - Y()) ==
          FreePoly::word("xx", 1) - FreePoly::word("xy", 1) + FreePoly::word("yx", 1) - FreePoly::word("yy", 1));
    CHECK(to_string(X() * Y() * X() * X() - 3 * Y()) == "x*y*x^2 - 3*y");
    CHECK(to_string(FreePoly()) == "0");
}

TEST_CASE("basis form examples") {
    CommBasisForm yx = to_comm_basis(Y() * X());
    CHECK(yx.terms().size() == 2);
    CHECK(yx.coefficient(term({{1, 1}})) == 1);
    CHECK(yx.coefficient(term({{0, 0}, {0, 0}})) == -1);
    CHECK(yx.to_string() == "x*y - C");

    CommBasisForm xy = to_comm_basis(X() * Y());
    CHECK(xy.terms().size() == 1);
    CHECK(xy.coefficient(term({{1, 1}})) == 1);

    CommBasisForm yyx = to_comm_basis(Y() * Y() * X());
    CHECK(yyx.terms().size() == 3);
    CHECK(yyx.coefficient(term({{1, 2}})) == 1);
    CHECK(yyx.coefficient(term({{0, 0}, {0, 1}})) == -1);
    CHECK(yyx.coefficient(term({{0, 1}, {0, 0}})) == -1);
    CHECK(expand(yyx) == Y() * Y() * X());
}

TEST_CASE("expansion of basis forms") {
    CommBasisForm c({{term({{0, 0}, {0, 0}}), Scalar(1)}});
    CHECK(from_comm_basis(c) == X() * Y() - Y() * X());
    CommBasisForm xcy({{term({{1, 0}, {0, 1}}), Scalar(1)}});
    CHECK(from_comm_basis(xcy) == X() * (X() * Y() - Y() * X()) * Y());
    CHECK(from_comm_basis(CommBasisForm()).is_zero());
}

TEST_CASE("membership in V") {
    auto l = v_membership(3 * C() * C() - C());
    REQUIRE(l);
    REQUIRE(l->size() == 3);
    CHECK((*l)[0] == 0);
    CHECK((*l)[1] == -1);
    CHECK((*l)[2] == 3);
    auto one = v_membership(K(1));
    REQUIRE(one);
    REQUIRE(one->size() == 1);
    CHECK((*one)[0] == 1);
    CHECK_FALSE(v_membership(X() + C()));
}

TEST_CASE("projection modulo V") {
    CHECK(quotient_project(C() * C() * C()).is_zero());
    CHECK(quotient_project(X() + C()) == X());
    CHECK(quotient_project(X() * Y() + Y() * X()) == 2 * X() * Y());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        FreePoly u = random_free(rng, 5, 6, 9);
        FreePoly p = quotient_project(u);
        CHECK(quotient_project(p) == p);
        CHECK(v_membership(u - p));
    }
}

TEST_CASE("quotient degrees") {
    auto d = quotient_degrees(X() * X() * Y() + power(C(), 5));
    CHECK(d.qdeg == 3);
    CHECK(d.qdeg_x == 2);
    CHECK(d.qdeg_y == 1);
    CHECK(d.q_biased);
    d = quotient_degrees(power(Y(), 3));
    CHECK(d.qdeg == 3);
    CHECK(d.qdeg_x == 0);
    CHECK(d.qdeg_y == 3);
    CHECK_FALSE(d.q_biased);
    d = quotient_degrees(X() * Y() + Y() * X());
    CHECK(d.qdeg == 2);
    CHECK(d.qdeg_x == 1);
    CHECK(d.qdeg_y == 1);
    CHECK(d.q_biased);
    CHECK_THROWS_WITH(quotient_degrees(C()), Catch::Matchers::ContainsSubstring("element lies in V"));
}

TEST_CASE("free substitution examples") {
    CHECK(free_substitute(C(), Y(), X()) == -1 * C());
    Scalar alpha(3), beta(-2), gamma(5);
    FreePoly p = Y() * Y() - 4 * Y() + K(7);
    CHECK(free_substitute(C(), alpha * X() + p, beta * Y() + K(gamma)) == alpha * beta * C());
    CHECK(free_substitute(X(), X() + Y() * Y(), Y()) == X() + Y() * Y());
}

TEST_CASE("basis form round trip") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        FreePoly u = random_free(rng, 6, 12, 9);
        CommBasisForm f = to_comm_basis(u);
        CHECK(from_comm_basis(f) == u);
        CHECK(expand(f) == u);
    }
}

TEST_CASE("basis form is linear") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        FreePoly u = random_free(rng, 5, 6, 9), v = random_free(rng, 5, 6, 9);
        Scalar s(uniform(rng, -4, 4));
        CHECK(to_comm_basis(u + s * v) == to_comm_basis(u) + s * to_comm_basis(v));
    }
}

TEST_CASE("V is invariant under automorphisms") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
        FreePoly u;
        int m = uniform(rng, 0, 3);
        for (int k = 0; k <= m; ++k) u = u + Scalar(uniform(rng, -5, 5)) * power(C(), k);
        AutWord phi = random_tame(2000 + i, 3, 3, 3);
        CHECK(v_membership(apply(phi, u)));
    }
}

TEST_CASE("commutator covariance") {
    for (int i = 0; i < 200; ++i) {
        AutWord phi = random_tame(3000 + i, 4, 4, 5);
        CHECK(apply(phi, C()) == theta(phi) * C());
    }
}

TEST_CASE("degree increases under tau after a nonaffine triangular map") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 200) {
        FreePoly u = random_free(rng, 4, 5, 9, 1);
        if (quotient_project(u).is_zero() || !quotient_degrees(u).q_biased) continue;
        Triangular t = random_triangular(rng, uniform(rng, 2, 3), 5);
        FreePoly image = apply(AutWord{{ElementaryAut::tau(), ElementaryAut(t)}}, u);
        CHECK(qdeg(u) < qdeg(image));
        ++checked;
    }
}

TEST_CASE("total degree is preserved when every a_i vanishes") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        FreePoly u = random_basis_element(rng, true, 2, 3);
        if (u.is_zero()) continue;
        REQUIRE(to_comm_basis(u).all_a_zero());
        Triangular t = random_triangular(rng, uniform(rng, 0, 4), 5);
        CHECK(apply(AutWord::of(t), u).degree() == u.degree());
    }
}

TEST_CASE("quotient degree reaches deg p when some a_i is nonzero") {
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 100) {
        FreePoly u = random_basis_element(rng, false, 1, 1);
        if (u.is_zero() || to_comm_basis(u).all_a_zero()) continue;
        unsigned k = u.degree() + static_cast<unsigned>(uniform(rng, 1, 2));
        Triangular t = random_triangular(rng, static_cast<int>(k), 4);
        CHECK(qdeg(apply(AutWord::of(t), u)) >= k);
        ++checked;
    }
}
