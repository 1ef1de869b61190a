#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace autoeq;
using namespace testing_support;

namespace {

CommPoly mono(long c, unsigned a, unsigned b) {
    Monomial m(2);
    m[0] = a;
    m[1] = b;
    return CommPoly::monomial(xy_vars(), m, Scalar(c));
}

Scalar eval(const CommPoly& p, const Scalar& a, const Scalar& b) { return p.evaluate({a, b}); }

}  // namespace

TEST_CASE("scalars are kept canonical") {
    Scalar s = parse_scalar("6/-4");
    CHECK(s.get_num() == -3);
    CHECK(s.get_den() == 2);
    CHECK(to_string(Scalar(0)) == "0");
    CHECK(to_string(parse_scalar("4/6")) == "2/3");
    CHECK_THROWS_AS(parse_scalar("1/0"), error);
}

TEST_CASE("ring operations") {
    CHECK((cx() + cy()) * (cx() - cy()) == mono(1, 2, 0) + mono(-1, 0, 2));
    CHECK((cx() + cy()).pow(0) == ck(1));
    CHECK((cx() + cy().pow(2)).pow(2) == mono(1, 2, 0) + mono(2, 1, 2) + mono(1, 0, 4));
    CHECK_THROWS_WITH((cx() + cy()).pow(-1), Catch::Matchers::ContainsSubstring("negative exponent"));
    CHECK((cx() - cx()).is_zero());
    CHECK((cx() - cx()).terms().empty());
}

TEST_CASE("canonical printing") {
    CHECK((mono(1, 2, 1) + mono(2, 1, 3) + mono(1, 0, 5)).to_string() == "x^2*y + 2*x*y^3 + y^5");
    CHECK((Scalar(1, 2) * cy() - ck(3)).to_string() == "1/2*y - 3");
    CHECK(ck(0).to_string() == "0");
}

TEST_CASE("degree calculus") {
    auto d = degree_calculus(mono(1, 2, 1) + mono(1, 0, 2));
    CHECK(d.total_degree == 3);
    CHECK(d.deg_x == 2);
    CHECK(d.deg_y == 2);
    CHECK(d.leading_form == mono(1, 2, 1));
    CHECK(d.biased);

    d = degree_calculus(mono(1, 1, 3) + cx());
    CHECK(d.total_degree == 4);
    CHECK(d.deg_x == 1);
    CHECK(d.deg_y == 3);
    CHECK(d.leading_form == mono(1, 1, 3));
    CHECK_FALSE(d.biased);

    d = degree_calculus(mono(1, 2, 0) + mono(1, 0, 2));
    CHECK(d.total_degree == 2);
    CHECK(d.leading_form == mono(1, 2, 0) + mono(1, 0, 2));
    CHECK(d.biased);

    CHECK_THROWS_WITH(degree_calculus(ck(0)), Catch::Matchers::ContainsSubstring("degree of zero undefined"));
}

TEST_CASE("substitution") {
    CHECK(substitute(mono(1, 2, 1), cx() + cy().pow(2), cy()) == mono(1, 2, 1) + mono(2, 1, 3) + mono(1, 0, 5));
    CHECK(substitute(cx(), cy(), cx()) == cy());
    CHECK(substitute(cx() + cy(), cx(), ck(0)) == cx());
}

TEST_CASE("partial derivatives") {
    auto [ux, uy] = partials(mono(1, 2, 1));
    CHECK(ux == mono(2, 1, 1));
    CHECK(uy == mono(1, 2, 0));
    auto [cx0, cy0] = partials(ck(5));
    CHECK(cx0.is_zero());
    CHECK(cy0.is_zero());
    auto [px, py] = partials(mono(1, 3, 0) + mono(1, 0, 3));
    CHECK(px == mono(3, 2, 0));
    CHECK(py == mono(3, 0, 2));
}

TEST_CASE("univariate gcd") {
    UniPoly w = UniPoly::identity();
    UniPoly one = UniPoly::constant(1);
    CHECK(euclid_gcd(w - 2 * one, w * w - 4 * one) == w - 2 * one);
    CHECK(euclid_gcd(w, one) == one);
    CHECK(euclid_gcd(w * w - one, w * w - 2 * w + one) == w - one);
    CHECK_THROWS_WITH(euclid_gcd(UniPoly(), UniPoly()), Catch::Matchers::ContainsSubstring("gcd(0,0) undefined"));
}

TEST_CASE("rational roots") {
    UniPoly w = UniPoly::identity();
    UniPoly one = UniPoly::constant(1);
    auto r = rational_roots((w - 2 * one) * (3 * w + one) * (w * w + one));
    std::sort(r.begin(), r.end());
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Scalar(-1, 3));
    CHECK(r[1] == 2);
    CHECK(rational_roots(w * w - 2 * one).empty());
}

TEST_CASE("bivariate gcd") {
    CHECK(bivariate_gcd(mono(2, 1, 1), mono(1, 2, 0)) == cx());
    CHECK(bivariate_gcd(cx() + cy(), cx() - cy()) == ck(1));
    CHECK(bivariate_gcd(ck(0), mono(1, 0, 2)) == mono(1, 0, 2));
    CHECK_THROWS_AS(bivariate_gcd(ck(0), ck(0)), error);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        CommPoly d = random_comm(rng, 2, 3, 4), a = random_comm(rng, 2, 3, 4), b = random_comm(rng, 2, 3, 4);
        if (d.is_constant() || a.is_zero() || b.is_zero()) continue;
        CommPoly g = bivariate_gcd(d * a, d * b);
        CommPoly h = bivariate_gcd(g, d);
        REQUIRE_FALSE(h.is_zero());
        const auto& [m, c] = h.terms().front();
        CHECK(d == (d.coefficient(m) / c) * h);
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        CommPoly a = random_comm(rng, 6, 5, 9), b = random_comm(rng, 6, 5, 9), c = random_comm(rng, 6, 5, 9);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        Scalar s(uniform(rng, -5, 5), uniform(rng, 1, 4)), t(uniform(rng, -5, 5), uniform(rng, 1, 4));
        CHECK(eval(a * b + c, s, t) == eval(a, s, t) * eval(b, s, t) + eval(c, s, t));
        if (!a.is_zero() && !b.is_zero()) CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
    }
}

TEST_CASE("substitution composes with the automorphism convention") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        CommPoly u = random_comm(rng, 3, 4, 5);
        AutWord phi = random_tame(100 + i, 2, 2, 3), psi = random_tame(500 + i, 2, 2, 3);
        CommPoly pa = apply(phi, cx()), pb = apply(phi, cy());
        CommPoly qa = apply(psi, cx()), qb = apply(psi, cy());
        // (psi phi) = (a(c,d), b(c,d)) with phi = (a, b), psi = (c, d).
        CommPoly ca = substitute(pa, qa, qb), cb = substitute(pb, qa, qb);
        CHECK(substitute(substitute(u, pa, pb), qa, qb) == substitute(u, ca, cb));
        CHECK(apply(compose(psi, phi), u) == substitute(u, ca, cb));
    }
}

TEST_CASE("euclid gcd divides and is greatest") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        UniPoly d = random_uni(rng, uniform(rng, 0, 3), 5);
        UniPoly a = random_uni(rng, uniform(rng, 0, 3), 5), b = random_uni(rng, uniform(rng, 0, 3), 5);
        UniPoly f = d * a, g = d * b;
        UniPoly h = euclid_gcd(f, g);
        CHECK(divmod(f, h).second.is_zero());
        CHECK(divmod(g, h).second.is_zero());
        CHECK(divmod(h, d).second.is_zero());
        CHECK(h.leading() == 1);
    }
}

TEST_CASE("degree grows under nonaffine triangular maps on biased input") {
    std::mt19937_64 rng(4);
    int checked = 0;
    while (checked < 200) {
        CommPoly u = random_comm(rng, 5, 5, 9);
        if (u.is_constant() || !degree_calculus(u).biased) continue;
        Triangular t = random_triangular(rng, uniform(rng, 2, 4), 5);
        CommPoly image = apply(AutWord::of(t), u);
        CHECK(image.total_degree() > u.total_degree());
        ++checked;
    }
}

TEST_CASE("degree chain for tau after a nonaffine triangular map") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        CommPoly u = random_comm(rng, 4, 4, 7);
        if (u.is_constant()) continue;
        Triangular t = random_triangular(rng, uniform(rng, 2, 3), 4);
        CommPoly image = apply(AutWord{{ElementaryAut::tau(), ElementaryAut(t)}}, u);
        bool s1 = degree_calculus(u).biased;
        bool s2 = u.total_degree() < image.total_degree();
        bool s3 = u.total_degree() <= image.total_degree();
        bool s4 = degree_calculus(image).biased;
        if (s1) CHECK(s2);
        if (s2) CHECK(s3);
        if (s3) CHECK(s4);
    }
}
