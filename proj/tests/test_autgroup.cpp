#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace autoeq;
using namespace testing_support;

namespace {

AutWord word(std::initializer_list<ElementaryAut> factors) { return AutWord{std::vector<ElementaryAut>(factors)}; }

ElementaryAut tri(Scalar alpha, UniPoly p, Scalar beta, Scalar eta) { return ElementaryAut(Triangular{alpha, p, beta, eta}); }

UniPoly ypow(unsigned k, Scalar c = 1) { return UniPoly::monomial(k, c); }

bool same_map(const AutWord& a, const AutWord& b) { return a.free_images() == b.free_images(); }

}  // namespace

TEST_CASE("composition follows the substitution convention") {
    AutWord tau = AutWord::of(ElementaryAut::tau());
    CHECK(same_map(compose(tau, tau), AutWord::identity()));
    AutWord psi = AutWord::of(tri(1, UniPoly(), 1, 1));
    AutWord phi = AutWord::of(tri(1, ypow(1), 1, 0));
    CHECK(apply(compose(psi, phi), X()) == X() + Y() + K(1));
    AutWord any = random_tame(5, 3, 3, 4);
    CHECK(same_map(compose(AutWord::identity(), any), any));
}

TEST_CASE("inverses of elementary maps") {
    auto inv = invert(tri(2, UniPoly(), 3, 0)).as_triangular();
    CHECK(inv.alpha == Scalar(1, 2));
    CHECK(inv.beta == Scalar(1, 3));
    CHECK(inv.p.is_zero());
    CHECK(inv.eta == 0);

    auto shear = invert(tri(1, ypow(2), 1, 0)).as_triangular();
    CHECK(shear.p == ypow(2, -1));
    CHECK(same_map(compose(AutWord::of(ElementaryAut(shear)), AutWord::of(tri(1, ypow(2), 1, 0))), AutWord::identity()));

    auto shift = invert(tri(1, UniPoly(), 1, 5)).as_triangular();
    CHECK(shift.eta == -5);
    CHECK(shift.beta == 1);

    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        ElementaryAut e = uniform(rng, 0, 1) ? ElementaryAut(random_affine(rng, 4))
                                             : ElementaryAut(random_triangular(rng, uniform(rng, 0, 3), 4));
        CHECK(same_map(word({e, invert(e)}), AutWord::identity()));
        CHECK(same_map(word({invert(e), e}), AutWord::identity()));
    }
}

TEST_CASE("application examples") {
    AutWord tau = AutWord::of(ElementaryAut::tau());
    CHECK(apply(tau, X() * X() * Y()) == Y() * Y() * X());
    CHECK(apply(AutWord::of(tri(1, ypow(2), 1, 0)), X()) == X() + Y() * Y());
    CHECK(apply(tau, C()) == -1 * C());
}

TEST_CASE("theta examples") {
    CHECK(theta(AutWord::of(ElementaryAut::tau())) == -1);
    CHECK(theta(AutWord::of(tri(3, UniPoly({1, 7, 2}), -2, 4))) == -6);
    CHECK(theta(AutWord::identity()) == 1);
    Affine m{1, 2, 3, 4, 5, 6};
    CHECK(theta(AutWord::of(ElementaryAut(m))) == -3);
}

TEST_CASE("simplified form examples") {
    ElementaryAut t = tri(2, ypow(3, 5) + ypow(1), 3, -1);
    SimplifiedForm one = to_simplified(AutWord::of(t));
    CHECK(one.length() == 0);
    CHECK(ElementaryAut(one.rhos[0]) == t);

    AutWord tst = word({ElementaryAut::tau(), tri(1, ypow(2), 1, 0), ElementaryAut::tau()});
    SimplifiedForm s = to_simplified(tst);
    CHECK(s.length() == 2);
    CHECK(s.rhos[1].p.degree() == 2);
    CHECK(apply(s.to_word(), X()) == X());
    CHECK(apply(s.to_word(), Y()) == Y() + X() * X());

    // (2x, 3y) and (x + y^3, y) with the scaling substituted into the shear.
    AutWord d = AutWord::of(tri(2, UniPoly(), 3, 0)), sh = AutWord::of(tri(1, ypow(3), 1, 0));
    SimplifiedForm m = to_simplified(compose(sh, d));
    CHECK(m.length() == 0);
    const Triangular& r = m.rhos[0];
    CHECK(r.alpha == 2);
    CHECK(r.p == ypow(3, 2));
    CHECK(r.beta == 3);
    CHECK(r.eta == 0);
    CHECK(same_map(m.to_word(), compose(sh, d)));
}

TEST_CASE("random words") {
    AutWord w = random_tame(1, 1, 2, 3);
    CHECK(w.factors.size() == 1);
    CHECK(same_map(random_tame(77, 4, 3, 5), random_tame(77, 4, 3, 5)));
    for (int i = 0; i < 100; ++i) {
        AutWord r = random_tame(400 + i, 4, 3, 5);
        CHECK(apply(compose(invert(r), r), X()) == X());
        CHECK(!is_zero(theta(r)));
    }
    CHECK_THROWS_AS(random_tame(1, 0, 2, 3), error);
}

TEST_CASE("group laws and theta multiplicativity") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; ++i) {
        AutWord phi = random_tame(600 + i, 3, 2, 3), psi = random_tame(700 + i, 3, 2, 3);
        FreePoly u = random_free(rng, 3, 4, 5);
        CHECK(apply(compose(psi, phi), u) == apply(psi, apply(phi, u)));
        CHECK(apply(invert(phi), apply(phi, u)) == u);
        CHECK(theta(compose(psi, phi)) == theta(psi) * theta(phi));
    }
}

TEST_CASE("simplified forms agree with their input and alternate") {
    for (int i = 0; i < 200; ++i) {
        AutWord phi = random_tame(800 + i, 5, 3, 3);
        SimplifiedForm s = to_simplified(phi);
        CHECK(same_map(s.to_word(), phi));
        if (s.length() >= 1) {
            for (std::size_t j = 1; j < s.rhos.size(); ++j) {
                const Triangular& t = s.rhos[j];
                CHECK(t.alpha == 1);
                CHECK(t.beta == 1);
                CHECK(t.eta == 0);
                CHECK(is_zero(t.p.coeff(0)));
                if (j + 1 < s.rhos.size()) CHECK(t.p.degree() >= 2);
            }
        }
    }
}

TEST_CASE("identity detection through the simplified form") {
    for (int i = 0; i < 50; ++i) {
        AutWord phi = random_tame(900 + i, 4, 3, 3);
        CHECK(to_simplified(compose(invert(phi), phi)).is_identity());
    }
    CHECK_FALSE(to_simplified(AutWord::of(ElementaryAut::tau())).is_identity());
}

TEST_CASE("degree valley along simplified forms") {
    std::mt19937_64 rng(23);
    int checked = 0;
    while (checked < 100) {
        auto d = valley_degrees(rng);
        if (!d) continue;
        CHECK(valley_shaped(*d));
        ++checked;
    }
}
