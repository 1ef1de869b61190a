#pragma once

#include <chrono>
#include <random>
#include <string>

#include "autoeq/autoeq.hpp"

namespace testing_support {

using namespace autoeq;

inline FreePoly X() { return free_x(); }
inline FreePoly Y() { return free_y(); }
inline FreePoly C() { return commutator_xy(); }
inline FreePoly K(const Scalar& c) { return free_const(c); }
inline CommPoly cx() { return poly_x(); }
inline CommPoly cy() { return poly_y(); }
inline CommPoly ck(const Scalar& c) { return CommPoly(xy_vars(), c); }

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Scalar nonzero(std::mt19937_64& rng, int bound) {
    int v = uniform(rng, 1, bound);
    return Scalar(uniform(rng, 0, 1) ? v : -v);
}

/// Random element of the free algebra; may be zero.
inline FreePoly random_free(std::mt19937_64& rng, int max_degree, int max_terms, int coeff_bound, int min_degree = 0) {
    FreePoly u;
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        int len = uniform(rng, min_degree, max_degree);
        std::string w;
        for (int i = 0; i < len; ++i) w += uniform(rng, 0, 1) ? 'x' : 'y';
        u = u + FreePoly::word(w, Scalar(uniform(rng, -coeff_bound, coeff_bound)));
    }
    return u;
}

/// Random polynomial in x, y; may be zero.
inline CommPoly random_comm(std::mt19937_64& rng, int max_degree, int max_terms, int coeff_bound) {
    CommPoly u = ck(0);
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        int dx = uniform(rng, 0, max_degree);
        int dy = uniform(rng, 0, max_degree - dx);
        u = u + Scalar(uniform(rng, -coeff_bound, coeff_bound)) * cx().pow(dx) * cy().pow(dy);
    }
    return u;
}

inline UniPoly random_uni(std::mt19937_64& rng, int degree, int coeff_bound) {
    std::vector<Scalar> c;
    for (int k = 0; k < degree; ++k) c.emplace_back(uniform(rng, -coeff_bound, coeff_bound));
    c.push_back(nonzero(rng, coeff_bound));
    return UniPoly(c);
}

/// (alpha x + p(y), beta y + eta) with deg p exactly `degree`.
inline Triangular random_triangular(std::mt19937_64& rng, int degree, int coeff_bound) {
    return Triangular{nonzero(rng, coeff_bound), random_uni(rng, degree, coeff_bound), nonzero(rng, coeff_bound),
                      Scalar(uniform(rng, -coeff_bound, coeff_bound))};
}

inline Affine random_affine(std::mt19937_64& rng, int coeff_bound) {
    while (true) {
        Affine m{Scalar(uniform(rng, -coeff_bound, coeff_bound)), Scalar(uniform(rng, -coeff_bound, coeff_bound)),
                 Scalar(uniform(rng, -coeff_bound, coeff_bound)), Scalar(uniform(rng, -coeff_bound, coeff_bound)),
                 Scalar(uniform(rng, -coeff_bound, coeff_bound)), Scalar(uniform(rng, -coeff_bound, coeff_bound))};
        if (!is_zero(m.a * m.d - m.b * m.c)) return m;
    }
}

/// Number of triangular factors whose p has degree at least 2.
inline int nonaffine_factors(const AutWord& w) {
    int n = 0;
    for (const auto& e : w.factors)
        if (e.is_triangular() && e.as_triangular().p.degree() >= 2) ++n;
    return n;
}

/// Element of degree at most 3 outside V with a tame map having at most two
/// nonaffine factors of degree at most 2, indexed deterministically.
inline std::pair<FreePoly, AutWord> round_trip_instance(int index) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(index));
    FreePoly u;
    while (u.is_zero() || quotient_project(u).is_zero()) {
        u = FreePoly();
        for (int t = 0; t < 3; ++t) u = u + random_free(rng, 3, 1, 3, 1);
    }
    for (std::uint64_t seed = 77 + static_cast<std::uint64_t>(index);; seed += 1000) {
        AutWord phi = random_tame(seed, 3, 2, 2);
        if (nonaffine_factors(phi) <= 2) return {u, phi};
    }
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace testing_support
