#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace autoeq {

/// Error raised for violated preconditions and malformed input.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational scalar. GMP keeps it canonical: reduced, positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }
inline bool is_one(const Scalar& s) { return s == 1; }

inline Scalar make_scalar(long num, long den = 1) {
    if (den == 0) throw error("zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

/// Integer or `p/q`.
inline std::string to_string(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline Scalar parse_scalar(const std::string& text) {
    Scalar s;
    if (s.set_str(text, 10) != 0) throw error("bad scalar literal: " + text);
    if (s.get_den() == 0) throw error("zero denominator");
    s.canonicalize();
    return s;
}

inline Scalar power(const Scalar& base, unsigned exp) {
    Scalar r = 1;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    r.canonicalize();
    return r;
}

}  // namespace autoeq
