#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frobkit/arith.hpp"

namespace frobkit {

using bigint = boost::multiprecision::cpp_int;

// Exact discriminant of the long Weierstrass model
// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
bigint discriminant(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6);

// Integral long Weierstrass model with nonzero discriminant.  Immutable.
class WeierstrassCurve {
public:
    // Throws DomainError for a singular model (disc = 0) and
    // FactorizationError if the bad-prime set cannot be determined exactly.
    WeierstrassCurve(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6, std::string label = "");

    i64 a1() const { return a_[0]; }
    i64 a2() const { return a_[1]; }
    i64 a3() const { return a_[2]; }
    i64 a4() const { return a_[3]; }
    i64 a6() const { return a_[4]; }
    const std::array<i64, 5>& coeffs() const { return a_; }

    const bigint& disc() const { return disc_; }
    const bigint& c4() const { return c4_; }
    const bigint& c6() const { return c6_; }

    // Prime divisors of disc, increasing.
    const std::vector<u64>& bad_primes() const { return bad_; }
    bool good_at(u64 p) const;

    const std::string& label() const { return label_; }
    std::string model_string() const; // "[a1,a2,a3,a4,a6]"

private:
    std::array<i64, 5> a_;
    bigint disc_, c4_, c6_;
    std::vector<u64> bad_;
    std::string label_;
};

// Parses the bracket-list syntax "[a1,a2,a3,a4,a6]" (spaces allowed).
// Throws ParseError on malformed input.
WeierstrassCurve parse_model(const std::string& text, std::string label = "");

// Good reduction of a curve at p.  For p >= 5 this is the short model
// y^2 = x^3 + Ax + B; for p in {2,3} the five raw coefficient residues.
struct ReducedCurve {
    u64 p = 0;
    bool raw = false;         // true only for p = 2, 3
    u64 A = 0, B = 0;         // short form (raw = false)
    std::array<u64, 5> a{};   // long-model residues (raw = true)
};

// nullopt means bad reduction (p | disc).
std::optional<ReducedCurve> reduce_mod_p(const WeierstrassCurve& E, u64 p);

// Quadratic twist by squarefree d != 0: with E in short form y^2 = x^3+ax+b
// (converted via c4/c6 when necessary), the model y^2 = x^3 + a d^2 x + b d^3.
// Throws DomainError for invalid d, OverflowError if a coefficient leaves the
// 64-bit range.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, i64 d);

// #E(F_p) including the point at infinity, by direct enumeration.
// Exact for any good reduction; meant for small p (<= ~10^4).
u64 point_count_enum(const ReducedCurve& R);

} // namespace frobkit
