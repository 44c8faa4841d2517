#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frobkit/arith.hpp"

namespace frobkit {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// How many invertible 2x2 matrices over F_ell have characteristic polynomial
// t^2 - a t + d, split by eigenvalue structure.  Exactly one of the three
// counts is nonzero per stratum; which one is decided by kronecker(a^2-4d, ell).
struct CharpolyStratum {
    i64 a = 0; // trace
    i64 d = 0; // determinant, nonzero
    u64 split = 0;    // distinct eigenvalues in F_ell
    u64 nonsplit = 0; // conjugate eigenvalues in F_{ell^2} only
    u64 repeated = 0; // double eigenvalue (scalar or not semisimple)
};

// All ell*(ell-1) strata, ordered by (d, a).  The per-stratum counts use the
// closed forms ell^2+ell / ell^2-ell / ell^2, which the test suite re-derives
// from full matrix enumeration at small ell.  Throws DomainError unless ell
// is an odd prime.
std::vector<CharpolyStratum> charpoly_strata(u64 ell);

// Exact density of same-quadratic-class pairs among equal-determinant pairs.
struct GroupDensityReport {
    u64 ell = 0;
    bigint h_size;       // equal-determinant pairs: |GL2|^2 / (ell-1)
    bigint h_prime_size; // pairs with both discriminants in the same class
    bigrat ratio;        // h_prime_size / h_size, reduced
};

// O(ell^2) via charpoly_strata: with s_d, n_d, t_d the split / nonsplit /
// total matrix counts at determinant d, h = sum t_d^2 and h' = sum s_d^2+n_d^2.
GroupDensityReport h_prime_ratio(u64 ell);

// O(ell^8) oracle: enumerates every equal-determinant matrix pair directly.
// Feasible for ell <= 7; used to validate h_prime_ratio.
GroupDensityReport h_prime_ratio_bruteforce(u64 ell);

} // namespace frobkit
