#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frobkit/errors.hpp"

namespace frobkit {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// The canonical discriminant naming a quadratic field Q(sqrt(d)): d itself if
// d = 1 mod 4, otherwise 4d.  The value 1 is the sentinel for Q.
using FundamentalDiscriminant = i64;

// All primes <= x in increasing order (segmented sieve).  x < 2 gives {}.
std::vector<u64> primes_up_to(u64 x);

// Deterministic Miller-Rabin, correct for every 64-bit n.
bool is_prime_u64(u64 n);

// (a*b) mod m, (a+b) mod m and a^e mod m for full 64-bit moduli.
u64 mulmod(u64 a, u64 b, u64 m);
u64 addmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Kronecker symbol (a|n), the full classical extension: n may be negative or
// even; (a|0) is defined only for |a| = 1 (value 1), anything else throws
// DomainError; (0|n) is 1 for n = +-1 and 0 otherwise.  Completely
// multiplicative in both arguments.
int kronecker(i64 a, i64 n);

// Complete factorization of n >= 1 as sorted (prime, exponent) pairs.
// Trial division by primes <= 2*10^4, then deterministic Miller-Rabin plus
// Brent-rho splitting.  Throws FactorizationError if a cofactor resists.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// The unique squarefree d with n = d*m^2 and sign(d) = sign(n).
// Throws DomainError for n = 0 and FactorizationError if a cofactor resists
// trial division (primes <= 2*10^4) plus the Brent-rho fallback.
i64 squarefree_part(i64 n);

// d -> d if d = 1 mod 4 else 4d, for squarefree d != 0; 1 maps to 1 (the
// sentinel for Q).  Throws DomainError if d is 0 or not squarefree.
FundamentalDiscriminant fundamental_discriminant(i64 d);

// True iff D is 1 (sentinel for Q) or the discriminant of a quadratic field.
bool is_fundamental_discriminant(i64 D);

} // namespace frobkit
