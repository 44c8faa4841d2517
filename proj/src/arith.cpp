#include "frobkit/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace frobkit {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<__uint128_t>(a) * b) % m);
}

u64 addmod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<u64> primes_up_to(u64 x) {
    std::vector<u64> out;
    if (x < 2) return out;
    out.reserve(x > 16 ? static_cast<size_t>(static_cast<double>(x) / (std::log(static_cast<double>(x)) - 1.1)) : 8);

    // Base primes up to sqrt(x) by a plain sieve.
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while (root * root > x) --root;
    while ((root + 1) * (root + 1) <= x) ++root;

    std::vector<char> base(root + 1, 1);
    std::vector<u64> base_primes;
    for (u64 i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (u64 j = i * i; j <= root; j += i) base[j] = 0;
    }

    constexpr u64 kSegment = 1u << 18;
    std::vector<char> seg(kSegment);
    for (u64 lo = 2; lo <= x; lo += kSegment) {
        u64 hi = std::min(x, lo + kSegment - 1);
        std::fill(seg.begin(), seg.begin() + static_cast<size_t>(hi - lo + 1), 1);
        for (u64 q : base_primes) {
            u64 start = std::max(q * q, ((lo + q - 1) / q) * q);
            for (u64 j = start; j <= hi; j += q) seg[static_cast<size_t>(j - lo)] = 0;
        }
        for (u64 v = lo; v <= hi; ++v)
            if (seg[static_cast<size_t>(v - lo)] && (v >= 2)) {
                // A base prime q marks q*q upward, so primes <= root survive too.
                out.push_back(v);
            }
    }
    return out;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is known to be exact for all 64-bit integers.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 y = powmod(a % n, d, n);
        if (y == 1 || y == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            y = mulmod(y, y, n);
            if (y == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) {
        if (a == 1 || a == -1) return 1;
        throw DomainError("kronecker: (a|0) is defined only for |a| = 1");
    }
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos & 1) {
        i64 am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) s = -s;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

namespace {

constexpr u64 kTrialBound = 20000;

const std::vector<u64>& trial_primes() {
    static const std::vector<u64> ps = primes_up_to(kTrialBound);
    return ps;
}

u64 splitmix64_step(u64& state) {
    state += 0x9e3779b97f4a7c15ull;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Brent's cycle variant of Pollard rho.  Deterministic (fixed seed sequence),
// returns 0 when the iteration budget runs out.
u64 brent_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 attempt = 1; attempt <= 20; ++attempt) {
        u64 seed = n ^ (attempt * 0x9e3779b97f4a7c15ull);
        u64 y = splitmix64_step(seed) % n;
        u64 c = 1 + splitmix64_step(seed) % (n - 1);
        u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        u64 budget = 1u << 22;
        while (g == 1 && budget > 0) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = addmod(mulmod(y, y, n), c, n);
            u64 k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = addmod(mulmod(y, y, n), c, n);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += lim;
                budget = budget > lim ? budget - lim : 0;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = addmod(mulmod(ys, ys, n), c, n);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

} // namespace

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    if (n == 0) throw DomainError("factor_u64: n must be positive");
    std::vector<std::pair<u64, int>> out;
    for (u64 q : trial_primes()) {
        if (q * q > n) break;
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) {
        // Cofactor with no prime factor <= 2*10^4: split it completely.
        std::vector<u64> stack{n};
        std::vector<u64> primes;
        while (!stack.empty()) {
            u64 v = stack.back();
            stack.pop_back();
            if (v == 1) continue;
            if (is_prime_u64(v)) {
                primes.push_back(v);
                continue;
            }
            u64 root = static_cast<u64>(std::sqrt(static_cast<double>(v)));
            if (root > 4294967295ull) root = 4294967295ull;
            while (root * root > v) --root;
            while (root + 1 <= 4294967295ull && (root + 1) * (root + 1) <= v) ++root;
            if (root * root == v) {
                stack.push_back(root);
                stack.push_back(root);
                continue;
            }
            u64 d = brent_rho(v);
            if (d == 0 || d == 1 || d == v)
                throw FactorizationError("factor_u64: unfactored cofactor " + std::to_string(v));
            stack.push_back(d);
            stack.push_back(v / d);
        }
        std::sort(primes.begin(), primes.end());
        for (size_t i = 0; i < primes.size();) {
            size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            out.emplace_back(primes[i], static_cast<int>(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 squarefree_part(i64 n) {
    if (n == 0) throw DomainError("squarefree_part: n must be nonzero");
    bool neg = n < 0;
    u64 m = neg ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    u64 kernel = 1;
    for (auto [q, e] : factor_u64(m))
        if (e & 1) kernel *= q;
    i64 out = static_cast<i64>(kernel);
    return neg ? -out : out;
}

FundamentalDiscriminant fundamental_discriminant(i64 d) {
    if (d == 0) throw DomainError("fundamental_discriminant: d must be nonzero");
    if (squarefree_part(d) != d)
        throw DomainError("fundamental_discriminant: d must be squarefree");
    if (d == 1) return 1;
    i64 m4 = ((d % 4) + 4) % 4;
    return m4 == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(i64 D) {
    if (D == 1) return true;
    if (D == 0) return false;
    i64 m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree_part(D) == D;
    if (m4 != 0) return false;
    i64 q = D / 4;
    i64 qm4 = ((q % 4) + 4) % 4;
    return (qm4 == 2 || qm4 == 3) && squarefree_part(q) == q;
}

} // namespace frobkit
