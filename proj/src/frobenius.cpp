#include "frobkit/frobenius.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace frobkit {

namespace {

// floor(sqrt(n)) for n <= ~4e18.
u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    if (r > 4294967295ull) r = 4294967295ull;
    while (r * r > n) --r;
    while (r + 1 <= 4294967295ull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

// ---- character-sum engine -------------------------------------------------

// a_p = p - 2*(#x with f(x) a nonzero square) - (#x with f(x) = 0), where
// f(x) = x^3 + Ax + B, derived from a_p = -sum chi(f(x)).  The nonzero
// squares mod p live in a bitmap built incrementally from s^2 = (s-1)^2
// + (2s-1); the cubic is walked by finite differences, so the inner loop is
// add/compare only.
i64 trace_naive_short(u64 p, u64 A, u64 B) {
    std::vector<u64> bits((p + 63) / 64, 0);
    u64 sq = 0, d = 1;
    for (u64 s = 1; s <= (p - 1) / 2; ++s) {
        sq += d;
        if (sq >= p) sq -= p;
        d += 2;
        if (d >= p) d -= p;
        bits[sq >> 6] |= 1ull << (sq & 63);
    }
    u64 f = B % p;
    u64 g = (1 + A) % p;   // f(1) - f(0)
    u64 h = 6 % p;         // second difference step
    const u64 six = 6 % p;
    u64 qr_hits = 0, zeros = 0;
    for (u64 x = 0; x < p; ++x) {
        qr_hits += (bits[f >> 6] >> (f & 63)) & 1;
        zeros += f == 0;
        f += g;
        if (f >= p) f -= p;
        g += h;
        if (g >= p) g -= p;
        h += six;
        if (h >= p) h -= p;
    }
    return static_cast<i64>(p) - 2 * static_cast<i64>(qr_hits) - static_cast<i64>(zeros);
}

// ---- affine point arithmetic ----------------------------------------------

struct Pt {
    u64 x = 0, y = 0;
    bool inf = true;
};

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 inv_mod(u64 a, u64 p) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(p), nr = static_cast<i64>(a % p);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(p)) : static_cast<u64>(t);
}

Pt ec_add(const Pt& P, const Pt& Q, u64 A, u64 p) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
        if (addmod(P.y, Q.y, p) == 0) return {}; // vertical line
        u64 num = addmod(mulmod(3, mulmod(P.x, P.x, p), p), A, p);
        lam = mulmod(num, inv_mod(addmod(P.y, P.y, p), p), p);
    } else {
        u64 num = submod(Q.y, P.y, p);
        lam = mulmod(num, inv_mod(submod(Q.x, P.x, p), p), p);
    }
    Pt R;
    R.inf = false;
    R.x = submod(submod(mulmod(lam, lam, p), P.x, p), Q.x, p);
    R.y = submod(mulmod(lam, submod(P.x, R.x, p), p), P.y, p);
    return R;
}

Pt ec_mul(u64 k, Pt P, u64 A, u64 p) {
    Pt R;
    while (k) {
        if (k & 1) R = ec_add(R, P, A, p);
        P = ec_add(P, P, A, p);
        k >>= 1;
    }
    return R;
}

// ---- modular square roots ---------------------------------------------------

bool is_qr(u64 a, u64 p) { return powmod(a, (p - 1) / 2, p) == 1; }

u64 smallest_nonresidue(u64 p) {
    for (u64 z = 2;; ++z)
        if (!is_qr(z, p)) return z;
}

// Tonelli-Shanks; a must be a nonzero square mod the odd prime p.
u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = smallest_nonresidue(p);
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// ---- baby-step/giant-step order search --------------------------------------

u64 splitmix64_step(u64& state) {
    state += 0x9e3779b97f4a7c15ull;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct BabyEntry {
    u64 x, y;
    u64 i;
    bool operator<(const BabyEntry& o) const { return x != o.x ? x < o.x : (y != o.y ? y < o.y : i < o.i); }
};

// All m in [L, R] with m*P = O, sorted.
std::vector<u64> order_multiples_in(const Pt& P, u64 L, u64 R, u64 A, u64 p) {
    u64 width = R - L + 1;
    u64 s = isqrt_u64(width);
    if (s * s < width) ++s;

    std::vector<BabyEntry> baby;
    baby.reserve(static_cast<size_t>(s));
    std::vector<u64> inf_is;
    Pt cur = ec_mul(L, P, A, p);
    for (u64 i = 0; i < s; ++i) {
        if (cur.inf)
            inf_is.push_back(i);
        else
            baby.push_back({cur.x, cur.y, i});
        cur = ec_add(cur, P, A, p);
    }
    std::sort(baby.begin(), baby.end());

    Pt S = ec_mul(s, P, A, p);
    Pt Sneg = S;
    if (!Sneg.inf) Sneg.y = Sneg.y == 0 ? 0 : p - Sneg.y;

    std::vector<u64> out;
    Pt G; // j * (-sP), starting at O
    for (u64 j = 0; L + j * s <= R; ++j) {
        if (G.inf) {
            for (u64 i : inf_is) {
                u64 m = L + i + j * s;
                if (m <= R) out.push_back(m);
            }
        } else {
            BabyEntry key{G.x, G.y, 0};
            auto it = std::lower_bound(baby.begin(), baby.end(), key);
            for (; it != baby.end() && it->x == G.x && it->y == G.y; ++it) {
                u64 m = L + it->i + j * s;
                if (m <= R) out.push_back(m);
            }
        }
        G = ec_add(G, Sneg, A, p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Intersect candidate order sets over up to `max_points` random points of
// y^2 = x^3 + Ax + B.  Returns the surviving candidates (never empty: the
// true group order belongs to every point's set).
std::vector<u64> candidate_orders(u64 p, u64 A, u64 B, u64 L, u64 R, int max_points, u64 seed_tag) {
    u64 state = (p * 0x9e3779b97f4a7c15ull) ^ (A * 0xbf58476d1ce4e5b9ull) ^
                (B * 0x94d049bb133111ebull) ^ seed_tag;
    std::vector<u64> cands;
    int used = 0;
    int draws = 0;
    while (used < max_points && draws < 64 * max_points) {
        ++draws;
        u64 x = splitmix64_step(state) % p;
        u64 f = addmod(mulmod(x, mulmod(x, x, p), p), addmod(mulmod(A, x, p), B, p), p);
        if (f == 0 || !is_qr(f, p)) continue;
        Pt P{x, sqrt_mod(f, p), false};
        auto mult = order_multiples_in(P, L, R, A, p);
        if (used == 0) {
            cands = std::move(mult);
        } else {
            std::vector<u64> merged;
            std::set_intersection(cands.begin(), cands.end(), mult.begin(), mult.end(),
                                  std::back_inserter(merged));
            cands = std::move(merged);
        }
        ++used;
        if (cands.size() == 1) break;
    }
    return cands;
}

} // namespace

i64 trace_naive(const ReducedCurve& R) {
    if (R.raw) return static_cast<i64>(R.p) + 1 - static_cast<i64>(point_count_enum(R));
    return trace_naive_short(R.p, R.A, R.B);
}

i64 trace_bsgs(const ReducedCurve& R) {
    if (R.raw) return trace_naive(R);
    const u64 p = R.p, A = R.A, B = R.B;
    const u64 s2 = isqrt_u64(4 * p); // floor(2 sqrt p)
    const u64 L = p + 1 - s2, Rr = p + 1 + s2;

    auto cands = candidate_orders(p, A, B, L, Rr, 8, 0);
    if (cands.size() == 1) return static_cast<i64>(p) + 1 - static_cast<i64>(cands[0]);

    // Quadratic-twist complement: orders pair up as N + N' = 2p + 2.
    if (cands.size() > 1) {
        u64 c = smallest_nonresidue(p);
        u64 At = mulmod(A, mulmod(c, c, p), p);
        u64 Bt = mulmod(B, mulmod(c, mulmod(c, c, p), p), p);
        auto tw = candidate_orders(p, At, Bt, L, Rr, 8, 0x517cc1b727220a95ull);
        u64 found = 0, count = 0;
        for (u64 m : cands) {
            u64 comp = 2 * p + 2 - m;
            if (std::binary_search(tw.begin(), tw.end(), comp)) {
                found = m;
                ++count;
            }
        }
        if (count == 1) return static_cast<i64>(p) + 1 - static_cast<i64>(found);
    }

    return trace_naive(R);
}

RedType classify(u64 p, i64 a_p) {
    if (static_cast<__int128>(a_p) * a_p > static_cast<__int128>(4) * p)
        throw HasseError("a_p out of Hasse range: p=" + std::to_string(p) + " a_p=" + std::to_string(a_p));
    return a_p % static_cast<i64>(p) == 0 ? RedType::Supersingular : RedType::Ordinary;
}

FundamentalDiscriminant frobenius_discriminant(u64 p, i64 a_p) {
    if (static_cast<__int128>(a_p) * a_p > static_cast<__int128>(4) * p)
        throw HasseError("a_p out of Hasse range: p=" + std::to_string(p) + " a_p=" + std::to_string(a_p));
    i64 n = a_p * a_p - 4 * static_cast<i64>(p);
    return fundamental_discriminant(squarefree_part(n));
}

i64 trace_at(const ReducedCurve& R, const ScanOptions& opt) {
    if (R.raw) return trace_naive(R);
    if (R.p < opt.naive_threshold && R.p < (1ull << 32)) return trace_naive(R);
    return trace_bsgs(R);
}

TraceRecord record_at(const WeierstrassCurve& E, u64 p, const ScanOptions& opt) {
    auto R = reduce_mod_p(E, p);
    if (!R) throw DomainError("record_at: bad reduction at p=" + std::to_string(p));
    TraceRecord rec;
    rec.p = p;
    rec.a_p = trace_at(*R, opt);
    rec.red_type = classify(p, rec.a_p);
    rec.frob_disc = frobenius_discriminant(p, rec.a_p);
    return rec;
}

std::vector<TraceRecord> scan_range(const WeierstrassCurve& E, u64 lo, u64 hi, const ScanOptions& opt) {
    std::vector<TraceRecord> out;
    if (hi < 2 || hi <= lo) return out;
    auto all = primes_up_to(hi);
    std::vector<u64> ps;
    ps.reserve(all.size());
    for (u64 p : all)
        if (p > lo && E.good_at(p)) ps.push_back(p);
    out.resize(ps.size());

    if (opt.threads == 1) {
        for (size_t i = 0; i < ps.size(); ++i) out[i] = record_at(E, ps[i], opt);
        return out;
    }

    int nthreads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
    for (size_t i = 0; i < ps.size(); ++i) out[i] = record_at(E, ps[i], opt);
    return out;
}

std::vector<TraceRecord> scan(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt) {
    return scan_range(E, 0, x_max, opt);
}

std::vector<TraceRecord> scan_serial(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt) {
    ScanOptions serial = opt;
    serial.threads = 1;
    return scan_range(E, 0, x_max, serial);
}

} // namespace frobkit
