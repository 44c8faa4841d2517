#pragma once

#include "frobkit/curve.hpp"

namespace frobkit {

enum class RedType { Ordinary, Supersingular };

// Everything downstream statistics need about one good prime.
struct TraceRecord {
    u64 p = 0;
    i64 a_p = 0;
    RedType red_type = RedType::Ordinary;
    FundamentalDiscriminant frob_disc = 0; // canonical name of Q(sqrt(a_p^2 - 4p))

    bool operator==(const TraceRecord&) const = default;
};

// O(p) trace: for the short form, a_p = -sum_x chi(x^3 + Ax + B) with the
// quadratic character chi realized by a per-prime residue table; for the raw
// form (p = 2, 3), direct enumeration.
i64 trace_naive(const ReducedCurve& R);

// O(p^(1/4))-ish trace for p >= 5: random points, baby-step/giant-step order
// search over the Hasse interval, candidate intersection across up to 8
// points, then the quadratic-twist complement, then trace_naive as the final
// fallback.  Always equals trace_naive.
i64 trace_bsgs(const ReducedCurve& R);

// Supersingular iff p | a_p.  Throws HasseError if a_p^2 > 4p.
RedType classify(u64 p, i64 a_p);

// fundamental_discriminant(squarefree_part(a_p^2 - 4p)); negative for every
// prime p.  Throws HasseError if a_p^2 > 4p.
FundamentalDiscriminant frobenius_discriminant(u64 p, i64 a_p);

struct ScanOptions {
    int threads = 0;                   // 0 = OpenMP default, 1 = serial path
    u64 naive_threshold = 1ull << 22;  // p below this use trace_naive, else trace_bsgs
};

// a_p at one good prime, engine picked by the threshold knob.
i64 trace_at(const ReducedCurve& R, const ScanOptions& opt = {});

// Record (trace + classification + field) for one good prime.
TraceRecord record_at(const WeierstrassCurve& E, u64 p, const ScanOptions& opt = {});

// One TraceRecord per good prime p <= x_max, increasing p.  Results depend
// only on (E, x_max, threshold), never on thread count or schedule.
std::vector<TraceRecord> scan(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt = {});

// Reference implementation: same contract as scan, plain serial loop.
std::vector<TraceRecord> scan_serial(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt = {});

// Records for good primes in (lo, hi], increasing p (cache extension helper).
std::vector<TraceRecord> scan_range(const WeierstrassCurve& E, u64 lo, u64 hi, const ScanOptions& opt = {});

} // namespace frobkit
