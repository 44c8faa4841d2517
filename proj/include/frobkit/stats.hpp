#pragma once

#include <optional>
#include <utility>

#include "frobkit/frobenius.hpp"

namespace frobkit {

// Decision thresholds shared by the verdict functions below.
inline constexpr double kThetaHigh = 0.5;    // coincidence ratio at/above: potentially isogenous
inline constexpr double kThetaLow = 0.05;    // coincidence ratio at/below: not isogenous
inline constexpr double kCmDominance = 0.90; // one field on at least this share of ordinary primes
inline constexpr u64 kMinSample = 30;        // ordinary primes needed before calling CM

// 10^3, 10^4, ..., up to x_max, plus x_max itself.
std::vector<u64> checkpoints_for(u64 x_max);

// Running ratio of qualifying primes among eligible primes, sampled at
// checkpoints.  final_ratio is the ratio at x_max; tail_max_ratio is the
// maximum ratio over checkpoints in [x_max/10, x_max] — the two are reported
// side by side as a finite-x stand-in for a limsup density.
struct DensityEstimate {
    std::vector<u64> checkpoints;
    std::vector<u64> hits;   // qualifying primes <= checkpoint
    std::vector<u64> totals; // eligible primes <= checkpoint
    std::vector<double> ratios;
    double final_ratio = 0.0;
    double tail_max_ratio = 0.0;
};

// Density of the event "both curves name the same Frobenius field", over
// primes good for both curves.  The breakdown splits the matches at x_max by
// reduction type (first curve, second curve); the four cells sum to the
// final hit count.
struct CoincidenceReport {
    DensityEstimate estimate;
    u64 ord_ord = 0;
    u64 ord_ss = 0;
    u64 ss_ord = 0;
    u64 ss_ss = 0;
};

enum class CmStatus { CM, NonCM, Inconclusive };

struct CmVerdict {
    CmStatus status = CmStatus::Inconclusive;
    // Set iff a single discriminant carries >= kCmDominance of the ordinary
    // primes (the CM field's discriminant when status = CM).
    std::optional<FundamentalDiscriminant> dominant_disc;
    double ordinary_share = 0.0; // share of ordinary primes on the most common field
    double ss_share = 0.0;       // supersingular fraction of good primes
    u64 ordinary_count = 0;
    u64 good_count = 0;
};

enum class IsogenyStatus { PotentiallyIsogenous, NotIsogenous, Inconclusive };

struct IsogenyVerdict {
    IsogenyStatus status = IsogenyStatus::Inconclusive;
    CoincidenceReport supporting;
};

struct LtPoint {
    u64 x = 0;
    u64 count = 0;            // primes <= x naming the requested field
    double normalized = 0.0;  // count * log(x) / sqrt(x)
};

struct SieveLine {
    u64 ell = 0;
    u64 eligible = 0; // common good primes with both delta != 0 mod ell
    u64 matches = 0;  // eligible primes where the residue classes agree
    double density = 0.0;
};

struct SieveReport {
    std::vector<SieveLine> per_ell;
    u64 joint_eligible = 0; // eligible at every ell simultaneously
    u64 joint_matches = 0;  // matching at every ell simultaneously
    double joint_density = 0.0;
};

// ---------------------------------------------------------------------------
// Record-stream forms.  Input vectors must be scan output (good primes only,
// increasing p); primes beyond x_max are ignored, so one long scan can serve
// several bounds.  All folds are deterministic functions of the streams.
// ---------------------------------------------------------------------------

CoincidenceReport coincidence_density(const std::vector<TraceRecord>& r1,
                                      const std::vector<TraceRecord>& r2, u64 x_max);

// Density of frob_disc = D among good primes.  Throws DomainError unless
// D < 0 or D = 1 (1 names the rationals; no prime attains it).
DensityEstimate fixed_field_density(const std::vector<TraceRecord>& recs,
                                    FundamentalDiscriminant D, u64 x_max);

// Throws DomainError when x_max < 10^3 (too few primes to say anything).
CmVerdict cm_detect(const std::vector<TraceRecord>& recs, u64 x_max);

// (checkpoint, number of distinct frob_disc values among ordinary primes).
std::vector<std::pair<u64, u64>> distinct_ordinary_fields(const std::vector<TraceRecord>& recs,
                                                          u64 x_max);

DensityEstimate supersingular_density(const std::vector<TraceRecord>& recs, u64 x_max);

// Raw counts S(x) of primes naming field D, with the x^(1/2)/log x
// normalization at each checkpoint.  No constant is fitted.
std::vector<LtPoint> lang_trotter_stat(const std::vector<TraceRecord>& recs,
                                       FundamentalDiscriminant D, u64 x_max);

// Per-ell and joint quadratic-residue agreement of a_p^2 - 4p for the two
// curves, over common good primes outside L.  Primes with either delta
// divisible by ell are skipped at that ell.  Throws DomainError unless every
// ell in L is an odd prime.
SieveReport joint_qr_sieve(const std::vector<TraceRecord>& r1, const std::vector<TraceRecord>& r2,
                           const std::vector<u64>& L, u64 x_max);

// ---------------------------------------------------------------------------
// Curve forms: scan to x_max, then fold.
// ---------------------------------------------------------------------------

CoincidenceReport coincidence_density(const WeierstrassCurve& E1, const WeierstrassCurve& E2,
                                      u64 x_max, const ScanOptions& opt = {});
DensityEstimate fixed_field_density(const WeierstrassCurve& E, FundamentalDiscriminant D,
                                    u64 x_max, const ScanOptions& opt = {});
CmVerdict cm_detect(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt = {});
std::vector<std::pair<u64, u64>> distinct_ordinary_fields(const WeierstrassCurve& E, u64 x_max,
                                                          const ScanOptions& opt = {});
DensityEstimate supersingular_density(const WeierstrassCurve& E, u64 x_max,
                                      const ScanOptions& opt = {});
std::vector<LtPoint> lang_trotter_stat(const WeierstrassCurve& E, FundamentalDiscriminant D,
                                       u64 x_max, const ScanOptions& opt = {});
SieveReport joint_qr_sieve(const WeierstrassCurve& E1, const WeierstrassCurve& E2,
                           const std::vector<u64>& L, u64 x_max, const ScanOptions& opt = {});

// Deterministic function of the report and the two CM verdicts: both CM ->
// Inconclusive (field coincidence no longer separates isogeny classes);
// otherwise final ratio >= kThetaHigh -> PotentiallyIsogenous, <= kThetaLow
// -> NotIsogenous, else Inconclusive.
IsogenyVerdict isogeny_verdict(const CoincidenceReport& report, const CmVerdict& cm1,
                               const CmVerdict& cm2);

} // namespace frobkit
