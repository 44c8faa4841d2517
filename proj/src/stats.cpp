#include "frobkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "frobkit/errors.hpp"

namespace frobkit {

std::vector<u64> checkpoints_for(u64 x_max) {
    std::vector<u64> cps;
    for (u64 c = 1000; c <= x_max; c *= 10) {
        cps.push_back(c);
        if (c > x_max / 10) break; // next *10 would overflow past x_max anyway
    }
    if (cps.empty() || cps.back() != x_max) cps.push_back(x_max);
    return cps;
}

namespace {

// Streaming (prime, qualifies?) -> DensityEstimate fold.  Primes must arrive
// in increasing order; checkpoints close as soon as a later prime appears.
class DensityFold {
public:
    explicit DensityFold(u64 x_max) : x_max_(x_max), cps_(checkpoints_for(x_max)) {}

    void add(u64 p, bool hit) {
        if (p > x_max_) return;
        while (next_ < cps_.size() && p > cps_[next_]) close_one();
        ++total_;
        if (hit) ++hits_;
    }

    DensityEstimate finish() {
        while (next_ < cps_.size()) close_one();
        DensityEstimate d;
        d.checkpoints = cps_;
        d.hits = std::move(hit_at_);
        d.totals = std::move(total_at_);
        d.ratios.reserve(d.checkpoints.size());
        for (size_t i = 0; i < d.checkpoints.size(); ++i) {
            double r = d.totals[i] ? static_cast<double>(d.hits[i]) / static_cast<double>(d.totals[i]) : 0.0;
            d.ratios.push_back(r);
            if (d.checkpoints[i] * 10 >= x_max_) d.tail_max_ratio = std::max(d.tail_max_ratio, r);
        }
        d.final_ratio = d.ratios.empty() ? 0.0 : d.ratios.back();
        return d;
    }

private:
    void close_one() {
        hit_at_.push_back(hits_);
        total_at_.push_back(total_);
        ++next_;
    }

    u64 x_max_;
    std::vector<u64> cps_;
    std::vector<u64> hit_at_, total_at_;
    size_t next_ = 0;
    u64 hits_ = 0, total_ = 0;
};

// Calls f(rec1, rec2) for primes present in both streams, increasing p.
template <typename F>
void merge_common(const std::vector<TraceRecord>& r1, const std::vector<TraceRecord>& r2, F&& f) {
    size_t i = 0, j = 0;
    while (i < r1.size() && j < r2.size()) {
        if (r1[i].p < r2[j].p) {
            ++i;
        } else if (r2[j].p < r1[i].p) {
            ++j;
        } else {
            f(r1[i], r2[j]);
            ++i;
            ++j;
        }
    }
}

} // namespace

CoincidenceReport coincidence_density(const std::vector<TraceRecord>& r1,
                                      const std::vector<TraceRecord>& r2, u64 x_max) {
    CoincidenceReport rep;
    DensityFold fold(x_max);
    merge_common(r1, r2, [&](const TraceRecord& a, const TraceRecord& b) {
        if (a.p > x_max) return;
        bool hit = a.frob_disc == b.frob_disc;
        fold.add(a.p, hit);
        if (!hit) return;
        bool ss1 = a.red_type == RedType::Supersingular;
        bool ss2 = b.red_type == RedType::Supersingular;
        if (!ss1 && !ss2) ++rep.ord_ord;
        else if (!ss1 && ss2) ++rep.ord_ss;
        else if (ss1 && !ss2) ++rep.ss_ord;
        else ++rep.ss_ss;
    });
    rep.estimate = fold.finish();
    return rep;
}

DensityEstimate fixed_field_density(const std::vector<TraceRecord>& recs, FundamentalDiscriminant D,
                                    u64 x_max) {
    if (D >= 0 && D != 1)
        throw DomainError("fixed_field_density: discriminant must be negative (or 1 for the rationals)");
    DensityFold fold(x_max);
    for (const auto& r : recs) fold.add(r.p, r.frob_disc == D);
    return fold.finish();
}

CmVerdict cm_detect(const std::vector<TraceRecord>& recs, u64 x_max) {
    if (x_max < 1000) throw DomainError("cm_detect: x_max must be at least 10^3");
    CmVerdict v;
    std::map<FundamentalDiscriminant, u64> by_disc;
    u64 ss = 0;
    for (const auto& r : recs) {
        if (r.p > x_max) break;
        ++v.good_count;
        if (r.red_type == RedType::Supersingular) {
            ++ss;
        } else {
            ++v.ordinary_count;
            ++by_disc[r.frob_disc];
        }
    }
    v.ss_share = v.good_count ? static_cast<double>(ss) / static_cast<double>(v.good_count) : 0.0;

    FundamentalDiscriminant best_disc = 0;
    u64 best = 0;
    for (const auto& [disc, n] : by_disc) {
        if (n > best) {
            best = n;
            best_disc = disc;
        }
    }
    v.ordinary_share =
        v.ordinary_count ? static_cast<double>(best) / static_cast<double>(v.ordinary_count) : 0.0;
    if (v.ordinary_count > 0 && v.ordinary_share >= kCmDominance) v.dominant_disc = best_disc;

    if (v.dominant_disc && v.ordinary_count >= kMinSample) {
        v.status = CmStatus::CM;
    } else if (v.ss_share <= kThetaLow && !v.dominant_disc) {
        v.status = CmStatus::NonCM;
    } else {
        v.status = CmStatus::Inconclusive;
    }
    return v;
}

std::vector<std::pair<u64, u64>> distinct_ordinary_fields(const std::vector<TraceRecord>& recs,
                                                          u64 x_max) {
    auto cps = checkpoints_for(x_max);
    std::vector<std::pair<u64, u64>> out;
    out.reserve(cps.size());
    std::set<FundamentalDiscriminant> seen;
    size_t next = 0;
    for (const auto& r : recs) {
        if (r.p > x_max) break;
        while (next < cps.size() && r.p > cps[next]) out.emplace_back(cps[next++], seen.size());
        if (r.red_type == RedType::Ordinary) seen.insert(r.frob_disc);
    }
    while (next < cps.size()) out.emplace_back(cps[next++], seen.size());
    return out;
}

DensityEstimate supersingular_density(const std::vector<TraceRecord>& recs, u64 x_max) {
    DensityFold fold(x_max);
    for (const auto& r : recs) fold.add(r.p, r.red_type == RedType::Supersingular);
    return fold.finish();
}

std::vector<LtPoint> lang_trotter_stat(const std::vector<TraceRecord>& recs,
                                       FundamentalDiscriminant D, u64 x_max) {
    auto cps = checkpoints_for(x_max);
    std::vector<LtPoint> out;
    out.reserve(cps.size());
    u64 count = 0;
    size_t next = 0;
    auto close = [&](u64 x) {
        double xd = static_cast<double>(x);
        out.push_back({x, count, static_cast<double>(count) * std::log(xd) / std::sqrt(xd)});
    };
    for (const auto& r : recs) {
        if (r.p > x_max) break;
        while (next < cps.size() && r.p > cps[next]) close(cps[next++]);
        if (r.frob_disc == D) ++count;
    }
    while (next < cps.size()) close(cps[next++]);
    return out;
}

SieveReport joint_qr_sieve(const std::vector<TraceRecord>& r1, const std::vector<TraceRecord>& r2,
                           const std::vector<u64>& L, u64 x_max) {
    for (u64 ell : L) {
        if (ell % 2 == 0 || !is_prime_u64(ell))
            throw DomainError("joint_qr_sieve: moduli must be odd primes");
    }
    SieveReport rep;
    rep.per_ell.resize(L.size());
    for (size_t k = 0; k < L.size(); ++k) rep.per_ell[k].ell = L[k];

    merge_common(r1, r2, [&](const TraceRecord& a, const TraceRecord& b) {
        if (a.p > x_max) return;
        if (std::find(L.begin(), L.end(), a.p) != L.end()) return;
        bool joint_eligible = true;
        bool joint_match = true;
        for (size_t k = 0; k < L.size(); ++k) {
            i64 ell = static_cast<i64>(L[k]);
            i64 d1 = ((a.a_p * a.a_p - 4 * static_cast<i64>(a.p)) % ell + ell) % ell;
            i64 d2 = ((b.a_p * b.a_p - 4 * static_cast<i64>(b.p)) % ell + ell) % ell;
            if (d1 == 0 || d2 == 0) {
                joint_eligible = false;
                continue;
            }
            ++rep.per_ell[k].eligible;
            bool match = kronecker(d1, ell) == kronecker(d2, ell);
            rep.per_ell[k].matches += match;
            joint_match = joint_match && match;
        }
        if (joint_eligible) {
            ++rep.joint_eligible;
            rep.joint_matches += joint_match;
        }
    });

    for (auto& line : rep.per_ell)
        line.density = line.eligible ? static_cast<double>(line.matches) / static_cast<double>(line.eligible) : 0.0;
    rep.joint_density = rep.joint_eligible
                            ? static_cast<double>(rep.joint_matches) / static_cast<double>(rep.joint_eligible)
                            : 0.0;
    return rep;
}

CoincidenceReport coincidence_density(const WeierstrassCurve& E1, const WeierstrassCurve& E2,
                                      u64 x_max, const ScanOptions& opt) {
    return coincidence_density(scan(E1, x_max, opt), scan(E2, x_max, opt), x_max);
}

DensityEstimate fixed_field_density(const WeierstrassCurve& E, FundamentalDiscriminant D, u64 x_max,
                                    const ScanOptions& opt) {
    if (D >= 0 && D != 1)
        throw DomainError("fixed_field_density: discriminant must be negative (or 1 for the rationals)");
    return fixed_field_density(scan(E, x_max, opt), D, x_max);
}

CmVerdict cm_detect(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt) {
    if (x_max < 1000) throw DomainError("cm_detect: x_max must be at least 10^3");
    return cm_detect(scan(E, x_max, opt), x_max);
}

std::vector<std::pair<u64, u64>> distinct_ordinary_fields(const WeierstrassCurve& E, u64 x_max,
                                                          const ScanOptions& opt) {
    return distinct_ordinary_fields(scan(E, x_max, opt), x_max);
}

DensityEstimate supersingular_density(const WeierstrassCurve& E, u64 x_max, const ScanOptions& opt) {
    return supersingular_density(scan(E, x_max, opt), x_max);
}

std::vector<LtPoint> lang_trotter_stat(const WeierstrassCurve& E, FundamentalDiscriminant D,
                                       u64 x_max, const ScanOptions& opt) {
    return lang_trotter_stat(scan(E, x_max, opt), D, x_max);
}

SieveReport joint_qr_sieve(const WeierstrassCurve& E1, const WeierstrassCurve& E2,
                           const std::vector<u64>& L, u64 x_max, const ScanOptions& opt) {
    return joint_qr_sieve(scan(E1, x_max, opt), scan(E2, x_max, opt), L, x_max);
}

IsogenyVerdict isogeny_verdict(const CoincidenceReport& report, const CmVerdict& cm1,
                               const CmVerdict& cm2) {
    IsogenyVerdict v;
    v.supporting = report;
    if (cm1.status == CmStatus::CM && cm2.status == CmStatus::CM) {
        v.status = IsogenyStatus::Inconclusive;
        return v;
    }
    double r = report.estimate.final_ratio;
    if (r >= kThetaHigh) {
        v.status = IsogenyStatus::PotentiallyIsogenous;
    } else if (r <= kThetaLow) {
        v.status = IsogenyStatus::NotIsogenous;
    } else {
        v.status = IsogenyStatus::Inconclusive;
    }
    return v;
}

} // namespace frobkit
