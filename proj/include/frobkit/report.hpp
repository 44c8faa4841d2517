#pragma once

#include <string>

#include "json.hpp"

#include "frobkit/groupgl2.hpp"
#include "frobkit/stats.hpp"
#include "frobkit/store.hpp"

namespace frobkit {

using ordered_json = nlohmann::ordered_json;

const char* red_type_name(RedType t);            // "ordinary" / "supersingular"
const char* cm_status_name(CmStatus s);          // "CM" / "NonCM" / "Inconclusive"
const char* isogeny_status_name(IsogenyStatus s);

// CSV bodies, header included, '\n' line endings, numbers rendered exactly
// the same way as in the JSON reports.
std::string csv_scan(const std::vector<TraceRecord>& recs);                 // p,ap,type,disc
std::string csv_lt(const std::vector<LtPoint>& pts);                        // x,count,normalized
std::string csv_distinct(const std::vector<std::pair<u64, u64>>& counts);   // x,distinct

// JSON reports.  Every top-level object carries "schema": "frobkit/1" and a
// "kind" naming the report type.
ordered_json json_estimate(const DensityEstimate& d);
ordered_json json_scan(const std::string& curve, u64 x_max, const std::vector<TraceRecord>& recs);
ordered_json json_compare(const std::string& c1, const std::string& c2, u64 x_max,
                          const CoincidenceReport& rep, const CmVerdict& cm1, const CmVerdict& cm2,
                          const IsogenyVerdict& verdict);
ordered_json json_cm(const std::string& curve, u64 x_max, const CmVerdict& v);
ordered_json json_field_density(const std::string& curve, FundamentalDiscriminant D, u64 x_max,
                                const DensityEstimate& d);
ordered_json json_lt(const std::string& curve, FundamentalDiscriminant D, u64 x_max,
                     const std::vector<LtPoint>& pts);
ordered_json json_distinct(const std::string& curve, u64 x_max,
                           const std::vector<std::pair<u64, u64>>& counts);
ordered_json json_sieve(const std::string& c1, const std::string& c2, const std::vector<u64>& L,
                        u64 x_max, const SieveReport& rep);
ordered_json json_group_density(const GroupDensityReport& rep); // big integers as decimal strings
ordered_json json_twist(const std::string& base, i64 d, const WeierstrassCurve& twisted);
ordered_json json_catalog(const std::vector<CatalogEntry>& entries);

// Human-readable rendering of any of the JSON reports: scalars as
// "key: value" lines, arrays of uniform objects as aligned columns.
std::string render_table(const ordered_json& report);

} // namespace frobkit
