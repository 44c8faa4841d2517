#pragma once

#include <filesystem>

#include "frobkit/frobenius.hpp"

namespace frobkit {

struct CatalogEntry {
    std::string label;
    std::array<i64, 5> model{};
    std::vector<std::string> tags;
};

// The bundled test curves (same content as data/catalog.json).
const std::vector<CatalogEntry>& builtin_catalog();

// Parse and validate a JSON catalog: array of {"label","model":[5 ints],
// "tags":[...]}.  Throws ParseError (with a line number for syntax errors,
// and for duplicate labels) and DomainError for singular models.
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);

WeierstrassCurve curve_from_entry(const CatalogEntry& e);

// 16-hex-digit FNV-1a hash of the canonical model string.
std::string curve_key(const WeierstrassCurve& E);

// Persistent per-curve trace cache.  File format (bit-exact headers):
//   #frobkit-cache v1
//   #curve [a1,a2,a3,a4,a6]
//   #covered <N>
//   p,a_p          (one line per good prime, increasing p)
struct TraceCache {
    std::string key;
    std::array<i64, 5> model{};
    u64 covered_up_to = 0;
    std::vector<std::pair<u64, i64>> entries; // (p, a_p), increasing p
};

TraceCache cache_init(const WeierstrassCurve& E);

// Throws ParseError for malformed files (with line numbers) and CacheError
// for entries violating the Hasse bound or out-of-order primes.
TraceCache cache_load(const std::filesystem::path& file);

// Writes to a temp file in the same directory, then renames atomically.
void cache_save(const TraceCache& cache, const std::filesystem::path& file);

struct CacheStats {
    u64 computed = 0; // traces evaluated by this call
    u64 reused = 0;   // entries already present and <= the requested bound
};

// Extends coverage to new_bound, computing only good primes in
// (covered_up_to, new_bound]; idempotent when new_bound <= covered_up_to.
// Throws CacheError when the cache belongs to a different curve.
CacheStats cache_extend(TraceCache& cache, const WeierstrassCurve& E, u64 new_bound,
                        const ScanOptions& opt = {});

// Full records (classification + field) for cached primes <= bound.
std::vector<TraceRecord> records_from_cache(const TraceCache& cache, u64 bound);

// dir/<curve_key>.cache
std::filesystem::path cache_path(const std::filesystem::path& dir, const WeierstrassCurve& E);

} // namespace frobkit
