#include "frobkit/store.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace frobkit {

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> cat{
        {"11a1", {0, -1, 1, -10, -20}, {"non-cm", "isogeny-class:11a"}},
        {"11a2", {0, -1, 1, -7820, -263580}, {"non-cm", "isogeny-class:11a"}},
        {"11a3", {0, -1, 1, 0, 0}, {"non-cm", "isogeny-class:11a"}},
        {"37a1", {0, 0, 1, -1, 0}, {"non-cm", "isogeny-class:37a"}},
        {"cm_i", {0, 0, 0, -1, 0}, {"cm:-4"}},
        {"cm_3", {0, 0, 0, 0, 1}, {"cm:-3"}},
    };
    return cat;
}

namespace {

size_t line_of_offset(const std::string& text, size_t offset) {
    size_t line = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("catalog: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("catalog: line " + std::to_string(line_of_offset(text, e.byte)) + ": " +
                         e.what());
    }
    if (!doc.is_array()) throw ParseError("catalog: top level must be a JSON array");

    std::vector<CatalogEntry> out;
    std::set<std::string> seen;
    for (size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        auto where = [&] { return "catalog: entry " + std::to_string(i + 1); };
        if (!item.is_object() || !item.contains("label") || !item.contains("model"))
            throw ParseError(where() + ": need {label, model, tags}");
        CatalogEntry e;
        e.label = item["label"].get<std::string>();
        if (!seen.insert(e.label).second)
            throw ParseError(where() + ": duplicate label '" + e.label + "'");
        const auto& m = item["model"];
        if (!m.is_array() || m.size() != 5)
            throw ParseError(where() + ": model must be 5 integers");
        for (size_t k = 0; k < 5; ++k) e.model[k] = m[k].get<i64>();
        if (item.contains("tags"))
            for (const auto& t : item["tags"]) e.tags.push_back(t.get<std::string>());
        // validates nonsingularity (DomainError propagates with the label)
        try {
            curve_from_entry(e);
        } catch (const DomainError&) {
            throw DomainError(where() + ": singular model for label '" + e.label + "'");
        }
        out.push_back(std::move(e));
    }
    return out;
}

WeierstrassCurve curve_from_entry(const CatalogEntry& e) {
    return WeierstrassCurve(e.model[0], e.model[1], e.model[2], e.model[3], e.model[4], e.label);
}

std::string curve_key(const WeierstrassCurve& E) {
    std::string s = E.model_string();
    u64 h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

TraceCache cache_init(const WeierstrassCurve& E) {
    TraceCache c;
    c.key = curve_key(E);
    c.model = E.coeffs();
    return c;
}

TraceCache cache_load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cache: cannot open " + file.string());
    std::string line;
    size_t lineno = 0;
    auto next_line = [&]() -> bool {
        ++lineno;
        return static_cast<bool>(std::getline(in, line));
    };
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("cache " + file.string() + ": line " + std::to_string(lineno) + ": " + msg);
    };

    if (!next_line() || line != "#frobkit-cache v1") throw fail("expected '#frobkit-cache v1'");
    if (!next_line() || line.rfind("#curve ", 0) != 0) throw fail("expected '#curve [..]'");
    WeierstrassCurve curve = parse_model(line.substr(7));
    if (!next_line() || line.rfind("#covered ", 0) != 0) throw fail("expected '#covered N'");

    TraceCache c;
    c.model = curve.coeffs();
    c.key = curve_key(curve);
    {
        const char* b = line.data() + 9;
        const char* e = line.data() + line.size();
        auto [p, ec] = std::from_chars(b, e, c.covered_up_to);
        if (ec != std::errc() || p != e) throw fail("bad covered bound");
    }

    u64 prev_p = 0;
    while (next_line()) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) throw fail("expected 'p,a_p'");
        u64 p = 0;
        i64 ap = 0;
        auto [p1, e1] = std::from_chars(line.data(), line.data() + comma, p);
        auto [p2, e2] = std::from_chars(line.data() + comma + 1, line.data() + line.size(), ap);
        if (e1 != std::errc() || p1 != line.data() + comma || e2 != std::errc() ||
            p2 != line.data() + line.size())
            throw fail("bad entry '" + line + "'");
        if (p <= prev_p)
            throw CacheError("cache " + file.string() + ": line " + std::to_string(lineno) +
                             ": primes out of order");
        if (static_cast<__int128>(ap) * ap > static_cast<__int128>(4) * p)
            throw CacheError("cache " + file.string() + ": line " + std::to_string(lineno) +
                             ": entry violates the Hasse bound");
        if (p > c.covered_up_to)
            throw CacheError("cache " + file.string() + ": line " + std::to_string(lineno) +
                             ": entry beyond covered bound");
        c.entries.emplace_back(p, ap);
        prev_p = p;
    }
    return c;
}

void cache_save(const TraceCache& cache, const std::filesystem::path& file) {
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw CacheError("cache: cannot write " + tmp.string());
        out << "#frobkit-cache v1\n";
        out << "#curve [" << cache.model[0] << ',' << cache.model[1] << ',' << cache.model[2]
            << ',' << cache.model[3] << ',' << cache.model[4] << "]\n";
        out << "#covered " << cache.covered_up_to << "\n";
        for (const auto& [p, ap] : cache.entries) out << p << ',' << ap << "\n";
        if (!out) throw CacheError("cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

CacheStats cache_extend(TraceCache& cache, const WeierstrassCurve& E, u64 new_bound,
                        const ScanOptions& opt) {
    if (cache.key != curve_key(E))
        throw CacheError("cache belongs to a different curve (key " + cache.key + ", curve " +
                         curve_key(E) + ")");
    CacheStats st;
    for (const auto& [p, ap] : cache.entries) {
        (void)ap;
        if (p <= new_bound) ++st.reused;
    }
    if (new_bound <= cache.covered_up_to) return st;
    auto fresh = scan_range(E, cache.covered_up_to, new_bound, opt);
    st.computed = fresh.size();
    for (const auto& r : fresh) cache.entries.emplace_back(r.p, r.a_p);
    cache.covered_up_to = new_bound;
    return st;
}

std::vector<TraceRecord> records_from_cache(const TraceCache& cache, u64 bound) {
    std::vector<TraceRecord> out;
    for (const auto& [p, ap] : cache.entries) {
        if (p > bound) break;
        TraceRecord r;
        r.p = p;
        r.a_p = ap;
        r.red_type = classify(p, ap);
        r.frob_disc = frobenius_discriminant(p, ap);
        out.push_back(r);
    }
    return out;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const WeierstrassCurve& E) {
    return dir / (curve_key(E) + ".cache");
}

} // namespace frobkit
