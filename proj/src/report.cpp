#include "frobkit/report.hpp"

#include <sstream>

namespace frobkit {

namespace {

// One rendering for every number in CSV and table output: route through the
// JSON serializer so all formats agree byte for byte.
std::string num(const ordered_json& v) { return v.dump(); }

ordered_json report_head(const char* kind) {
    ordered_json j;
    j["schema"] = "frobkit/1";
    j["kind"] = kind;
    return j;
}

} // namespace

const char* red_type_name(RedType t) {
    return t == RedType::Supersingular ? "supersingular" : "ordinary";
}

const char* cm_status_name(CmStatus s) {
    switch (s) {
        case CmStatus::CM: return "CM";
        case CmStatus::NonCM: return "NonCM";
        default: return "Inconclusive";
    }
}

const char* isogeny_status_name(IsogenyStatus s) {
    switch (s) {
        case IsogenyStatus::PotentiallyIsogenous: return "PotentiallyIsogenous";
        case IsogenyStatus::NotIsogenous: return "NotIsogenous";
        default: return "Inconclusive";
    }
}

std::string csv_scan(const std::vector<TraceRecord>& recs) {
    std::string out = "p,ap,type,disc\n";
    for (const auto& r : recs) {
        out += std::to_string(r.p);
        out += ',';
        out += std::to_string(r.a_p);
        out += ',';
        out += red_type_name(r.red_type);
        out += ',';
        out += std::to_string(r.frob_disc);
        out += '\n';
    }
    return out;
}

std::string csv_lt(const std::vector<LtPoint>& pts) {
    std::string out = "x,count,normalized\n";
    for (const auto& pt : pts) {
        out += std::to_string(pt.x);
        out += ',';
        out += std::to_string(pt.count);
        out += ',';
        out += num(pt.normalized);
        out += '\n';
    }
    return out;
}

std::string csv_distinct(const std::vector<std::pair<u64, u64>>& counts) {
    std::string out = "x,distinct\n";
    for (const auto& [x, n] : counts) {
        out += std::to_string(x);
        out += ',';
        out += std::to_string(n);
        out += '\n';
    }
    return out;
}

ordered_json json_estimate(const DensityEstimate& d) {
    ordered_json j;
    j["checkpoints"] = d.checkpoints;
    j["hits"] = d.hits;
    j["totals"] = d.totals;
    j["ratios"] = d.ratios;
    j["final_ratio"] = d.final_ratio;
    j["tail_max_ratio"] = d.tail_max_ratio;
    return j;
}

ordered_json json_scan(const std::string& curve, u64 x_max, const std::vector<TraceRecord>& recs) {
    auto j = report_head("scan");
    j["curve"] = curve;
    j["x_max"] = x_max;
    ordered_json rows = ordered_json::array();
    for (const auto& r : recs) {
        ordered_json row;
        row["p"] = r.p;
        row["ap"] = r.a_p;
        row["type"] = red_type_name(r.red_type);
        row["disc"] = r.frob_disc;
        rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
    return j;
}

ordered_json json_compare(const std::string& c1, const std::string& c2, u64 x_max,
                          const CoincidenceReport& rep, const CmVerdict& cm1, const CmVerdict& cm2,
                          const IsogenyVerdict& verdict) {
    auto j = report_head("compare");
    j["curves"] = {c1, c2};
    j["x_max"] = x_max;
    j["estimate"] = json_estimate(rep.estimate);
    ordered_json breakdown;
    breakdown["ord_ord"] = rep.ord_ord;
    breakdown["ord_ss"] = rep.ord_ss;
    breakdown["ss_ord"] = rep.ss_ord;
    breakdown["ss_ss"] = rep.ss_ss;
    j["breakdown"] = std::move(breakdown);
    j["cm_status"] = {cm_status_name(cm1.status), cm_status_name(cm2.status)};
    j["verdict"] = isogeny_status_name(verdict.status);
    return j;
}

ordered_json json_cm(const std::string& curve, u64 x_max, const CmVerdict& v) {
    auto j = report_head("cm");
    j["curve"] = curve;
    j["x_max"] = x_max;
    j["verdict"] = cm_status_name(v.status);
    if (v.dominant_disc) {
        j["dominant_disc"] = *v.dominant_disc;
    } else {
        j["dominant_disc"] = nullptr;
    }
    j["ordinary_share"] = v.ordinary_share;
    j["ss_share"] = v.ss_share;
    j["ordinary_count"] = v.ordinary_count;
    j["good_count"] = v.good_count;
    return j;
}

ordered_json json_field_density(const std::string& curve, FundamentalDiscriminant D, u64 x_max,
                                const DensityEstimate& d) {
    auto j = report_head("field-density");
    j["curve"] = curve;
    j["disc"] = D;
    j["x_max"] = x_max;
    j["estimate"] = json_estimate(d);
    return j;
}

ordered_json json_lt(const std::string& curve, FundamentalDiscriminant D, u64 x_max,
                     const std::vector<LtPoint>& pts) {
    auto j = report_head("lt");
    j["curve"] = curve;
    j["disc"] = D;
    j["x_max"] = x_max;
    ordered_json rows = ordered_json::array();
    for (const auto& pt : pts) {
        ordered_json row;
        row["x"] = pt.x;
        row["count"] = pt.count;
        row["normalized"] = pt.normalized;
        rows.push_back(std::move(row));
    }
    j["points"] = std::move(rows);
    return j;
}

ordered_json json_distinct(const std::string& curve, u64 x_max,
                           const std::vector<std::pair<u64, u64>>& counts) {
    auto j = report_head("distinct-fields");
    j["curve"] = curve;
    j["x_max"] = x_max;
    ordered_json rows = ordered_json::array();
    for (const auto& [x, n] : counts) {
        ordered_json row;
        row["x"] = x;
        row["distinct"] = n;
        rows.push_back(std::move(row));
    }
    j["counts"] = std::move(rows);
    return j;
}

ordered_json json_sieve(const std::string& c1, const std::string& c2, const std::vector<u64>& L,
                        u64 x_max, const SieveReport& rep) {
    auto j = report_head("sieve");
    j["curves"] = {c1, c2};
    j["ells"] = L;
    j["x_max"] = x_max;
    ordered_json rows = ordered_json::array();
    for (const auto& line : rep.per_ell) {
        ordered_json row;
        row["ell"] = line.ell;
        row["eligible"] = line.eligible;
        row["matches"] = line.matches;
        row["density"] = line.density;
        rows.push_back(std::move(row));
    }
    j["per_ell"] = std::move(rows);
    ordered_json joint;
    joint["eligible"] = rep.joint_eligible;
    joint["matches"] = rep.joint_matches;
    joint["density"] = rep.joint_density;
    j["joint"] = std::move(joint);
    return j;
}

ordered_json json_group_density(const GroupDensityReport& rep) {
    auto j = report_head("group-density");
    j["l"] = rep.ell;
    j["h"] = rep.h_size.str();
    j["h_prime"] = rep.h_prime_size.str();
    j["ratio_num"] = boost::multiprecision::numerator(rep.ratio).str();
    j["ratio_den"] = boost::multiprecision::denominator(rep.ratio).str();
    return j;
}

ordered_json json_twist(const std::string& base, i64 d, const WeierstrassCurve& twisted) {
    auto j = report_head("twist");
    j["curve"] = base;
    j["d"] = d;
    j["model"] = twisted.coeffs();
    j["model_string"] = twisted.model_string();
    return j;
}

ordered_json json_catalog(const std::vector<CatalogEntry>& entries) {
    auto j = report_head("catalog");
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json row;
        row["label"] = e.label;
        row["model"] = e.model;
        row["tags"] = e.tags;
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

namespace {

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render_rows(std::ostringstream& out, const ordered_json& rows) {
    // uniform array of objects -> aligned columns
    std::vector<std::string> cols;
    for (const auto& [k, _] : rows[0].items()) cols.push_back(k);
    std::vector<std::vector<std::string>> cells;
    cells.push_back(cols);
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (const auto& c : cols) line.push_back(scalar_text(row.at(c)));
        cells.push_back(std::move(line));
    }
    std::vector<size_t> width(cols.size(), 0);
    for (const auto& line : cells)
        for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : cells) {
        for (size_t i = 0; i < line.size(); ++i) {
            out << line[i];
            if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << '\n';
    }
}

void render_value(std::ostringstream& out, const std::string& prefix, const ordered_json& v) {
    if (v.is_object()) {
        for (const auto& [k, sub] : v.items())
            render_value(out, prefix.empty() ? k : prefix + "." + k, sub);
        return;
    }
    if (v.is_array() && !v.empty() && v[0].is_object()) {
        out << prefix << ":\n";
        render_rows(out, v);
        return;
    }
    if (v.is_array()) {
        out << prefix << ": ";
        for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << scalar_text(v[i]);
        out << '\n';
        return;
    }
    out << prefix << ": " << scalar_text(v) << '\n';
}

} // namespace

std::string render_table(const ordered_json& report) {
    std::ostringstream out;
    render_value(out, "", report);
    return out.str();
}

} // namespace frobkit
