#include "frobkit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "frobkit/report.hpp"

namespace frobkit {

namespace fs = std::filesystem;

namespace {

// Invalid input detected after flag parsing: message to stderr, exit 1.
struct UsageFailure {
    std::string msg;
};

struct Options {
    std::string curve1, curve2;
    u64 xmax = 0;
    int threads = 0; // 0 = library default
    std::string cache_dir;
    std::string catalog_path;
    u64 engine_threshold = 1ull << 22;
    bool stats = false;
    std::string format;
    i64 disc = 0;
    std::vector<u64> ells;
    u64 ell = 0;
    i64 twist_d = 0;
};

void add_run_flags(CLI::App* cmd, Options& o, bool with_xmax) {
    if (with_xmax)
        cmd->add_option("--xmax", o.xmax, "scan primes up to this bound (inclusive)")
            ->required()
            ->check(CLI::Range(u64{2}, std::numeric_limits<u64>::max()));
    cmd->add_option("--threads", o.threads, "worker threads (default: all cores)")
        ->check(CLI::Range(1, 4096));
    cmd->add_option("--cache-dir", o.cache_dir,
                    "trace cache directory (FROBKIT_CACHE_DIR overrides)");
    cmd->add_option("--engine-threshold", o.engine_threshold,
                    "primes below this use the exhaustive kernel, above it the group-order search");
    cmd->add_flag("--stats", o.stats, "print cache hit/miss counters to stderr");
    cmd->add_option("--catalog", o.catalog_path, "resolve labels against this catalog file");
}

CLI::Option* add_format(CLI::App* cmd, Options& o, const char* dflt) {
    return cmd->add_option("--format", o.format, std::string("output format (default: ") + dflt + ")")
        ->check(CLI::IsMember({"csv", "json", "table"}));
}

std::vector<CatalogEntry> effective_catalog(const Options& o) {
    if (o.catalog_path.empty()) return builtin_catalog();
    try {
        return load_catalog(o.catalog_path);
    } catch (const Error& e) {
        throw UsageFailure{std::string("cannot use catalog: ") + e.what()};
    }
}

WeierstrassCurve resolve_curve(const std::string& text, const Options& o) {
    if (!text.empty() && text.front() == '[') {
        try {
            return parse_model(text, text);
        } catch (const Error& e) {
            throw UsageFailure{std::string("malformed model '") + text + "': " + e.what()};
        }
    }
    for (const auto& e : effective_catalog(o))
        if (e.label == text) return curve_from_entry(e);
    throw UsageFailure{"unknown curve label: " + text};
}

fs::path effective_cache_dir(const Options& o) {
    if (const char* env = std::getenv("FROBKIT_CACHE_DIR"); env && *env) return env;
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "frobkit";
    return fs::path(".frobkit-cache");
}

ScanOptions scan_options(const Options& o) {
    ScanOptions opt;
    opt.threads = o.threads;
    opt.naive_threshold = o.engine_threshold;
    return opt;
}

// Cache-backed record stream: load (or start) the curve's cache, extend it
// to xmax, persist any new coverage, and report counters under --stats.
std::vector<TraceRecord> cached_records(const WeierstrassCurve& E, const Options& o) {
    fs::path dir = effective_cache_dir(o);
    fs::create_directories(dir);
    fs::path file = cache_path(dir, E);
    TraceCache cache = fs::exists(file) ? cache_load(file) : cache_init(E);
    u64 covered_before = cache.covered_up_to;
    CacheStats st = cache_extend(cache, E, o.xmax, scan_options(o));
    if (cache.covered_up_to != covered_before || !fs::exists(file)) cache_save(cache, file);
    if (o.stats)
        std::cerr << "stats: curve=" << E.model_string() << " computed=" << st.computed
                  << " reused=" << st.reused << " cache=" << file.string() << "\n";
    return records_from_cache(cache, o.xmax);
}

std::string display_name(const WeierstrassCurve& E) {
    return E.label().empty() ? E.model_string() : E.label();
}

void emit(const ordered_json& report, const std::string& format) {
    if (format == "table") {
        std::cout << render_table(report);
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

int run_scan(const Options& o) {
    auto E = resolve_curve(o.curve1, o);
    auto recs = cached_records(E, o);
    if (o.format == "csv") {
        std::cout << csv_scan(recs);
    } else {
        emit(json_scan(display_name(E), o.xmax, recs), o.format);
    }
    return 0;
}

int run_compare(const Options& o) {
    auto E1 = resolve_curve(o.curve1, o);
    auto E2 = resolve_curve(o.curve2, o);
    auto r1 = cached_records(E1, o);
    auto r2 = cached_records(E2, o);
    auto rep = coincidence_density(r1, r2, o.xmax);
    // below 10^3 there are too few primes to assess CM; leave both unknown
    CmVerdict cm1, cm2;
    if (o.xmax >= 1000) {
        cm1 = cm_detect(r1, o.xmax);
        cm2 = cm_detect(r2, o.xmax);
    }
    auto verdict = isogeny_verdict(rep, cm1, cm2);
    emit(json_compare(display_name(E1), display_name(E2), o.xmax, rep, cm1, cm2, verdict), o.format);
    return 0;
}

int run_cm(const Options& o) {
    if (o.xmax < 1000) throw UsageFailure{"cm needs --xmax >= 1000"};
    auto E = resolve_curve(o.curve1, o);
    auto v = cm_detect(cached_records(E, o), o.xmax);
    emit(json_cm(display_name(E), o.xmax, v), o.format);
    return 0;
}

int run_field_density(const Options& o) {
    if (o.disc >= 0 && o.disc != 1)
        throw UsageFailure{"--disc must name a quadratic field: negative, or 1 for the rationals"};
    auto E = resolve_curve(o.curve1, o);
    auto d = fixed_field_density(cached_records(E, o), o.disc, o.xmax);
    emit(json_field_density(display_name(E), o.disc, o.xmax, d), o.format);
    return 0;
}

int run_lt(const Options& o) {
    auto E = resolve_curve(o.curve1, o);
    auto pts = lang_trotter_stat(cached_records(E, o), o.disc, o.xmax);
    if (o.format == "csv") {
        std::cout << csv_lt(pts);
    } else {
        emit(json_lt(display_name(E), o.disc, o.xmax, pts), o.format);
    }
    return 0;
}

int run_distinct(const Options& o) {
    auto E = resolve_curve(o.curve1, o);
    auto counts = distinct_ordinary_fields(cached_records(E, o), o.xmax);
    if (o.format == "csv") {
        std::cout << csv_distinct(counts);
    } else {
        emit(json_distinct(display_name(E), o.xmax, counts), o.format);
    }
    return 0;
}

int run_sieve(const Options& o) {
    for (u64 l : o.ells)
        if (l % 2 == 0 || !is_prime_u64(l))
            throw UsageFailure{"--ells entries must be odd primes, got " + std::to_string(l)};
    if (o.ells.empty()) throw UsageFailure{"--ells needs at least one odd prime"};
    auto E1 = resolve_curve(o.curve1, o);
    auto E2 = resolve_curve(o.curve2, o);
    auto rep = joint_qr_sieve(cached_records(E1, o), cached_records(E2, o), o.ells, o.xmax);
    emit(json_sieve(display_name(E1), display_name(E2), o.ells, o.xmax, rep), o.format);
    return 0;
}

int run_group_density(const Options& o) {
    if (o.ell == 2 || !is_prime_u64(o.ell))
        throw UsageFailure{"--ell must be an odd prime, got " + std::to_string(o.ell)};
    emit(json_group_density(h_prime_ratio(o.ell)), o.format);
    return 0;
}

int run_twist(const Options& o) {
    auto E = resolve_curve(o.curve1, o);
    WeierstrassCurve twisted = [&] {
        try {
            return quadratic_twist(E, o.twist_d);
        } catch (const DomainError& e) {
            throw UsageFailure{std::string("invalid --d: ") + e.what()};
        }
    }();
    emit(json_twist(display_name(E), o.twist_d, twisted), o.format);
    return 0;
}

int run_catalog_list(const Options& o) {
    emit(json_catalog(effective_catalog(o)), o.format);
    return 0;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"trace-of-Frobenius scans, Frobenius-field statistics, and density reports"};
    app.require_subcommand(1);
    Options o;

    auto* scan_cmd = app.add_subcommand("scan", "per-prime trace records for one curve");
    scan_cmd->add_option("curve", o.curve1, "catalog label or [a1,a2,a3,a4,a6]")->required();
    add_run_flags(scan_cmd, o, true);
    auto* scan_fmt = add_format(scan_cmd, o, "csv");

    auto* compare_cmd =
        app.add_subcommand("compare", "Frobenius-field coincidence density and isogeny verdict");
    compare_cmd->add_option("curve1", o.curve1)->required();
    compare_cmd->add_option("curve2", o.curve2)->required();
    add_run_flags(compare_cmd, o, true);
    auto* compare_fmt = add_format(compare_cmd, o, "json");

    auto* cm_cmd = app.add_subcommand("cm", "complex-multiplication verdict for one curve");
    cm_cmd->add_option("curve", o.curve1)->required();
    add_run_flags(cm_cmd, o, true);
    auto* cm_fmt = add_format(cm_cmd, o, "json");

    auto* fd_cmd =
        app.add_subcommand("field-density", "density of one fixed Frobenius field");
    fd_cmd->add_option("curve", o.curve1)->required();
    fd_cmd->add_option("--disc", o.disc, "fundamental discriminant of the field")->required();
    add_run_flags(fd_cmd, o, true);
    auto* fd_fmt = add_format(fd_cmd, o, "json");

    auto* lt_cmd = app.add_subcommand("lt", "field counts with the sqrt(x)/log x normalization");
    lt_cmd->add_option("curve", o.curve1)->required();
    lt_cmd->add_option("--disc", o.disc, "fundamental discriminant of the field")->required();
    add_run_flags(lt_cmd, o, true);
    auto* lt_fmt = add_format(lt_cmd, o, "csv");

    auto* df_cmd =
        app.add_subcommand("distinct-fields", "distinct ordinary Frobenius fields per checkpoint");
    df_cmd->add_option("curve", o.curve1)->required();
    add_run_flags(df_cmd, o, true);
    auto* df_fmt = add_format(df_cmd, o, "csv");

    auto* sieve_cmd =
        app.add_subcommand("sieve", "per-modulus and joint quadratic-residue agreement");
    sieve_cmd->add_option("curve1", o.curve1)->required();
    sieve_cmd->add_option("curve2", o.curve2)->required();
    sieve_cmd->add_option("--ells", o.ells, "odd prime moduli, comma separated")
        ->required()
        ->delimiter(',');
    add_run_flags(sieve_cmd, o, true);
    auto* sieve_fmt = add_format(sieve_cmd, o, "json");

    auto* gd_cmd = app.add_subcommand("group-density",
                                      "exact equal-determinant pair density in GL2(F_ell)");
    gd_cmd->add_option("--ell", o.ell, "odd prime modulus")->required();
    auto* gd_fmt = add_format(gd_cmd, o, "json");

    auto* twist_cmd = app.add_subcommand("twist", "quadratic twist of a curve");
    twist_cmd->add_option("curve", o.curve1)->required();
    twist_cmd->add_option("--d", o.twist_d, "squarefree twisting integer, nonzero")->required();
    twist_cmd->add_option("--catalog", o.catalog_path, "resolve labels against this catalog file");
    auto* twist_fmt = add_format(twist_cmd, o, "json");

    auto* catalog_cmd = app.add_subcommand("catalog", "curve catalog utilities");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "print the active catalog");
    list_cmd->add_option("--catalog", o.catalog_path, "resolve labels against this catalog file");
    auto* list_fmt = add_format(list_cmd, o, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // the shared --format value only applies when the user passed it; each
    // subcommand otherwise falls back to its own default
    auto with_default = [&o](CLI::Option* fmt, const char* dflt) {
        if (!fmt->count()) o.format = dflt;
    };

    try {
        if (scan_cmd->parsed()) return with_default(scan_fmt, "csv"), run_scan(o);
        if (compare_cmd->parsed()) return with_default(compare_fmt, "json"), run_compare(o);
        if (cm_cmd->parsed()) return with_default(cm_fmt, "json"), run_cm(o);
        if (fd_cmd->parsed()) return with_default(fd_fmt, "json"), run_field_density(o);
        if (lt_cmd->parsed()) return with_default(lt_fmt, "csv"), run_lt(o);
        if (df_cmd->parsed()) return with_default(df_fmt, "csv"), run_distinct(o);
        if (sieve_cmd->parsed()) return with_default(sieve_fmt, "json"), run_sieve(o);
        if (gd_cmd->parsed()) return with_default(gd_fmt, "json"), run_group_density(o);
        if (twist_cmd->parsed()) return with_default(twist_fmt, "json"), run_twist(o);
        if (catalog_cmd->parsed()) return with_default(list_fmt, "json"), run_catalog_list(o);
    } catch (const UsageFailure& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace frobkit
