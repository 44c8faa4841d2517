// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.
// argv[1] must point at the frobkit command-line binary (used by the
// determinism criterion).  Every tolerance is pinned here as a constant.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "frobkit/groupgl2.hpp"
#include "frobkit/report.hpp"
#include "frobkit/stats.hpp"
#include "frobkit/store.hpp"

using namespace frobkit;
namespace fs = std::filesystem;

namespace {

// --- pinned tolerances -----------------------------------------------------
constexpr double kNonIsogenousRatioMax = 0.02;  // criterion 5
constexpr double kCmPairRatioLo = 0.20;         // criterion 6
constexpr double kCmPairRatioHi = 0.30;         // criterion 6
constexpr double kOrdinaryShareMin = 0.99;      // criterion 7
constexpr double kCmFieldDensityLo = 0.45;      // criterion 7
constexpr double kCmFieldDensityHi = 0.55;      // criterion 7
constexpr double kSupersingularMax = 0.02;      // criterion 7
constexpr u64 kDistinctFieldsMin = 100;         // criterion 8
constexpr double kSieveperEllTol = 0.05;        // criterion 10
constexpr double kSieveJointTol = 0.05;         // criterion 10
constexpr double kTraceOracleSeconds = 10.0;    // criterion 1
constexpr double kInvariantSeconds = 30.0;      // criterion 2
constexpr double kBigPairSeconds = 300.0;       // criterion 5
constexpr double kGroup211Seconds = 10.0;       // criterion 9

// Primes this small are fastest through the exhaustive kernel; the scans
// here top out at 1e6 where the group-order engine wins, so drop the
// crossover well below its library default.
constexpr u64 kEngineThreshold = 1ull << 16;

std::string g_cli;

// Shared per-curve record streams, grown on demand so each criterion's timer
// covers exactly the computation it triggered.
class StreamPool {
public:
    const std::vector<TraceRecord>& fetch(const std::string& label, u64 bound) {
        auto& slot = slots_[label];
        if (slot.bound < bound) {
            ScanOptions opt;
            opt.naive_threshold = kEngineThreshold;
            auto extra = scan_range(curve(label), slot.bound, bound, opt);
            slot.records.insert(slot.records.end(), extra.begin(), extra.end());
            slot.bound = bound;
        }
        return slot.records;
    }

    const WeierstrassCurve& curve(const std::string& label) {
        auto it = curves_.find(label);
        if (it != curves_.end()) return it->second;
        for (const auto& e : builtin_catalog())
            if (e.label == label) return curves_.emplace(label, curve_from_entry(e)).first->second;
        throw std::runtime_error("unknown label " + label);
    }

    void adopt(const std::string& label, const WeierstrassCurve& E) { curves_.emplace(label, E); }

private:
    struct Slot {
        u64 bound = 0;
        std::vector<TraceRecord> records;
    };
    std::map<std::string, WeierstrassCurve> curves_;
    std::map<std::string, Slot> slots_;
};

StreamPool pool;

struct Criterion {
    int id;
    std::string what;
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& detail) {
        if (!ok) failures.push_back(detail);
    }
};

int g_failed = 0;

void run_criterion(int id, const std::string& what, const std::function<void(Criterion&)>& body) {
    Criterion c{id, what, {}};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    if (c.failures.empty()) {
        std::cout << "PASS  criterion " << id << ": " << what << "  [" << timing << "]\n";
    } else {
        ++g_failed;
        std::cout << "FAIL  criterion " << id << ": " << what << "  [" << timing << "]\n";
        for (const auto& f : c.failures) std::cout << "      - " << f << "\n";
    }
    std::cout.flush();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// CLI runner for the determinism criterion.
struct CliResult {
    int code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

CliResult run_cli(const std::string& args, const std::string& cache_dir) {
    static int seq = 0;
    fs::path out = fs::temp_directory_path() /
                   ("frobkit-acc-" + std::to_string(::getpid()) + "-" + std::to_string(seq++));
    std::string cmd = "FROBKIT_CACHE_DIR='" + cache_dir + "' " + g_cli + " " + args + " >'" +
                      out.string() + "' 2>/dev/null";
    int st = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(out);
    fs::remove(out);
    return r;
}

const std::vector<std::string> kCatalogLabels = {"11a1", "11a2", "11a3", "37a1", "cm_i", "cm_3"};

// --- criteria ----------------------------------------------------------------

void criterion1(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& label : kCatalogLabels) {
        const auto& E = pool.curve(label);
        for (u64 p : primes_up_to(1000)) {
            auto red = reduce_mod_p(E, p);
            if (!red) continue;
            i64 naive = trace_naive(*red);
            i64 from_count = static_cast<i64>(p) + 1 - static_cast<i64>(point_count_enum(*red));
            c.expect(naive == from_count, label + " p=" + std::to_string(p) + ": kernel trace " +
                                              std::to_string(naive) + " != enumeration " +
                                              std::to_string(from_count));
        }
        for (u64 p : primes_up_to(10000)) {
            if (p < 5) continue;
            auto red = reduce_mod_p(E, p);
            if (!red) continue;
            i64 a = trace_naive(*red), b = trace_bsgs(*red);
            c.expect(a == b, label + " p=" + std::to_string(p) + ": BSGS " + std::to_string(b) +
                                 " != exhaustive " + std::to_string(a));
        }
    }
    double secs = elapsed_since(t0);
    c.expect(secs < kTraceOracleSeconds,
             "runtime " + fmt(secs) + "s exceeds " + fmt(kTraceOracleSeconds) + "s");
}

void criterion2(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& label : kCatalogLabels) {
        for (const auto& r : pool.fetch(label, 100000)) {
            c.expect(static_cast<double>(r.a_p) * r.a_p <= 4.0 * static_cast<double>(r.p),
                     label + " p=" + std::to_string(r.p) + ": trace bound violated");
            if (r.p < 5) continue;
            i64 p = static_cast<i64>(r.p);
            if (r.red_type == RedType::Ordinary) {
                c.expect(kronecker(r.frob_disc, p) == 1,
                         label + " p=" + std::to_string(r.p) + ": ordinary field not split");
            } else {
                c.expect(r.a_p == 0, label + " p=" + std::to_string(r.p) +
                                         ": supersingular with nonzero trace");
                c.expect(kronecker(r.frob_disc, p) == 0,
                         label + " p=" + std::to_string(r.p) + ": supersingular field not ramified");
            }
        }
    }
    double secs = elapsed_since(t0);
    c.expect(secs < kInvariantSeconds,
             "runtime " + fmt(secs) + "s exceeds " + fmt(kInvariantSeconds) + "s");
}

void criterion3(Criterion& c) {
    for (const std::string other : {"11a2", "11a3"}) {
        const auto& r1 = pool.fetch("11a1", 10000);
        const auto& r2 = pool.fetch(other, 10000);
        auto rep = coincidence_density(r1, r2, 10000);
        for (double ratio : rep.estimate.ratios)
            c.expect(ratio == 1.0, "11a1 vs " + other + ": ratio " + fmt(ratio) + " != 1.0");
        auto verdict = isogeny_verdict(rep, cm_detect(r1, 10000), cm_detect(r2, 10000));
        c.expect(verdict.status == IsogenyStatus::PotentiallyIsogenous,
                 "11a1 vs " + other + ": verdict " + isogeny_status_name(verdict.status));
    }
}

void criterion4(Criterion& c) {
    const auto& base = pool.curve("37a1");
    auto twisted = quadratic_twist(base, -3);
    pool.adopt("37a1_tw3", twisted);
    const auto& rb = pool.fetch("37a1", 10000);
    const auto& rt = pool.fetch("37a1_tw3", 10000);

    std::map<u64, i64> tw;
    for (const auto& r : rt) tw[r.p] = r.a_p;
    u64 checked = 0;
    for (const auto& r : rb) {
        auto it = tw.find(r.p);
        if (it == tw.end() || r.p == 2 || r.p == 3) continue;
        ++checked;
        i64 expected = kronecker(-3, static_cast<i64>(r.p)) * r.a_p;
        c.expect(it->second == expected,
                 "p=" + std::to_string(r.p) + ": twist trace " + std::to_string(it->second) +
                     " != character*base " + std::to_string(expected));
    }
    c.expect(checked > 1000, "only " + std::to_string(checked) + " primes compared");

    auto rep = coincidence_density(rb, rt, 10000);
    for (double ratio : rep.estimate.ratios)
        c.expect(ratio == 1.0, "coincidence ratio " + fmt(ratio) + " != 1.0");
}

void criterion5(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& r1 = pool.fetch("11a1", 1000000);
    const auto& r2 = pool.fetch("37a1", 1000000);
    auto rep = coincidence_density(r1, r2, 1000000);
    c.expect(rep.estimate.final_ratio <= kNonIsogenousRatioMax,
             "coincidence ratio " + fmt(rep.estimate.final_ratio) + " above " +
                 fmt(kNonIsogenousRatioMax));
    auto verdict = isogeny_verdict(rep, cm_detect(r1, 1000000), cm_detect(r2, 1000000));
    c.expect(verdict.status == IsogenyStatus::NotIsogenous,
             std::string("verdict ") + isogeny_status_name(verdict.status));
    double secs = elapsed_since(t0);
    c.expect(secs < kBigPairSeconds,
             "runtime " + fmt(secs) + "s exceeds " + fmt(kBigPairSeconds) + "s");
}

void criterion6(Criterion& c) {
    const auto& r1 = pool.fetch("cm_i", 1000000);
    const auto& r2 = pool.fetch("cm_3", 1000000);
    auto rep = coincidence_density(r1, r2, 1000000);
    double ratio = rep.estimate.final_ratio;
    c.expect(ratio >= kCmPairRatioLo && ratio <= kCmPairRatioHi,
             "coincidence ratio " + fmt(ratio) + " outside [" + fmt(kCmPairRatioLo) + ", " +
                 fmt(kCmPairRatioHi) + "]");
    auto verdict = isogeny_verdict(rep, cm_detect(r1, 1000000), cm_detect(r2, 1000000));
    c.expect(verdict.status == IsogenyStatus::Inconclusive,
             std::string("verdict ") + isogeny_status_name(verdict.status));
}

void criterion7(Criterion& c) {
    const auto& ri = pool.fetch("cm_i", 100000);
    auto v = cm_detect(ri, 100000);
    c.expect(v.status == CmStatus::CM, std::string("cm_i verdict ") + cm_status_name(v.status));
    c.expect(v.dominant_disc && *v.dominant_disc == -4,
             "cm_i dominant disc " + (v.dominant_disc ? std::to_string(*v.dominant_disc) : "none"));
    c.expect(v.ordinary_share >= kOrdinaryShareMin,
             "cm_i ordinary share " + fmt(v.ordinary_share) + " below " + fmt(kOrdinaryShareMin));
    auto d = fixed_field_density(ri, -4, 100000);
    c.expect(d.final_ratio >= kCmFieldDensityLo && d.final_ratio <= kCmFieldDensityHi,
             "cm_i field density " + fmt(d.final_ratio) + " outside [" + fmt(kCmFieldDensityLo) +
                 ", " + fmt(kCmFieldDensityHi) + "]");

    const auto& r37 = pool.fetch("37a1", 100000);
    auto v37 = cm_detect(r37, 100000);
    c.expect(v37.status == CmStatus::NonCM,
             std::string("37a1 verdict ") + cm_status_name(v37.status));
    auto ss = supersingular_density(r37, 100000);
    c.expect(ss.final_ratio <= kSupersingularMax,
             "37a1 supersingular density " + fmt(ss.final_ratio) + " above " +
                 fmt(kSupersingularMax));
}

void criterion8(Criterion& c) {
    for (const std::string label : {"cm_i", "cm_3"}) {
        auto counts = distinct_ordinary_fields(pool.fetch(label, 100000), 100000);
        c.expect(counts.back().second == 1,
                 label + ": " + std::to_string(counts.back().second) + " distinct fields, want 1");
    }
    for (const std::string label : {"37a1", "11a1"}) {
        auto counts = distinct_ordinary_fields(pool.fetch(label, 100000), 100000);
        c.expect(counts.back().second >= kDistinctFieldsMin,
                 label + ": " + std::to_string(counts.back().second) + " distinct fields, want >= " +
                     std::to_string(kDistinctFieldsMin));
    }
}

void criterion9(Criterion& c) {
    for (u64 l : {3ull, 5ull, 7ull}) {
        auto fast = h_prime_ratio(l);
        auto brute = h_prime_ratio_bruteforce(l);
        c.expect(fast.h_size == brute.h_size && fast.h_prime_size == brute.h_prime_size,
                 "l=" + std::to_string(l) + ": stratified count disagrees with pair enumeration");
    }
    for (u64 l : {3ull, 5ull, 7ull, 11ull, 13ull, 101ull, 211ull}) {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = h_prime_ratio(l);
        double secs = elapsed_since(t0);
        bigrat err = rep.ratio - bigrat(1, 2);
        if (err < 0) err = -err;
        c.expect(err <= bigrat(2, l),
                 "l=" + std::to_string(l) + ": |ratio - 1/2| above 2/" + std::to_string(l));
        if (l == 211)
            c.expect(secs < kGroup211Seconds,
                     "l=211 took " + fmt(secs) + "s, limit " + fmt(kGroup211Seconds) + "s");
    }
}

void criterion10(Criterion& c) {
    auto rep = joint_qr_sieve(pool.fetch("11a1", 100000), pool.fetch("37a1", 100000), {5, 7, 11},
                              100000);
    for (const auto& line : rep.per_ell)
        c.expect(std::abs(line.density - 0.5) <= kSieveperEllTol,
                 "l=" + std::to_string(line.ell) + ": per-l density " + fmt(line.density) +
                     " not within " + fmt(kSieveperEllTol) + " of 0.5");
    c.expect(std::abs(rep.joint_density - 0.125) <= kSieveJointTol,
             "joint density " + fmt(rep.joint_density) + " not within " + fmt(kSieveJointTol) +
                 " of 0.125");
}

void criterion11(Criterion& c) {
    fs::path base = fs::temp_directory_path() / ("frobkit-acc-cache-" + std::to_string(::getpid()));
    fs::remove_all(base);
    const std::string common = " --engine-threshold " + std::to_string(kEngineThreshold);
    const std::vector<std::string> commands = {
        "compare 11a1 11a2 --xmax 10000",
        "compare 37a1 [0,0,0,-11664,-314928] --xmax 10000",
        "compare 11a1 37a1 --xmax 1000000",
        "compare cm_i cm_3 --xmax 1000000",
        "cm cm_i --xmax 100000",
        "cm 37a1 --xmax 100000",
        "field-density cm_i --disc -4 --xmax 100000",
        "distinct-fields cm_i --xmax 100000",
        "distinct-fields 37a1 --xmax 100000",
        "lt 37a1 --disc -4 --xmax 100000",
        "sieve 11a1 37a1 --ells 5,7,11 --xmax 100000",
        "scan 11a1 --xmax 10000",
        "group-density --ell 5",
        "group-density --ell 211",
    };
    fs::path dir1 = base / "threads1", dir8 = base / "threads8";
    fs::create_directories(dir1);
    fs::create_directories(dir8);
    for (const auto& cmd : commands) {
        // group-density is pure arithmetic: no scan flags to vary
        bool pure = cmd.rfind("group-density", 0) == 0;
        auto a = run_cli(pure ? cmd : cmd + common + " --threads 1", dir1.string());
        auto b = run_cli(pure ? cmd : cmd + common + " --threads 8", dir8.string());
        c.expect(a.code == 0, cmd + ": threads=1 exit " + std::to_string(a.code));
        c.expect(b.code == 0, cmd + ": threads=8 exit " + std::to_string(b.code));
        c.expect(a.out == b.out, cmd + ": outputs differ between thread counts");
        c.expect(!a.out.empty(), cmd + ": empty output");
    }

    // staged extension must leave the identical cache file as one big run
    fs::path staged = base / "staged", mono = base / "mono";
    fs::create_directories(staged);
    fs::create_directories(mono);
    for (const std::string x : {"1000", "10000", "100000"}) {
        auto r = run_cli("scan 11a1 --xmax " + x + common, staged.string());
        c.expect(r.code == 0, "staged scan to " + x + " exit " + std::to_string(r.code));
    }
    auto r = run_cli("scan 11a1 --xmax 100000" + common, mono.string());
    c.expect(r.code == 0, "monolithic scan exit " + std::to_string(r.code));
    auto file1 = cache_path(staged, pool.curve("11a1"));
    auto file2 = cache_path(mono, pool.curve("11a1"));
    auto bytes1 = slurp(file1), bytes2 = slurp(file2);
    c.expect(!bytes1.empty(), "staged cache file missing");
    c.expect(bytes1 == bytes2, "staged cache bytes differ from monolithic");
    fs::remove_all(base);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-frobkit-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    run_criterion(1, "trace kernels agree with point enumeration and each other", criterion1);
    run_criterion(2, "trace bound, split and ramified laws to 1e5", criterion2);
    run_criterion(3, "isogenous pair: full field coincidence", criterion3);
    run_criterion(4, "quadratic twist: character-twisted traces, full coincidence", criterion4);
    run_criterion(5, "non-isogenous non-CM pair separates by 1e6", criterion5);
    run_criterion(6, "two CM curves: density ~1/4 but inconclusive verdict", criterion6);
    run_criterion(7, "CM detection and field densities", criterion7);
    run_criterion(8, "distinct ordinary fields: 1 under CM, growth otherwise", criterion8);
    run_criterion(9, "group pair density: exact, near 1/2, fast at l=211", criterion9);
    run_criterion(10, "residue sieve densities near 1/2 per modulus, 1/8 jointly", criterion10);
    run_criterion(11, "byte determinism across threads; staged = monolithic cache", criterion11);

    if (g_failed) {
        std::cout << g_failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 11 criteria passed\n";
    return 0;
}
