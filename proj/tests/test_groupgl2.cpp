#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "frobkit/groupgl2.hpp"
#include "frobkit/errors.hpp"

#include <map>

using namespace frobkit;

namespace {

// Independent enumeration: class (+1 split, -1 nonsplit, 0 repeated) and
// count of invertible matrices per (trace, det).
std::map<std::pair<i64, i64>, std::pair<int, u64>> enumerate_by_charpoly(u64 ell) {
    i64 l = static_cast<i64>(ell);
    std::map<std::pair<i64, i64>, std::pair<int, u64>> table;
    for (i64 a = 0; a < l; ++a)
        for (i64 b = 0; b < l; ++b)
            for (i64 c = 0; c < l; ++c)
                for (i64 d = 0; d < l; ++d) {
                    i64 det = ((a * d - b * c) % l + l) % l;
                    if (det == 0) continue;
                    i64 tr = (a + d) % l;
                    i64 disc = ((tr * tr - 4 * det) % l + l) % l;
                    auto& cell = table[{tr, det}];
                    cell.first = kronecker(disc, l);
                    cell.second += 1;
                }
    return table;
}

u64 gl2_order(u64 l) { return (l * l - 1) * (l * l - l); }

} // namespace

TEST_CASE("charpoly_strata: rejects non-odd-prime moduli") {
    CHECK_THROWS_AS(charpoly_strata(2), DomainError);
    CHECK_THROWS_AS(charpoly_strata(1), DomainError);
    CHECK_THROWS_AS(charpoly_strata(9), DomainError);
    CHECK_THROWS_AS(charpoly_strata(15), DomainError);
    CHECK_THROWS_AS(h_prime_ratio(21), DomainError);
    CHECK_THROWS_AS(h_prime_ratio_bruteforce(4), DomainError);
}

TEST_CASE("charpoly_strata: totals recover the group order") {
    for (u64 l : {3ull, 5ull, 7ull, 11ull, 13ull, 31ull}) {
        auto strata = charpoly_strata(l);
        CHECK(strata.size() == l * (l - 1));
        u64 total = 0;
        for (const auto& s : strata) total += s.split + s.nonsplit + s.repeated;
        CHECK(total == gl2_order(l));
    }
}

TEST_CASE("charpoly_strata: per-stratum counts equal full matrix enumeration") {
    for (u64 l : {3ull, 5ull, 7ull}) {
        auto table = enumerate_by_charpoly(l);
        auto strata = charpoly_strata(l);
        CHECK(strata.size() == table.size()); // every (a, d!=0) charpoly is attained
        for (const auto& s : strata) {
            auto it = table.find({s.a, s.d});
            REQUIRE(it != table.end());
            auto [cls, count] = it->second;
            // exactly one stratum field is populated, matching the class
            if (cls == 1) {
                CHECK(s.split == count);
                CHECK(s.nonsplit == 0);
                CHECK(s.repeated == 0);
            } else if (cls == -1) {
                CHECK(s.nonsplit == count);
                CHECK(s.split == 0);
                CHECK(s.repeated == 0);
            } else {
                CHECK(s.repeated == count);
                CHECK(s.split == 0);
                CHECK(s.nonsplit == 0);
            }
        }
    }
}

TEST_CASE("charpoly_strata: per-determinant totals are uniform") {
    for (u64 l : {3ull, 5ull, 13ull, 101ull}) {
        auto strata = charpoly_strata(l);
        std::map<i64, u64> t;
        for (const auto& s : strata) t[s.d] += s.split + s.nonsplit + s.repeated;
        REQUIRE(t.size() == l - 1);
        for (const auto& [d, n] : t) CHECK(n == gl2_order(l) / (l - 1));
    }
}

TEST_CASE("h_prime_ratio: frozen small-prime values") {
    auto r3 = h_prime_ratio(3);
    CHECK(r3.h_size == 1152);
    CHECK(r3.h_prime_size == 324);
    CHECK(r3.ratio == bigrat(9, 32));

    auto r5 = h_prime_ratio(5);
    CHECK(r5.h_size == 57600);
    CHECK(r5.h_prime_size == 19400);
    CHECK(r5.ratio == bigrat(97, 288));

    auto r7 = h_prime_ratio(7);
    CHECK(r7.h_size == 677376);
    CHECK(r7.h_prime_size == 254604);
    CHECK(r7.ratio == bigrat(433, 1152));
}

TEST_CASE("h_prime_ratio: equals direct pair enumeration for small primes") {
    for (u64 l : {3ull, 5ull, 7ull}) {
        auto fast = h_prime_ratio(l);
        auto brute = h_prime_ratio_bruteforce(l);
        CHECK(fast.h_size == brute.h_size);
        CHECK(fast.h_prime_size == brute.h_prime_size);
        CHECK(fast.ratio == brute.ratio);
    }
}

TEST_CASE("h_prime_ratio: structural invariants across many primes") {
    for (u64 l : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 101ull, 211ull}) {
        auto rep = h_prime_ratio(l);
        CHECK(rep.ell == l);
        CHECK(rep.h_size == bigint(gl2_order(l)) * gl2_order(l) / (l - 1));
        CHECK(rep.h_prime_size > 0);
        CHECK(rep.h_prime_size < rep.h_size);
        CHECK(rep.ratio > 0);
        CHECK(rep.ratio < 1);
        // the density approaches one half like 1/l
        bigrat err = rep.ratio - bigrat(1, 2);
        if (err < 0) err = -err;
        CHECK(err <= bigrat(2, l));
    }
}
