#include "frobkit/groupgl2.hpp"

#include <map>

#include "frobkit/errors.hpp"

namespace frobkit {

namespace {

void require_odd_prime(u64 ell) {
    if (ell == 2 || !is_prime_u64(ell))
        throw DomainError("modulus must be an odd prime, got " + std::to_string(ell));
}

} // namespace

std::vector<CharpolyStratum> charpoly_strata(u64 ell) {
    require_odd_prime(ell);
    i64 l = static_cast<i64>(ell);
    std::vector<CharpolyStratum> out;
    out.reserve(ell * (ell - 1));
    for (i64 d = 1; d < l; ++d) {
        for (i64 a = 0; a < l; ++a) {
            CharpolyStratum s;
            s.a = a;
            s.d = d;
            i64 disc = ((a * a - 4 * d) % l + l) % l;
            switch (kronecker(disc, l)) {
                case 1: s.split = ell * ell + ell; break;
                case -1: s.nonsplit = ell * ell - ell; break;
                default: s.repeated = ell * ell; break;
            }
            out.push_back(s);
        }
    }
    return out;
}

GroupDensityReport h_prime_ratio(u64 ell) {
    auto strata = charpoly_strata(ell);
    GroupDensityReport rep;
    rep.ell = ell;
    // accumulate per-determinant totals; strata arrive grouped by d
    bigint h = 0, hp = 0;
    size_t i = 0;
    while (i < strata.size()) {
        i64 d = strata[i].d;
        u64 s = 0, n = 0, t = 0;
        for (; i < strata.size() && strata[i].d == d; ++i) {
            s += strata[i].split;
            n += strata[i].nonsplit;
            t += strata[i].split + strata[i].nonsplit + strata[i].repeated;
        }
        h += bigint(t) * t;
        hp += bigint(s) * s + bigint(n) * n;
    }
    rep.h_size = h;
    rep.h_prime_size = hp;
    rep.ratio = bigrat(hp, h);
    return rep;
}

GroupDensityReport h_prime_ratio_bruteforce(u64 ell) {
    require_odd_prime(ell);
    i64 l = static_cast<i64>(ell);
    // class of each invertible matrix, grouped by determinant:
    // +1 split, -1 nonsplit, 0 repeated root
    std::map<i64, std::vector<int>> by_det;
    for (i64 a = 0; a < l; ++a)
        for (i64 b = 0; b < l; ++b)
            for (i64 c = 0; c < l; ++c)
                for (i64 d = 0; d < l; ++d) {
                    i64 det = ((a * d - b * c) % l + l) % l;
                    if (det == 0) continue;
                    i64 tr = (a + d) % l;
                    i64 disc = ((tr * tr - 4 * det) % l + l) % l;
                    by_det[det].push_back(kronecker(disc, l));
                }
    GroupDensityReport rep;
    rep.ell = ell;
    bigint h = 0, hp = 0;
    for (const auto& [det, classes] : by_det) {
        u64 pairs = 0, matched = 0;
        for (int c1 : classes)
            for (int c2 : classes) {
                ++pairs;
                matched += c1 != 0 && c1 == c2;
            }
        h += pairs;
        hp += matched;
    }
    rep.h_size = h;
    rep.h_prime_size = hp;
    rep.ratio = bigrat(hp, h);
    return rep;
}

} // namespace frobkit
