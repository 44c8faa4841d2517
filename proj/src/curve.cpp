#include "frobkit/curve.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace frobkit {

namespace {

struct BInvariants {
    bigint b2, b4, b6, b8;
};

BInvariants b_invariants(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
    bigint A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
    BInvariants b;
    b.b2 = A1 * A1 + 4 * A2;
    b.b4 = 2 * A4 + A1 * A3;
    b.b6 = A3 * A3 + 4 * A6;
    b.b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    return b;
}

// Prime divisors of |n|, exactly.  Trial division by small primes brings the
// (possibly huge) discriminant down; the remaining cofactor must fit 64 bits
// for the shared factor engine, otherwise we refuse with a typed error rather
// than guess at the bad-prime set.
std::vector<u64> prime_divisors(const bigint& n_in) {
    bigint n = n_in < 0 ? -n_in : n_in;
    std::vector<u64> out;
    for (u64 q : primes_up_to(20000)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
        if (n == 1) break;
    }
    if (n > 1) {
        if (n > std::numeric_limits<u64>::max())
            throw FactorizationError("bad primes: cofactor too large to factor: " + n.str());
        for (auto [q, e] : factor_u64(static_cast<u64>(n))) {
            (void)e;
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

bigint discriminant(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
    auto b = b_invariants(a1, a2, a3, a4, a6);
    return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 + 9 * b.b2 * b.b4 * b.b6;
}

WeierstrassCurve::WeierstrassCurve(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6, std::string label)
    : a_{a1, a2, a3, a4, a6}, label_(std::move(label)) {
    auto b = b_invariants(a1, a2, a3, a4, a6);
    disc_ = -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 + 9 * b.b2 * b.b4 * b.b6;
    if (disc_ == 0) throw DomainError("singular model: " + model_string());
    c4_ = b.b2 * b.b2 - 24 * b.b4;
    c6_ = -b.b2 * b.b2 * b.b2 + 36 * b.b2 * b.b4 - 216 * b.b6;
    bad_ = prime_divisors(disc_);
}

bool WeierstrassCurve::good_at(u64 p) const {
    return !std::binary_search(bad_.begin(), bad_.end(), p);
}

std::string WeierstrassCurve::model_string() const {
    std::ostringstream os;
    os << '[' << a_[0] << ',' << a_[1] << ',' << a_[2] << ',' << a_[3] << ',' << a_[4] << ']';
    return os.str();
}

WeierstrassCurve parse_model(const std::string& text, std::string label) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '[')
        throw ParseError("model must look like [a1,a2,a3,a4,a6]: " + text);
    ++i;
    std::array<i64, 5> a{};
    for (int k = 0; k < 5; ++k) {
        skip_ws();
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        i64 value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, value);
        if (ec != std::errc() || ptr != text.data() + i || i == start)
            throw ParseError("bad integer in model: " + text);
        a[static_cast<size_t>(k)] = value;
        skip_ws();
        char expect = (k == 4) ? ']' : ',';
        if (i >= text.size() || text[i] != expect)
            throw ParseError("model must have exactly five integers: " + text);
        ++i;
    }
    skip_ws();
    if (i != text.size())
        throw ParseError("trailing characters after model: " + text);
    return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4], std::move(label));
}

namespace {

u64 to_residue(const bigint& v, u64 p) {
    bigint r = v % p;
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

u64 to_residue(i64 v, u64 p) {
    i64 r = v % static_cast<i64>(p);
    if (r < 0) r += static_cast<i64>(p);
    return static_cast<u64>(r);
}

} // namespace

std::optional<ReducedCurve> reduce_mod_p(const WeierstrassCurve& E, u64 p) {
    if (!E.good_at(p)) return std::nullopt;
    ReducedCurve R;
    R.p = p;
    if (p < 5) {
        R.raw = true;
        for (int k = 0; k < 5; ++k) R.a[static_cast<size_t>(k)] = to_residue(E.coeffs()[static_cast<size_t>(k)], p);
        return R;
    }
    R.raw = false;
    if (E.a1() == 0 && E.a2() == 0 && E.a3() == 0) {
        // Already y^2 = x^3 + Ax + B.
        R.A = to_residue(E.a4(), p);
        R.B = to_residue(E.a6(), p);
    } else {
        // Complete the square and depress the cubic; after clearing
        // denominators this is the model y^2 = x^3 - 27 c4 x - 54 c6.
        R.A = to_residue(-27 * E.c4(), p);
        R.B = to_residue(-54 * E.c6(), p);
    }
    return R;
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, i64 d) {
    if (d == 0) throw DomainError("twist: d must be nonzero");
    if (squarefree_part(d) != d) throw DomainError("twist: d must be squarefree");
    bigint a, b;
    if (E.a1() == 0 && E.a2() == 0 && E.a3() == 0) {
        a = E.a4();
        b = E.a6();
    } else {
        a = -27 * E.c4();
        b = -54 * E.c6();
    }
    bigint D = d;
    bigint ta = a * D * D;
    bigint tb = b * D * D * D;
    const bigint lo = std::numeric_limits<i64>::min();
    const bigint hi = std::numeric_limits<i64>::max();
    if (ta < lo || ta > hi || tb < lo || tb > hi)
        throw OverflowError("twist coefficients exceed the 64-bit range");
    return WeierstrassCurve(0, 0, 0, static_cast<i64>(ta), static_cast<i64>(tb));
}

u64 point_count_enum(const ReducedCurve& R) {
    u64 p = R.p;
    if (R.raw) {
        // Count solutions of the full Weierstrass equation directly.
        u64 n = 1; // infinity
        auto a = R.a;
        for (u64 x = 0; x < p; ++x) {
            u64 x2 = mulmod(x, x, p);
            u64 x3 = mulmod(x2, x, p);
            u64 rhs = addmod(addmod(x3, mulmod(a[1], x2, p), p), addmod(mulmod(a[3], x, p), a[4], p), p);
            for (u64 y = 0; y < p; ++y) {
                u64 lhs = addmod(addmod(mulmod(y, y, p), mulmod(mulmod(a[0], x, p), y, p), p), mulmod(a[2], y, p), p);
                if (lhs == rhs) ++n;
            }
        }
        return n;
    }
    // Tally y^2 values once, then add the number of square roots of each RHS.
    std::vector<unsigned> roots(p, 0);
    for (u64 y = 0; y < p; ++y) ++roots[mulmod(y, y, p)];
    u64 n = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 x3 = mulmod(mulmod(x, x, p), x, p);
        u64 rhs = addmod(addmod(x3, mulmod(R.A, x, p), p), R.B, p);
        n += roots[rhs];
    }
    return n;
}

} // namespace frobkit
