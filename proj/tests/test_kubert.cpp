#include <doctest.h>

#include <cmath>
#include <numeric>
#include <tuple>

#include "weilmono/kubert.hpp"

using namespace wm;

namespace {

// V(u/d) from the base-p digits of k = u (p^f - 1)/d, for p^f - 1 that fits in 64 bits.
Rational digit_oracle(u64 u, u64 d, u32 p) {
    const u64 f = mult_order(p, d);
    const u64 pf1 = ipow(p, static_cast<unsigned>(f)) - 1;
    u64 k = static_cast<u64>((static_cast<unsigned __int128>(u) * pf1) / d);
    i64 s = 0;
    for (; k; k /= p) s += static_cast<i64>(k % p);
    return Rational(s, static_cast<i64>(f * (p - 1)));
}

}  // namespace

TEST_CASE("V examples") {
    CHECK(kubert_v(QmodZ(), 2) == Rational(0));
    CHECK(kubert_v(QmodZ(1, 15), 2) == Rational(1, 4));
    CHECK(kubert_v(QmodZ(1, 7), 2) == Rational(1, 3));
    CHECK(kubert_v(QmodZ(6, 7), 2) == Rational(2, 3));
    CHECK_THROWS_AS(kubert_v(QmodZ(1, 6), 2), std::invalid_argument);
}

TEST_CASE("V agrees with the digit-sum definition") {
    for (u32 p : {2u, 3u, 5u, 7u})
        for (u64 d = 2; d <= 150; ++d) {
            if (d % p == 0) continue;
            const u64 f = mult_order(p, d);
            if (static_cast<double>(f) * std::log2(static_cast<double>(p)) > 62) continue;
            const VTable T(d, p);
            for (u64 u = 0; u < d; ++u) {
                const Rational want = digit_oracle(u, d, p);
                REQUIRE(kubert_v(QmodZ(static_cast<i64>(u), static_cast<i64>(d)), p) == want);
                REQUIRE(Rational(T.num(u), static_cast<i64>(T.denom())) == want);
            }
        }
}

TEST_CASE("V symmetry and Frobenius invariance") {
    for (u32 p : {2u, 3u})
        for (u64 d = 2; d < 400; ++d) {
            if (d % p == 0) continue;
            for (u64 u = 1; u < d; ++u) {
                const QmodZ x(static_cast<i64>(u), static_cast<i64>(d));
                const Rational v = kubert_v(x, p);
                REQUIRE(v + kubert_v(-x, p) == Rational(1));
                REQUIRE(kubert_v(x * p, p) == v);
                REQUIRE(v > Rational(0));
            }
        }
}

TEST_CASE("V-test instances validate their ranges") {
    CHECK_THROWS_AS(make_vtest(Variant::W1, 2, 4, 0, QmodZ(), 5), std::invalid_argument);       // t in Z
    CHECK_THROWS_AS(make_vtest(Variant::W1, 2, 4, 0, QmodZ(1, 3), 5), std::invalid_argument);   // 3 does not divide 7
    CHECK_THROWS_AS(make_vtest(Variant::W1, 2, 4, 0, QmodZ(1, 7), 15), std::invalid_argument);  // s out of range
    CHECK_THROWS_AS(make_vtest(Variant::TauTrivial, 2, 3, 1, QmodZ(), 0, 14), std::invalid_argument);
    const VTestInstance in = make_vtest(Variant::W1, 2, 4, 0, QmodZ(1, 7), 5);
    CHECK(in.A == 15);
    CHECK(in.T == 7);
    CHECK(in.M == 105);
    CHECK(parse_variant("tau-trivial") == Variant::TauTrivial);
    CHECK(variant_name(Variant::W1Reduced) == "W1-reduced");
}

TEST_CASE("W1 refutations for (2,4)") {
    for (i64 tn = 1; tn < 7; ++tn) {
        const VTestReport r5 = vtest_W1(2, 4, QmodZ(tn, 7), 5, 105);
        CHECK_FALSE(r5.holds);
        REQUIRE(r5.witness);
        CHECK(r5.witness->N == 1);
        CHECK(r5.witness->x == QmodZ(1, 15));
        const VTestReport r10 = vtest_W1(2, 4, QmodZ(tn, 7), 10);
        REQUIRE(r10.witness);
        CHECK(r10.witness->N == 1);
        CHECK(r10.witness->x == QmodZ(2, 15));
        // the witness really violates the inequality when recomputed from V directly
        const auto [lhs, rhs] = vtest_sides(r5.inst, r5.witness->N, r5.witness->x);
        CHECK(lhs == r5.witness->lhs);
        CHECK(rhs == r5.witness->rhs);
    }
}

TEST_CASE("W1 fails for every (t, s) at (2,3)") {
    for (i64 tn = 1; tn < 3; ++tn)
        for (i64 s = 1; s < 7; ++s) CHECK_FALSE(vtest_W1(2, 3, QmodZ(tn, 3), s).holds);
}

TEST_CASE("internal identities hold during W1 runs") {
    const VTestReport r = run_vtest(make_vtest(Variant::W1, 2, 4, 0, QmodZ(1, 7), 5), true);
    CHECK(r.internal_asserted);
    CHECK(r.internal_checked > 0);
    CHECK(r.internal_failed == 0);
}

TEST_CASE("Wbig") {
    for (auto [q, n, m] : std::vector<std::tuple<u64, u32, u32>>{{2, 3, 1}, {2, 4, 1}, {3, 3, 1}, {2, 5, 2}})
        CHECK(vtest_Wbig(q, n, m, QmodZ()).holds);
    for (i64 tn : {1, 2, 4, 7}) {
        const VTestReport r = vtest_Wbig(2, 5, 2, QmodZ(tn, 15));
        CHECK_FALSE(r.holds);
        REQUIRE(r.witness);
        CHECK(r.witness->x == QmodZ(1, 7));
        CHECK(r.witness->source == "targeted");
    }
    CHECK_FALSE(vtest_Wbig(3, 4, 2, QmodZ(1, 13)).holds);
}

TEST_CASE("tau-trivial certificates") {
    const VTestReport r = vtest_tau_trivial(2, 3, 1, 7);
    CHECK(r.holds);
    CHECK(r.pairs_checked > 0);
    CHECK(vtest_tau_trivial(3, 3, 1, 26).holds);
    for (u64 q : {2, 3, 4})
        for (u32 n : {3u, 4u})
            for (u32 m = 1; m < n; ++m)
                if (std::gcd(m, n) == 1) CHECK(vtest_tau_trivial(q, n, m).holds);
}
