#include <doctest.h>

#include <numeric>
#include <set>

#include "weilmono/sheafmodel.hpp"
#include "weilmono/weil.hpp"

using namespace wm;

namespace {

std::set<QmodZ> brute_char_set(u64 N, const QmodZ& chi) {
    // y = k / (N den) with N y = chi
    std::set<QmodZ> out;
    const i64 L = static_cast<i64>(N) * chi.den;
    for (i64 k = 0; k < L; ++k) {
        const QmodZ y(k, L);
        if (y * static_cast<i64>(N) == chi) out.insert(y);
    }
    return out;
}

}  // namespace

TEST_CASE("char_set examples and oracle") {
    CHECK(char_set(3, QmodZ()).strs() == std::vector<std::string>{"0/1", "1/3", "2/3"});
    CHECK(char_set(1, QmodZ(2, 5)).strs() == std::vector<std::string>{"2/5"});
    CHECK(char_set(7, QmodZ(1, 2)).strs() ==
          std::vector<std::string>{"1/2", "1/14", "3/14", "5/14", "9/14", "11/14", "13/14"});
    for (u64 N = 1; N <= 12; ++N)
        for (i64 den : {1, 2, 3, 4, 6})
            for (i64 num = 0; num < den; ++num) CHECK(char_set(N, QmodZ(num, den)).exps == brute_char_set(N, QmodZ(num, den)));
    CHECK_THROWS(char_set(4, QmodZ(), 2));
}

TEST_CASE("family shape examples") {
    HypFamilyParams P{2, 3, 1, 1, 2, 0, QmodZ(), Kind::H0};
    const SheafShape s = family_shape(P);
    CHECK(s.upstairs.size() == 6);
    CHECK_FALSE(s.upstairs.contains(QmodZ()));
    CHECK(s.downstairs.size() == 3);
    CHECK(s.downstairs.contains(QmodZ()));
    CHECK(s.D == 6);
    CHECK(s.W == 3);
    const GeomDet gd = geom_det(s);
    CHECK(gd.tame.is_zero());
    CHECK_FALSE(gd.wild);

    HypFamilyParams P2{3, 3, 1, 1, 3, 1, QmodZ(), Kind::Hj};
    const SheafShape s2 = family_shape(P2);
    CHECK(s2.D == 13);
    CHECK(s2.downstairs.size() == 5);
    CHECK(s2.W == 8);
}

TEST_CASE("H_1 determinant depends on the parity of A") {
    // A = 13 odd for (3,3); A = 40 even for (3,4)
    HypFamilyParams odd{3, 3, 1, 1, 3, 1, QmodZ(), Kind::Hj};
    CHECK(geom_det(family_shape(odd)).tame == QmodZ(1 + 3, 2));
    const auto [b, c] = canonical_bc(3, 4, 1);
    HypFamilyParams even{3, 4, 1, b, c, 1, QmodZ(), Kind::Hj};
    REQUIRE_FALSE(even.invalid_reason());
    CHECK(geom_det(family_shape(even)).tame == QmodZ(b + c, 2) + QmodZ(1, 2));
}

TEST_CASE("validation") {
    HypFamilyParams bad{2, 3, 1, 1, 1, 0, QmodZ(), Kind::H0};  // bC - cB = 2
    REQUIRE(bad.invalid_reason());
    CHECK(bad.invalid_reason()->find("bC - cB") != std::string::npos);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    HypFamilyParams badj{2, 3, 1, 1, 2, 1, QmodZ(), Kind::Hj};
    CHECK(badj.invalid_reason());
    CHECK(parse_kind("H0") == Kind::H0);
    CHECK_THROWS(parse_kind("H2"));
}

TEST_CASE("grid families: canonical pair, disjoint sets, sizes") {
    for (u64 q : {2, 3, 4, 5})
        for (u32 n : {3u, 4u, 5u})
            for (u32 m = 1; m < n; ++m) {
                if (std::gcd(m, n) != 1) continue;
                const auto [b, c] = canonical_bc(q, n, m);
                const i64 B = static_cast<i64>(gauss_count(q, m)), C = static_cast<i64>(gauss_count(q, n - m));
                CHECK(b * C - c * B == 1);
                for (i64 j = 0; j + 1 < static_cast<i64>(q); ++j) {
                    HypFamilyParams P{q, n, m, b, c, j, QmodZ(), j == 0 ? Kind::H0 : Kind::Hj};
                    CAPTURE(q);
                    CAPTURE(n);
                    CAPTURE(m);
                    CAPTURE(j);
                    REQUIRE_FALSE(P.invalid_reason());
                    const SheafShape s = family_shape(P);
                    for (const auto& x : s.upstairs.exps) CHECK_FALSE(s.downstairs.contains(x));
                    CHECK(s.D == s.upstairs.size());
                    CHECK(s.W == s.D - s.downstairs.size());
                    // wild dimension count
                    const u64 wild = (ipow(q, m) - 1) * (ipow(q, n - m) - 1) / (q - 1);
                    CHECK(s.W == wild);
                }
            }
}

TEST_CASE("normalization") {
    const NormalizeResult same = normalize_params(3, 3, 1, 1, 3, 1);
    CHECK(same.sets_equal);
    CHECK(same.output.b == 1);
    CHECK(same.output.c == 3);

    const NormalizeResult r = normalize_params(3, 3, 1, 1, 1, 1);
    CHECK(r.sets_equal);
    const auto& o = r.output;
    CHECK(o.b * static_cast<i64>(o.C()) - o.c * static_cast<i64>(o.B()) == 1);
    CHECK_FALSE(o.invalid_reason());

    // every block-condition input for (4,3,1) lands on c' divisible by 3
    for (i64 b0 = 1; b0 < 3; ++b0)
        for (i64 c0 = 0; c0 < 63; ++c0) {
            if (!block_conditions(4, 3, 1, b0, c0)) continue;
            const NormalizeResult n = normalize_params(4, 3, 1, b0, c0, 1);
            CHECK(n.sets_equal);
            CHECK(n.output.c % 3 == 0);
        }
}
