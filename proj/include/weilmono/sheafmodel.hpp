#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weilmono/arith.hpp"

namespace wm {

struct CharSet {
    u64 level = 1;
    std::set<QmodZ> exps;  // ordered by (den, num)

    std::size_t size() const { return exps.size(); }
    bool contains(const QmodZ& x) const { return exps.count(x) != 0; }
    CharSet shifted(const QmodZ& phi) const;
    std::vector<std::string> strs() const;
    bool operator==(const CharSet& o) const { return exps == o.exps; }
};

// Solutions y of N y = chi in Q/Z. A nonzero p rejects N divisible by p.
CharSet char_set(u64 N, const QmodZ& chi, u64 p = 0);

enum class Kind { Hj, H0 };
std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct HypFamilyParams {
    u64 q = 0;
    u32 n = 0, m = 0;
    i64 b = 0, c = 0, j = 0;
    QmodZ phi;
    Kind kind = Kind::Hj;

    u64 A() const { return gauss_count(q, n); }
    u64 B() const { return gauss_count(q, m); }
    u64 C() const { return gauss_count(q, n - m); }
    // first violated condition, if any
    std::optional<std::string> invalid_reason() const;
    void validate() const;  // throws std::invalid_argument
};

struct SheafShape {
    CharSet upstairs, downstairs;
    u64 D = 0;
    u64 W = 0;
};

SheafShape family_shape(const HypFamilyParams& params);

struct GeomDet {
    QmodZ tame;
    bool wild = false;  // the Artin-Schreier factor is present when W = 1
};
GeomDet geom_det(const SheafShape& shape);

struct NormalizeResult {
    HypFamilyParams input;
    HypFamilyParams output;
    u64 d = 0;
    i64 e = 0, x = 0, y = 0, z = 0, w = 0;
    i64 b_raw = 0, c_raw = 0;  // b', c' before reduction modulo (q-1)(B, C)
    bool sets_equal = false;
};

// Input is the tuple (q, n, m, b0, c0, j0) with twist phi; output satisfies bC - cB = 1.
NormalizeResult normalize_params(u64 q, u32 n, u32 m, i64 b0, i64 c0, i64 j0, const QmodZ& phi = QmodZ());

// Smallest b >= 1 with c = (bC - 1)/B a nonnegative integer and gcd(A, (q-1)/gcd(c, q-1)) = 1.
std::pair<i64, i64> canonical_bc(u64 q, u32 n, u32 m);

}  // namespace wm
