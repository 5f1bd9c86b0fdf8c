#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "weilmono/arith.hpp"

namespace wm {

using Rational = boost::rational<i64>;

// V(x) for x with denominator prime to p: sum_{i<f} {p^i x} / f, f = ord_p(den x).
Rational kubert_v(const QmodZ& x, u32 p);

// Numerators of V(u/M) over the common denominator f*M, f = ord_p(M), for all u mod M.
class VTable {
public:
    VTable(u64 M, u32 p);
    u64 modulus() const { return M_; }
    u64 denom() const { return f_ * M_; }
    u64 f() const { return f_; }
    i64 num(u64 u) const { return vals_[u % M_]; }

private:
    u64 M_, f_;
    std::vector<i64> vals_;
};

enum class Variant { W1, W1Reduced, Wbig, TauTrivial };
std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

struct VTestInstance {
    Variant variant = Variant::W1;
    u64 q = 0;
    u32 p = 0;
    u32 n = 0, m = 0;
    u64 A = 0, B = 0, C = 0, T = 0;  // T = (q^(n-1)-1)/(q-1)
    QmodZ t;
    i64 s = 0;
    u64 M = 0;
};

// Validates the ranges and fills the derived constants; M = 0 picks the minimal level.
VTestInstance make_vtest(Variant v, u64 q, u32 n, u32 m, const QmodZ& t, i64 s, u64 M = 0);
u64 default_modulus(Variant v, u64 q, u32 n, u32 m);

struct VWitness {
    i64 N = 0;
    QmodZ x;
    Rational lhs, rhs;
    std::string source;  // "targeted" or "scan"
};

struct VTestReport {
    VTestInstance inst;
    bool holds = true;
    std::optional<VWitness> witness;
    u64 pairs_checked = 0;
    u64 orbits_skipped = 0;
    bool internal_asserted = false;
    u64 internal_checked = 0;
    u64 internal_failed = 0;
    std::string verdict() const { return holds ? "HOLDS" : "FAILS"; }
};

// Both sides of the inequality at (N, x), computed from kubert_v directly.
std::pair<Rational, Rational> vtest_sides(const VTestInstance& inst, i64 N, const QmodZ& x);

VTestReport run_vtest(const VTestInstance& inst, bool assert_internal = false);

VTestReport vtest_W1(u64 q, u32 n, const QmodZ& t, i64 s, u64 M = 0, bool reduced = false);
VTestReport vtest_Wbig(u64 q, u32 n, u32 m, const QmodZ& t, u64 M = 0);
VTestReport vtest_tau_trivial(u64 q, u32 n, u32 m, u64 M = 0);

}  // namespace wm
