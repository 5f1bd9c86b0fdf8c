#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weilmono/field.hpp"

namespace wm {

// F(T, U) = T^(q^n - 1) - x U^r T^(q^m - 1) + y U^s with x, y in F_q given by log index.
struct TrinomialParams {
    u64 q = 0;
    u32 n = 0, m = 0;
    i64 x_idx = 0, y_idx = 0;
    i64 r = 0, s = 0;

    std::optional<std::string> invalid_reason() const;
    void validate() const;
    // r(q^n - 1) - s(q^n - q^m)
    i64 chain_exponent() const;
};

// Number of T in K with F(T, u) = 0, from the kernel of T^(q^n) - x u^r T^(q^m) + y u^s T.
u64 count_roots(Elem u, FieldPtr K, const TrinomialParams& params);
// Same count by evaluating F(T, u) at every T.
u64 count_roots_direct(Elem u, FieldPtr K, const TrinomialParams& params);

struct ChainData {
    i64 M = 0;  // r(q^n - 1) - s(q^n - q^m)
    i64 N = 0;  // M / (q - 1)
    std::string K0;
    u32 K0_degree = 0;  // over F_q
    u32 yprime_idx = 0, z_idx = 0;  // log indices in K0
};

// Smallest K0 over F_q holding y' with y'^(q^n-1) = y and z with z^M = x^-1 y'^(q^n - q^m).
ChainData chain_transform(const TrinomialParams& params);

struct ChainFieldReport {
    std::string field;
    bool skipped = false;  // field does not contain K0
    u64 points = 0;
    u64 pullback_fail = 0;   // count_roots(u^(q^n-1)) vs the normalized count
    u64 translate_fail = 0;  // normalized count at z u vs the count with coefficient u^M
    u64 kummer_fail = 0;     // count with u^M vs C at u^N
    u64 frobenius_fail = 0;  // C at u^(q^m) vs the rewritten display
    u64 family_fail = 0;     // rewritten display vs 1 + trace_W(u^(q^n-1))
    u64 direct_fail = 0;     // count_roots vs direct evaluation (small fields)
    bool pass() const {
        return skipped || (pullback_fail == 0 && translate_fail == 0 && kummer_fail == 0 && frobenius_fail == 0 &&
                           family_fail == 0 && direct_fail == 0);
    }
};

struct ChainReport {
    TrinomialParams params;
    ChainData chain;
    i64 b = 0, c = 0;  // family pair used for the W comparison
    std::vector<ChainFieldReport> fields;
    bool pass() const;  // false when every field was skipped
};

ChainReport trace_chain_check(const TrinomialParams& params, const std::vector<FieldPtr>& fields,
                              u64 direct_limit = 1u << 10);

// Multiset of cycle lengths, ascending.
using CycleShape = std::vector<u64>;
std::string shape_str(const CycleShape& s);

// Cycle types of GL_n(F_q) on F_q^n minus 0, over class representatives.
std::set<CycleShape> gl_cycle_shapes(u64 q, u32 n);

// Degrees of the irreducible factors of a monic polynomial over K (distinct-degree factorization).
CycleShape factor_degrees(const FieldTable& K, const std::vector<Elem>& monic_coeffs);

struct GaloisEvidence {
    TrinomialParams params;
    std::vector<std::string> fields;
    u64 points = 0;
    std::map<CycleShape, u64> shapes;  // observed shape -> count
    std::vector<CycleShape> unrealizable;
    u64 root_count_fail = 0;   // count_roots + 1 not a power of q at most q^n
    u64 shape_count_fail = 0;  // number of linear factors disagrees with count_roots
    u64 order_lcm = 1;         // lcm of observed element orders
    u64 gl_exponent = 1;       // lcm of element orders in GL_n(F_q)
    u64 gl_shape_count = 0;
    bool pass() const { return unrealizable.empty() && root_count_fail == 0 && shape_count_fail == 0; }
    std::string verdict() const;
};

GaloisEvidence galois_evidence(const TrinomialParams& params, const std::vector<FieldPtr>& fields);

}  // namespace wm
