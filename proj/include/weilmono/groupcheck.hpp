#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weilmono/cycint.hpp"
#include "weilmono/field.hpp"
#include "weilmono/sheafmodel.hpp"
#include "weilmono/weil.hpp"

namespace wm {

i64 det_order_d(u64 q, i64 b, i64 c);                    // (q-1)/gcd(q-1, b+c)
u64 predicted_group_order(u32 n, u64 q, u64 d);          // |GL_n(F_q)| d/(q-1)
std::vector<i64> find_twist_e(u32 n, u64 q, u64 d);      // e in [0, q-2] with additive order of ne+1 equal to d

struct MonodromyPrediction {
    u64 d = 0;
    u64 group_order = 0;
    std::vector<i64> e_candidates;
    u64 kernel_order = 0;  // (q-1)/d
};
MonodromyPrediction predict_monodromy(const HypFamilyParams& params);

// Entries j = 0..q-2, all at level q-1. Entry 0 is the trace on W_0'.
using TraceTuple = std::vector<CycInt>;
std::vector<i64> tuple_key(const TraceTuple& t, u64 level);
std::string tuple_str(const TraceTuple& t);

// Trace tuple of g on W_0' and on W_j (x) X^(ej).
TraceTuple class_tuple(const GLElement& g, i64 e);

// Distinct trace tuples over the elements of GL_n(F_q) whose determinant lies in <alpha^f>,
// keyed by tuple_key at level q-1.
std::map<std::vector<i64>, TraceTuple> char_value_tuples(u32 n, u64 q, i64 e, u64 f = 1);

// Values of the W_0' trace over GL_n(F_q).
std::set<i64> w0_value_set(u32 n, u64 q);

enum class CenterStatus { Skipped, Pass, Fail };
std::string center_status_name(CenterStatus s);
// Needs A solutions at u and [K:F_q] even; otherwise Skipped.
CenterStatus center_product_check(Elem u, FieldPtr K, const HypFamilyParams& params);

struct UnmatchedPoint {
    std::string field;
    u32 u_index = 0;
    TraceTuple tuple;
};

struct PullbackAudit {
    u64 f = 0;
    u64 points = 0;
    u64 unmatched = 0;
};

struct CenterSummary {
    u64 applicable = 0;
    u64 passed = 0;
    u64 failed = 0;
};

// Center checks at the points of K where Frobenius fixes the whole root space.
CenterSummary center_search(const HypFamilyParams& params, FieldPtr K);

struct AuditReport {
    HypFamilyParams params;
    MonodromyPrediction prediction;
    std::vector<std::string> checked_fields;
    std::optional<i64> e;         // twist used for matching
    std::vector<i64> j_perm;      // observed G_j matched against W_perm[j]; perm[0] = 0
    u64 points = 0;
    u64 matched = 0;  // points whose tuple matched
    std::vector<UnmatchedPoint> unmatched;  // one entry per distinct unmatched tuple
    u64 w_form_fail = 0;          // 2 + trace_W(u) not in {1, q, ..., q^n}
    std::set<i64> w0_observed;
    bool w0_in_group_values = true;
    bool w0_in_qk_minus_2 = true;  // observed W_0' values all of the form q^k - 2
    std::map<std::string, u64> distinct_tuples;  // per field, cumulative over the sweep
    std::vector<PullbackAudit> pullbacks;         // divisors f of d
    CenterSummary center;
    bool pass() const { return unmatched.empty() && w_form_fail == 0; }
    std::string verdict() const { return pass() ? "PASS" : "FAIL"; }
};

AuditReport frobenius_trace_audit(const HypFamilyParams& params, const std::vector<FieldPtr>& fields);

}  // namespace wm
