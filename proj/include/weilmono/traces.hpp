#pragma once

#include <map>
#include <string>
#include <vector>

#include "weilmono/cycint.hpp"
#include "weilmono/field.hpp"
#include "weilmono/sheafmodel.hpp"

namespace wm {

// Rank of an F_p-linear map given by the encodings of the images of the basis p^k.
u32 fp_rank(const FieldTable& K, const std::vector<u32>& image_encodings);

// Trace functions of the families G_0, G_j and their sum W over one field K containing F_q.
// Only q, n, m, b, c of the parameters are used.
class TraceEngine {
public:
    TraceEngine(const HypFamilyParams& params, FieldPtr K);

    const FieldTable& K() const { return *K_; }
    const FieldTable& Fq() const { return *Fq_; }
    const HypFamilyParams& params() const { return P_; }

    // v in K^x with u^-b v^B + u^(c q^m) v^(-C q^m) = 1, as log indices in scan order
    std::vector<u32> solutions(Elem u) const;

    i64 trace_G0(Elem u) const;
    CycInt trace_Gj(Elem u, i64 j) const;
    // all j in [0, q-2] from one scan: entry 0 is G_0 as an integer CycInt
    std::vector<CycInt> trace_all(Elem u) const;

    u32 solution_space_dim(Elem u) const;  // over F_q
    i64 trace_W(Elem u) const;             // q^dim - 2
    i64 trace_W_exhaustive(Elem u) const;  // direct count, independent of the rank method

    // Pullback exponent N = (q-1)C / gcd(q-1, c) and the displayed pullback traces.
    i64 pullback_N() const { return N_; }
    i64 pullback_root() const { return r_; }  // (q-1)/gcd(q-1, c)
    i64 trace_W_pullback(Elem u) const;
    i64 trace_G0_pullback(Elem u) const;

    // Fiber sizes of f(t) = t^B - t^A and F(t) = t^((q-1)B) - t^((q-1)A) over K, keyed by value encoding.
    const std::vector<u32>& fibers_f() const;
    const std::vector<u32>& fibers_F() const;

    Elem pow(Elem u, i64 k) const { return K_->pow(u, k); }

private:
    HypFamilyParams P_;
    FieldPtr K_, Fq_;
    Embedding emb_;
    u64 qm_, qn_;  // q^m and q^n reduced modulo #K - 1
    i64 A_, B_, C_, N_, r_;
    mutable std::vector<u32> fib_f_, fib_F_;
    mutable bool fib_ready_ = false;
    void build_fibers() const;
};

struct PointTrace {
    u32 u_index = 0;
    i64 G0 = 0;
    std::vector<CycInt> Gj;  // j = 1..q-2
    i64 W = 0;
    u32 dim = 0;
};

struct TraceLawReport {
    std::string field;
    u64 points = 0;
    u64 w_form_fail = 0;        // W + 2 not 1 or a power of q
    u64 direct_sum_fail = 0;    // G_0 + sum G_j != W
    u64 exhaustive_fail = 0;    // rank method disagrees with direct count (small K only)
    u64 pullback_fail = 0;      // displayed pullback traces != traces at u^(-N)
    u64 pullback_plus_fail = 0; // same comparison at u^(+N), informational
    u64 pushforward_fail = 0;   // 1 + pulled-back traces != fiber counts
    u64 full_dim_points = 0;    // points with dim = n
    u64 full_dim_orbits = 0;    // their orbits under u -> u^q; more than one is flagged, not failed
    u64 dim_over_n = 0;
    std::map<i64, u64> w_histogram;
    bool pass() const {
        return w_form_fail == 0 && direct_sum_fail == 0 && exhaustive_fail == 0 && pullback_fail == 0 &&
               pushforward_fail == 0 && dim_over_n == 0;
    }
};

// All trace laws at every u in K^x. Exhaustive cross-checks of trace_W run when #K <= exhaustive_limit.
TraceLawReport check_trace_laws(const HypFamilyParams& params, FieldPtr K, u64 exhaustive_limit = 1u << 12);

struct PushforwardReport {
    u64 points = 0;
    u64 g0_mismatch = 0;
    u64 w_mismatch = 0;
    std::map<u32, u64> fiber_sizes;  // F-fiber size histogram over the points
    bool pass() const { return g0_mismatch == 0 && w_mismatch == 0; }
};
PushforwardReport pushforward_check(const HypFamilyParams& params, FieldPtr K);

std::vector<PointTrace> sweep_traces(const TraceEngine& eng);

// True when v is 1 or a power of q (at most q^cap).
bool is_q_power(i64 v, u64 q, u32 cap = 64);

}  // namespace wm
