#include "weilmono/traces.hpp"

#include <array>
#include <limits>

#include "weilmono/parallel.hpp"
#include "weilmono/weil.hpp"

namespace wm {

u32 fp_rank(const FieldTable& K, const std::vector<u32>& images) {
    const u32 p = K.p(), E = K.e();
    std::vector<std::vector<u32>> rows;
    for (u32 enc : images) {
        std::vector<u32> r(E);
        for (u32 k = 0; k < E; ++k) {
            r[k] = enc % p;
            enc /= p;
        }
        rows.push_back(std::move(r));
    }
    u32 rank = 0;
    for (u32 col = 0; col < E && rank < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (rows[i][col]) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const u32 inv = static_cast<u32>(inverse_mod(rows[rank][col], p));
        for (auto& x : rows[rank]) x = x * inv % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const u32 f = rows[i][col];
            for (u32 k = 0; k < E; ++k) rows[i][k] = (rows[i][k] + (p - f) * rows[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

bool is_q_power(i64 v, u64 q, u32 cap) {
    if (v < 1) return false;
    u64 x = 1;
    for (u32 k = 0; k <= cap; ++k) {
        if (static_cast<u64>(v) == x) return true;
        if (x > static_cast<u64>(v) / q) return false;
        x *= q;
    }
    return false;
}

namespace {

FieldPtr base_field(const HypFamilyParams& P, const FieldTable& K) {
    FieldPtr Fq = field_for_q(P.q);
    if (Fq->p() != K.p() || K.e() % Fq->e() != 0)
        throw std::invalid_argument("traces: field " + K.spec() + " does not contain F_" + std::to_string(P.q));
    return Fq;
}

}  // namespace

TraceEngine::TraceEngine(const HypFamilyParams& P, FieldPtr K)
    : P_(P), K_(std::move(K)), Fq_(base_field(P, *K_)), emb_(*Fq_, *K_) {
    if (P.n < 2 || P.m < 1 || P.m >= P.n) throw std::invalid_argument("traces: need 1 <= m <= n-1");
    const u64 U = K_->units();
    qm_ = powmod(P.q, P.m, U);
    qn_ = powmod(P.q, P.n, U);
    A_ = static_cast<i64>(P.A());
    B_ = static_cast<i64>(P.B());
    C_ = static_cast<i64>(P.C());
    const i64 qm1 = static_cast<i64>(P.q - 1);
    const i64 g = std::gcd(qm1, P.c);
    r_ = qm1 / g;
    N_ = qm1 * C_ / g;
}

std::vector<u32> TraceEngine::solutions(Elem u) const {
    if (u.is_zero()) throw std::invalid_argument("trace at u = 0");
    const FieldTable& K = *K_;
    const i64 U = static_cast<i64>(K.units());
    const i64 a = u.idx, qm = static_cast<i64>(qm_);
    i64 t1 = mod(-a * mod(P_.b, U), U);
    i64 t2 = static_cast<i64>(static_cast<__int128>(a) * mod(P_.c, U) % U * qm % U);
    const i64 d1 = mod(B_, U), d2 = mod(-static_cast<i64>(static_cast<__int128>(C_) * qm % U), U);
    std::vector<u32> out;
    for (i64 i = 0; i < U; ++i) {
        if (K.add(Elem{static_cast<u32>(t1)}, Elem{static_cast<u32>(t2)}) == K.one()) out.push_back(static_cast<u32>(i));
        t1 += d1;
        if (t1 >= U) t1 -= U;
        t2 += d2;
        if (t2 >= U) t2 -= U;
    }
    return out;
}

i64 TraceEngine::trace_G0(Elem u) const { return -1 + static_cast<i64>(solutions(u).size()); }

CycInt TraceEngine::trace_Gj(Elem u, i64 j) const {
    const u64 qm1 = P_.q - 1;
    if (j < 1 || static_cast<u64>(j) + 1 > qm1) throw std::invalid_argument("trace_Gj: need 1 <= j <= q-2");
    std::vector<i64> v(qm1, 0);
    for (u32 idx : solutions(u)) ++v[(static_cast<u64>(j) * emb_.norm(Elem{idx}).idx) % qm1];
    return CycInt::from_powers(qm1, v);
}

std::vector<CycInt> TraceEngine::trace_all(Elem u) const {
    const u64 qm1 = P_.q - 1;
    std::vector<i64> hist(qm1, 0);
    const auto sol = solutions(u);
    for (u32 idx : sol) ++hist[emb_.norm(Elem{idx}).idx % qm1];
    std::vector<CycInt> out;
    out.push_back(CycInt::integer(-1 + static_cast<i64>(sol.size())));
    for (u64 j = 1; j < qm1; ++j) {
        std::vector<i64> v(qm1, 0);
        for (u64 k = 0; k < qm1; ++k) v[(j * k) % qm1] += hist[k];
        out.push_back(CycInt::from_powers(qm1, v));
    }
    return out;
}

u32 TraceEngine::solution_space_dim(Elem u) const {
    if (u.is_zero()) throw std::invalid_argument("trace at u = 0");
    const FieldTable& K = *K_;
    const Elem c1 = K.pow(u, P_.b);
    const Elem c2 = K.mul(c1, K.pow(K.pow(u, P_.c), static_cast<i64>(qm_)));
    const u64 sm = static_cast<u64>(Fq_->e()) * P_.m, sn = static_cast<u64>(Fq_->e()) * P_.n;
    std::vector<u32> images;
    u32 enc = 1;
    for (u32 k = 0; k < K.e(); ++k, enc *= K.p()) {
        const Elem w = K.from_enc(enc);
        Elem val = K.sub(K.sub(K.mul(c1, K.frob(w, sm)), K.mul(c2, K.frob(w, sn))), w);
        images.push_back(K.to_enc(val));
    }
    const u32 dim_p = K.e() - fp_rank(K, images);
    if (dim_p % Fq_->e() != 0) throw std::logic_error("kernel is not an F_q-space");
    return dim_p / Fq_->e();
}

i64 TraceEngine::trace_W(Elem u) const {
    return static_cast<i64>(ipow(P_.q, solution_space_dim(u))) - 2;
}

i64 TraceEngine::trace_W_exhaustive(Elem u) const {
    const FieldTable& K = *K_;
    const Elem c1 = K.pow(u, P_.b);
    const Elem c2 = K.mul(c1, K.pow(K.pow(u, P_.c), static_cast<i64>(qm_)));
    i64 count = 1;  // w = 0
    for (u64 i = 0; i < K.units(); ++i) {
        const Elem w{static_cast<u32>(i)};
        const Elem lhs = K.sub(K.mul(c1, K.pow(w, static_cast<i64>(qm_))), K.mul(c2, K.pow(w, static_cast<i64>(qn_))));
        if (lhs == w) ++count;
    }
    return count - 2;
}

i64 TraceEngine::trace_W_pullback(Elem u) const {
    const FieldTable& K = *K_;
    const Elem target = K.pow(u, r_);
    const i64 e1 = mod(static_cast<i64>(qm_) - 1, static_cast<i64>(K.units()));
    const i64 e2 = mod(static_cast<i64>(qn_) - 1, static_cast<i64>(K.units()));
    i64 count = 0;
    for (u64 i = 0; i < K.units(); ++i) {
        const Elem w{static_cast<u32>(i)};
        if (K.sub(K.pow(w, e1), K.pow(w, e2)) == target) ++count;
    }
    return count - 1;
}

i64 TraceEngine::trace_G0_pullback(Elem u) const {
    const FieldTable& K = *K_;
    const Elem target = K.pow(u, r_);
    i64 count = 0;
    for (u64 i = 0; i < K.units(); ++i) {
        const Elem w{static_cast<u32>(i)};
        if (K.sub(K.pow(w, B_), K.pow(w, A_)) == target) ++count;
    }
    return count - 1;
}

void TraceEngine::build_fibers() const {
    if (fib_ready_) return;
    const FieldTable& K = *K_;
    const i64 qm1 = static_cast<i64>(P_.q - 1);
    fib_f_.assign(K.order(), 0);
    fib_F_.assign(K.order(), 0);
    for (u64 t = 0; t < K.order(); ++t) {
        const Elem x = K.from_enc(static_cast<u32>(t));
        ++fib_f_[K.to_enc(K.sub(K.pow(x, B_), K.pow(x, A_)))];
        ++fib_F_[K.to_enc(K.sub(K.pow(x, qm1 * B_), K.pow(x, qm1 * A_)))];
    }
    fib_ready_ = true;
}

const std::vector<u32>& TraceEngine::fibers_f() const {
    build_fibers();
    return fib_f_;
}

const std::vector<u32>& TraceEngine::fibers_F() const {
    build_fibers();
    return fib_F_;
}

std::vector<PointTrace> sweep_traces(const TraceEngine& eng) {
    const FieldTable& K = eng.K();
    std::vector<PointTrace> out(K.units());
    parallel_for(K.units(), [&](std::size_t i) {
        const Elem u{static_cast<u32>(i)};
        PointTrace& pt = out[i];
        pt.u_index = static_cast<u32>(i);
        auto all = eng.trace_all(u);
        pt.G0 = all[0].integer_value();
        pt.Gj.assign(all.begin() + 1, all.end());
        pt.dim = eng.solution_space_dim(u);
        pt.W = static_cast<i64>(ipow(eng.params().q, pt.dim)) - 2;
    });
    return out;
}

TraceLawReport check_trace_laws(const HypFamilyParams& P, FieldPtr Kp, u64 exhaustive_limit) {
    TraceEngine eng(P, Kp);
    const FieldTable& K = *Kp;
    const i64 U = static_cast<i64>(K.units());
    const auto pts = sweep_traces(eng);
    TraceLawReport rep;
    rep.field = K.spec();
    rep.points = pts.size();

    const auto& ff = eng.fibers_f();
    const auto& fF = eng.fibers_F();
    struct Flags {
        bool form = true, sum = true, exh = true, pull = true, pull_plus = true, push = true;
    };
    std::vector<Flags> flags(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const PointTrace& pt = pts[i];
        const Elem u{pt.u_index};
        Flags& fl = flags[i];
        fl.form = is_q_power(pt.W + 2, P.q, P.n);
        CycInt sum = CycInt::integer(pt.G0);
        for (const auto& g : pt.Gj) sum += g;
        fl.sum = sum == CycInt::integer(pt.W);
        if (K.order() <= exhaustive_limit) fl.exh = eng.trace_W_exhaustive(u) == pt.W;
        const std::size_t minus = static_cast<std::size_t>(mod(-eng.pullback_N() * static_cast<i64>(i), U));
        const std::size_t plus = static_cast<std::size_t>(mod(eng.pullback_N() * static_cast<i64>(i), U));
        const u32 target = K.to_enc(K.pow(u, eng.pullback_root()));
        // t = 0 lands on 0, never on the nonzero target, so fiber counts are counts over K^x
        i64 dispW = static_cast<i64>(fF[target]) - 1, dispG = static_cast<i64>(ff[target]) - 1;
        if (K.order() <= exhaustive_limit &&
            (dispW != eng.trace_W_pullback(u) || dispG != eng.trace_G0_pullback(u)))
            dispW = dispG = std::numeric_limits<i64>::min();
        fl.pull = dispW == pts[minus].W && dispG == pts[minus].G0;
        fl.pull_plus = dispW == pts[plus].W && dispG == pts[plus].G0;
        fl.push = 1 + pts[minus].G0 == static_cast<i64>(ff[target]) && 1 + pts[minus].W == static_cast<i64>(fF[target]);
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Flags& fl = flags[i];
        rep.w_form_fail += !fl.form;
        rep.direct_sum_fail += !fl.sum;
        rep.exhaustive_fail += !fl.exh;
        rep.pullback_fail += !fl.pull;
        rep.pullback_plus_fail += !fl.pull_plus;
        rep.pushforward_fail += !fl.push;
        if (pts[i].dim == P.n) ++rep.full_dim_points;
        if (pts[i].dim > P.n) ++rep.dim_over_n;
        ++rep.w_histogram[pts[i].W];
    }
    std::vector<bool> seen(pts.size(), false);
    const u64 qmod = static_cast<u64>(mod(static_cast<i64>(P.q % static_cast<u64>(U)), U));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (seen[i] || pts[i].dim != P.n) continue;
        ++rep.full_dim_orbits;
        for (u64 k = i; !seen[k]; k = static_cast<u64>((static_cast<unsigned __int128>(k) * qmod) % static_cast<u64>(U)))
            seen[k] = true;
    }
    return rep;
}

PushforwardReport pushforward_check(const HypFamilyParams& P, FieldPtr Kp) {
    TraceEngine eng(P, Kp);
    const FieldTable& K = *Kp;
    const i64 U = static_cast<i64>(K.units());
    PushforwardReport rep;
    const auto& ff = eng.fibers_f();
    const auto& fF = eng.fibers_F();
    std::vector<std::array<i64, 3>> rows(K.units());
    parallel_for(K.units(), [&](std::size_t i) {
        const Elem u{static_cast<u32>(i)};
        const Elem v{static_cast<u32>(mod(-eng.pullback_N() * static_cast<i64>(i), U))};
        const u32 target = K.to_enc(K.pow(u, eng.pullback_root()));
        rows[i] = {1 + eng.trace_G0(v) - static_cast<i64>(ff[target]), 1 + eng.trace_W(v) - static_cast<i64>(fF[target]),
                   static_cast<i64>(fF[target])};
    });
    for (const auto& r : rows) {
        ++rep.points;
        rep.g0_mismatch += r[0] != 0;
        rep.w_mismatch += r[1] != 0;
        ++rep.fiber_sizes[static_cast<u32>(r[2])];
    }
    return rep;
}

}  // namespace wm
