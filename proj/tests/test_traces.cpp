#include <doctest.h>

#include <tuple>

#include "weilmono/traces.hpp"
#include "weilmono/weil.hpp"

using namespace wm;

namespace {

struct Brute {
    std::vector<u32> sol;   // log indices of v solving the defining equation
    std::vector<i64> norm;  // F_q log index of Norm(v), same order
    u64 kernel = 0;         // #{w in K : c1 w^(q^m) - c2 w^(q^n) - w = 0}
};

Brute brute(const HypFamilyParams& P, const FieldTable& K, Elem u) {
    const FieldTable& Fq = *field_for_q(P.q);
    const Embedding emb(Fq, K);
    const i64 U = static_cast<i64>(K.units());
    const i64 qm = static_cast<i64>(ipow(P.q, P.m)), qn = static_cast<i64>(ipow(P.q, P.n));
    const i64 B = static_cast<i64>(P.B()), C = static_cast<i64>(P.C());
    Brute out;
    for (i64 i = 0; i < U; ++i) {
        const Elem v = K.from_index(i);
        const Elem t1 = K.mul(K.pow(u, -P.b), K.pow(v, B));
        const Elem t2 = K.mul(K.pow(K.pow(u, P.c), qm), K.pow(K.pow(v, -C), qm));
        if (K.add(t1, t2) == K.one()) {
            out.sol.push_back(static_cast<u32>(i));
            const Elem nv = K.pow(v, U / static_cast<i64>(P.q - 1));
            out.norm.push_back(emb.preimage(nv).idx);
        }
    }
    const Elem c1 = K.pow(u, P.b), c2 = K.mul(c1, K.pow(K.pow(u, P.c), qm));
    for (u32 enc = 0; enc < K.order(); ++enc) {
        const Elem w = K.from_enc(enc);
        const Elem val = K.sub(K.sub(K.mul(c1, K.pow(w, qm)), K.mul(c2, K.pow(w, qn))), w);
        if (val.is_zero()) ++out.kernel;
    }
    return out;
}

}  // namespace

TEST_CASE("trace examples over F_2 and F_8") {
    HypFamilyParams P{2, 3, 1, 1, 2, 0, QmodZ(), Kind::H0};
    const TraceEngine e2(P, get_field(2, 1));
    CHECK(e2.trace_G0(e2.K().one()) == -1);

    FieldPtr F8 = get_field(2, 3);
    const TraceEngine e8(P, F8);
    const Elem one = F8->one(), a = F8->gen();
    CHECK(e8.trace_G0(one) == -1);
    CHECK(e8.trace_G0(a) == 0);
    CHECK(e8.solutions(a) == std::vector<u32>{4});
    CHECK(e8.trace_W(one) == -1);
    CHECK(e8.trace_W(a) == 0);
    CHECK(e8.solution_space_dim(one) == 0);
    CHECK(e8.solution_space_dim(a) == 1);
    CHECK(e8.trace_W_pullback(one) == -1);
    CHECK(e8.pullback_N() == 3);
}

TEST_CASE("G_1 example over F_3") {
    HypFamilyParams P{3, 3, 1, 1, 3, 1, QmodZ(), Kind::Hj};
    const TraceEngine e(P, get_field(3, 1));
    CHECK(e.solutions(e.K().one()).empty());
    CHECK(e.trace_Gj(e.K().one(), 1).is_zero());
    CHECK_THROWS(e.trace_Gj(e.K().one(), 0));
}

TEST_CASE("engine rejects fields not containing F_q") {
    HypFamilyParams P{4, 3, 1, 1, 3, 1, QmodZ(), Kind::Hj};
    CHECK_THROWS_AS(TraceEngine(P, get_field(2, 3)), std::invalid_argument);
}

TEST_CASE("traces agree with brute force") {
    struct Case {
        u64 q;
        u32 n, m;
        u32 p, e;
    };
    for (const Case& cs : std::vector<Case>{{2, 3, 1, 2, 6}, {2, 3, 2, 2, 6}, {2, 4, 1, 2, 4}, {3, 3, 1, 3, 3},
                                            {3, 3, 2, 3, 4}, {4, 3, 1, 2, 6}, {3, 4, 1, 3, 4}}) {
        const auto [b, c] = canonical_bc(cs.q, cs.n, cs.m);
        HypFamilyParams P{cs.q, cs.n, cs.m, b, c, 0, QmodZ(), Kind::H0};
        FieldPtr K = get_field(cs.p, cs.e);
        const TraceEngine eng(P, K);
        const u64 qm1 = cs.q - 1;
        CAPTURE(cs.q);
        CAPTURE(cs.n);
        CAPTURE(cs.m);
        CAPTURE(K->spec());
        for (u32 i = 0; i < K->units(); ++i) {
            const Elem u = K->from_index(i);
            const Brute bf = brute(P, *K, u);
            REQUIRE(eng.solutions(u) == bf.sol);
            const auto all = eng.trace_all(u);
            CHECK(all[0] == CycInt::integer(static_cast<i64>(bf.sol.size()) - 1));
            for (u64 j = 1; j < qm1; ++j) {
                std::vector<QmodZ> exps;
                for (i64 nk : bf.norm) exps.emplace_back(static_cast<i64>(j) * nk, static_cast<i64>(qm1));
                const CycInt want = cyc_sum(exps).relevel(qm1);
                CHECK(all[j] == want);
                CHECK(eng.trace_Gj(u, static_cast<i64>(j)) == want);
            }
            const u32 dim = eng.solution_space_dim(u);
            CHECK(ipow(cs.q, dim) == bf.kernel);
            CHECK(eng.trace_W(u) == static_cast<i64>(bf.kernel) - 2);
            CHECK(eng.trace_W_exhaustive(u) == eng.trace_W(u));
            // sum over j of the G_j is -1 + (q-1) #{v : Norm v = 1}
            i64 norm_one = 0;
            for (i64 nk : bf.norm) norm_one += nk == 0;
            CycInt s = CycInt::integer(0, qm1);
            for (const auto& g : all) s += g.relevel(qm1);
            CHECK(s == CycInt::integer(-1 + static_cast<i64>(qm1) * norm_one, qm1));
        }
    }
}

TEST_CASE("trace laws hold; the opposite pullback sign does not") {
    for (auto [q, n, m, p, e] : std::vector<std::tuple<u64, u32, u32, u32, u32>>{
             {2, 3, 1, 2, 6}, {2, 4, 1, 2, 8}, {3, 3, 1, 3, 6}, {3, 3, 2, 3, 6}, {4, 3, 1, 2, 6}, {2, 5, 2, 2, 10}}) {
        const auto [b, c] = canonical_bc(q, n, m);
        HypFamilyParams P{q, n, m, b, c, 0, QmodZ(), Kind::H0};
        FieldPtr K = get_field(p, e);
        const TraceLawReport r = check_trace_laws(P, K);
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(r.pass());
        CHECK(r.points == K->units());
        CHECK(r.w_form_fail == 0);
        CHECK(r.direct_sum_fail == 0);
        CHECK(r.exhaustive_fail == 0);
        CHECK(r.pullback_fail == 0);
        CHECK(r.pushforward_fail == 0);
        for (const auto& [w, cnt] : r.w_histogram) CHECK(is_q_power(w + 2, q));
        CHECK(pushforward_check(P, K).pass());
    }
    HypFamilyParams P{3, 3, 1, 1, 3, 0, QmodZ(), Kind::H0};
    CHECK(check_trace_laws(P, get_field(3, 6)).pullback_plus_fail > 0);
}

TEST_CASE("pushforward examples") {
    HypFamilyParams P{2, 3, 1, 1, 2, 0, QmodZ(), Kind::H0};
    const PushforwardReport r8 = pushforward_check(P, get_field(2, 3));
    CHECK(r8.pass());
    CHECK(r8.points == 7);
    const PushforwardReport r2 = pushforward_check(P, get_field(2, 1));
    CHECK(r2.pass());
    CHECK(r2.points == 1);
    const PushforwardReport r64 = pushforward_check(P, get_field(2, 6));
    CHECK(r64.pass());
    // nonzero t with F(t) = value are the nonzero kernel vectors of an additive map
    for (const auto& [sz, cnt] : r64.fiber_sizes) CHECK(is_q_power(sz + 1, 2));
}

TEST_CASE("helpers") {
    CHECK(is_q_power(1, 3));
    CHECK(is_q_power(27, 3));
    CHECK_FALSE(is_q_power(0, 3));
    CHECK_FALSE(is_q_power(6, 2));
    FieldPtr F8 = get_field(2, 3);
    CHECK(fp_rank(*F8, {1, 2, 4}) == 3);
    CHECK(fp_rank(*F8, {1, 1, 0}) == 1);
    CHECK(fp_rank(*F8, {3, 5, 6}) == 2);
}
