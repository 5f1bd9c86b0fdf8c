#include "weilmono/groupcheck.hpp"

#include <algorithm>

#include "weilmono/parallel.hpp"
#include "weilmono/traces.hpp"

namespace wm {

i64 det_order_d(u64 q, i64 b, i64 c) {
    const i64 qm1 = static_cast<i64>(q - 1);
    return qm1 / std::gcd(qm1, mod(b + c, qm1));
}

u64 predicted_group_order(u32 n, u64 q, u64 d) {
    if (d == 0 || (q - 1) % d != 0) throw std::invalid_argument("predicted_group_order: d must divide q-1");
    return gl_order(q, n) / (q - 1) * d;
}

std::vector<i64> find_twist_e(u32 n, u64 q, u64 d) {
    const i64 qm1 = static_cast<i64>(q - 1);
    if (d == 0 || qm1 % static_cast<i64>(d) != 0) throw std::invalid_argument("find_twist_e: d must divide q-1");
    std::vector<i64> out;
    for (i64 e = 0; e < qm1; ++e) {
        if (qm1 / std::gcd(qm1, mod(static_cast<i64>(n) * e + 1, qm1)) == static_cast<i64>(d)) out.push_back(e);
    }
    return out;
}

MonodromyPrediction predict_monodromy(const HypFamilyParams& P) {
    MonodromyPrediction M;
    M.d = static_cast<u64>(det_order_d(P.q, P.b, P.c));
    M.group_order = predicted_group_order(P.n, P.q, M.d);
    M.e_candidates = find_twist_e(P.n, P.q, M.d);
    M.kernel_order = (P.q - 1) / M.d;
    return M;
}

std::vector<i64> tuple_key(const TraceTuple& t, u64 level) {
    std::vector<i64> key;
    for (const auto& x : t) {
        const CycInt y = x.relevel(level);
        key.insert(key.end(), y.coeffs().begin(), y.coeffs().end());
    }
    return key;
}

std::string tuple_str(const TraceTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
    return s + ")";
}

TraceTuple class_tuple(const GLElement& g, i64 e) {
    const u64 q = g.field().order();
    const u64 qm1 = q - 1;
    const i64 logdet = g.det().idx;
    TraceTuple t;
    t.push_back((weil_trace(g, 0) - CycInt::integer(1)).relevel(qm1));
    for (u64 j = 1; j < qm1; ++j) {
        const CycInt twist = CycInt::root(QmodZ(e * static_cast<i64>(j) * logdet, static_cast<i64>(qm1)));
        t.push_back((weil_trace(g, static_cast<i64>(j)) * twist).relevel(qm1));
    }
    return t;
}

std::map<std::vector<i64>, TraceTuple> char_value_tuples(u32 n, u64 q, i64 e, u64 f) {
    FieldPtr F = field_for_q(q);
    const GroupClasses& G = group_classes(F, n);
    const i64 step = std::gcd(static_cast<i64>(f), static_cast<i64>(q - 1));
    std::vector<std::optional<TraceTuple>> rows(G.reps.size());
    parallel_for(G.reps.size(), [&](std::size_t i) {
        const GLElement g = GLElement::from_index(F, n, G.reps[i]);
        if (g.det().idx % step != 0) return;
        rows[i] = class_tuple(g, e);
    });
    std::map<std::vector<i64>, TraceTuple> out;
    for (auto& r : rows)
        if (r) out.emplace(tuple_key(*r, q - 1), std::move(*r));
    return out;
}

std::set<i64> w0_value_set(u32 n, u64 q) {
    std::set<i64> vals;
    for (const auto& [key, t] : char_value_tuples(n, q, 0)) vals.insert(t[0].integer_value());
    return vals;
}

std::string center_status_name(CenterStatus s) {
    switch (s) {
        case CenterStatus::Skipped: return "SKIPPED";
        case CenterStatus::Pass: return "PASS";
        default: return "FAIL";
    }
}

namespace {

CenterStatus center_from_solutions(const TraceEngine& eng, const Embedding& emb, Elem u, u64 d) {
    const FieldTable& K = eng.K();
    const HypFamilyParams& P = eng.params();
    const u32 eq = eng.Fq().e();
    if ((K.e() / eq) % 2 != 0) return CenterStatus::Skipped;
    const auto sol = eng.solutions(u);
    if (sol.size() != P.A()) return CenterStatus::Skipped;
    const u64 U = K.units();
    u64 sum = 0;
    for (u32 v : sol) sum = (sum + v) % U;
    const Elem prod{static_cast<u32>(sum)};
    const u64 qm = powmod(P.q, P.m, U);
    Elem expect = K.mul(K.pow(u, P.b), K.pow(K.pow(u, P.c), static_cast<i64>(qm)));
    if (P.A() % 2 == 1) expect = K.neg(expect);
    if (prod != expect) return CenterStatus::Fail;
    const Elem nu = emb.norm(Elem{sol[0]});
    for (u32 v : sol)
        if (emb.norm(Elem{v}) != nu) return CenterStatus::Fail;
    const FieldTable& Fq = eng.Fq();
    if (emb.norm(prod) != Fq.pow(emb.norm(u), P.b + P.c)) return CenterStatus::Fail;
    if (Fq.pow(nu, static_cast<i64>(d)) != Fq.one()) return CenterStatus::Fail;
    return CenterStatus::Pass;
}

}  // namespace

CenterStatus center_product_check(Elem u, FieldPtr K, const HypFamilyParams& P) {
    TraceEngine eng(P, K);
    Embedding emb(eng.Fq(), *K);
    return center_from_solutions(eng, emb, u, static_cast<u64>(det_order_d(P.q, P.b, P.c)));
}

CenterSummary center_search(const HypFamilyParams& P, FieldPtr K) {
    TraceEngine eng(P, K);
    Embedding emb(eng.Fq(), *K);
    const u64 d = static_cast<u64>(det_order_d(P.q, P.b, P.c));
    std::vector<CenterStatus> st(K->units(), CenterStatus::Skipped);
    parallel_for(K->units(), [&](std::size_t i) {
        const Elem u{static_cast<u32>(i)};
        if (eng.solution_space_dim(u) == P.n) st[i] = center_from_solutions(eng, emb, u, d);
    });
    CenterSummary S;
    for (CenterStatus c : st) {
        if (c == CenterStatus::Skipped) continue;
        ++S.applicable;
        c == CenterStatus::Pass ? ++S.passed : ++S.failed;
    }
    return S;
}

AuditReport frobenius_trace_audit(const HypFamilyParams& P, const std::vector<FieldPtr>& fields) {
    AuditReport R;
    R.params = P;
    R.prediction = predict_monodromy(P);
    const u64 qm1 = P.q - 1;
    const u64 d = R.prediction.d;

    std::vector<u64> divisors;
    for (u64 f = 1; f <= d; ++f)
        if (d % f == 0) divisors.push_back(f);

    // observed tuples, first occurrence kept for reporting
    struct Obs {
        std::string field;
        u32 u_index;
        TraceTuple tuple;
        u64 count;
    };
    std::map<std::vector<i64>, Obs> observed;
    std::vector<std::map<std::vector<i64>, TraceTuple>> observed_pull(divisors.size());
    for (const FieldPtr& K : fields) {
        R.checked_fields.push_back(K->spec());
        TraceEngine eng(P, K);
        Embedding emb(eng.Fq(), *K);
        const u64 U = K->units();
        std::vector<TraceTuple> tuples(U);
        std::vector<u32> dims(U);
        std::vector<CenterStatus> centers(U);
        parallel_for(U, [&](std::size_t i) {
            const Elem u{static_cast<u32>(i)};
            auto all = eng.trace_all(u);
            for (auto& x : all) x = x.relevel(qm1);
            tuples[i] = std::move(all);
            dims[i] = eng.solution_space_dim(u);
            // dim = n means Frobenius fixes every root, the only case where the full scan is needed
            centers[i] = dims[i] == P.n ? center_from_solutions(eng, emb, u, d) : CenterStatus::Skipped;
        });
        for (u64 i = 0; i < U; ++i) {
            ++R.points;
            const auto key = tuple_key(tuples[i], qm1);
            ++observed.try_emplace(key, Obs{K->spec(), static_cast<u32>(i), tuples[i], 0}).first->second.count;
            R.w0_observed.insert(tuples[i][0].integer_value());
            if (!is_q_power(static_cast<i64>(ipow(P.q, dims[i])), P.q, P.n)) ++R.w_form_fail;
            if (centers[i] != CenterStatus::Skipped) {
                ++R.center.applicable;
                centers[i] == CenterStatus::Pass ? ++R.center.passed : ++R.center.failed;
            }
            for (std::size_t k = 0; k < divisors.size(); ++k) {
                const u64 src = (i * divisors[k]) % U;
                observed_pull[k].emplace(tuple_key(tuples[src], qm1), tuples[src]);
            }
        }
        R.distinct_tuples[K->spec()] = observed.size();
    }

    const std::set<i64> group_w0 = w0_value_set(P.n, P.q);
    for (i64 v : R.w0_observed) {
        if (!group_w0.count(v)) R.w0_in_group_values = false;
        if (!is_q_power(v + 2, P.q, P.n)) R.w0_in_qk_minus_2 = false;
    }

    // pick (e, permutation of j) matching the most observed tuples; identity is tried first
    std::vector<i64> perm(qm1 == 0 ? 0 : qm1 - 1);
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<i64>(k) + 1;
    const bool try_perms = perm.size() <= 6;
    std::size_t best_miss = observed.size() + 1;
    for (i64 e : R.prediction.e_candidates) {
        const auto predicted = char_value_tuples(P.n, P.q, e);
        std::vector<i64> pm = perm;
        do {
            std::vector<UnmatchedPoint> miss;
            u64 hit = 0;
            for (const auto& [key, ob] : observed) {
                TraceTuple t(ob.tuple.size());
                t[0] = ob.tuple[0];
                for (std::size_t j = 1; j < t.size(); ++j) t[static_cast<std::size_t>(pm[j - 1])] = ob.tuple[j];
                if (predicted.count(tuple_key(t, qm1)))
                    hit += ob.count;
                else
                    miss.push_back({ob.field, ob.u_index, ob.tuple});
            }
            if (miss.size() < best_miss) {
                best_miss = miss.size();
                R.e = e;
                R.j_perm = {0};
                R.j_perm.insert(R.j_perm.end(), pm.begin(), pm.end());
                R.unmatched = std::move(miss);
                R.matched = hit;
            }
            if (best_miss == 0) break;
        } while (try_perms && std::next_permutation(pm.begin(), pm.end()));
        if (best_miss == 0) break;
    }

    if (R.e) {
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            const auto predicted = char_value_tuples(P.n, P.q, *R.e, divisors[k]);
            PullbackAudit pa;
            pa.f = divisors[k];
            for (const auto& [key, t] : observed_pull[k]) {
                ++pa.points;
                TraceTuple s(t.size());
                s[0] = t[0];
                for (std::size_t j = 1; j < t.size(); ++j) s[static_cast<std::size_t>(R.j_perm[j])] = t[j];
                if (!predicted.count(tuple_key(s, qm1))) ++pa.unmatched;
            }
            R.pullbacks.push_back(pa);
        }
    }
    return R;
}

}  // namespace wm
