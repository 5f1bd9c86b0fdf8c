#include "weilmono/trinomial.hpp"

#include <algorithm>
#include <cmath>

#include "weilmono/parallel.hpp"
#include "weilmono/sheafmodel.hpp"
#include "weilmono/traces.hpp"
#include "weilmono/weil.hpp"

namespace wm {

namespace {

// u^k with k given exactly as a 128-bit integer
Elem epow(const FieldTable& K, Elem u, __int128 k) {
    const __int128 U = static_cast<__int128>(K.units());
    __int128 r = k % U;
    if (r < 0) r += U;
    return K.pow(u, static_cast<i64>(r));
}

// #{w in K^x : w^(q^n - 1) - a w^(q^m - 1) + c = 0} through the kernel of w^(q^n) - a w^(q^m) + c w
u64 count_linear(const FieldTable& K, u32 eq, u32 n, u32 m, Elem a, Elem c) {
    std::vector<u32> images;
    u32 enc = 1;
    for (u32 k = 0; k < K.e(); ++k, enc *= K.p()) {
        const Elem w = K.from_enc(enc);
        const Elem v = K.add(K.sub(K.frob(w, static_cast<u64>(eq) * n), K.mul(a, K.frob(w, static_cast<u64>(eq) * m))),
                             K.mul(c, w));
        images.push_back(K.to_enc(v));
    }
    return ipow(K.p(), K.e() - fp_rank(K, images)) - 1;
}

// smallest i in [0, U) with a i = b mod U
std::optional<u64> solve_linear(i64 a, i64 b, i64 U) {
    a = mod(a, U);
    b = mod(b, U);
    const i64 g = std::gcd(a, U);
    if (g == 0 || b % g != 0) return std::nullopt;
    const i64 Ug = U / g;
    if (Ug == 1) return 0;
    return static_cast<u64>(mod(static_cast<i64>(static_cast<__int128>(b / g) * inverse_mod(mod(a / g, Ug), Ug) % Ug), Ug));
}

using Poly = std::vector<Elem>;

void trim(Poly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly poly_mod(const FieldTable& K, Poly a, const Poly& f) {
    trim(a);
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        const Elem lead = a.back();
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = K.sub(a[shift + i], K.mul(lead, f[i]));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const FieldTable& K, const Poly& a, const Poly& b, const Poly& f) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
    return poly_mod(K, std::move(r), f);
}

Poly poly_powmod(const FieldTable& K, Poly h, u64 e, const Poly& f) {
    Poly r{K.one()};
    for (; e; e >>= 1) {
        if (e & 1) r = poly_mulmod(K, r, h, f);
        h = poly_mulmod(K, h, h, f);
    }
    return r;
}

Poly make_monic(const FieldTable& K, Poly a) {
    trim(a);
    if (a.empty()) return a;
    const Elem inv = K.inv(a.back());
    for (auto& x : a) x = K.mul(x, inv);
    return a;
}

Poly poly_gcd(const FieldTable& K, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(K, a, make_monic(K, b));
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(K, a);
}

// exact quotient of monic f by monic g
Poly poly_div(const FieldTable& K, Poly f, const Poly& g) {
    const std::size_t dg = g.size() - 1;
    Poly q(f.size() - dg, K.zero());
    while (f.size() > dg && !f.empty()) {
        const Elem lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        q[shift] = lead;
        for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = K.sub(f[shift + i], K.mul(lead, g[i]));
        trim(f);
    }
    return q;
}

u64 shape_lcm(const CycleShape& s) {
    u64 l = 1;
    for (u64 x : s) l = lcm_u(l, x);
    return l;
}

}  // namespace

std::optional<std::string> TrinomialParams::invalid_reason() const {
    if (q < 2 || prime_factors(q).size() != 1) return "q must be a prime power";
    if (n < 2 || m < 1 || m >= n) return "need 1 <= m <= n-1";
    if (std::gcd(n, m) != 1) return "need gcd(n, m) = 1";
    if (r < 0 || s < 0) return "r, s must be nonnegative";
    if (chain_exponent() == 0) return "r(q^n-1) = s(q^n-q^m) is excluded";
    return std::nullopt;
}

void TrinomialParams::validate() const {
    if (auto why = invalid_reason()) throw std::invalid_argument("invalid trinomial parameters: " + *why);
}

i64 TrinomialParams::chain_exponent() const {
    const i64 qn = static_cast<i64>(ipow(q, n)), qm = static_cast<i64>(ipow(q, m));
    return r * (qn - 1) - s * (qn - qm);
}

u64 count_roots(Elem u, FieldPtr Kp, const TrinomialParams& P) {
    if (u.is_zero()) throw std::invalid_argument("count_roots: u must be nonzero");
    const FieldTable& K = *Kp;
    FieldPtr Fq = field_for_q(P.q);
    Embedding emb(*Fq, K);
    const Elem x = emb.map(Fq->from_index(P.x_idx)), y = emb.map(Fq->from_index(P.y_idx));
    return count_linear(K, Fq->e(), P.n, P.m, K.mul(x, K.pow(u, P.r)), K.mul(y, K.pow(u, P.s)));
}

u64 count_roots_direct(Elem u, FieldPtr Kp, const TrinomialParams& P) {
    if (u.is_zero()) throw std::invalid_argument("count_roots: u must be nonzero");
    const FieldTable& K = *Kp;
    FieldPtr Fq = field_for_q(P.q);
    Embedding emb(*Fq, K);
    const Elem a = K.mul(emb.map(Fq->from_index(P.x_idx)), K.pow(u, P.r));
    const Elem c = K.mul(emb.map(Fq->from_index(P.y_idx)), K.pow(u, P.s));
    const i64 en = static_cast<i64>(ipow(P.q, P.n) - 1), em = static_cast<i64>(ipow(P.q, P.m) - 1);
    u64 count = 0;
    for (u64 t = 0; t < K.order(); ++t) {
        const Elem T = K.from_enc(static_cast<u32>(t));
        const Elem val = T.is_zero() ? c : K.add(K.sub(K.pow(T, en), K.mul(a, K.pow(T, em))), c);
        if (val.is_zero()) ++count;
    }
    return count;
}

ChainData chain_transform(const TrinomialParams& P) {
    P.validate();
    ChainData D;
    D.M = P.chain_exponent();
    D.N = D.M / static_cast<i64>(P.q - 1);
    FieldPtr Fq = field_for_q(P.q);
    const u32 eq = Fq->e();
    const i64 qn = static_cast<i64>(ipow(P.q, P.n)), qm = static_cast<i64>(ipow(P.q, P.m));
    for (u32 k = 1;; ++k) {
        const u32 E = eq * k;
        if (static_cast<double>(E) * std::log2(static_cast<double>(Fq->p())) > 63 ||
            ipow(Fq->p(), E) > field_ceiling())
            throw std::runtime_error("chain_transform: y' and z not found within the field ceiling");
        FieldPtr K = get_field(Fq->p(), E);
        Embedding emb(*Fq, *K);
        const i64 U = static_cast<i64>(K->units());
        const Elem x = emb.map(Fq->from_index(P.x_idx)), y = emb.map(Fq->from_index(P.y_idx));
        auto yp = solve_linear(qn - 1, y.idx, U);
        if (!yp) continue;
        const Elem ypr{static_cast<u32>(*yp)};
        const Elem target = K->mul(K->inv(x), K->pow(ypr, qn - qm));
        auto z = solve_linear(D.M, target.idx, U);
        if (!z) continue;
        D.K0 = K->spec();
        D.K0_degree = k;
        D.yprime_idx = static_cast<u32>(*yp);
        D.z_idx = static_cast<u32>(*z);
        return D;
    }
}

bool ChainReport::pass() const {
    bool checked = false;
    for (const auto& f : fields) {
        if (!f.pass()) return false;
        checked = checked || !f.skipped;
    }
    return checked;
}

ChainReport trace_chain_check(const TrinomialParams& P, const std::vector<FieldPtr>& fields, u64 direct_limit) {
    ChainReport R;
    R.params = P;
    R.chain = chain_transform(P);
    std::tie(R.b, R.c) = canonical_bc(P.q, P.n, P.m);
    FieldPtr Fq = field_for_q(P.q);
    const u32 eq = Fq->e();
    const u32 p = Fq->p();
    FieldPtr K0 = get_field(p, eq * R.chain.K0_degree);
    const HypFamilyParams fam{P.q, P.n, P.m, R.b, R.c, 0, QmodZ(), Kind::H0};
    const __int128 qn = ipow(P.q, P.n), qm = ipow(P.q, P.m);
    const __int128 bc = R.b + static_cast<__int128>(R.c) * qm;

    for (const FieldPtr& Kp : fields) {
        ChainFieldReport F;
        F.field = Kp->spec();
        if (Kp->p() != p || Kp->e() % K0->e() != 0) {
            F.skipped = true;
            R.fields.push_back(F);
            continue;
        }
        const FieldTable& K = *Kp;
        Embedding e0(*K0, K), eF(*Fq, K);
        const Elem x = eF.map(Fq->from_index(P.x_idx));
        const Elem yp = e0.map(Elem{R.chain.yprime_idx}), z = e0.map(Elem{R.chain.z_idx});
        const Elem xn = K.mul(x, epow(K, yp, -(qn - qm)));  // x y'^-(q^n - q^m)
        TraceEngine eng(fam, Kp);
        auto C = [&](Elem v) { return count_linear(K, eq, P.n, P.m, epow(K, v, P.q - 1), K.one()); };
        auto S2 = [&](Elem v) { return count_linear(K, eq, P.n, P.m, K.mul(xn, epow(K, v, R.chain.M)), K.one()); };
        struct Row {
            bool pull, trans, kum, frob, fam, direct;
        };
        std::vector<Row> rows(K.units());
        parallel_for(K.units(), [&](std::size_t i) {
            const Elem u{static_cast<u32>(i)};
            const Elem upull = epow(K, u, qn - 1);
            const u64 s2 = S2(u);
            const u64 s3 = count_linear(K, eq, P.n, P.m, epow(K, u, R.chain.M), K.one());
            const u64 cq = C(epow(K, u, qm));
            const u64 disp = count_linear(K, eq, P.n, P.m, epow(K, u, (R.b - bc) * (qn - 1)), epow(K, u, -bc * (qn - 1)));
            Row& row = rows[i];
            row.pull = count_roots(upull, Kp, P) == s2;
            row.trans = S2(K.mul(z, u)) == s3;
            row.kum = s3 == C(epow(K, u, R.chain.N));
            row.frob = cq == disp;
            row.fam = static_cast<i64>(disp) == 1 + eng.trace_W(upull);
            row.direct = K.order() > direct_limit || count_roots(u, Kp, P) == count_roots_direct(u, Kp, P);
        });
        for (const Row& row : rows) {
            ++F.points;
            F.pullback_fail += !row.pull;
            F.translate_fail += !row.trans;
            F.kummer_fail += !row.kum;
            F.frobenius_fail += !row.frob;
            F.family_fail += !row.fam;
            F.direct_fail += !row.direct;
        }
        R.fields.push_back(F);
    }
    return R;
}

std::string shape_str(const CycleShape& s) {
    std::map<u64, u64> mult;
    for (u64 x : s) ++mult[x];
    std::string out;
    for (const auto& [len, k] : mult) {
        if (!out.empty()) out += " ";
        out += std::to_string(len) + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return out;
}

std::set<CycleShape> gl_cycle_shapes(u64 q, u32 n) {
    FieldPtr F = field_for_q(q);
    const GroupClasses& G = group_classes(F, n);
    VecSpace V(F, n);
    std::vector<CycleShape> rows(G.reps.size());
    parallel_for(G.reps.size(), [&](std::size_t i) {
        const auto perm = GLElement::from_index(F, n, G.reps[i]).permutation(V);
        std::vector<bool> seen(perm.size(), false);
        CycleShape s;
        for (u64 v = 1; v < perm.size(); ++v) {
            if (seen[v]) continue;
            u64 len = 0;
            for (u64 w = v; !seen[w]; w = perm[w]) {
                seen[w] = true;
                ++len;
            }
            s.push_back(len);
        }
        std::sort(s.begin(), s.end());
        rows[i] = std::move(s);
    });
    return {rows.begin(), rows.end()};
}

CycleShape factor_degrees(const FieldTable& K, const std::vector<Elem>& monic) {
    Poly f = monic;
    trim(f);
    if (f.empty() || f.back() != K.one()) throw std::invalid_argument("factor_degrees: polynomial must be monic");
    CycleShape out;
    const Poly T{K.zero(), K.one()};
    Poly h = poly_mod(K, T, f);
    for (u64 k = 1; f.size() - 1 >= 2 * k; ++k) {
        h = poly_powmod(K, h, K.order(), f);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, K.zero());
        diff[1] = K.sub(diff[1], K.one());
        const Poly g = poly_gcd(K, diff, f);
        if (g.size() > 1) {
            for (u64 c = 0; c < (g.size() - 1) / k; ++c) out.push_back(k);
            f = poly_div(K, f, g);
            h = poly_mod(K, h, f);
        }
    }
    if (f.size() > 1) out.push_back(f.size() - 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::string GaloisEvidence::verdict() const {
    return pass() ? "consistent with SL_n(F_q) <= G <= GL_n(F_q)" : "FAIL";
}

GaloisEvidence galois_evidence(const TrinomialParams& P, const std::vector<FieldPtr>& fields) {
    P.validate();
    GaloisEvidence ev;
    ev.params = P;
    const auto gl = gl_cycle_shapes(P.q, P.n);
    ev.gl_shape_count = gl.size();
    for (const auto& s : gl) ev.gl_exponent = lcm_u(ev.gl_exponent, shape_lcm(s));
    FieldPtr Fq = field_for_q(P.q);
    const u64 qn = ipow(P.q, P.n), qm = ipow(P.q, P.m);
    std::set<CycleShape> bad;
    for (const FieldPtr& Kp : fields) {
        const FieldTable& K = *Kp;
        if (K.p() != Fq->p() || K.e() % Fq->e() != 0)
            throw std::invalid_argument("galois_evidence: field " + K.spec() + " does not contain F_q");
        ev.fields.push_back(K.spec());
        Embedding emb(*Fq, K);
        const Elem x = emb.map(Fq->from_index(P.x_idx)), y = emb.map(Fq->from_index(P.y_idx));
        struct Row {
            CycleShape shape;
            u64 roots;
        };
        std::vector<Row> rows(K.units());
        parallel_for(K.units(), [&](std::size_t i) {
            const Elem u{static_cast<u32>(i)};
            Poly f(qn, K.zero());
            f[qn - 1] = K.one();
            f[qm - 1] = K.neg(K.mul(x, K.pow(u, P.r)));
            f[0] = K.add(f[0], K.mul(y, K.pow(u, P.s)));
            rows[i] = {factor_degrees(K, f), count_roots(u, Kp, P)};
        });
        for (const Row& row : rows) {
            ++ev.points;
            ++ev.shapes[row.shape];
            if (!is_q_power(static_cast<i64>(row.roots + 1), P.q, P.n)) ++ev.root_count_fail;
            if (static_cast<u64>(std::count(row.shape.begin(), row.shape.end(), 1)) != row.roots) ++ev.shape_count_fail;
            if (!gl.count(row.shape)) bad.insert(row.shape);
            ev.order_lcm = lcm_u(ev.order_lcm, shape_lcm(row.shape));
        }
    }
    ev.unrealizable.assign(bad.begin(), bad.end());
    return ev;
}

}  // namespace wm
