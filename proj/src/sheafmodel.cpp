#include "weilmono/sheafmodel.hpp"

#include <algorithm>

namespace wm {

CharSet CharSet::shifted(const QmodZ& phi) const {
    CharSet r;
    for (const auto& x : exps) {
        QmodZ y = x + phi;
        r.exps.insert(y);
        r.level = lcm_u(r.level, static_cast<u64>(y.den));
    }
    return r;
}

std::vector<std::string> CharSet::strs() const {
    std::vector<std::string> out;
    for (const auto& x : exps) out.push_back(x.str());
    return out;
}

CharSet char_set(u64 N, const QmodZ& chi, u64 p) {
    if (N == 0) throw std::invalid_argument("char_set: N must be positive");
    if (p && N % p == 0) throw std::invalid_argument("char_set: N divisible by p");
    CharSet s;
    for (u64 k = 0; k < N; ++k) {
        // (chi + k)/N with chi = a/d is (a + k d)/(N d)
        QmodZ y(chi.num + static_cast<i64>(k) * chi.den, chi.den * static_cast<i64>(N));
        s.exps.insert(y);
        s.level = lcm_u(s.level, static_cast<u64>(y.den));
    }
    return s;
}

std::string kind_name(Kind k) { return k == Kind::Hj ? "Hj" : "H0"; }

Kind parse_kind(const std::string& s) {
    if (s == "Hj" || s == "H_j") return Kind::Hj;
    if (s == "H0" || s == "H_0") return Kind::H0;
    throw std::invalid_argument("unknown kind '" + s + "' (expected Hj or H0)");
}

namespace {

u64 char_of(u64 q) {
    auto f = prime_factors(q);
    if (q < 2 || f.size() != 1) throw std::invalid_argument("q must be a prime power");
    return f[0];
}

// Character sets of the family without validating the parameters.
SheafShape raw_shape(const HypFamilyParams& P) {
    const i64 qm1 = static_cast<i64>(P.q - 1);
    const u64 A = P.A(), B = P.B(), C = P.C();
    SheafShape s;
    if (P.kind == Kind::Hj) {
        s.upstairs = char_set(A, QmodZ((P.b + P.c) * P.j, qm1)).shifted(P.phi);
        CharSet d1 = char_set(B, QmodZ(P.b * P.j, qm1)).shifted(P.phi);
        CharSet d2 = char_set(C, QmodZ(P.c * P.j, qm1)).shifted(P.phi);
        for (const auto& x : d1.exps)
            if (d2.contains(x)) throw std::invalid_argument("family_shape: downstairs characters not distinct");
        s.downstairs = d1;
        for (const auto& x : d2.exps) s.downstairs.exps.insert(x);
        s.downstairs.level = lcm_u(d1.level, d2.level);
    } else {
        CharSet up = char_set(A, QmodZ());
        up.exps.erase(QmodZ());
        s.upstairs = up.shifted(P.phi);
        CharSet d1 = char_set(B, QmodZ());
        CharSet d2 = char_set(C, QmodZ());
        d2.exps.erase(QmodZ());
        for (const auto& x : d1.exps)
            if (d2.contains(x)) throw std::invalid_argument("family_shape: downstairs characters not distinct");
        for (const auto& x : d2.exps) d1.exps.insert(x);
        d1.level = lcm_u(d1.level, d2.level);
        s.downstairs = d1.shifted(P.phi);
    }
    s.D = s.upstairs.size();
    s.W = s.D - s.downstairs.size();
    return s;
}

}  // namespace

std::optional<std::string> HypFamilyParams::invalid_reason() const {
    if (q < 2 || prime_factors(q).size() != 1) return "q must be a prime power";
    if (n < 3) return "n >= 3 required";
    if (m < 1 || m >= n) return "need 1 <= m <= n-1";
    const i64 Bv = static_cast<i64>(B()), Cv = static_cast<i64>(C()), qm1 = static_cast<i64>(q - 1);
    if (b * Cv - c * Bv != 1) return "bC - cB must equal 1";
    const i64 g = std::gcd(c, qm1);
    if (std::gcd(static_cast<i64>(A()), qm1 / g) != 1) return "gcd(A, (q-1)/gcd(c, q-1)) must be 1";
    if (kind == Kind::Hj && (j < 1 || j > qm1 - 1)) return "H_j requires 1 <= j <= q-2";
    if (kind == Kind::H0 && j != 0) return "H_0 requires j = 0";
    return std::nullopt;
}

void HypFamilyParams::validate() const {
    if (auto r = invalid_reason()) throw std::invalid_argument("invalid family parameters: " + *r);
}

SheafShape family_shape(const HypFamilyParams& P) {
    P.validate();
    SheafShape s = raw_shape(P);
    for (const auto& x : s.downstairs.exps)
        if (s.upstairs.contains(x))
            throw std::invalid_argument("family_shape: upstairs and downstairs share " + x.str());
    const u64 expectW = (ipow(P.q, P.m) - 1) * (ipow(P.q, P.n - P.m) - 1) / (P.q - 1);
    if (s.W != expectW) throw std::invalid_argument("family_shape: wild dimension mismatch");
    if (s.W % char_of(P.q) == 0) throw std::invalid_argument("family_shape: wild dimension divisible by p");
    return s;
}

GeomDet geom_det(const SheafShape& shape) {
    GeomDet g;
    for (const auto& x : shape.upstairs.exps) g.tame = g.tame + x;
    g.wild = shape.W == 1;
    return g;
}

std::pair<i64, i64> canonical_bc(u64 q, u32 n, u32 m) {
    if (m < 1 || m >= n || std::gcd(m, n) != 1) throw std::invalid_argument("canonical_bc: need gcd(m, n) = 1");
    const i64 A = static_cast<i64>(gauss_count(q, n)), B = static_cast<i64>(gauss_count(q, m)),
              C = static_cast<i64>(gauss_count(q, n - m)), qm1 = static_cast<i64>(q - 1);
    for (i64 b = 1; b <= B * qm1 + B; ++b) {
        if ((b * C - 1) % B != 0) continue;
        const i64 c = (b * C - 1) / B;
        if (c < 0) continue;
        if (std::gcd(A, qm1 / std::gcd(c, qm1)) == 1) return {b, c};
    }
    throw std::logic_error("canonical_bc: no admissible pair");
}

NormalizeResult normalize_params(u64 q, u32 n, u32 m, i64 b0, i64 c0, i64 j0, const QmodZ& phi) {
    char_of(q);
    if (n < 3 || m < 1 || m >= n || std::gcd(m, n) != 1)
        throw std::invalid_argument("normalize_params: need n >= 3, 1 <= m < n, gcd(m, n) = 1");
    const i64 B = static_cast<i64>(gauss_count(q, m)), C = static_cast<i64>(gauss_count(q, n - m)),
              qm1 = static_cast<i64>(q - 1);
    const i64 nn = n, mm = m;
    if (std::gcd(b0, B) != 1 || std::gcd(c0, C) != 1 || std::gcd(b0 * (nn - mm) - c0 * mm, qm1) != 1)
        throw std::invalid_argument("normalize_params: (b0, c0, m) fail the type (c) side conditions");
    if (j0 < 1 || j0 > qm1 - 1) throw std::invalid_argument("normalize_params: need 1 <= j0 <= q-2");

    NormalizeResult R;
    R.input = HypFamilyParams{q, n, m, b0, c0, j0, phi, Kind::Hj};

    u64 maxexp = 0;
    for (u64 r : prime_factors(q - 1)) {
        u64 k = 0;
        for (u64 t = q - 1; t % r == 0; t /= r) ++k;
        maxexp = std::max(maxexp, k);
    }
    R.d = maxexp + 1;
    const i64 nd = static_cast<i64>(ipow(n, static_cast<unsigned>(R.d)));
    R.e = -1;
    for (i64 e = 0; e < nd; ++e)
        if (mod(e * (nn - mm) - c0, nd) == 0) {
            R.e = e;
            break;
        }
    if (R.e < 0) throw std::logic_error("normalize_params: no e found");
    R.x = B == 1 ? 0 : mod(inverse_mod(mod(C, B), B), B);
    R.y = (R.x * C - 1) / B;
    const i64 delta = b0 * C - c0 * B;
    R.z = qm1 == 1 ? 0 : mod(inverse_mod(mod(delta, qm1), qm1), qm1);
    R.w = (R.z * delta - 1) / qm1;
    R.b_raw = R.z * (b0 - R.e * B) - qm1 * R.x * R.w;
    R.c_raw = R.z * (c0 - R.e * C) - qm1 * R.y * R.w;

    // shift by t (q-1)(B, C) so that b lands in [0, (q-1)B)
    const i64 span = qm1 * B;
    const i64 t = (mod(R.b_raw, span) - R.b_raw) / span;
    HypFamilyParams out;
    out.q = q;
    out.n = n;
    out.m = m;
    out.b = R.b_raw + t * qm1 * B;
    out.c = R.c_raw + t * qm1 * C;
    out.j = mod((b0 * (nn - mm) - c0 * mm) * j0, qm1);
    out.phi = phi + QmodZ(R.e * j0, qm1);
    out.kind = Kind::Hj;

    if (R.input.invalid_reason() == std::nullopt) {
        out = R.input;  // already normalized: identity twist
        R.e = 0;
    }
    R.output = out;
    const SheafShape in_shape = raw_shape(R.input), out_shape = raw_shape(out);
    R.sets_equal = in_shape.upstairs == out_shape.upstairs && in_shape.downstairs == out_shape.downstairs;
    return R;
}

}  // namespace wm
