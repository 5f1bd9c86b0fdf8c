#include "weilmono/kubert.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "weilmono/parallel.hpp"

namespace wm {

namespace {

u32 char_of(u64 q) {
    auto f = prime_factors(q);
    if (q < 2 || f.size() != 1) throw std::invalid_argument("q must be a prime power");
    return static_cast<u32>(f[0]);
}

}  // namespace

Rational kubert_v(const QmodZ& x, u32 p) {
    if (x.den % p == 0) throw std::invalid_argument("kubert_v: denominator divisible by p");
    if (x.num == 0) return Rational(0);
    const u64 d = static_cast<u64>(x.den);
    const u64 f = mult_order(p, d);
    u64 r = static_cast<u64>(x.num), sum = 0;
    for (u64 i = 0; i < f; ++i) {
        sum += r;
        r = r * p % d;
    }
    return Rational(static_cast<i64>(sum), static_cast<i64>(f * d));
}

VTable::VTable(u64 M, u32 p) : M_(M), f_(M == 1 ? 1 : mult_order(p, M)), vals_(M, -1) {
    if (M % p == 0) throw std::invalid_argument("VTable: modulus divisible by p");
    // each Frobenius orbit shares one value
    vals_[0] = 0;
    for (u64 u = 1; u < M; ++u) {
        if (vals_[u] >= 0) continue;
        i64 sum = 0;
        u64 r = u;
        for (u64 i = 0; i < f_; ++i) {
            sum += static_cast<i64>(r);
            r = r * p % M;
        }
        for (u64 i = 0; i < f_; ++i) {
            vals_[r] = sum;
            r = r * p % M;
        }
    }
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::W1: return "W1";
        case Variant::W1Reduced: return "W1-reduced";
        case Variant::Wbig: return "Wbig";
        case Variant::TauTrivial: return "tau-trivial";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "W1") return Variant::W1;
    if (s == "W1-reduced") return Variant::W1Reduced;
    if (s == "Wbig") return Variant::Wbig;
    if (s == "tau-trivial") return Variant::TauTrivial;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

u64 default_modulus(Variant v, u64 q, u32 n, u32 m) {
    const u64 A = gauss_count(q, n), T = gauss_count(q, n - 1);
    switch (v) {
        case Variant::W1:
        case Variant::W1Reduced: return lcm_u(A, T);
        case Variant::Wbig: return lcm_u(lcm_u(A, T), lcm_u(gauss_count(q, m), gauss_count(q, n - m)));
        case Variant::TauTrivial: return lcm_u(A, lcm_u(gauss_count(q, m), gauss_count(q, n - m)));
    }
    return 0;
}

VTestInstance make_vtest(Variant v, u64 q, u32 n, u32 m, const QmodZ& t, i64 s, u64 M) {
    VTestInstance in;
    in.variant = v;
    in.q = q;
    in.p = char_of(q);
    if (n < 3) throw std::invalid_argument("vtest: n >= 3 required");
    in.n = n;
    in.A = gauss_count(q, n);
    in.T = gauss_count(q, n - 1);
    const bool w1 = v == Variant::W1 || v == Variant::W1Reduced;
    if (w1) {
        in.m = 0;
    } else {
        if (m < 1 || m >= n) throw std::invalid_argument("vtest: need 1 <= m <= n-1");
        in.m = m;
        in.B = gauss_count(q, m);
        in.C = gauss_count(q, n - m);
    }
    if (v == Variant::TauTrivial) {
        in.t = QmodZ();
    } else {
        in.t = t;
        if (in.T % static_cast<u64>(t.den) != 0)
            throw std::invalid_argument("vtest: order of t must divide (q^(n-1)-1)/(q-1)");
        if (w1 && t.is_zero()) throw std::invalid_argument("vtest: W1 requires t not in Z");
    }
    if (w1) {
        if (s < 1 || static_cast<u64>(s) >= in.A) throw std::invalid_argument("vtest: need 1 <= s <= A-1");
        in.s = s;
    }
    in.M = M ? M : default_modulus(v, q, n, m);
    if (in.M % in.p == 0) throw std::invalid_argument("vtest: modulus divisible by p");
    if (in.M % static_cast<u64>(in.t.den) != 0) throw std::invalid_argument("vtest: modulus not divisible by den(t)");
    if (w1 && in.M % in.A != 0) throw std::invalid_argument("vtest: modulus not divisible by A");
    return in;
}

std::pair<Rational, Rational> vtest_sides(const VTestInstance& in, i64 N, const QmodZ& x) {
    const u32 p = in.p;
    auto V = [p](const QmodZ& y) { return kubert_v(y, p); };
    const i64 A = static_cast<i64>(in.A), B = static_cast<i64>(in.B), C = static_cast<i64>(in.C);
    const QmodZ Nt = in.t * N;
    switch (in.variant) {
        case Variant::W1:
        case Variant::W1Reduced: {
            const QmodZ Ns = QmodZ(N * in.s % A, A);
            Rational lhs = V(Nt + x * A) + V(-(x * A)) + Rational(3, 2);
            Rational first = in.variant == Variant::W1
                                 ? (Rational(A - 2) * V(Nt) + V(Nt - Ns)) / Rational(A - 1)
                                 : V(Nt);
            Rational rhs = first + V(Nt + x) + V(-x) + V(-Ns - x);
            return {lhs, rhs};
        }
        case Variant::Wbig:
            return {V(Nt + x * A) + V(-(x * B)) + V(-(x * C)), V(Nt + x) + V(-x)};
        case Variant::TauTrivial:
            return {V(x * A) + V(-(x * B)) + V(-(x * C)), Rational(x.is_zero() ? 0 : 1)};
    }
    return {};
}

namespace {

struct Evaluator {
    const VTestInstance& in;
    const VTable& tab;
    u64 M, tM, sM;
    i64 L;

    Evaluator(const VTestInstance& i, const VTable& t)
        : in(i), tab(t), M(i.M), tM(static_cast<u64>(i.t.num) * (i.M / static_cast<u64>(i.t.den))),
          sM(i.A && i.M % i.A == 0 ? static_cast<u64>(i.s) * (i.M / i.A) % i.M : 0),
          L(static_cast<i64>(t.denom())) {}

    i64 v(u64 r) const { return tab.num(r % M); }
    u64 neg(u64 r) const { r %= M; return r ? M - r : 0; }

    // lhs - rhs cleared of denominators; negative means the inequality fails
    i64 slack(u64 N, u64 u) const {
        const u64 Nt = N % M * tM % M;
        const i64 A = static_cast<i64>(in.A);
        switch (in.variant) {
            case Variant::W1:
            case Variant::W1Reduced: {
                const u64 Ns = N % M * sM % M;
                const u64 Au = in.A % M * u % M;
                const i64 L1 = v(Nt + Au), L2 = v(neg(Au));
                const i64 R0 = v(Nt), R1 = v(Nt + neg(Ns)), R2 = v(Nt + u), R3 = v(neg(u)),
                          R4 = v(neg(Ns + u));
                if (in.variant == Variant::W1)
                    return 2 * (A - 1) * (L1 + L2) + 3 * (A - 1) * L -
                           (2 * ((A - 2) * R0 + R1) + 2 * (A - 1) * (R2 + R3 + R4));
                return 2 * (L1 + L2) + 3 * L - 2 * (R0 + R2 + R3 + R4);
            }
            case Variant::Wbig:
                return v(Nt + in.A % M * u) + v(neg(in.B % M * u)) + v(neg(in.C % M * u)) -
                       (v(Nt + u) + v(neg(u)));
            case Variant::TauTrivial:
                return v(in.A % M * u) + v(neg(in.B % M * u)) + v(neg(in.C % M * u)) - (u % M ? L : 0);
        }
        return 0;
    }
};

QmodZ as_point(u64 u, u64 M) { return QmodZ(static_cast<i64>(u), static_cast<i64>(M)); }

void fill_witness(VTestReport& rep, i64 N, const QmodZ& x, const char* source) {
    VWitness w;
    w.N = N;
    w.x = x;
    std::tie(w.lhs, w.rhs) = vtest_sides(rep.inst, N, x);
    w.source = source;
    rep.holds = false;
    rep.witness = w;
}

std::vector<std::pair<i64, QmodZ>> targeted_candidates(const VTestInstance& in) {
    std::vector<std::pair<i64, QmodZ>> out;
    auto representable = [&](const QmodZ& x) { return in.M % static_cast<u64>(x.den) == 0; };
    if (in.variant == Variant::W1 || in.variant == Variant::W1Reduced) {
        const i64 A = static_cast<i64>(in.A);
        if ((3 * in.s) % A == 0) out.emplace_back(1, QmodZ(3 * in.s / A, A));
    } else if (in.variant == Variant::Wbig && !in.t.is_zero()) {
        for (u32 f = 0; f < in.m; ++f) out.emplace_back(static_cast<i64>(ipow(in.q, f)), QmodZ(1, static_cast<i64>(in.B)));
        for (u32 f = 0; f < in.n - in.m; ++f)
            out.emplace_back(static_cast<i64>(ipow(in.q, f)), QmodZ(1, static_cast<i64>(in.C)));
    }
    std::erase_if(out, [&](const auto& c) { return !representable(c.second) || c.second.is_zero(); });
    return out;
}

void assert_internal(VTestReport& rep, const Evaluator& ev) {
    const VTestInstance& in = rep.inst;
    if (in.M % in.A != 0 || in.M % static_cast<u64>(in.t.den) != 0) return;
    rep.internal_asserted = true;
    const u64 M = in.M, step = M / in.A;
    const u32 e = [&] { u32 k = 0; for (u64 t = in.q; t > 1; t /= in.p) ++k; return k; }();
    const i64 gran = static_cast<i64>((in.p - 1) * in.n * (in.n - 1) * e);
    const i64 L = ev.L;
    std::vector<u64> units;
    for (u64 N = 1; N < std::max<u64>(M, 2); ++N)
        if (std::gcd(N, M) == 1) units.push_back(N);
    for (u64 N : units) {
        const u64 Nt = N * ev.tM % M, Ns = N * ev.sM % M;
        for (u64 u = 1; u < in.A; ++u) {
            const u64 x = (ev.neg(Nt) + u * step) % M;
            ++rep.internal_checked;
            bool ok = ev.slack(N, x) + ev.slack(M - N, ev.neg(x)) == 0;
            // 2L * (V(u/A) + V(Nt - u/A) + V(Nt - (Ns+u)/A) - 3/2) must lie in (2L/gran) Z
            const i64 twice = 2 * (ev.v(u * step) + ev.v(Nt + ev.neg(u * step)) + ev.v(Nt + ev.neg(Ns + u * step))) - 3 * L;
            if ((twice * gran) % (2 * L) != 0) ok = false;
            if (!ok) ++rep.internal_failed;
        }
    }
}

}  // namespace

VTestReport run_vtest(const VTestInstance& in, bool want_internal) {
    VTestReport rep;
    rep.inst = in;
    const VTable tab(in.M, in.p);
    const Evaluator ev(in, tab);
    const u64 M = in.M;

    if (want_internal && (in.variant == Variant::W1 || in.variant == Variant::W1Reduced)) assert_internal(rep, ev);

    for (const auto& [N, x] : targeted_candidates(in)) {
        const u64 u = static_cast<u64>(x.num) * (M / static_cast<u64>(x.den)) % M;
        ++rep.pairs_checked;
        if (ev.slack(static_cast<u64>(N) % M, u) < 0) {
            fill_witness(rep, N, x, "targeted");
            return rep;
        }
    }

    std::vector<u64> Ns;
    if (in.variant == Variant::TauTrivial || M == 1) Ns.push_back(1);
    else
        for (u64 N = 1; N < M; ++N)
            if (std::gcd(N, M) == 1) Ns.push_back(N);
    const bool tau = in.variant == Variant::TauTrivial;
    const u64 f = tab.f();

    struct Slot {
        u64 checked = 0, skipped = 0;
        std::optional<u64> bad_u;
    };
    std::vector<Slot> slots(Ns.size());
    std::atomic<std::size_t> first_bad{Ns.size()};
    parallel_for(Ns.size(), [&](std::size_t k) {
        if (k > first_bad.load()) return;
        const u64 N = Ns[k];
        Slot& sl = slots[k];
        for (u64 u = tau ? 1 : 0; u < M; ++u) {
            // representative check: (N, u) must be the smallest pair in its p-orbit
            bool rep_ok = true;
            u64 pn = N, pu = u;
            for (u64 i = 1; i < f; ++i) {
                pn = tau ? N : pn * in.p % M;
                pu = pu * in.p % M;
                if (pn < N || (pn == N && pu < u)) {
                    rep_ok = false;
                    break;
                }
            }
            if (!rep_ok) {
                ++sl.skipped;
                continue;
            }
            ++sl.checked;
            if (ev.slack(N, u) < 0) {
                sl.bad_u = u;
                std::size_t cur = first_bad.load();
                while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
                }
                return;
            }
        }
    });
    const std::size_t bad = first_bad.load();
    for (std::size_t k = 0; k < Ns.size() && k <= bad; ++k) {
        rep.pairs_checked += slots[k].checked;
        rep.orbits_skipped += slots[k].skipped;
    }
    if (bad < Ns.size()) fill_witness(rep, static_cast<i64>(Ns[bad]), as_point(*slots[bad].bad_u, M), "scan");
    return rep;
}

VTestReport vtest_W1(u64 q, u32 n, const QmodZ& t, i64 s, u64 M, bool reduced) {
    return run_vtest(make_vtest(reduced ? Variant::W1Reduced : Variant::W1, q, n, 0, t, s, M));
}

VTestReport vtest_Wbig(u64 q, u32 n, u32 m, const QmodZ& t, u64 M) {
    return run_vtest(make_vtest(Variant::Wbig, q, n, m, t, 0, M));
}

VTestReport vtest_tau_trivial(u64 q, u32 n, u32 m, u64 M) {
    return run_vtest(make_vtest(Variant::TauTrivial, q, n, m, QmodZ(), 0, M));
}

}  // namespace wm
