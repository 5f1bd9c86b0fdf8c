#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "weilmono/cycint.hpp"
#include "weilmono/field.hpp"

using namespace wm;

namespace {

// Schoolbook product of encodings as polynomials over F_p, reduced by the field modulus.
u32 poly_mul(const FieldTable& F, u32 a, u32 b) {
    const u32 p = F.p(), e = F.e();
    std::vector<u64> x(e), y(e), z(2 * e, 0);
    for (u32 i = 0; i < e; ++i, a /= p, b /= p) {
        x[i] = a % p;
        y[i] = b % p;
    }
    for (u32 i = 0; i < e; ++i)
        for (u32 j = 0; j < e; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    const auto& mod = F.modulus();
    for (u32 d = 2 * e - 1; d >= e; --d) {
        const u64 top = z[d];
        if (top == 0) continue;
        z[d] = 0;
        for (u32 i = 0; i < e; ++i) z[d - e + i] = (z[d - e + i] + (p - top) * mod[i]) % p;
    }
    u32 out = 0;
    for (u32 i = e; i-- > 0;) out = out * p + static_cast<u32>(z[i]);
    return out;
}

std::complex<long double> numeric_sum(const std::vector<QmodZ>& xs) {
    std::complex<long double> s = 0;
    for (const auto& x : xs) {
        const long double th = 2 * std::numbers::pi_v<long double> * x.num / x.den;
        s += std::complex<long double>(std::cos(th), std::sin(th));
    }
    return s;
}

}  // namespace

TEST_CASE("integer helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(gauss_count(2, 3) == 7);
    CHECK(gauss_count(3, 3) == 13);
    CHECK(gauss_count(4, 4) == 85);
    CHECK(mult_order(2, 15) == 4);
    CHECK(mult_order(3, 13) == 3);
    CHECK(inverse_mod(3, 7) == 5);
    CHECK_THROWS(inverse_mod(2, 4));
    CHECK(mod(-3, 7) == 4);
    CHECK_THROWS_AS(ipow(2, 64), std::overflow_error);
}

TEST_CASE("QmodZ normalizes and orders by (den, num)") {
    CHECK(QmodZ(3, 6) == QmodZ(1, 2));
    CHECK(QmodZ(-1, 3) == QmodZ(2, 3));
    CHECK(QmodZ(5, 5).is_zero());
    CHECK((QmodZ(1, 3) + QmodZ(2, 3)).is_zero());
    CHECK(QmodZ::parse("4/14").str() == "2/7");
    CHECK(QmodZ(1, 2) < QmodZ(1, 3));
    CHECK(value_less(QmodZ(1, 3), QmodZ(1, 2)));
}

TEST_CASE("field construction examples") {
    FieldPtr F2 = get_field(2, 1);
    CHECK(F2->units() == 1);
    CHECK(F2->exp_enc(0) == 1);

    FieldPtr F8 = get_field(2, 3);
    CHECK(F8->order() == 8);
    CHECK(F8->modulus() == std::vector<u32>{1, 1, 0});  // x^3 + x + 1
    const Elem a = F8->gen();
    CHECK(F8->pow(a, 7) == F8->one());
    CHECK(F8->pow(a, 3) == F8->add(a, F8->one()));

    FieldPtr F3 = get_field(3, 1);
    CHECK(F3->to_enc(F3->gen()) == 2);
    CHECK_THROWS(get_field(4, 1));
    CHECK_THROWS(parse_field("2^x"));
}

TEST_CASE("table arithmetic matches polynomial arithmetic") {
    for (auto [p, e] : std::vector<std::pair<u32, u32>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 1}}) {
        FieldPtr F = get_field(p, e);
        CAPTURE(F->spec());
        for (u32 a = 0; a < F->order(); ++a)
            for (u32 b = 0; b < F->order(); ++b) {
                const Elem x = F->from_enc(a), y = F->from_enc(b);
                REQUIRE(F->to_enc(F->mul(x, y)) == poly_mul(*F, a, b));
                REQUIRE(F->to_enc(F->add(x, y)) == F->enc_add(a, b));
            }
        // generator is primitive: powers hit every unit once
        std::vector<char> seen(F->order(), 0);
        for (u64 k = 0; k < F->units(); ++k) {
            const u32 enc = F->exp_enc(k);
            CHECK_FALSE(seen[enc]);
            seen[enc] = 1;
        }
        // Frobenius is additive
        for (u32 a = 0; a < F->order(); ++a)
            for (u32 b = 0; b < F->order(); b += 3) {
                const Elem x = F->from_enc(a), y = F->from_enc(b);
                REQUIRE(F->frob(F->add(x, y), 1) == F->add(F->frob(x, 1), F->frob(y, 1)));
            }
    }
}

TEST_CASE("embeddings and norms") {
    FieldPtr F2 = get_field(2, 1), F8 = get_field(2, 3), F4 = get_field(2, 2), F64 = get_field(2, 6);
    FieldPtr F3 = get_field(3, 1), F9 = get_field(3, 2);
    CHECK(embed(*F2, *F8).map(F2->one()) == F8->one());
    const Embedding e46 = embed(*F4, *F64);
    CHECK(e46.k() == 21);
    // the image of the generator is a 21st power of the generator
    CHECK(e46.map(F4->gen()).idx % 21 == 0);
    const Embedding e39 = embed(*F3, *F9);
    CHECK(e39.map(F3->from_int(2)) == F9->pow(F9->gen(), 4));

    // the embedding is a ring map
    for (u32 a = 0; a < 4; ++a)
        for (u32 b = 0; b < 4; ++b) {
            const Elem x = F4->from_enc(a), y = F4->from_enc(b);
            CHECK(e46.map(F4->add(x, y)) == F64->add(e46.map(x), e46.map(y)));
            CHECK(e46.map(F4->mul(x, y)) == F64->mul(e46.map(x), e46.map(y)));
        }

    CHECK(norm(*F9, F9->one(), *F3) == F3->one());
    for (u32 i = 0; i < F8->units(); ++i) CHECK(norm(*F8, F8->from_index(i), *F2) == F2->one());
    CHECK(norm(*F9, F9->gen(), *F3) == F3->from_int(2));
    // norm equals the product of the conjugates
    for (u32 i = 0; i < F64->units(); ++i) {
        const Elem x = F64->from_index(i);
        Elem prod = F64->one();
        for (u32 k = 0; k < 3; ++k) prod = F64->mul(prod, F64->frob(x, 2 * k));
        CHECK(e46.map(norm(*F64, x, *F4)) == prod);
    }
}

TEST_CASE("multiplicative characters") {
    FieldPtr F8 = get_field(2, 3), F9 = get_field(3, 2), F3 = get_field(3, 1);
    CHECK(mult_char_value(*F8, QmodZ(), F8->gen()).is_zero());
    CHECK(mult_char_value(*F8, QmodZ(1, 7), F8->pow(F8->gen(), 3)) == QmodZ(3, 7));
    // chi o Norm at the generator of F_9 with chi of exponent 1/2 on F_3
    const Elem nm = norm(*F9, F9->gen(), *F3);
    CHECK(mult_char_value(*F3, QmodZ(1, 2), nm) == QmodZ(1, 2));
}

TEST_CASE("cyclotomic integers") {
    CHECK(cyc_sum(std::vector<QmodZ>{QmodZ(0, 1), QmodZ(1, 3), QmodZ(2, 3)}).is_zero());
    const CycInt two = cyc_sum(std::vector<QmodZ>{QmodZ(), QmodZ()});
    CHECK(two.is_integer());
    CHECK(two.integer_value() == 2);

    // Gauss period eta = z + z^2 + z^4 satisfies eta^2 + eta + 2 = 0
    const CycInt eta = cyc_sum(std::vector<QmodZ>{QmodZ(1, 7), QmodZ(2, 7), QmodZ(4, 7)});
    CHECK((eta * eta + eta + CycInt::integer(2)).is_zero());
    CHECK_FALSE(eta.is_integer());

    // exact sums agree with floating point on random-looking multisets
    for (u64 M : {5ull, 8ull, 12ull, 15ull, 21ull, 26ull}) {
        std::vector<QmodZ> xs;
        for (u64 k = 0; k < 3 * M; ++k) xs.emplace_back(static_cast<i64>((k * k * 7 + 3 * k) % M), static_cast<i64>(M));
        const auto exact = cyc_sum(xs).approx();
        const auto num = numeric_sum(xs);
        CHECK(std::abs(exact - num) < 1e-9L);
        // sum of all M-th roots vanishes
        std::vector<QmodZ> all;
        for (u64 k = 0; k < M; ++k) all.emplace_back(static_cast<i64>(k), static_cast<i64>(M));
        CHECK(cyc_sum(all).is_zero());
    }

    // relevel keeps the value
    const CycInt r = CycInt::root(QmodZ(1, 3));
    CHECK(r.relevel(12) == CycInt::root(QmodZ(4, 12)).relevel(12));
    CHECK(r * r * r == CycInt::integer(1, 3));
}
