#include <doctest.h>

#include <numeric>
#include <set>
#include <tuple>

#include "weilmono/trinomial.hpp"
#include "weilmono/weil.hpp"

using namespace wm;

TEST_CASE("parameter validation and chain exponents") {
    TrinomialParams T{2, 3, 1, 0, 0, 1, 1};
    CHECK_FALSE(T.invalid_reason());
    CHECK(T.chain_exponent() == 1);
    CHECK(chain_transform(T).N == 1);
    TrinomialParams T2{2, 3, 1, 0, 0, 2, 1};
    CHECK(T2.chain_exponent() == 8);
    CHECK(chain_transform(T2).N == 8);
    TrinomialParams deg{2, 3, 1, 0, 0, 6, 7};  // 7r = 6s
    CHECK(deg.invalid_reason());
    CHECK_THROWS_AS(deg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(chain_transform(deg), std::invalid_argument);
}

TEST_CASE("root counts") {
    TrinomialParams T{2, 3, 1, 0, 0, 1, 1};
    FieldPtr F2 = get_field(2, 1), F8 = get_field(2, 3);
    CHECK(count_roots(F2->one(), F2, T) == 0);
    CHECK(count_roots(F8->one(), F8, T) == 0);
    for (auto [p, e, q] : std::vector<std::tuple<u32, u32, u64>>{{2, 6, 2}, {2, 7, 2}, {3, 4, 3}, {2, 6, 4}}) {
        TrinomialParams P{q, 3, 1, 0, 0, 1, 1};
        FieldPtr K = get_field(p, e);
        for (u32 i = 0; i < K->units(); ++i) {
            const Elem u = K->from_index(i);
            const u64 c = count_roots(u, K, P);
            REQUIRE(c == count_roots_direct(u, K, P));
            u64 v = c + 1;
            while (v % q == 0) v /= q;
            CHECK(v == 1);
        }
    }
}

TEST_CASE("trace chain") {
    TrinomialParams T{2, 3, 1, 0, 0, 1, 1};
    const ChainReport r = trace_chain_check(T, {get_field(2, 3), get_field(2, 6)});
    CHECK(r.pass());
    for (const auto& f : r.fields) {
        CHECK_FALSE(f.skipped);
        CHECK(f.points > 0);
    }
    TrinomialParams T3{3, 3, 1, 0, 0, 1, 1};
    CHECK(trace_chain_check(T3, {get_field(3, 1), get_field(3, 2), get_field(3, 4)}).pass());

    // a field missing K0 is skipped, and a report with only skipped fields does not pass
    TrinomialParams T4{4, 3, 1, 1, 2, 1, 1};
    const ChainData cd = chain_transform(T4);
    CHECK(cd.K0_degree >= 2);
    const ChainReport skipped = trace_chain_check(T4, {get_field(2, 2)});
    CHECK(skipped.fields.at(0).skipped);
    CHECK_FALSE(skipped.pass());
}

TEST_CASE("cycle shapes of GL_3(F_2)") {
    const auto shapes = gl_cycle_shapes(2, 3);
    const std::set<CycleShape> want{{1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 2, 2}, {1, 3, 3}, {1, 2, 4}, {7}};
    CHECK(shapes == want);
    CHECK(shape_str({1, 2, 4}) == "1 2 4");
}

TEST_CASE("distinct-degree factorization") {
    FieldPtr F2 = get_field(2, 1);
    const Elem o = F2->one(), z = F2->zero();
    // x^7 - 1 = (x+1)(x^3+x+1)(x^3+x^2+1) over F_2
    CHECK(factor_degrees(*F2, {o, z, z, z, z, z, z, o}) == CycleShape{1, 3, 3});
    // x^4 + x + 1 irreducible
    CHECK(factor_degrees(*F2, {o, o, z, z, o}) == CycleShape{4});
    // x^2 + x = x (x + 1)
    CHECK(factor_degrees(*F2, {z, o, o}) == CycleShape{1, 1});
    // over F_4 every quadratic with a root splits
    FieldPtr F4 = get_field(2, 2);
    const Elem a = F4->gen();
    // (x - a)(x - a^2) = x^2 + (a + a^2) x + a^3
    CHECK(factor_degrees(*F4, {F4->pow(a, 3), F4->add(a, F4->pow(a, 2)), F4->one()}) == CycleShape{1, 1});
}

TEST_CASE("Galois evidence") {
    TrinomialParams T{2, 3, 1, 0, 0, 1, 1};
    const GaloisEvidence ev = galois_evidence(T, {get_field(2, 3), get_field(2, 6), get_field(2, 9)});
    CHECK(ev.pass());
    CHECK(ev.unrealizable.empty());
    CHECK(ev.gl_shape_count == 5);
    for (const auto& [s, c] : ev.shapes) CHECK(std::accumulate(s.begin(), s.end(), u64{0}) == 7);
    CHECK(ev.verdict().find("SL_n(F_q)") != std::string::npos);
}
