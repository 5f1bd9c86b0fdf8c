#include <doctest.h>

#include <set>

#include "weilmono/weil.hpp"

using namespace wm;

namespace {

// (q-1) tr(g | W_j) = sum_k lambda^(jk) #{v != 0 : g v = alpha^k v}, counted vector by vector.
CycInt scaled_trace_oracle(const GLElement& g, i64 j) {
    const FieldTable& F = g.field();
    const VecSpace V(g.field_ptr(), g.n());
    const u64 qm1 = F.units();
    std::vector<i64> count(qm1, 0);
    for (u64 idx = 1; idx < V.size(); ++idx) {
        const auto v = V.decode(idx);
        const auto w = g.apply(v);
        for (u64 k = 0; k < qm1; ++k) {
            bool eq = true;
            for (u32 i = 0; i < v.size() && eq; ++i) eq = w[i] == F.mul(F.from_index(static_cast<i64>(k)), v[i]);
            if (eq) ++count[k];
        }
    }
    CycInt s(qm1);
    for (u64 k = 0; k < qm1; ++k)
        s += CycInt::integer(count[k], qm1) * CycInt::root(QmodZ(static_cast<i64>(j * k % qm1), static_cast<i64>(qm1)));
    return s;
}

i64 total_mult(const Spectrum& s) {
    i64 t = 0;
    for (const auto& [x, m] : s) t += m;
    return t;
}

}  // namespace

TEST_CASE("orbit decomposition examples") {
    FieldPtr F3 = field_for_q(3), F2 = field_for_q(2);
    const auto id = orbit_decompose(GLElement::identity(F3, 3));
    CHECK(id.size() == 13);
    for (const auto& o : id) CHECK((o.s == 1 && o.t == 0));

    const auto sc = orbit_decompose(GLElement::scalar(F3, 3, F3->gen()));
    CHECK(sc.size() == 13);
    for (const auto& o : sc) CHECK((o.s == 1 && o.t == 1));

    const auto si = orbit_decompose(singer_element(F2, 3, 1));
    REQUIRE(si.size() == 1);
    CHECK(si[0].s == 7);
    CHECK(si[0].t == 0);
}

TEST_CASE("spectrum examples") {
    FieldPtr F3 = field_for_q(3), F2 = field_for_q(2);
    for (i64 j : {0, 1}) {
        const Spectrum s = weil_spectrum(GLElement::scalar(F3, 3, F3->gen()), j);
        REQUIRE(s.size() == 1);
        CHECK(s.begin()->first == QmodZ(j, 2));
        CHECK(s.begin()->second == 13);
    }
    const GLElement d = GLElement::diag(F3, {F3->one(), F3->one(), F3->from_int(2)});
    const Spectrum s = weil_spectrum(d, 1);
    CHECK(total_mult(s) == 13);
    CHECK(s.at(QmodZ()) == 8);
    CHECK(s.at(QmodZ(1, 2)) == 5);
    CHECK(weil_trace(d, 1) == CycInt::integer(3));

    const GLElement g = singer_element(F2, 3, 1);
    CHECK(weil_trace(g, 0).is_zero());
    CHECK(cyc_sum(weil_spectrum(g, 0, true)) == CycInt::integer(-1));
    CHECK(weil_trace(GLElement::identity(F3, 3), 1) == CycInt::integer(13));
}

TEST_CASE("traces agree with the fixed-vector oracle on every class") {
    for (auto [q, n] : std::vector<std::pair<u64, u32>>{{2, 3}, {3, 3}, {4, 2}, {5, 2}}) {
        FieldPtr F = field_for_q(q);
        const GroupClasses& G = group_classes(F, n);
        CAPTURE(q);
        CAPTURE(n);
        for (u64 rep : G.reps) {
            const GLElement g = GLElement::from_index(F, n, rep);
            for (i64 j = 0; j < static_cast<i64>(q - 1); ++j) {
                const Spectrum s = weil_spectrum(g, j);
                CHECK(total_mult(s) == static_cast<i64>(gauss_count(q, n)));
                const CycInt tr = weil_trace(g, j);
                CHECK(cyc_sum(s) == tr);
                CHECK(CycInt::integer(static_cast<i64>(q - 1)) * tr == scaled_trace_oracle(g, j));
            }
        }
    }
}

TEST_CASE("group enumeration") {
    CHECK(gl_order(2, 3) == 168);
    CHECK(gl_order(3, 3) == 11232);
    const GroupClasses& G = group_classes(field_for_q(2), 3);
    u64 total = 0;
    for (u64 s : G.sizes) total += s;
    CHECK(total == 168);
    CHECK(G.reps.size() == 6);
    CHECK(group_classes(field_for_q(3), 3).reps.size() == 24);
}

TEST_CASE("Singer and block elements") {
    FieldPtr F2 = field_for_q(2), F3 = field_for_q(3);
    const GLElement s = singer_element(F2, 3, 1);
    CHECK(s.order() == 7);
    CHECK(s.det() == F2->one());
    CHECK(singer_element(F2, 3, 7) == GLElement::identity(F2, 3));
    CHECK(singer_element(F3, 3, 13) == GLElement::scalar(F3, 3, F3->from_int(2)));

    CHECK(block_element(F2, 3, 1, 1, 0) == GLElement::identity(F2, 3));
    CHECK(block_element(F2, 3, 1, 1, 1).order() == 3);
    CHECK(block_element(F3, 3, 1, 1, 3).order() == 8);
    CHECK(block_conditions(3, 3, 1, 1, 3));
    CHECK_FALSE(block_conditions(3, 4, 2, 1, 1));
}

TEST_CASE("classify_m2 lists only the expected types") {
    const ClassifyReport r = classify_m2(3, 2, 0);
    CHECK(r.matches());
    std::set<std::string> types;
    for (const auto& e : r.entries) {
        types.insert(e.type);
        CHECK(e.max_mult <= 2);
    }
    CHECK(types == std::set<std::string>{"a", "c"});
    for (const auto& e : r.entries) {
        if (e.type == "a") CHECK(e.order == 7);
        if (e.type == "c") CHECK(e.order == 3);
    }

    const ClassifyReport r3 = classify_m2(3, 3, 1);
    CHECK(r3.matches());
    const GroupClasses& G = group_classes(field_for_q(3), 3);
    std::set<int> listed;
    for (const auto& e : r3.entries) listed.insert(G.class_id(e.rep));
    for (i64 a : {1, 2, 4, 5, 7}) CHECK(listed.count(G.class_id(singer_element(field_for_q(3), 3, a))));

    const ClassifyReport r4 = classify_m2(4, 2, 0);
    CHECK(r4.matches());
    for (const auto& e : r4.entries) CHECK(e.type != "b");
}

TEST_CASE("cycle check examples") {
    const CycleReport a = cycle_check(2, 3, 1, 1, 1, 0);
    CHECK(a.single_cycle());
    CHECK(a.expected_length == 3);
    const CycleReport b = cycle_check(3, 3, 1, 1, 3, 1);
    CHECK(b.single_cycle());
    CHECK(b.expected_length == 8);
    const CycleReport c = cycle_check(2, 3, 2, 1, 1, 0);
    CHECK(c.single_cycle());
    CHECK(c.expected_length == 3);
    CHECK_THROWS_AS(cycle_check(3, 4, 2, 1, 1, 0), std::invalid_argument);
}
