#include <doctest.h>

#include "weilmono/report.hpp"

using namespace wm;

TEST_CASE("scalar encodings") {
    CHECK(to_json(QmodZ(2, 6)) == "1/3");
    CHECK(to_json(Rational(2, 8)) == "1/4");
    const Json c = to_json(CycInt::root(QmodZ(1, 3)));
    CHECK(c["level"] == 3);
    CHECK(c["coeffs"].is_array());
    const Json s = to_json(Spectrum{{QmodZ(1, 2), 3}});
    CHECK(s.dump() == R"([{"exp":"1/2","mult":3}])");
}

TEST_CASE("envelope puts schema and command first") {
    const Json j = envelope("family", Json{{"a", 1}});
    auto it = j.begin();
    CHECK(it.key() == "schema");
    CHECK(it.value() == kSchemaVersion);
    ++it;
    CHECK(it.key() == "command");
    CHECK(j["a"] == 1);
}

TEST_CASE("reports embed their parameters and serialize deterministically") {
    HypFamilyParams P{2, 3, 1, 1, 2, 0, QmodZ(), Kind::H0};
    const std::vector<FieldPtr> fields{get_field(2, 3), get_field(2, 6)};
    const std::string a = to_json(frobenius_trace_audit(P, fields)).dump();
    const std::string b = to_json(frobenius_trace_audit(P, fields)).dump();
    CHECK(a == b);
    const Json j = Json::parse(a);
    CHECK(j["params"]["q"] == 2);
    CHECK(j["params"]["kind"] == "H0");
    CHECK(j["verdict"] == "PASS");
    CHECK(j["checked_fields"] == Json::array({"2^3", "2^6"}));

    const Json v = to_json(vtest_W1(2, 4, QmodZ(1, 7), 5, 105));
    CHECK(v["instance"]["modulus"] == 105);
    CHECK(v["verdict"] == "FAILS");
    CHECK(v["witness"]["x"] == "1/15");
    CHECK(v["witness"]["N"] == 1);
    const Json h = to_json(vtest_tau_trivial(2, 3, 1, 7));
    CHECK(h["witness"].is_null());
}
