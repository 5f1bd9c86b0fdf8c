#include "weilmono/report.hpp"

namespace wm {

Json to_json(const QmodZ& x) { return x.str(); }

Json to_json(const CycInt& x) {
    Json j;
    j["level"] = x.level();
    j["coeffs"] = x.coeffs();
    return j;
}

Json to_json(const Rational& x) {
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Json to_json(const Spectrum& s) {
    Json arr = Json::array();
    for (const auto& [exp, mult] : s) arr.push_back(Json{{"exp", exp.str()}, {"mult", mult}});
    return arr;
}

Json to_json(const CharSet& s) { return s.strs(); }

Json to_json(const HypFamilyParams& p) {
    return Json{{"q", p.q},       {"n", p.n},         {"m", p.m},
                {"b", p.b},       {"c", p.c},         {"j", p.j},
                {"phi", p.phi.str()}, {"kind", kind_name(p.kind)}};
}

Json to_json(const SheafShape& s) {
    return Json{{"upstairs", to_json(s.upstairs)}, {"downstairs", to_json(s.downstairs)}, {"D", s.D}, {"W", s.W}};
}

Json to_json(const NormalizeResult& r) {
    return Json{{"input", to_json(r.input)},
                {"output", to_json(r.output)},
                {"d", r.d},
                {"e", r.e},
                {"x", r.x},
                {"y", r.y},
                {"z", r.z},
                {"w", r.w},
                {"b_raw", r.b_raw},
                {"c_raw", r.c_raw},
                {"sets_equal", r.sets_equal}};
}

Json to_json(const VTestInstance& i) {
    return Json{{"variant", variant_name(i.variant)},
                {"q", i.q},
                {"p", i.p},
                {"n", i.n},
                {"m", i.m},
                {"A", i.A},
                {"B", i.B},
                {"C", i.C},
                {"T", i.T},
                {"t", i.t.str()},
                {"s", i.s},
                {"modulus", i.M}};
}

Json to_json(const VTestReport& r) {
    Json j{{"instance", to_json(r.inst)}, {"verdict", r.verdict()}};
    if (r.witness) {
        const VWitness& w = *r.witness;
        j["witness"] = Json{{"N", w.N}, {"x", w.x.str()}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)},
                            {"source", w.source}};
    } else {
        j["witness"] = nullptr;
    }
    j["pairs_checked"] = r.pairs_checked;
    j["orbits_skipped"] = r.orbits_skipped;
    if (r.internal_asserted)
        j["internal"] = Json{{"checked", r.internal_checked}, {"failed", r.internal_failed}};
    return j;
}

Json to_json(const ClassifyReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"rep", e.rep.str()},
                               {"class_size", e.class_size},
                               {"order", e.order},
                               {"max_mult", e.max_mult},
                               {"type", e.type}});
    return Json{{"n", r.n},           {"q", r.q},
                {"j", r.j},           {"entries", entries},
                {"missing", r.missing}, {"unexpected", r.unexpected},
                {"verdict", r.matches() ? "PASS" : "FAIL"}};
}

Json to_json(const CycleReport& r) {
    return Json{{"expected_length", r.expected_length},
                {"span_count", r.span_count},
                {"cycle_lengths", r.cycle_lengths},
                {"closed", r.closed},
                {"verdict", r.single_cycle() ? "PASS" : "FAIL"}};
}

Json to_json(const TraceLawReport& r) {
    Json hist = Json::array();
    for (const auto& [w, c] : r.w_histogram) hist.push_back(Json{{"W", w}, {"count", c}});
    return Json{{"field", r.field},
                {"points", r.points},
                {"w_form_fail", r.w_form_fail},
                {"direct_sum_fail", r.direct_sum_fail},
                {"exhaustive_fail", r.exhaustive_fail},
                {"pullback_fail", r.pullback_fail},
                {"pullback_plus_fail", r.pullback_plus_fail},
                {"pushforward_fail", r.pushforward_fail},
                {"full_dim_points", r.full_dim_points},
                {"full_dim_orbits", r.full_dim_orbits},
                {"dim_over_n", r.dim_over_n},
                {"w_histogram", hist},
                {"verdict", r.pass() ? "PASS" : "FAIL"}};
}

Json to_json(const PushforwardReport& r) {
    Json hist = Json::array();
    for (const auto& [sz, c] : r.fiber_sizes) hist.push_back(Json{{"fiber", sz}, {"count", c}});
    return Json{{"points", r.points},
                {"g0_mismatch", r.g0_mismatch},
                {"w_mismatch", r.w_mismatch},
                {"fiber_sizes", hist},
                {"verdict", r.pass() ? "PASS" : "FAIL"}};
}

Json to_json(const TraceTuple& t) {
    Json arr = Json::array();
    for (const auto& x : t) arr.push_back(to_json(x));
    return arr;
}

Json to_json(const AuditReport& r) {
    Json unmatched = Json::array();
    for (const auto& u : r.unmatched)
        unmatched.push_back(Json{{"field", u.field}, {"u_index", u.u_index}, {"tuple", to_json(u.tuple)},
                                 {"tuple_str", tuple_str(u.tuple)}});
    Json pulls = Json::array();
    for (const auto& p : r.pullbacks)
        pulls.push_back(Json{{"f", p.f}, {"distinct_tuples", p.points}, {"unmatched", p.unmatched}});
    Json distinct = Json::object();
    for (const auto& [f, c] : r.distinct_tuples) distinct[f] = c;
    return Json{{"params", to_json(r.params)},
                {"prediction", Json{{"d", r.prediction.d},
                                    {"group_order", r.prediction.group_order},
                                    {"e_candidates", r.prediction.e_candidates},
                                    {"kernel_order", r.prediction.kernel_order}}},
                {"checked_fields", r.checked_fields},
                {"e", r.e ? Json(*r.e) : Json(nullptr)},
                {"j_perm", r.j_perm},
                {"points", r.points},
                {"matched", r.matched},
                {"unmatched", unmatched},
                {"w_form_fail", r.w_form_fail},
                {"w0_observed", r.w0_observed},
                {"w0_in_group_values", r.w0_in_group_values},
                {"w0_in_qk_minus_2", r.w0_in_qk_minus_2},
                {"distinct_tuples", distinct},
                {"pullbacks", pulls},
                {"center", Json{{"applicable", r.center.applicable},
                                {"passed", r.center.passed},
                                {"failed", r.center.failed}}},
                {"verdict", r.verdict()}};
}

Json to_json(const TrinomialParams& p) {
    return Json{{"q", p.q}, {"n", p.n}, {"m", p.m}, {"x_idx", p.x_idx}, {"y_idx", p.y_idx}, {"r", p.r}, {"s", p.s}};
}

Json to_json(const ChainReport& r) {
    Json fields = Json::array();
    for (const auto& f : r.fields)
        fields.push_back(Json{{"field", f.field},
                              {"skipped", f.skipped},
                              {"points", f.points},
                              {"pullback_fail", f.pullback_fail},
                              {"translate_fail", f.translate_fail},
                              {"kummer_fail", f.kummer_fail},
                              {"frobenius_fail", f.frobenius_fail},
                              {"family_fail", f.family_fail},
                              {"direct_fail", f.direct_fail}});
    return Json{{"params", to_json(r.params)},
                {"chain", Json{{"M", r.chain.M},
                               {"N", r.chain.N},
                               {"K0", r.chain.K0},
                               {"yprime_idx", r.chain.yprime_idx},
                               {"z_idx", r.chain.z_idx}}},
                {"family_bc", Json::array({r.b, r.c})},
                {"fields", fields},
                {"verdict", r.pass() ? "PASS" : "FAIL"}};
}

Json to_json(const GaloisEvidence& e) {
    Json shapes = Json::array();
    for (const auto& [s, c] : e.shapes) shapes.push_back(Json{{"shape", shape_str(s)}, {"count", c}});
    Json bad = Json::array();
    for (const auto& s : e.unrealizable) bad.push_back(shape_str(s));
    return Json{{"params", to_json(e.params)},
                {"fields", e.fields},
                {"points", e.points},
                {"shapes", shapes},
                {"unrealizable", bad},
                {"root_count_fail", e.root_count_fail},
                {"shape_count_fail", e.shape_count_fail},
                {"order_lcm", e.order_lcm},
                {"gl_exponent", e.gl_exponent},
                {"gl_shape_count", e.gl_shape_count},
                {"verdict", e.verdict()}};
}

Json envelope(const std::string& command, const Json& payload) {
    Json j{{"schema", kSchemaVersion}, {"command", command}};
    for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
    return j;
}

}  // namespace wm
