#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "weilmono/acceptance.hpp"
#include "weilmono/parallel.hpp"
#include "weilmono/report.hpp"

using namespace wm;

namespace {

constexpr int kExitPass = 0, kExitUsage = 1, kExitFail = 2;

struct Globals {
    std::string format = "json";
    unsigned threads = 0;
    u64 ceiling = 0;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<FieldPtr> parse_fields(const std::string& list) {
    std::vector<FieldPtr> out;
    for (const auto& f : split_list(list)) out.push_back(parse_field(f));
    if (out.empty()) throw std::invalid_argument("empty field list");
    return out;
}

void emit(const Globals& g, const std::string& command, const Json& payload, const std::string& human) {
    if (g.format == "human") std::cout << human;
    else std::cout << envelope(command, payload).dump(2) << "\n";
}

std::string join_set(const CharSet& s) {
    std::string out;
    for (const auto& x : s.strs()) out += (out.empty() ? "" : " ") + x;
    return out;
}

struct FamilyFlags {
    u64 q = 0;
    u32 n = 0, m = 0;
    i64 b = 0, c = 0, j = 0;
    std::string phi = "0", kind = "auto";

    void add(CLI::App* app, bool with_j = true) {
        app->add_option("--q", q, "field size q")->required();
        app->add_option("--n", n, "rank n")->required();
        app->add_option("--m", m, "block size m")->required();
        app->add_option("--b", b, "exponent b")->required();
        app->add_option("--c", c, "exponent c")->required();
        if (with_j) {
            app->add_option("--j", j, "character index j");
            app->add_option("--kind", kind, "Hj or H0; by default H0 when j = 0")->check(CLI::IsMember({"auto", "Hj", "H0"}));
            app->add_option("--phi", phi, "twist num/den");
        }
    }
    HypFamilyParams params() const {
        const Kind k = kind == "auto" ? (j == 0 ? Kind::H0 : Kind::Hj) : parse_kind(kind);
        return HypFamilyParams{q, n, m, b, c, j, QmodZ::parse(phi), k};
    }
    // Parameters for commands that read only (q, n, m, b, c).
    HypFamilyParams trace_params() const { return HypFamilyParams{q, n, m, b, c, 0, QmodZ(), Kind::H0}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil modules, Kubert V-tests and hypergeometric trace audits"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads, 0 for hardware default");
    app.add_option("--ceiling", g.ceiling, "field size ceiling (overrides WEILMONO_CEILING)");

    // vtest
    auto* vt = app.add_subcommand("vtest", "V-test for a hypergeometric candidate");
    std::string variant = "W1", t_str = "0";
    u64 vq = 0, modulus = 0;
    u32 vn = 0, vm = 0;
    i64 vs = 1;
    bool assert_internal = false;
    vt->add_option("--variant", variant)->check(CLI::IsMember({"W1", "W1-reduced", "Wbig", "tau-trivial"}));
    vt->add_option("--q", vq)->required();
    vt->add_option("--n", vn)->required();
    vt->add_option("--m", vm);
    vt->add_option("--t", t_str, "num/den");
    vt->add_option("--s", vs);
    vt->add_option("--modulus", modulus, "search modulus, 0 for the minimal level");
    vt->add_flag("--assert-internal", assert_internal);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "spectrum of a Singer power or a block element on W_j");
    u64 sq = 0;
    u32 sn = 0, sm = 0;
    std::string stype = "singer";
    i64 sa = 1, sb = 0, sc = 0, sj = 0;
    bool w0_prime = false;
    sp->add_option("--q", sq)->required();
    sp->add_option("--n", sn)->required();
    sp->add_option("--type", stype)->check(CLI::IsMember({"singer", "block"}));
    sp->add_option("--a", sa);
    sp->add_option("--b", sb);
    sp->add_option("--c", sc);
    sp->add_option("--m", sm);
    sp->add_option("--j", sj);
    sp->add_flag("--w0-prime", w0_prime, "drop one eigenvalue 1 from W_0");

    // family
    auto* fam = app.add_subcommand("family", "character sets of a hypergeometric family");
    FamilyFlags ff;
    bool normalize = false;
    ff.add(fam);
    fam->add_flag("--normalize", normalize, "normalize (b, c, j) first");

    // trace
    auto* tr = app.add_subcommand("trace", "Frobenius traces over a finite field");
    FamilyFlags tf;
    tf.add(tr);
    std::string tfield;
    bool all_j = false, sweep = false, laws = false;
    i64 tu = -1;
    tr->add_option("--field", tfield, "p^e")->required();
    tr->add_flag("--all-j", all_j);
    tr->add_option("--u", tu, "log index of u");
    tr->add_flag("--sweep", sweep, "all u in K^x");
    tr->add_flag("--laws", laws, "check the trace laws and pushforward counts");

    // audit
    auto* au = app.add_subcommand("audit", "Frobenius trace audit against the predicted monodromy group");
    FamilyFlags af;
    af.add(au, false);
    std::string afields;
    bool center = false;
    au->add_option("--fields", afields, "p^e,p^e,...")->required();
    au->add_flag("--center", center, "also run the center product checks");

    // trinomial
    auto* tn = app.add_subcommand("trinomial", "trace chain and factorization shapes for the trinomial");
    TrinomialParams tp;
    std::string tnfields;
    tn->add_option("--q", tp.q)->required();
    tn->add_option("--n", tp.n)->required();
    tn->add_option("--m", tp.m)->required();
    tn->add_option("--x", tp.x_idx, "log index of x in F_q")->required();
    tn->add_option("--y", tp.y_idx, "log index of y in F_q")->required();
    tn->add_option("--r", tp.r)->required();
    tn->add_option("--s", tp.s)->required();
    tn->add_option("--fields", tnfields, "p^e,p^e,...")->required();

    // acceptance
    auto* ac = app.add_subcommand("acceptance", "run the acceptance criteria");
    std::vector<u64> acc_q;
    std::vector<int> acc_ids;
    std::vector<std::string> acc_cases;
    ac->add_option("--q", acc_q, "restrict the grid to these q");
    ac->add_option("--criteria", acc_ids, "criterion ids to run");
    ac->add_option("--audit-case", acc_cases, "q,n,m,b,c for criterion 9 (repeatable)");

    CLI11_PARSE(app, argc, argv);

    if (g.ceiling) setenv("WEILMONO_CEILING", std::to_string(g.ceiling).c_str(), 1);
    if (g.threads) set_worker_count(g.threads);

    try {
        if (*vt) {
            const Variant v = parse_variant(variant);
            const VTestInstance inst = make_vtest(v, vq, vn, vm, QmodZ::parse(t_str), vs, modulus);
            const VTestReport r = run_vtest(inst, assert_internal);
            std::ostringstream h;
            h << variant_name(v) << " q=" << vq << " n=" << vn << " modulus=" << r.inst.M << ": " << r.verdict();
            if (r.witness) h << " witness (" << r.witness->N << ", " << r.witness->x.str() << ")";
            h << "\n";
            emit(g, "vtest", to_json(r), h.str());
            return r.holds ? kExitPass : kExitFail;
        }
        if (*sp) {
            FieldPtr F = field_for_q(sq);
            const GLElement el = stype == "singer" ? singer_element(F, sn, sa) : block_element(F, sn, sm, sb, sc);
            if (stype == "block" && !block_conditions(sq, sn, sm, sb, sc))
                throw std::invalid_argument("block element fails the type (c) conditions");
            const Spectrum s = weil_spectrum(el, sj, w0_prime);
            std::ostringstream h;
            for (const auto& [x, mult] : s) h << x.str() << " x" << mult << "\n";
            emit(g, "spectrum",
                 Json{{"q", sq}, {"n", sn}, {"type", stype}, {"a", sa}, {"m", sm}, {"b", sb}, {"c", sc}, {"j", sj},
                      {"w0_prime", w0_prime}, {"spectrum", to_json(s)}},
                 h.str());
            return kExitPass;
        }
        if (*fam) {
            Json payload;
            HypFamilyParams P = ff.params();
            if (normalize) {
                const NormalizeResult R = normalize_params(ff.q, ff.n, ff.m, ff.b, ff.c, ff.j, QmodZ::parse(ff.phi));
                payload["normalize"] = to_json(R);
                P = R.output;
                P.kind = ff.params().kind;
                if (ff.kind == "auto") P.kind = P.j == 0 ? Kind::H0 : Kind::Hj;
            }
            P.validate();
            const SheafShape s = family_shape(P);
            payload["params"] = to_json(P);
            payload["shape"] = to_json(s);
            std::ostringstream h;
            h << "upstairs (" << s.upstairs.size() << "): " << join_set(s.upstairs) << "\n"
              << "downstairs (" << s.downstairs.size() << "): " << join_set(s.downstairs) << "\n"
              << "D=" << s.D << " W=" << s.W << "\n";
            emit(g, "family", payload, h.str());
            return kExitPass;
        }
        if (*tr) {
            HypFamilyParams P = tf.params();
            P.validate();
            FieldPtr K = parse_field(tfield);
            if (laws) {
                const TraceLawReport r = check_trace_laws(P, K);
                const PushforwardReport pf = pushforward_check(P, K);
                std::ostringstream h;
                h << "trace laws over " << r.field << ": " << (r.pass() ? "PASS" : "FAIL") << ", pushforward "
                  << (pf.pass() ? "PASS" : "FAIL") << "\n";
                emit(g, "trace", Json{{"params", to_json(P)}, {"laws", to_json(r)}, {"pushforward", to_json(pf)}},
                     h.str());
                return r.pass() && pf.pass() ? kExitPass : kExitFail;
            }
            const TraceEngine eng(P, K);
            std::vector<u32> us;
            if (sweep) {
                for (u32 i = 0; i < K->units(); ++i) us.push_back(i);
            } else {
                if (tu < 0) throw std::invalid_argument("trace: give --u or --sweep");
                us.push_back(static_cast<u32>(mod(tu, static_cast<i64>(K->units()))));
            }
            std::vector<i64> js;
            if (all_j) {
                for (i64 j = 0; j < static_cast<i64>(P.q - 1); ++j) js.push_back(j);
            } else {
                js.push_back(P.kind == Kind::H0 ? 0 : P.j);
            }
            std::vector<std::vector<CycInt>> rows(us.size());
            parallel_for(us.size(), [&](std::size_t i) { rows[i] = eng.trace_all(K->from_index(us[i])); });
            if (g.format == "csv") {
                std::cout << "u_index,j,value\n";
                for (std::size_t i = 0; i < us.size(); ++i)
                    for (i64 j : js) std::cout << us[i] << "," << j << ",\"" << rows[i][j].str() << "\"\n";
                return kExitPass;
            }
            Json hist = Json::object();
            Json points = Json::array();
            std::ostringstream h;
            for (i64 j : js) {
                std::map<std::string, u64> counts;
                for (std::size_t i = 0; i < us.size(); ++i) ++counts[rows[i][j].str()];
                Json hj = Json::array();
                for (const auto& [v, cnt] : counts) hj.push_back(Json{{"value", v}, {"count", cnt}});
                hist[std::to_string(j)] = hj;
            }
            if (!sweep)
                for (i64 j : js) {
                    points.push_back(Json{{"u_index", us[0]}, {"j", j}, {"value", to_json(rows[0][j])},
                                          {"value_str", rows[0][j].str()}});
                    h << "u=" << us[0] << " j=" << j << ": " << rows[0][j].str() << "\n";
                }
            else
                h << us.size() << " points over " << K->spec() << "\n";
            Json payload{{"params", to_json(P)}, {"field", K->spec()}, {"histogram", hist}};
            if (!sweep) payload["points"] = points;
            emit(g, "trace", payload, h.str());
            return kExitPass;
        }
        if (*au) {
            HypFamilyParams P = af.trace_params();
            P.validate();
            const auto fields = parse_fields(afields);
            AuditReport r = frobenius_trace_audit(P, fields);
            Json payload = to_json(r);
            if (center) {
                Json cs = Json::array();
                for (const auto& K : fields) {
                    const CenterSummary c = center_search(P, K);
                    cs.push_back(Json{{"field", K->spec()},
                                      {"applicable", c.applicable},
                                      {"passed", c.passed},
                                      {"failed", c.failed}});
                }
                payload["center_by_field"] = cs;
            }
            std::ostringstream h;
            h << "audit " << r.verdict() << ": " << r.matched << "/" << r.points << " points matched, e="
              << (r.e ? std::to_string(*r.e) : "none") << ", group order " << r.prediction.group_order << "\n";
            emit(g, "audit", payload, h.str());
            return r.pass() ? kExitPass : kExitFail;
        }
        if (*tn) {
            tp.validate();
            const auto fields = parse_fields(tnfields);
            const ChainReport ch = trace_chain_check(tp, fields);
            const GaloisEvidence ev = galois_evidence(tp, fields);
            Json payload{{"galois", to_json(ev)}, {"chain", to_json(ch)}};
            std::ostringstream h;
            h << "chain " << (ch.pass() ? "PASS" : "FAIL") << "; " << ev.verdict() << "\n";
            emit(g, "trinomial", payload, h.str());
            return ch.pass() && ev.pass() ? kExitPass : kExitFail;
        }
        if (*ac) {
            AcceptanceConfig cfg;
            if (!acc_q.empty()) cfg.qs = std::set<u64>(acc_q.begin(), acc_q.end());
            cfg.criteria = std::set<int>(acc_ids.begin(), acc_ids.end());
            if (!acc_cases.empty()) {
                cfg.audit_cases.clear();
                for (const auto& s : acc_cases) {
                    const auto parts = split_list(s);
                    if (parts.size() != 5) throw std::invalid_argument("--audit-case needs q,n,m,b,c");
                    std::array<i64, 5> t{};
                    for (int i = 0; i < 5; ++i) t[i] = std::stoll(parts[i]);
                    cfg.audit_cases.push_back(t);
                }
            }
            const bool human = g.format == "human";
            const auto results = run_acceptance(cfg, [&](const CriterionResult& r) {
                if (human) std::cout << format_result(r) << std::endl;
            });
            bool all_ok = true;
            Json arr = Json::array();
            for (const auto& r : results) {
                all_ok = all_ok && r.status != "FAIL";
                arr.push_back(Json{{"id", r.id},
                                   {"name", r.name},
                                   {"status", r.status},
                                   {"budget_s", r.budget},
                                   {"detail", r.detail}});
            }
            if (!human) std::cout << envelope("acceptance", Json{{"criteria", arr}}).dump(2) << "\n";
            return all_ok ? kExitPass : kExitFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
