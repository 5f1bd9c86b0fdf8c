#pragma once

#include <json.hpp>

#include "weilmono/groupcheck.hpp"
#include "weilmono/kubert.hpp"
#include "weilmono/sheafmodel.hpp"
#include "weilmono/traces.hpp"
#include "weilmono/trinomial.hpp"
#include "weilmono/weil.hpp"

namespace wm {

// Insertion-ordered so that identical runs serialize byte for byte.
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json to_json(const QmodZ& x);
Json to_json(const CycInt& x);
Json to_json(const Rational& x);
Json to_json(const Spectrum& s);
Json to_json(const CharSet& s);
Json to_json(const HypFamilyParams& p);
Json to_json(const SheafShape& s);
Json to_json(const NormalizeResult& r);
Json to_json(const VTestInstance& inst);
Json to_json(const VTestReport& r);
Json to_json(const ClassifyReport& r);
Json to_json(const CycleReport& r);
Json to_json(const TraceLawReport& r);
Json to_json(const PushforwardReport& r);
Json to_json(const AuditReport& r);
Json to_json(const TrinomialParams& p);
Json to_json(const ChainReport& r);
Json to_json(const GaloisEvidence& e);
Json to_json(const TraceTuple& t);

// {"schema": 1, "command": ..., <payload fields>}
Json envelope(const std::string& command, const Json& payload);

}  // namespace wm
