#include "agentcore/facts.hpp"

#include <cmath>
#include <stdexcept>

#include "agentcore/timeutil.hpp"

namespace agentcore::mem {

using nlohmann::json;

std::string scope_key(Scope s) { return s == Scope::Session ? "session" : "persistent"; }

Scope parse_scope(const std::string& key) {
    if (key == "session") return Scope::Session;
    if (key == "persistent") return Scope::Persistent;
    throw std::invalid_argument("unknown scope: " + key);
}

json encode_fact(const FactRecord& f) {
    json j;
    j["key"] = f.key;
    j["value"] = f.value;
    j["scope"] = scope_key(f.scope);
    j["confidence0"] = f.confidence0;
    j["created_at"] = util::format_iso(f.created_at);
    return j;
}

FactRecord decode_fact(const json& j) {
    FactRecord f;
    f.key = j.at("key").get<std::string>();
    f.value = j.at("value").get<std::string>();
    f.scope = parse_scope(j.at("scope").get<std::string>());
    f.confidence0 = j.at("confidence0").get<double>();
    auto ts = util::parse_iso(j.at("created_at").get<std::string>());
    if (!ts) throw std::runtime_error("bad created_at timestamp");
    f.created_at = *ts;
    return f;
}

double effective_confidence(const FactRecord& fact, std::int64_t now, const DecayParams& params) {
    if (params.half_life_days <= 0.0) throw std::invalid_argument("half-life must be positive");
    if (now < fact.created_at) throw std::invalid_argument("fact age is negative");
    double age_days = static_cast<double>(now - fact.created_at) / util::kSecondsPerDay;
    return fact.confidence0 * std::exp2(-age_days / params.half_life_days);
}

FactRecord resolve_fact_conflicts(std::span<const FactRecord> facts, std::int64_t now,
                                  const DecayParams& params) {
    if (facts.empty()) throw std::invalid_argument("no facts to resolve");
    const FactRecord* best = &facts[0];
    double best_conf = effective_confidence(*best, now, params);
    for (const auto& f : facts.subspan(1)) {
        double conf = effective_confidence(f, now, params);
        if (conf > best_conf || (conf == best_conf && f.created_at > best->created_at)) {
            best = &f;
            best_conf = conf;
        }
    }
    return *best;
}

}  // namespace agentcore::mem
