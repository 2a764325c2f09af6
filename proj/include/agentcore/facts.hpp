#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "json.hpp"

namespace agentcore::mem {

enum class Scope { Session, Persistent };

std::string scope_key(Scope s);
Scope parse_scope(const std::string& key);

struct FactRecord {
    std::string key;
    std::string value;
    Scope scope = Scope::Persistent;
    double confidence0 = 1.0;  // stored confidence, never mutated
    std::int64_t created_at = 0;

    bool operator==(const FactRecord&) const = default;
};

nlohmann::json encode_fact(const FactRecord& f);
FactRecord decode_fact(const nlohmann::json& j);

struct DecayParams {
    double half_life_days = 30.0;
};

// Read-time confidence: confidence0 * 2^(-age_days / half_life_days).
// Rejects negative age and non-positive half-life.
double effective_confidence(const FactRecord& fact, std::int64_t now, const DecayParams& params);

// Retains the fact with maximal effective confidence at `now`; ties break to
// the newer created_at. Throws std::invalid_argument on an empty set.
FactRecord resolve_fact_conflicts(std::span<const FactRecord> facts, std::int64_t now,
                                  const DecayParams& params);

}  // namespace agentcore::mem
