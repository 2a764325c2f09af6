#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agentcore/narrative.hpp"
#include "json.hpp"

namespace agentcore::sensorium {

enum class CostTrend { Rising, Stable, Falling };

std::string cost_trend_key(CostTrend t);
CostTrend parse_cost_trend(const std::string& key);

struct Vitals {
    int cycles_today = 0;
    int agents_active = 0;
    double success_rate = 0.0;
    CostTrend cost_trend = CostTrend::Stable;
    double cbr_hit_rate = 0.0;
    double novelty = 0.0;
    std::string recent_failures;
};

struct DelegationStatus {
    std::string agent;
    std::string turn_progress;  // e.g. "3/10"
    long tokens = 0;
    std::string elapsed;  // e.g. "42s"
};

struct SensoriumState {
    std::int64_t now = 0;
    std::int64_t session_uptime_seconds = 0;
    std::string cycle_id;
    std::string input_source;  // terminal/web/scheduler/email
    int queue_depth = 0;
    std::optional<std::string> active_thread;
    int pending_jobs = 0;
    int overdue_jobs = 0;
    Vitals vitals;
    std::vector<DelegationStatus> delegations;
    std::vector<std::string> tasks;
};

SensoriumState state_from_json(const nlohmann::json& j);

// 1 - max keyword Jaccard against the recent inputs; 1.0 for empty history.
double novelty(const std::set<std::string>& input_tokens,
               std::span<const std::set<std::string>> recent_inputs);

// Rolling performance summary from a replayed narrative window. Partial
// outcomes count 0.5 toward the success rate; the cost trend compares the
// mean tokens of the last third of the window against the first third with a
// +-10% stability band; tokens_per_entry aligns with the entries and may be
// empty (trend stays stable). Fills only the history-derived fields.
Vitals compute_vitals(std::span<const mem::NarrativeEntry> window,
                      std::span<const long> tokens_per_entry, std::int64_t now);

// Deterministic structured self-state block: fixed element and attribute
// order, rates to two decimals, empty delegations/tasks omitted entirely.
std::string render(const SensoriumState& state);

}  // namespace agentcore::sensorium
