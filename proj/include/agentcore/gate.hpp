#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agentcore/norm.hpp"
#include "json.hpp"

namespace agentcore::gate {

// ── Decision sheets ───────────────────────────────────────────────────────────

enum class GateKind { Input, Tool, Output };

std::string gate_key(GateKind g);
GateKind parse_gate(const std::string& key);

inline constexpr int kMaxImportance = 5;
inline constexpr int kMaxMagnitude = 5;

struct FeatureScore {
    std::string name;
    int importance = 0;  // 0..5, fixed per feature in configuration
    int magnitude = 0;   // 0..5, scored per evaluation
    bool catastrophic = false;
    norm::Level level_hint = norm::Level::Operational;
};

struct DecisionSheet {
    GateKind gate = GateKind::Output;
    std::optional<std::string> agent;
    std::vector<FeatureScore> features;
};

// Normalised discrepancy: sum(importance_i * magnitude_i) / (5 * 5 * n).
// Throws std::invalid_argument on an empty sheet or out-of-range scores.
double compute_dprime(const DecisionSheet& sheet);

enum class ScreenResult { FastAccept, Consult };

// Fast path strictly below the modify threshold; the boundary consults.
ScreenResult screen(double score, const norm::GateThresholds& thresholds);

// Feature-to-proposition translation. Magnitude >= 4 becomes a Required
// proposition at the feature's level hint, 2-3 becomes Ought, and all
// magnitude <= 1 features collapse into one unflagged low-level residue
// proposition.
std::vector<norm::Proposition> translate_features(const DecisionSheet& sheet);

// ── Combined pipeline ─────────────────────────────────────────────────────────

enum class GateAction { Accept, Modify, Reject };

std::string action_name(GateAction a);

struct GateDecision {
    GateAction action = GateAction::Accept;
    double dprime = 0.0;
    bool fast_path = false;
    std::optional<norm::Verdict> verdict;  // absent on the fast path
};

GateDecision evaluate(const DecisionSheet& sheet,
                      const std::vector<norm::Proposition>& character,
                      const norm::GateThresholds& thresholds);

// Multiplies both thresholds by factor in (0,1]; ordering is preserved.
norm::GateThresholds tighten(const norm::GateThresholds& thresholds, double factor = 0.85);

// ── Character specification ───────────────────────────────────────────────────
//
// character.json holds a "highest_endeavour" array of {description, level,
// operator[, modality]} objects, authored by the operator and immutable at
// runtime. Parsed propositions are system-side.

std::vector<norm::Proposition> parse_character(const nlohmann::json& doc);
std::vector<norm::Proposition> load_character(const std::filesystem::path& file);

// ── Gate configuration ────────────────────────────────────────────────────────

struct FeatureDef {
    std::string name;
    int importance = 0;
    norm::Level level_hint = norm::Level::Operational;
    bool catastrophic = false;
};

struct AgentProfile {
    std::optional<norm::GateThresholds> thresholds;
    std::map<std::string, std::vector<FeatureDef>> features_by_gate;
};

struct GateConfig {
    norm::GateThresholds default_thresholds;
    std::map<std::string, std::vector<FeatureDef>> features_by_gate;
    std::map<std::string, AgentProfile> agents;

    norm::GateThresholds thresholds_for(const std::optional<std::string>& agent) const;
    // Fills level_hint/catastrophic (and importance when the sheet omits it)
    // from the agent-specific definitions first, then the gate-level ones.
    void apply_to(DecisionSheet& sheet) const;
};

GateConfig parse_gate_config(const nlohmann::json& doc);
GateConfig load_gate_config(const std::filesystem::path& file);

// Sheet document: {gate, agent?, features: [{name, importance?, magnitude,
// level_hint?, catastrophic?}]}.
DecisionSheet parse_sheet(const nlohmann::json& doc);
DecisionSheet load_sheet(const std::filesystem::path& file);

}  // namespace agentcore::gate
