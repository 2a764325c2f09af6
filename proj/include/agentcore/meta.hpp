#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agentcore/gate.hpp"

namespace agentcore::affect {

// One gate decision as seen by the meta observer.
struct GateObservation {
    std::int64_t timestamp = 0;
    double dprime = 0.0;
    gate::GateAction action = gate::GateAction::Accept;
    bool false_positive = false;  // operator/agent annotated after the fact
};

struct MetaConfig {
    int window = 10;             // sliding decision window
    int rate_limit_cycles = 20;  // cycles per observation window
    int risk_subwindows = 3;     // consecutive sub-windows for the risk trend
    double tighten_factor = 0.85;
};

struct MetaInputs {
    std::vector<GateObservation> decisions;  // chronological
    int cycles_in_window = 0;
    int tightenings_applied = 0;
    double rejection_rate_at_first_tighten = 0.0;
};

enum class InterventionKind { InjectCaution, TightenThresholds, Cooldown, Escalate };

std::string intervention_key(InterventionKind k);

struct Intervention {
    InterventionKind kind = InterventionKind::InjectCaution;
    std::string detector;
    std::string message;
    double factor = 1.0;  // meaningful for TightenThresholds
};

// Five detectors: rate limit (inject caution), cumulative risk — mean
// discrepancy strictly increasing across consecutive sub-windows (cooldown),
// repeated non-false-positive rejections (tighten thresholds), persistence —
// tightening applied twice without the rejection rate dropping (escalate),
// and a high false-positive rate among rejections (escalate).
std::vector<Intervention> meta_observe(const MetaInputs& inputs, const MetaConfig& config = {});

}  // namespace agentcore::affect
