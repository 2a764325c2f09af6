#pragma once

#include <span>
#include <string>
#include <vector>

#include "agentcore/cbr.hpp"

namespace agentcore::affect {

struct ToolCall {
    std::string tool;
    bool failed = false;
};

// One reviewed cycle, as gathered by structured self-review.
struct CycleReview {
    std::string cycle_id;
    std::string domain;
    cbr::Outcome outcome = cbr::Outcome::Success;
    std::vector<ToolCall> tool_calls;
    bool escalated = false;  // routed to a non-primary model
    long tokens_total = 0;
    std::vector<std::string> case_refs;
};

enum class FindingSeverity { Informational, Warning };

std::string finding_severity_key(FindingSeverity s);

struct PatternFinding {
    std::string detector;
    FindingSeverity severity = FindingSeverity::Informational;
    std::vector<std::string> evidence;  // cycle ids, never empty
    std::string message;
};

// Five detectors over a review window: repeated failures (3+ in one domain),
// tool failure clusters (>20% failure rate with at least 5 calls), model
// escalation (5+ escalated cycles), cost outliers (>3x average tokens), and
// CBR misses (50%+ of cycles without case references).
std::vector<PatternFinding> detect_patterns(std::span<const CycleReview> reviews);

}  // namespace agentcore::affect
