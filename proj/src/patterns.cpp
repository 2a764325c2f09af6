#include "agentcore/patterns.hpp"

#include <map>
#include <sstream>

namespace agentcore::affect {

std::string finding_severity_key(FindingSeverity s) {
    return s == FindingSeverity::Warning ? "warning" : "informational";
}

std::vector<PatternFinding> detect_patterns(std::span<const CycleReview> reviews) {
    std::vector<PatternFinding> findings;
    if (reviews.empty()) return findings;

    // Repeated failures: 3+ on the same domain.
    std::map<std::string, std::vector<std::string>> failures_by_domain;
    for (const auto& r : reviews) {
        if (r.outcome == cbr::Outcome::Failure) failures_by_domain[r.domain].push_back(r.cycle_id);
    }
    for (const auto& [domain, ids] : failures_by_domain) {
        if (ids.size() >= 3) {
            std::ostringstream msg;
            msg << ids.size() << " failed cycles in domain '" << domain << "'";
            findings.push_back({"repeated_failures", FindingSeverity::Warning, ids, msg.str()});
        }
    }

    // Tool failure clusters: >20% failure rate with at least 5 calls.
    struct ToolStats {
        long total = 0;
        long failed = 0;
        std::vector<std::string> failing_cycles;
    };
    std::map<std::string, ToolStats> tools;
    for (const auto& r : reviews) {
        for (const auto& tc : r.tool_calls) {
            auto& st = tools[tc.tool];
            ++st.total;
            if (tc.failed) {
                ++st.failed;
                if (st.failing_cycles.empty() || st.failing_cycles.back() != r.cycle_id) {
                    st.failing_cycles.push_back(r.cycle_id);
                }
            }
        }
    }
    for (const auto& [tool, st] : tools) {
        if (st.total >= 5 &&
            static_cast<double>(st.failed) > 0.20 * static_cast<double>(st.total)) {
            std::ostringstream msg;
            msg << "tool '" << tool << "' failed " << st.failed << "/" << st.total << " calls";
            findings.push_back(
                {"tool_failure_cluster", FindingSeverity::Warning, st.failing_cycles, msg.str()});
        }
    }

    // Model escalation: 5+ cycles escalated to a non-primary model.
    std::vector<std::string> escalated;
    for (const auto& r : reviews) {
        if (r.escalated) escalated.push_back(r.cycle_id);
    }
    if (escalated.size() >= 5) {
        std::ostringstream msg;
        msg << escalated.size() << " cycles escalated to a non-primary model";
        findings.push_back(
            {"model_escalation", FindingSeverity::Informational, escalated, msg.str()});
    }

    // Cost outliers: cycles using >3x the average tokens.
    double total_tokens = 0.0;
    for (const auto& r : reviews) total_tokens += static_cast<double>(r.tokens_total);
    double avg = total_tokens / static_cast<double>(reviews.size());
    if (avg > 0.0) {
        std::vector<std::string> outliers;
        for (const auto& r : reviews) {
            if (static_cast<double>(r.tokens_total) > 3.0 * avg) outliers.push_back(r.cycle_id);
        }
        if (!outliers.empty()) {
            std::ostringstream msg;
            msg << outliers.size() << " cycles above 3x the average token cost";
            findings.push_back(
                {"cost_outlier", FindingSeverity::Informational, outliers, msg.str()});
        }
    }

    // CBR misses: 50%+ of cycles without source references.
    std::vector<std::string> misses;
    for (const auto& r : reviews) {
        if (r.case_refs.empty()) misses.push_back(r.cycle_id);
    }
    if (misses.size() * 2 >= reviews.size() && !misses.empty()) {
        std::ostringstream msg;
        msg << misses.size() << "/" << reviews.size() << " cycles without case references";
        findings.push_back({"cbr_misses", FindingSeverity::Informational, misses, msg.str()});
    }

    return findings;
}

}  // namespace agentcore::affect
