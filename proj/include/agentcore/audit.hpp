#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "agentcore/stores.hpp"
#include "json.hpp"

namespace agentcore::audit {

struct AuditSummary {
    long cycles = 0;       // root cycle nodes (user/scheduler, no parent)
    long log_entries = 0;  // all cycle-log records in range
    long tokens_total = 0;
    long tool_calls = 0;
    long tool_failures = 0;
    long gate_evaluations = 0;
    long accepts = 0;
    long modifies = 0;
    long rejects = 0;
    long narrative_entries = 0;
    long narrative_success = 0;
    long narrative_partial = 0;
    long narrative_failure = 0;
    std::map<std::string, std::uintmax_t> store_bytes;
};

// Aggregate statistics computed solely by replaying the append-only stores;
// optional bounds filter records by timestamp (inclusive).
AuditSummary summarize(const mem::StateDir& state, std::optional<std::int64_t> from_ts,
                       std::optional<std::int64_t> to_ts);

// Thousands-grouped integer, e.g. 3797 -> "3,797".
std::string format_thousands(long n);

// Human-readable block, one stat per line.
std::string format_summary(const AuditSummary& s);

nlohmann::json encode_summary(const AuditSummary& s);

}  // namespace agentcore::audit
