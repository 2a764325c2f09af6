#include "agentcore/audit.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "agentcore/cycles.hpp"
#include "agentcore/narrative.hpp"

namespace agentcore::audit {

using nlohmann::json;

AuditSummary summarize(const mem::StateDir& state, std::optional<std::int64_t> from_ts,
                       std::optional<std::int64_t> to_ts) {
    AuditSummary s;
    auto in_range = [&](std::int64_t ts) {
        if (from_ts && ts < *from_ts) return false;
        if (to_ts && ts > *to_ts) return false;
        return true;
    };

    for (const auto& record : state.replay(mem::StoreId::DagNodes).records) {
        if (!in_range(record.timestamp)) continue;
        ++s.log_entries;
        const std::string type = record.payload.value("type", "node");
        if (type == "gate") {
            ++s.gate_evaluations;
            const std::string action = record.payload.value("action", "");
            if (action == "accept") ++s.accepts;
            if (action == "modify") ++s.modifies;
            if (action == "reject") ++s.rejects;
            continue;
        }
        affect::CycleNode node = affect::decode_node(record.payload);
        s.tokens_total += node.tokens_in + node.tokens_out;
        if (!node.parent_id &&
            (node.kind == affect::NodeKind::User || node.kind == affect::NodeKind::Scheduler)) {
            ++s.cycles;
        }
        if (node.kind == affect::NodeKind::Tool) {
            ++s.tool_calls;
            if (node.status == affect::NodeStatus::Failed) ++s.tool_failures;
        }
    }

    for (const auto& record : state.replay(mem::StoreId::Narrative).records) {
        if (!in_range(record.timestamp)) continue;
        mem::NarrativeEntry entry = mem::decode_entry(record.payload);
        ++s.narrative_entries;
        switch (entry.outcome) {
            case cbr::Outcome::Success: ++s.narrative_success; break;
            case cbr::Outcome::Partial: ++s.narrative_partial; break;
            case cbr::Outcome::Failure: ++s.narrative_failure; break;
        }
    }

    for (mem::StoreId store : mem::all_stores()) {
        std::uintmax_t bytes = 0;
        if (store == mem::StoreId::DagNodes) {
            if (std::filesystem::exists(state.cycle_log_dir())) {
                for (const auto& entry :
                     std::filesystem::directory_iterator(state.cycle_log_dir())) {
                    if (entry.is_regular_file()) bytes += entry.file_size();
                }
            }
        } else {
            auto file = state.store_file(store);
            if (std::filesystem::exists(file)) bytes = std::filesystem::file_size(file);
        }
        s.store_bytes[mem::store_name(store)] = bytes;
    }
    return s;
}

std::string format_thousands(long n) {
    std::string digits = std::to_string(n < 0 ? -n : n);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count && count % 3 == 0) out.insert(out.begin(), ',');
        out.insert(out.begin(), *it);
        ++count;
    }
    if (n < 0) out.insert(out.begin(), '-');
    return out;
}

std::string format_summary(const AuditSummary& s) {
    std::ostringstream os;
    os << "Cycles              " << format_thousands(s.cycles) << "\n";
    os << "Cycle log entries   " << format_thousands(s.log_entries) << "\n";
    os << "Total tokens        " << format_thousands(s.tokens_total) << "\n";
    double failure_pct =
        s.tool_calls > 0
            ? 100.0 * static_cast<double>(s.tool_failures) / static_cast<double>(s.tool_calls)
            : 0.0;
    char pct[16];
    std::snprintf(pct, sizeof(pct), "%.1f", failure_pct);
    os << "Tool calls          " << format_thousands(s.tool_calls) << " ("
       << format_thousands(s.tool_failures) << " failures, " << pct << "%)\n";
    os << "Gate decisions      " << format_thousands(s.gate_evaluations) << " ("
       << format_thousands(s.accepts) << " accept, " << format_thousands(s.modifies)
       << " modify, " << format_thousands(s.rejects) << " reject)\n";
    os << "Narrative entries   " << format_thousands(s.narrative_entries) << " ("
       << format_thousands(s.narrative_success) << " success, "
       << format_thousands(s.narrative_partial) << " partial, "
       << format_thousands(s.narrative_failure) << " failure)\n";
    std::uintmax_t total_bytes = 0;
    for (const auto& [name, bytes] : s.store_bytes) total_bytes += bytes;
    os << "Store size          " << format_thousands(static_cast<long>(total_bytes))
       << " bytes\n";
    return os.str();
}

json encode_summary(const AuditSummary& s) {
    json j;
    j["cycles"] = s.cycles;
    j["log_entries"] = s.log_entries;
    j["tokens_total"] = s.tokens_total;
    j["tool_calls"] = s.tool_calls;
    j["tool_failures"] = s.tool_failures;
    j["gate_evaluations"] = s.gate_evaluations;
    j["accepts"] = s.accepts;
    j["modifies"] = s.modifies;
    j["rejects"] = s.rejects;
    j["narrative_entries"] = s.narrative_entries;
    j["narrative_success"] = s.narrative_success;
    j["narrative_partial"] = s.narrative_partial;
    j["narrative_failure"] = s.narrative_failure;
    j["store_bytes"] = s.store_bytes;
    return j;
}

}  // namespace agentcore::audit
