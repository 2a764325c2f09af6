#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agentcore/cbr.hpp"
#include "json.hpp"

namespace agentcore::mem {

struct NarrativeEntry {
    std::string id;
    std::string cycle_id;
    std::int64_t timestamp = 0;
    cbr::Outcome outcome = cbr::Outcome::Success;
    std::string intent;
    std::string domain;
    std::string location;
    std::set<std::string> keywords;
    std::string summary;
    std::vector<std::string> case_refs;

    bool operator==(const NarrativeEntry&) const = default;
};

nlohmann::json encode_entry(const NarrativeEntry& e);
NarrativeEntry decode_entry(const nlohmann::json& j);

struct Thread {
    std::string id;
    std::string title;
    std::string location;
    std::string domain;
    std::set<std::string> keywords;
    std::vector<std::string> entry_ids;
    std::int64_t last_active = 0;

    bool operator==(const Thread&) const = default;
};

nlohmann::json encode_thread(const Thread& t);
Thread decode_thread(const nlohmann::json& j);

// Overlap score across location (weight 3), domain (weight 2) and shared
// keywords (weight 1 each, capped at 3).
int thread_affinity(const NarrativeEntry& entry, const Thread& thread);

// Highest-scoring thread with affinity >= threshold; ties break to the most
// recently active thread. Empty result means start a new thread.
std::optional<std::string> assign_thread(const NarrativeEntry& entry,
                                         std::span<const Thread> threads, int threshold = 4);

}  // namespace agentcore::mem
