#include "agentcore/narrative.hpp"

#include <algorithm>

#include "agentcore/timeutil.hpp"

namespace agentcore::mem {

using nlohmann::json;

json encode_entry(const NarrativeEntry& e) {
    json j;
    j["id"] = e.id;
    j["cycle_id"] = e.cycle_id;
    j["timestamp"] = util::format_iso(e.timestamp);
    j["outcome"] = cbr::outcome_key(e.outcome);
    j["intent"] = e.intent;
    j["domain"] = e.domain;
    j["location"] = e.location;
    j["keywords"] = e.keywords;
    j["summary"] = e.summary;
    j["case_refs"] = e.case_refs;
    return j;
}

NarrativeEntry decode_entry(const json& j) {
    NarrativeEntry e;
    e.id = j.at("id").get<std::string>();
    e.cycle_id = j.at("cycle_id").get<std::string>();
    auto ts = util::parse_iso(j.at("timestamp").get<std::string>());
    if (!ts) throw std::runtime_error("bad timestamp");
    e.timestamp = *ts;
    e.outcome = cbr::parse_outcome(j.at("outcome").get<std::string>());
    e.intent = j.value("intent", "");
    e.domain = j.value("domain", "");
    e.location = j.value("location", "");
    if (j.contains("keywords")) {
        for (const auto& k : j["keywords"]) e.keywords.insert(k.get<std::string>());
    }
    e.summary = j.value("summary", "");
    if (j.contains("case_refs")) {
        for (const auto& r : j["case_refs"]) e.case_refs.push_back(r.get<std::string>());
    }
    return e;
}

json encode_thread(const Thread& t) {
    json j;
    j["id"] = t.id;
    j["title"] = t.title;
    j["location"] = t.location;
    j["domain"] = t.domain;
    j["keywords"] = t.keywords;
    j["entry_ids"] = t.entry_ids;
    j["last_active"] = util::format_iso(t.last_active);
    return j;
}

Thread decode_thread(const json& j) {
    Thread t;
    t.id = j.at("id").get<std::string>();
    t.title = j.value("title", "");
    t.location = j.value("location", "");
    t.domain = j.value("domain", "");
    if (j.contains("keywords")) {
        for (const auto& k : j["keywords"]) t.keywords.insert(k.get<std::string>());
    }
    if (j.contains("entry_ids")) {
        for (const auto& e : j["entry_ids"]) t.entry_ids.push_back(e.get<std::string>());
    }
    auto ts = util::parse_iso(j.at("last_active").get<std::string>());
    if (!ts) throw std::runtime_error("bad last_active timestamp");
    t.last_active = *ts;
    return t;
}

int thread_affinity(const NarrativeEntry& entry, const Thread& thread) {
    int score = 0;
    if (!entry.location.empty() && entry.location == thread.location) score += 3;
    if (!entry.domain.empty() && entry.domain == thread.domain) score += 2;
    int shared = 0;
    for (const auto& k : entry.keywords) shared += static_cast<int>(thread.keywords.count(k));
    score += std::min(shared, 3);
    return score;
}

std::optional<std::string> assign_thread(const NarrativeEntry& entry,
                                         std::span<const Thread> threads, int threshold) {
    const Thread* best = nullptr;
    int best_score = 0;
    for (const auto& t : threads) {
        int score = thread_affinity(entry, t);
        if (score < threshold) continue;
        if (!best || score > best_score ||
            (score == best_score && t.last_active > best->last_active)) {
            best = &t;
            best_score = score;
        }
    }
    if (!best) return std::nullopt;
    return best->id;
}

}  // namespace agentcore::mem
