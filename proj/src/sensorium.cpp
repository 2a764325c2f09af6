#include "agentcore/sensorium.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "agentcore/timeutil.hpp"

namespace agentcore::sensorium {

using nlohmann::json;

std::string cost_trend_key(CostTrend t) {
    switch (t) {
        case CostTrend::Rising: return "rising";
        case CostTrend::Stable: return "stable";
        case CostTrend::Falling: return "falling";
    }
    throw std::invalid_argument("unknown cost trend");
}

CostTrend parse_cost_trend(const std::string& key) {
    if (key == "rising") return CostTrend::Rising;
    if (key == "stable") return CostTrend::Stable;
    if (key == "falling") return CostTrend::Falling;
    throw std::invalid_argument("unknown cost trend: " + key);
}

SensoriumState state_from_json(const json& j) {
    SensoriumState s;
    auto ts = util::parse_iso(j.at("now").get<std::string>());
    if (!ts) throw std::runtime_error("bad now timestamp");
    s.now = *ts;
    s.session_uptime_seconds = j.value("session_uptime_seconds", 0L);
    s.cycle_id = j.value("cycle_id", "");
    s.input_source = j.value("input_source", "terminal");
    s.queue_depth = j.value("queue_depth", 0);
    if (j.contains("active_thread") && !j["active_thread"].is_null()) {
        s.active_thread = j["active_thread"].get<std::string>();
    }
    s.pending_jobs = j.value("pending_jobs", 0);
    s.overdue_jobs = j.value("overdue_jobs", 0);
    if (j.contains("vitals")) {
        const auto& v = j["vitals"];
        s.vitals.cycles_today = v.value("cycles_today", 0);
        s.vitals.agents_active = v.value("agents_active", 0);
        s.vitals.success_rate = v.value("success_rate", 0.0);
        s.vitals.cost_trend = parse_cost_trend(v.value("cost_trend", "stable"));
        s.vitals.cbr_hit_rate = v.value("cbr_hit_rate", 0.0);
        s.vitals.novelty = v.value("novelty", 0.0);
        s.vitals.recent_failures = v.value("recent_failures", "");
    }
    if (j.contains("delegations")) {
        for (const auto& d : j["delegations"]) {
            DelegationStatus ds;
            ds.agent = d.at("agent").get<std::string>();
            ds.turn_progress = d.value("turn_progress", "");
            ds.tokens = d.value("tokens", 0L);
            ds.elapsed = d.value("elapsed", "");
            s.delegations.push_back(std::move(ds));
        }
    }
    if (j.contains("tasks")) {
        for (const auto& t : j["tasks"]) s.tasks.push_back(t.get<std::string>());
    }
    return s;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace

double novelty(const std::set<std::string>& input_tokens,
               std::span<const std::set<std::string>> recent_inputs) {
    if (recent_inputs.empty()) return 1.0;
    double best = 0.0;
    for (const auto& prev : recent_inputs) best = std::max(best, jaccard(input_tokens, prev));
    return 1.0 - best;
}

Vitals compute_vitals(std::span<const mem::NarrativeEntry> window,
                      std::span<const long> tokens_per_entry, std::int64_t) {
    Vitals v;
    if (window.empty()) return v;  // neutral: zeros, stable trend

    double score = 0.0;
    long with_refs = 0;
    const mem::NarrativeEntry* latest_failure = nullptr;
    for (const auto& e : window) {
        if (e.outcome == cbr::Outcome::Success) {
            score += 1.0;
        } else if (e.outcome == cbr::Outcome::Partial) {
            score += 0.5;
        } else if (!latest_failure || e.timestamp > latest_failure->timestamp) {
            latest_failure = &e;
        }
        if (!e.case_refs.empty()) ++with_refs;
    }
    v.success_rate = score / static_cast<double>(window.size());
    v.cbr_hit_rate = static_cast<double>(with_refs) / static_cast<double>(window.size());
    if (latest_failure) {
        v.recent_failures = latest_failure->summary.substr(0, 80);
    }

    if (tokens_per_entry.size() >= 2) {
        std::size_t third = std::max<std::size_t>(1, tokens_per_entry.size() / 3);
        double first = 0.0, last = 0.0;
        for (std::size_t i = 0; i < third; ++i) first += static_cast<double>(tokens_per_entry[i]);
        for (std::size_t i = tokens_per_entry.size() - third; i < tokens_per_entry.size(); ++i) {
            last += static_cast<double>(tokens_per_entry[i]);
        }
        first /= static_cast<double>(third);
        last /= static_cast<double>(third);
        if (first == 0.0) {
            v.cost_trend = last > 0.0 ? CostTrend::Rising : CostTrend::Stable;
        } else {
            double ratio = last / first;
            if (ratio > 1.10) {
                v.cost_trend = CostTrend::Rising;
            } else if (ratio < 0.90) {
                v.cost_trend = CostTrend::Falling;
            }
        }
    }
    return v;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string rate2(double x) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

}  // namespace

std::string render(const SensoriumState& state) {
    std::ostringstream os;
    os << "<sensorium>\n";
    os << "  <clock now=\"" << util::format_iso_no_suffix(state.now) << "\" session_uptime=\""
       << util::format_duration(state.session_uptime_seconds) << "\" cycle_id=\""
       << xml_escape(state.cycle_id) << "\"/>\n";
    os << "  <situation input_source=\"" << xml_escape(state.input_source) << "\" queue_depth=\""
       << state.queue_depth << "\"";
    if (state.active_thread) os << " active_thread=\"" << xml_escape(*state.active_thread) << "\"";
    os << "/>\n";
    os << "  <schedule pending_jobs=\"" << state.pending_jobs << "\" overdue_jobs=\""
       << state.overdue_jobs << "\"/>\n";
    const Vitals& v = state.vitals;
    os << "  <vitals cycles_today=\"" << v.cycles_today << "\" agents_active=\"" << v.agents_active
       << "\" success_rate=\"" << rate2(v.success_rate) << "\" cost_trend=\""
       << cost_trend_key(v.cost_trend) << "\" cbr_hit_rate=\"" << rate2(v.cbr_hit_rate)
       << "\" novelty=\"" << rate2(v.novelty) << "\" recent_failures=\""
       << xml_escape(v.recent_failures) << "\"/>\n";
    if (!state.delegations.empty()) {
        os << "  <delegations>\n";
        for (const auto& d : state.delegations) {
            os << "    <delegation agent=\"" << xml_escape(d.agent) << "\" turn_progress=\""
               << xml_escape(d.turn_progress) << "\" tokens=\"" << d.tokens << "\" elapsed=\""
               << xml_escape(d.elapsed) << "\"/>\n";
        }
        os << "  </delegations>\n";
    }
    if (!state.tasks.empty()) {
        os << "  <tasks>\n";
        for (const auto& t : state.tasks) {
            os << "    <task title=\"" << xml_escape(t) << "\"/>\n";
        }
        os << "  </tasks>\n";
    }
    os << "</sensorium>\n";
    return os.str();
}

}  // namespace agentcore::sensorium
