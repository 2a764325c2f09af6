#include "agentcore/affect.hpp"

#include <algorithm>
#include <stdexcept>

#include "agentcore/timeutil.hpp"

namespace agentcore::affect {

using nlohmann::json;

json encode_telemetry(const CycleTelemetry& t) {
    json j;
    j["tool_calls_total"] = t.tool_calls_total;
    j["tool_calls_failed"] = t.tool_calls_failed;
    j["same_tool_retries"] = t.same_tool_retries;
    j["gate_rejections"] = t.gate_rejections;
    j["gate_modifications"] = t.gate_modifications;
    j["delegations_total"] = t.delegations_total;
    j["delegations_failed"] = t.delegations_failed;
    j["recent_success_rate"] = t.recent_success_rate;
    j["cbr_hit_rate"] = t.cbr_hit_rate;
    j["budget_pressure"] = t.budget_pressure;
    j["consecutive_failure_cycles"] = t.consecutive_failure_cycles;
    j["output_gate_rejections"] = t.output_gate_rejections;
    return j;
}

CycleTelemetry decode_telemetry(const json& j) {
    CycleTelemetry t;
    t.tool_calls_total = j.value("tool_calls_total", 0L);
    t.tool_calls_failed = j.value("tool_calls_failed", 0L);
    t.same_tool_retries = j.value("same_tool_retries", 0L);
    t.gate_rejections = j.value("gate_rejections", 0L);
    t.gate_modifications = j.value("gate_modifications", 0L);
    t.delegations_total = j.value("delegations_total", 0L);
    t.delegations_failed = j.value("delegations_failed", 0L);
    t.recent_success_rate = j.value("recent_success_rate", 1.0);
    t.cbr_hit_rate = j.value("cbr_hit_rate", 0.0);
    t.budget_pressure = j.value("budget_pressure", 0.0);
    t.consecutive_failure_cycles = j.value("consecutive_failure_cycles", 0L);
    t.output_gate_rejections = j.value("output_gate_rejections", 0L);
    if (t.tool_calls_failed > t.tool_calls_total || t.delegations_failed > t.delegations_total) {
        throw std::runtime_error("telemetry failure counts exceed totals");
    }
    return t;
}

std::string trend_key(Trend t) {
    switch (t) {
        case Trend::Rising: return "rising";
        case Trend::Falling: return "falling";
        case Trend::Stable: return "stable";
    }
    throw std::invalid_argument("unknown trend");
}

Trend parse_trend(const std::string& key) {
    if (key == "rising") return Trend::Rising;
    if (key == "falling") return Trend::Falling;
    if (key == "stable") return Trend::Stable;
    throw std::invalid_argument("unknown trend: " + key);
}

json encode_snapshot(const AffectSnapshot& s) {
    json j;
    j["desperation"] = s.desperation;
    j["calm"] = s.calm;
    j["confidence"] = s.confidence;
    j["frustration"] = s.frustration;
    j["pressure"] = s.pressure;
    j["trend"] = trend_key(s.trend);
    j["timestamp"] = util::format_iso(s.timestamp);
    return j;
}

AffectSnapshot decode_snapshot(const json& j) {
    AffectSnapshot s;
    s.desperation = j.at("desperation").get<double>();
    s.calm = j.at("calm").get<double>();
    s.confidence = j.at("confidence").get<double>();
    s.frustration = j.at("frustration").get<double>();
    s.pressure = j.at("pressure").get<double>();
    s.trend = parse_trend(j.at("trend").get<std::string>());
    auto ts = util::parse_iso(j.at("timestamp").get<std::string>());
    if (!ts) throw std::runtime_error("bad snapshot timestamp");
    s.timestamp = *ts;
    return s;
}

namespace {

double clamp01(double x, double hi = 100.0) { return std::clamp(x, 0.0, hi); }

double tool_failure_rate(const CycleTelemetry& t) {
    if (t.tool_calls_total <= 0) return 0.0;
    return static_cast<double>(t.tool_calls_failed) / static_cast<double>(t.tool_calls_total);
}

double delegation_failure_rate(const CycleTelemetry& t) {
    if (t.delegations_total <= 0) return 0.0;
    return static_cast<double>(t.delegations_failed) / static_cast<double>(t.delegations_total);
}

}  // namespace

double desperation(const CycleTelemetry& t) {
    double total = 0.0;
    if (t.same_tool_retries >= 3) {
        total += 60;
    } else if (t.same_tool_retries == 2) {
        total += 40;
    } else if (t.same_tool_retries == 1) {
        total += 20;
    }
    if (t.gate_rejections >= 2) {
        total += 30;
    } else if (t.gate_rejections == 1) {
        total += 15;
    }
    total += std::min(static_cast<double>(t.consecutive_failure_cycles) * 10.0, 50.0);
    total += tool_failure_rate(t) * 40.0;
    if (t.output_gate_rejections >= 3) {
        total += 80;
    } else if (t.output_gate_rejections == 2) {
        total += 55;
    } else if (t.output_gate_rejections == 1) {
        total += 30;
    }
    return clamp01(total);
}

double calm(const CycleTelemetry& t, double prev_calm, const AffectParams& params) {
    if (prev_calm < 0.0 || prev_calm > 100.0) {
        throw std::invalid_argument("previous calm must lie in [0,100]");
    }
    double target = params.calm_baseline - 15.0 * static_cast<double>(t.tool_calls_failed) -
                    20.0 * static_cast<double>(t.gate_rejections) -
                    15.0 * static_cast<double>(t.delegations_failed);
    target = clamp01(target);
    return params.ema_alpha * target + (1.0 - params.ema_alpha) * prev_calm;
}

double confidence(const CycleTelemetry& t) {
    double tool_success = t.tool_calls_total > 0 ? 1.0 - tool_failure_rate(t) : 1.0;
    return clamp01(t.cbr_hit_rate * 40.0 + t.recent_success_rate * 40.0 + tool_success * 20.0);
}

double frustration(const CycleTelemetry& t) {
    double total = tool_failure_rate(t) * 50.0 +
                   static_cast<double>(t.gate_modifications) * 15.0 +
                   delegation_failure_rate(t) * 30.0 + t.budget_pressure * 20.0;
    return clamp01(total);
}

PressureResult pressure_and_trend(double desperation_value, double frustration_value,
                                  double confidence_value, double calm_value,
                                  std::optional<double> prev_pressure, double band) {
    PressureResult r;
    r.pressure = clamp01(0.45 * desperation_value + 0.25 * frustration_value +
                         0.15 * (100.0 - confidence_value) + 0.15 * (100.0 - calm_value));
    if (prev_pressure) {
        double delta = r.pressure - *prev_pressure;
        if (delta > band) {
            r.trend = Trend::Rising;
        } else if (delta < -band) {
            r.trend = Trend::Falling;
        }
    }
    return r;
}

AffectSnapshot compute_snapshot(const CycleTelemetry& t, const std::optional<AffectSnapshot>& prev,
                                const AffectParams& params, std::int64_t timestamp) {
    AffectSnapshot s;
    s.desperation = desperation(t);
    s.calm = calm(t, prev ? prev->calm : params.calm_baseline, params);
    s.confidence = confidence(t);
    s.frustration = frustration(t);
    auto pr = pressure_and_trend(s.desperation, s.frustration, s.confidence, s.calm,
                                 prev ? std::optional<double>(prev->pressure) : std::nullopt,
                                 params.trend_band);
    s.pressure = pr.pressure;
    s.trend = pr.trend;
    s.timestamp = timestamp;
    return s;
}

std::vector<AffectSnapshot> replay_telemetry(const std::vector<CycleTelemetry>& telemetry,
                                             const AffectParams& params,
                                             std::int64_t start_timestamp) {
    std::vector<AffectSnapshot> out;
    out.reserve(telemetry.size());
    std::optional<AffectSnapshot> prev;
    std::int64_t ts = start_timestamp;
    for (const auto& t : telemetry) {
        AffectSnapshot s = compute_snapshot(t, prev, params, ts);
        out.push_back(s);
        prev = s;
        ts += 60;  // nominal one-minute cycle spacing for replayed fixtures
    }
    return out;
}

}  // namespace agentcore::affect
