#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace agentcore::affect {

// The twelve observable per-cycle signals the affect computation reads.
struct CycleTelemetry {
    long tool_calls_total = 0;
    long tool_calls_failed = 0;
    long same_tool_retries = 0;
    long gate_rejections = 0;
    long gate_modifications = 0;
    long delegations_total = 0;
    long delegations_failed = 0;
    double recent_success_rate = 1.0;  // 0..1
    double cbr_hit_rate = 0.0;         // 0..1
    double budget_pressure = 0.0;      // one of 0, 0.4, 0.8
    long consecutive_failure_cycles = 0;
    long output_gate_rejections = 0;
};

nlohmann::json encode_telemetry(const CycleTelemetry& t);
CycleTelemetry decode_telemetry(const nlohmann::json& j);

struct AffectParams {
    double ema_alpha = 0.15;
    double calm_baseline = 85.0;
    double trend_band = 5.0;  // percentage points
};

enum class Trend { Rising, Falling, Stable };

std::string trend_key(Trend t);
Trend parse_trend(const std::string& key);

struct AffectSnapshot {
    double desperation = 0.0;
    double calm = 85.0;
    double confidence = 100.0;
    double frustration = 0.0;
    double pressure = 0.0;
    Trend trend = Trend::Stable;
    std::int64_t timestamp = 0;
};

nlohmann::json encode_snapshot(const AffectSnapshot& s);
AffectSnapshot decode_snapshot(const nlohmann::json& j);

// ── Dimensions (all 0..100) ───────────────────────────────────────────────────

// Tiered contributions summed then clamped: same-tool retries 20/40/60,
// gate rejections 15/30, consecutive failure cycles 10 each capped at 50,
// tool failure rate x40, output gate rejections 30/55/80.
double desperation(const CycleTelemetry& t);

// EMA toward a penalised baseline target: 85 - 15 per tool failure - 20 per
// gate rejection - 15 per delegation failure, clamped, with alpha = 0.15.
double calm(const CycleTelemetry& t, double prev_calm, const AffectParams& params = {});

// cbr hit rate x40 + recent success rate x40 + tool success rate x20
// (tool success rate is 1 when no tools ran).
double confidence(const CycleTelemetry& t);

// tool failure rate x50 + gate modifications x15 + delegation failure rate
// x30 + budget pressure x20, clamped.
double frustration(const CycleTelemetry& t);

struct PressureResult {
    double pressure = 0.0;
    Trend trend = Trend::Stable;
};

// 0.45*desperation + 0.25*frustration + 0.15*(100-confidence) +
// 0.15*(100-calm); trend is rising/falling only past the +-band.
PressureResult pressure_and_trend(double desperation_value, double frustration_value,
                                  double confidence_value, double calm_value,
                                  std::optional<double> prev_pressure, double band = 5.0);

// One cycle step: computes all dimensions, threading calm and pressure
// through the previous snapshot (bootstrap: baseline calm, stable trend).
AffectSnapshot compute_snapshot(const CycleTelemetry& t, const std::optional<AffectSnapshot>& prev,
                                const AffectParams& params, std::int64_t timestamp);

// Replays a telemetry sequence into snapshots.
std::vector<AffectSnapshot> replay_telemetry(const std::vector<CycleTelemetry>& telemetry,
                                             const AffectParams& params = {},
                                             std::int64_t start_timestamp = 0);

}  // namespace agentcore::affect
