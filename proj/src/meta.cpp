#include "agentcore/meta.hpp"

#include <algorithm>
#include <sstream>

namespace agentcore::affect {

std::string intervention_key(InterventionKind k) {
    switch (k) {
        case InterventionKind::InjectCaution: return "inject_caution";
        case InterventionKind::TightenThresholds: return "tighten_thresholds";
        case InterventionKind::Cooldown: return "cooldown";
        case InterventionKind::Escalate: return "escalate";
    }
    throw std::invalid_argument("unknown intervention");
}

std::vector<Intervention> meta_observe(const MetaInputs& inputs, const MetaConfig& config) {
    std::vector<Intervention> out;

    // Rate limit.
    if (inputs.cycles_in_window > config.rate_limit_cycles) {
        std::ostringstream msg;
        msg << inputs.cycles_in_window << " cycles in window (limit " << config.rate_limit_cycles
            << ")";
        out.push_back({InterventionKind::InjectCaution, "rate_limit", msg.str(), 1.0});
    }

    const auto& all = inputs.decisions;
    std::size_t window_start =
        all.size() > static_cast<std::size_t>(config.window) ? all.size() - config.window : 0;
    std::vector<GateObservation> window(all.begin() + static_cast<long>(window_start), all.end());

    // Cumulative risk: mean discrepancy strictly increasing over consecutive
    // sub-windows of the observed decisions.
    if (config.risk_subwindows >= 2 &&
        all.size() >= static_cast<std::size_t>(config.risk_subwindows)) {
        std::size_t chunk = all.size() / static_cast<std::size_t>(config.risk_subwindows);
        if (chunk >= 1) {
            std::vector<double> means;
            // Align chunks to the end so the trend reflects the latest activity.
            std::size_t start = all.size() - chunk * static_cast<std::size_t>(config.risk_subwindows);
            for (int w = 0; w < config.risk_subwindows; ++w) {
                double sum = 0.0;
                for (std::size_t i = 0; i < chunk; ++i) {
                    sum += all[start + static_cast<std::size_t>(w) * chunk + i].dprime;
                }
                means.push_back(sum / static_cast<double>(chunk));
            }
            bool increasing = true;
            for (std::size_t i = 1; i < means.size(); ++i) {
                if (!(means[i] > means[i - 1])) increasing = false;
            }
            if (increasing) {
                std::ostringstream msg;
                msg << "mean discrepancy rising across " << config.risk_subwindows
                    << " consecutive sub-windows";
                out.push_back({InterventionKind::Cooldown, "cumulative_risk", msg.str(), 1.0});
            }
        }
    }

    // Repeated rejections, excluding annotated false positives.
    long rejections = 0;
    long hard_rejections = 0;
    long false_positives = 0;
    for (const auto& d : window) {
        if (d.action == gate::GateAction::Reject) {
            ++rejections;
            if (d.false_positive) {
                ++false_positives;
            } else {
                ++hard_rejections;
            }
        }
    }
    if (hard_rejections >= 3) {
        std::ostringstream msg;
        msg << hard_rejections << " rejections in the sliding window";
        out.push_back(
            {InterventionKind::TightenThresholds, "repeated_rejections", msg.str(), config.tighten_factor});
    }

    // Persistence: tightening applied twice without the rejection rate dropping.
    if (inputs.tightenings_applied >= 2 && !window.empty()) {
        double rate = static_cast<double>(rejections) / static_cast<double>(window.size());
        if (rate >= inputs.rejection_rate_at_first_tighten) {
            std::ostringstream msg;
            msg << "thresholds tightened " << inputs.tightenings_applied
                << "x without the rejection rate dropping";
            out.push_back({InterventionKind::Escalate, "persistence", msg.str(), 1.0});
        }
    }

    // High false-positive rate among rejections.
    if (rejections > 0 &&
        static_cast<double>(false_positives) > 0.5 * static_cast<double>(rejections)) {
        std::ostringstream msg;
        msg << false_positives << "/" << rejections << " rejections flagged false-positive";
        out.push_back({InterventionKind::Escalate, "high_false_positive_rate", msg.str(), 1.0});
    }

    return out;
}

}  // namespace agentcore::affect
