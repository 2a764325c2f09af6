#include "agentcore/gate.hpp"

#include <fstream>
#include <stdexcept>

namespace agentcore::gate {

using nlohmann::json;

std::string gate_key(GateKind g) {
    switch (g) {
        case GateKind::Input: return "input";
        case GateKind::Tool: return "tool";
        case GateKind::Output: return "output";
    }
    throw std::invalid_argument("unknown gate");
}

GateKind parse_gate(const std::string& key) {
    if (key == "input") return GateKind::Input;
    if (key == "tool") return GateKind::Tool;
    if (key == "output") return GateKind::Output;
    throw std::invalid_argument("unknown gate: " + key);
}

std::string action_name(GateAction a) {
    switch (a) {
        case GateAction::Accept: return "ACCEPT";
        case GateAction::Modify: return "MODIFY";
        case GateAction::Reject: return "REJECT";
    }
    throw std::invalid_argument("unknown action");
}

double compute_dprime(const DecisionSheet& sheet) {
    if (sheet.features.empty()) {
        throw std::invalid_argument("decision sheet requires at least one feature");
    }
    long numerator = 0;
    for (const auto& f : sheet.features) {
        if (f.importance < 0 || f.importance > kMaxImportance || f.magnitude < 0 ||
            f.magnitude > kMaxMagnitude) {
            throw std::invalid_argument("feature scores must lie in [0,5]: " + f.name);
        }
        numerator += static_cast<long>(f.importance) * f.magnitude;
    }
    const double denominator =
        static_cast<double>(kMaxImportance) * kMaxMagnitude * static_cast<double>(sheet.features.size());
    return static_cast<double>(numerator) / denominator;
}

ScreenResult screen(double score, const norm::GateThresholds& thresholds) {
    thresholds.validate();
    return score < thresholds.modify ? ScreenResult::FastAccept : ScreenResult::Consult;
}

std::vector<norm::Proposition> translate_features(const DecisionSheet& sheet) {
    std::vector<norm::Proposition> out;
    std::string residue_names;
    for (const auto& f : sheet.features) {
        if (f.magnitude >= 4) {
            norm::Proposition p;
            p.description = f.name;
            p.level = f.level_hint;
            p.op = norm::Operator::Required;
            p.modality = norm::Modality::Possible;
            p.side = norm::Side::User;
            p.from_flagged_feature = true;
            out.push_back(std::move(p));
        } else if (f.magnitude >= 2) {
            norm::Proposition p;
            p.description = f.name;
            p.level = f.level_hint;
            p.op = norm::Operator::Ought;
            p.modality = norm::Modality::Possible;
            p.side = norm::Side::User;
            p.from_flagged_feature = true;
            out.push_back(std::move(p));
        } else {
            if (!residue_names.empty()) residue_names += ", ";
            residue_names += f.name;
        }
    }
    if (!residue_names.empty()) {
        norm::Proposition p;
        p.description = "residue: " + residue_names;
        p.level = norm::Level::Operational;
        p.op = norm::Operator::Ought;
        p.modality = norm::Modality::Possible;
        p.side = norm::Side::User;
        p.from_flagged_feature = false;
        out.push_back(std::move(p));
    }
    return out;
}

GateDecision evaluate(const DecisionSheet& sheet,
                      const std::vector<norm::Proposition>& character,
                      const norm::GateThresholds& thresholds) {
    GateDecision decision;
    decision.dprime = compute_dprime(sheet);
    if (screen(decision.dprime, thresholds) == ScreenResult::FastAccept) {
        decision.action = GateAction::Accept;
        decision.fast_path = true;
        return decision;
    }
    const auto user_props = translate_features(sheet);
    const auto resolutions = norm::resolve_all(user_props, character);
    bool catastrophic_present = false;
    for (const auto& f : sheet.features) {
        if (f.catastrophic && f.magnitude >= 2) catastrophic_present = true;
    }
    norm::Verdict verdict =
        norm::apply_floor_rules(resolutions, decision.dprime, thresholds, catastrophic_present);
    switch (verdict.kind) {
        case norm::VerdictKind::Flourishing: decision.action = GateAction::Accept; break;
        case norm::VerdictKind::Constrained: decision.action = GateAction::Modify; break;
        case norm::VerdictKind::Prohibited: decision.action = GateAction::Reject; break;
    }
    decision.fast_path = false;
    decision.verdict = std::move(verdict);
    return decision;
}

norm::GateThresholds tighten(const norm::GateThresholds& thresholds, double factor) {
    thresholds.validate();
    if (!(factor > 0.0 && factor <= 1.0)) {
        throw std::invalid_argument("tighten factor must lie in (0,1]");
    }
    return norm::GateThresholds(thresholds.modify * factor, thresholds.reject * factor);
}

// ── Documents ─────────────────────────────────────────────────────────────────

namespace {

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
    return doc;
}

}  // namespace

std::vector<norm::Proposition> parse_character(const json& doc) {
    if (!doc.contains("highest_endeavour") || !doc["highest_endeavour"].is_array()) {
        throw std::runtime_error("character document requires a highest_endeavour array");
    }
    std::vector<norm::Proposition> props;
    for (const auto& item : doc["highest_endeavour"]) {
        norm::Proposition p;
        p.description = item.at("description").get<std::string>();
        p.level = norm::parse_level(item.at("level").get<std::string>());
        p.op = norm::parse_operator(item.at("operator").get<std::string>());
        p.modality = item.contains("modality")
                         ? norm::parse_modality(item["modality"].get<std::string>())
                         : norm::Modality::Possible;
        p.side = norm::Side::System;
        props.push_back(std::move(p));
    }
    return props;
}

std::vector<norm::Proposition> load_character(const std::filesystem::path& file) {
    return parse_character(load_json(file));
}

namespace {

std::vector<FeatureDef> parse_feature_defs(const json& arr) {
    std::vector<FeatureDef> defs;
    for (const auto& item : arr) {
        FeatureDef d;
        d.name = item.at("name").get<std::string>();
        d.importance = item.at("importance").get<int>();
        if (item.contains("level_hint")) {
            d.level_hint = norm::parse_level(item["level_hint"].get<std::string>());
        }
        d.catastrophic = item.value("catastrophic", false);
        defs.push_back(std::move(d));
    }
    return defs;
}

norm::GateThresholds parse_thresholds(const json& obj) {
    return norm::GateThresholds(obj.at("modify").get<double>(), obj.at("reject").get<double>());
}

}  // namespace

GateConfig parse_gate_config(const json& doc) {
    GateConfig cfg;
    if (doc.contains("thresholds")) cfg.default_thresholds = parse_thresholds(doc["thresholds"]);
    if (doc.contains("gates")) {
        for (const auto& [gate_name, gate_obj] : doc["gates"].items()) {
            parse_gate(gate_name);  // validates
            if (gate_obj.contains("features")) {
                cfg.features_by_gate[gate_name] = parse_feature_defs(gate_obj["features"]);
            }
        }
    }
    if (doc.contains("agents")) {
        for (const auto& [agent_name, agent_obj] : doc["agents"].items()) {
            AgentProfile profile;
            if (agent_obj.contains("thresholds")) {
                profile.thresholds = parse_thresholds(agent_obj["thresholds"]);
            }
            if (agent_obj.contains("gates")) {
                for (const auto& [gate_name, gate_obj] : agent_obj["gates"].items()) {
                    parse_gate(gate_name);
                    if (gate_obj.contains("features")) {
                        profile.features_by_gate[gate_name] = parse_feature_defs(gate_obj["features"]);
                    }
                }
            }
            cfg.agents[agent_name] = std::move(profile);
        }
    }
    return cfg;
}

GateConfig load_gate_config(const std::filesystem::path& file) {
    return parse_gate_config(load_json(file));
}

norm::GateThresholds GateConfig::thresholds_for(const std::optional<std::string>& agent) const {
    if (agent) {
        auto it = agents.find(*agent);
        if (it != agents.end() && it->second.thresholds) return *it->second.thresholds;
    }
    return default_thresholds;
}

void GateConfig::apply_to(DecisionSheet& sheet) const {
    auto find_def = [&](const std::string& name) -> const FeatureDef* {
        const std::string gate_name = gate_key(sheet.gate);
        if (sheet.agent) {
            auto ait = agents.find(*sheet.agent);
            if (ait != agents.end()) {
                auto git = ait->second.features_by_gate.find(gate_name);
                if (git != ait->second.features_by_gate.end()) {
                    for (const auto& d : git->second) {
                        if (d.name == name) return &d;
                    }
                }
            }
        }
        auto git = features_by_gate.find(gate_name);
        if (git != features_by_gate.end()) {
            for (const auto& d : git->second) {
                if (d.name == name) return &d;
            }
        }
        return nullptr;
    };
    for (auto& f : sheet.features) {
        if (const FeatureDef* d = find_def(f.name)) {
            f.level_hint = d->level_hint;
            f.catastrophic = d->catastrophic;
            if (f.importance == 0) f.importance = d->importance;
        }
    }
}

DecisionSheet parse_sheet(const json& doc) {
    DecisionSheet sheet;
    sheet.gate = parse_gate(doc.value("gate", "output"));
    if (doc.contains("agent") && !doc["agent"].is_null()) {
        sheet.agent = doc["agent"].get<std::string>();
    }
    if (!doc.contains("features") || !doc["features"].is_array() || doc["features"].empty()) {
        throw std::runtime_error("decision sheet requires a non-empty features array");
    }
    for (const auto& item : doc["features"]) {
        FeatureScore f;
        f.name = item.at("name").get<std::string>();
        f.importance = item.value("importance", 0);
        f.magnitude = item.at("magnitude").get<int>();
        if (item.contains("level_hint")) {
            f.level_hint = norm::parse_level(item["level_hint"].get<std::string>());
        }
        f.catastrophic = item.value("catastrophic", false);
        sheet.features.push_back(std::move(f));
    }
    return sheet;
}

DecisionSheet load_sheet(const std::filesystem::path& file) {
    return parse_sheet(load_json(file));
}

}  // namespace agentcore::gate
