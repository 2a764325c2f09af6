#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "agentcore/gate.hpp"
#include "agentcore/rng.hpp"

using namespace agentcore;
using namespace agentcore::gate;

namespace {

std::filesystem::path fixture(const std::string& name) {
    const char* dir = std::getenv("AGENTCORE_FIXTURES");
    REQUIRE(dir != nullptr);
    return std::filesystem::path(dir) / name;
}

// The eight-feature report-delivery sheet: sum(impt x mag) = 22 over n = 8.
DecisionSheet report_sheet() {
    DecisionSheet s;
    s.gate = GateKind::Output;
    s.features = {
        {"sourced_claims", 5, 1, false, norm::Level::ProfessionalEthics},
        {"causal_accuracy", 4, 1, false, norm::Level::ProfessionalEthics},
        {"data_currency", 3, 2, false, norm::Level::Operational},
        {"no_credential_exposure", 5, 0, true, norm::Level::Legal},
        {"no_internal_urls", 5, 0, false, norm::Level::ProfessionalEthics},
        {"no_system_internals", 4, 1, false, norm::Level::Prudential},
        {"professional_tone", 3, 1, false, norm::Level::Etiquette},
        {"recipient_suitability", 4, 0, false, norm::Level::Community},
    };
    return s;
}

// The five-feature debug-email sheet: sum = 64 over n = 5.
DecisionSheet debug_email_sheet() {
    DecisionSheet s;
    s.gate = GateKind::Output;
    s.agent = "comms";
    s.features = {
        {"no_credential_exposure", 5, 0, true, norm::Level::Legal},
        {"no_internal_urls", 5, 4, false, norm::Level::ProfessionalEthics},
        {"no_system_internals", 4, 5, false, norm::Level::Prudential},
        {"professional_tone", 3, 4, false, norm::Level::Etiquette},
        {"recipient_suitability", 4, 3, false, norm::Level::Community},
    };
    return s;
}

std::vector<norm::Proposition> operator_character() {
    norm::Proposition s1{"external comms require safety eval", norm::Level::ProfessionalEthics,
                         norm::Operator::Required, norm::Modality::Possible, norm::Side::System,
                         false};
    norm::Proposition s2{"operator authority over deliverables", norm::Level::Legal,
                         norm::Operator::Required, norm::Modality::Possible, norm::Side::System,
                         false};
    norm::Proposition s3{"produce accurate output", norm::Level::EthicalMoral,
                         norm::Operator::Ought, norm::Modality::Possible, norm::Side::System,
                         false};
    return {s1, s2, s3};
}

}  // namespace

TEST_CASE("worked sheets reproduce the published discrepancy scores") {
    CHECK(compute_dprime(report_sheet()) == doctest::Approx(22.0 / 200.0).epsilon(1e-12));
    CHECK(std::abs(compute_dprime(report_sheet()) - 0.11) < 1e-12);
    CHECK(compute_dprime(debug_email_sheet()) == doctest::Approx(64.0 / 125.0).epsilon(1e-12));
    CHECK(std::abs(compute_dprime(debug_email_sheet()) - 0.512) < 1e-12);
}

TEST_CASE("discrepancy edge cases") {
    DecisionSheet empty;
    CHECK_THROWS_AS(compute_dprime(empty), std::invalid_argument);

    DecisionSheet zeros = report_sheet();
    for (auto& f : zeros.features) f.magnitude = 0;
    CHECK(compute_dprime(zeros) == 0.0);

    DecisionSheet out_of_range = report_sheet();
    out_of_range.features[0].magnitude = 6;
    CHECK_THROWS_AS(compute_dprime(out_of_range), std::invalid_argument);
}

TEST_CASE("scale bound: one exactly when every feature is 5/5") {
    util::Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        DecisionSheet s;
        s.gate = GateKind::Tool;
        std::size_t n = 1 + rng.uniform(10);
        bool all_max = true;
        for (std::size_t i = 0; i < n; ++i) {
            FeatureScore f;
            f.name = "f" + std::to_string(i);
            f.importance = static_cast<int>(rng.uniform(6));
            f.magnitude = static_cast<int>(rng.uniform(6));
            if (f.importance != 5 || f.magnitude != 5) all_max = false;
            s.features.push_back(f);
        }
        double d = compute_dprime(s);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK((d == 1.0) == all_max);
    }
}

TEST_CASE("discrepancy is strictly monotone in magnitude when importance is positive") {
    DecisionSheet s = report_sheet();
    double base = compute_dprime(s);
    for (std::size_t i = 0; i < s.features.size(); ++i) {
        if (s.features[i].magnitude >= 5 || s.features[i].importance == 0) continue;
        DecisionSheet bumped = s;
        bumped.features[i].magnitude += 1;
        CHECK(compute_dprime(bumped) > base);
    }
}

TEST_CASE("screening boundary is inclusive on the consult side") {
    norm::GateThresholds th;
    CHECK(screen(0.11, th) == ScreenResult::FastAccept);
    CHECK(screen(0.35, th) == ScreenResult::Consult);
    CHECK(screen(0.51, norm::GateThresholds(0.30, 0.50)) == ScreenResult::Consult);
}

TEST_CASE("feature translation maps magnitudes to operators") {
    SUBCASE("high-magnitude features become flagged Required propositions") {
        auto props = translate_features(debug_email_sheet());
        REQUIRE(props.size() == 5);  // 3 Required + 1 Ought flagged, 1 residue
        CHECK(props[0].op == norm::Operator::Required);
        CHECK(props[0].level == norm::Level::ProfessionalEthics);
        CHECK(props[0].from_flagged_feature);
        CHECK(props[1].op == norm::Operator::Required);
        CHECK(props[1].level == norm::Level::Prudential);
        CHECK(props[2].op == norm::Operator::Required);
        CHECK(props[2].level == norm::Level::Etiquette);
        CHECK(props[3].op == norm::Operator::Ought);
        CHECK(props[3].level == norm::Level::Community);
        CHECK(props[3].from_flagged_feature);
        CHECK(props[4].op == norm::Operator::Ought);
        CHECK(props[4].level == norm::Level::Operational);
        CHECK_FALSE(props[4].from_flagged_feature);
        for (const auto& p : props) CHECK(p.side == norm::Side::User);
    }
    SUBCASE("all-benign sheet collapses to a single unflagged residue") {
        DecisionSheet s = report_sheet();
        for (auto& f : s.features) f.magnitude = 0;
        auto props = translate_features(s);
        REQUIRE(props.size() == 1);
        CHECK(props[0].level == norm::Level::Operational);
        CHECK(props[0].op == norm::Operator::Ought);
        CHECK_FALSE(props[0].from_flagged_feature);
    }
    SUBCASE("single magnitude-2 feature becomes one flagged Ought") {
        DecisionSheet s;
        s.gate = GateKind::Output;
        s.features = {{"tone", 3, 2, false, norm::Level::Etiquette}};
        auto props = translate_features(s);
        REQUIRE(props.size() == 1);
        CHECK(props[0].level == norm::Level::Etiquette);
        CHECK(props[0].op == norm::Operator::Ought);
        CHECK(props[0].from_flagged_feature);
    }
}

TEST_CASE("pipeline: report delivery fast-accepts") {
    auto d = evaluate(report_sheet(), operator_character(), norm::GateThresholds());
    CHECK(d.action == GateAction::Accept);
    CHECK(d.fast_path);
    CHECK_FALSE(d.verdict.has_value());
    CHECK(d.dprime == doctest::Approx(0.11).epsilon(1e-12));
}

TEST_CASE("pipeline: debug email is prohibited at floor 2 under comms thresholds") {
    auto d = evaluate(debug_email_sheet(), operator_character(), norm::GateThresholds(0.30, 0.50));
    CHECK(d.action == GateAction::Reject);
    CHECK_FALSE(d.fast_path);
    REQUIRE(d.verdict.has_value());
    CHECK(d.verdict->kind == norm::VerdictKind::Prohibited);
    CHECK(d.verdict->floor_index == 2);
    CHECK(d.verdict->axiom_trail.size() == 5 * 3);
}

TEST_CASE("pipeline: benign residue above modify constrains via the score floor") {
    DecisionSheet s;
    s.gate = GateKind::Output;
    // Low magnitudes (all residue) but enough weight to cross modify.
    s.features = {{"a", 5, 1, false, norm::Level::Operational},
                  {"b", 5, 1, false, norm::Level::Operational}};
    // dprime = 10/50 = 0.2; use tighter thresholds so 0.2 >= modify.
    auto d = evaluate(s, operator_character(), norm::GateThresholds(0.15, 0.60));
    CHECK(d.action == GateAction::Modify);
    REQUIRE(d.verdict.has_value());
    CHECK(d.verdict->floor_index == 6);
}

TEST_CASE("fast path never carries a verdict") {
    util::Rng rng(99);
    auto character = operator_character();
    norm::GateThresholds th;
    for (int trial = 0; trial < 200; ++trial) {
        DecisionSheet s;
        s.gate = GateKind::Output;
        std::size_t n = 1 + rng.uniform(6);
        for (std::size_t i = 0; i < n; ++i) {
            FeatureScore f;
            f.name = "f" + std::to_string(i);
            f.importance = static_cast<int>(rng.uniform(6));
            f.magnitude = static_cast<int>(rng.uniform(6));
            f.catastrophic = rng.chance(0.2);
            f.level_hint = norm::all_levels()[rng.uniform(norm::kLevelCount)];
            s.features.push_back(f);
        }
        auto d = evaluate(s, character, th);
        if (d.dprime < th.modify) {
            CHECK(d.fast_path);
            CHECK(d.action == GateAction::Accept);
            CHECK_FALSE(d.verdict.has_value());
        } else {
            CHECK_FALSE(d.fast_path);
            REQUIRE(d.verdict.has_value());
            // Action mapping is exact.
            switch (d.verdict->kind) {
                case norm::VerdictKind::Flourishing: CHECK(d.action == GateAction::Accept); break;
                case norm::VerdictKind::Constrained: CHECK(d.action == GateAction::Modify); break;
                case norm::VerdictKind::Prohibited: CHECK(d.action == GateAction::Reject); break;
            }
        }
    }
}

TEST_CASE("tighten scales both thresholds and validates the factor") {
    norm::GateThresholds th;
    auto tightened = tighten(th, 0.85);
    CHECK(tightened.modify == doctest::Approx(0.2975).epsilon(1e-12));
    CHECK(tightened.reject == doctest::Approx(0.4675).epsilon(1e-12));

    auto same = tighten(th, 1.0);
    CHECK(same.modify == th.modify);
    CHECK(same.reject == th.reject);

    auto twice = tighten(tighten(th, 0.9), 0.9);
    auto once = tighten(th, 0.81);
    CHECK(twice.modify == doctest::Approx(once.modify).epsilon(1e-12));
    CHECK(twice.reject == doctest::Approx(once.reject).epsilon(1e-12));

    CHECK_THROWS_AS(tighten(th, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tighten(th, 1.5), std::invalid_argument);
}

TEST_CASE("character specification parses from the configuration document") {
    auto props = load_character(fixture("character_full.json"));
    REQUIRE(props.size() == 4);
    CHECK(props[0].level == norm::Level::EthicalMoral);
    CHECK(props[0].op == norm::Operator::Ought);
    CHECK(props[1].level == norm::Level::Legal);
    CHECK(props[1].op == norm::Operator::Required);
    CHECK(props[3].modality == norm::Modality::Possible);
    for (const auto& p : props) CHECK(p.side == norm::Side::System);

    nlohmann::json bad = {{"highest_endeavour",
                           {{{"description", "x"}, {"level", "NOT_A_LEVEL"}, {"operator", "OUGHT"}}}}};
    CHECK_THROWS(parse_character(bad));
}

TEST_CASE("gate configuration resolves agent thresholds and feature metadata") {
    auto config = load_gate_config(fixture("gate_config.json"));
    CHECK(config.thresholds_for(std::nullopt).modify == doctest::Approx(0.35));
    CHECK(config.thresholds_for("comms").modify == doctest::Approx(0.30));
    CHECK(config.thresholds_for("comms").reject == doctest::Approx(0.50));
    CHECK(config.thresholds_for("unknown").modify == doctest::Approx(0.35));

    auto sheet = load_sheet(fixture("sheet_debug_email.json"));
    CHECK(sheet.agent == "comms");
    config.apply_to(sheet);
    CHECK(sheet.features[0].catastrophic);
    CHECK(sheet.features[0].level_hint == norm::Level::Legal);
    CHECK(sheet.features[1].level_hint == norm::Level::ProfessionalEthics);

    auto d = evaluate(sheet, load_character(fixture("character.json")),
                      config.thresholds_for(sheet.agent));
    CHECK(d.action == GateAction::Reject);
    REQUIRE(d.verdict.has_value());
    CHECK(d.verdict->floor_index == 2);
}
