#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "agentcore/norm.hpp"
#include "agentcore/rng.hpp"

using namespace agentcore::norm;

namespace {

Proposition make(Level level, Operator op, Modality m, Side side, bool flagged = false) {
    Proposition p;
    p.description = level_key(level);
    p.level = level;
    p.op = op;
    p.modality = m;
    p.side = side;
    p.from_flagged_feature = flagged;
    return p;
}

Proposition user(Level level, Operator op, bool flagged = false) {
    return make(level, op, Modality::Possible, Side::User, flagged);
}

Proposition system(Level level, Operator op) {
    return make(level, op, Modality::Possible, Side::System);
}

// Thresholds used by the tighter communications profile.
GateThresholds comms_thresholds() { return GateThresholds(0.30, 0.50); }

// Independent re-check of floor conditions; mirrors the documented rules
// without sharing the implementation's evaluation order machinery.
int first_floor_expected(const std::vector<Resolution>& rs, double dprime,
                         const GateThresholds& th, bool catastrophic) {
    auto sys_sup_flagged = [&](int lo, int hi) {
        for (const auto& r : rs) {
            if (r.severity == Severity::Superordinate && r.winner == Winner::System &&
                r.user.from_flagged_feature && level_priority(r.system.level) >= lo &&
                level_priority(r.system.level) <= hi) {
                return true;
            }
        }
        return false;
    };
    long coord = 0;
    bool absolute = false;
    bool superordinate = false;
    for (const auto& r : rs) {
        if (r.severity == Severity::Absolute) absolute = true;
        if (r.severity == Severity::Superordinate) superordinate = true;
        if (r.severity == Severity::Coordinate) ++coord;
    }
    if (absolute) return 1;
    if (sys_sup_flagged(5000, 1 << 30)) return 2;
    if (dprime >= th.reject) return 3;
    if (catastrophic && superordinate) return 4;
    if (coord >= 2) return 5;
    if (dprime >= th.modify) return 6;
    if (sys_sup_flagged(2000, 3500)) return 7;
    return 8;
}

}  // namespace

TEST_CASE("fourteen levels with distinct priorities in descending order") {
    const auto& levels = all_levels();
    CHECK(levels.size() == 14);
    std::set<int> priorities;
    int prev = 1 << 30;
    for (Level l : levels) {
        int p = level_priority(l);
        CHECK(p < prev);
        prev = p;
        priorities.insert(p);
    }
    CHECK(priorities.size() == 14);
    CHECK(level_priority(Level::EthicalMoral) == 6000);
    CHECK(level_priority(Level::Legal) == 5000);
    CHECK(level_priority(Level::Prudential) == 4500);
    CHECK(level_priority(Level::SocialPolitical) == 4000);
    CHECK(level_priority(Level::SafetyPhysical) == 3500);
    CHECK(level_priority(Level::Environmental) == 3000);
    CHECK(level_priority(Level::Community) == 2500);
    CHECK(level_priority(Level::ProfessionalEthics) == 2000);
    CHECK(level_priority(Level::Economic) == 1500);
    CHECK(level_priority(Level::Etiquette) == 1000);
    CHECK(level_priority(Level::Aesthetic) == 500);
    CHECK(level_priority(Level::Operational) == 100);
}

TEST_CASE("operator ranks are strictly ordered") {
    CHECK(operator_rank(Operator::Required) == 3);
    CHECK(operator_rank(Operator::Ought) == 2);
    CHECK(operator_rank(Operator::Indifferent) == 1);
}

TEST_CASE("proposition space enumerates 84 entries in fixed order") {
    auto props = enumerate_propositions();
    REQUIRE(props.size() == 84);
    CHECK(props[0].level == Level::EthicalMoral);
    CHECK(props[0].op == Operator::Required);
    CHECK(props[0].modality == Modality::Possible);

    std::set<std::tuple<int, int, int>> seen;
    for (const auto& p : props) {
        seen.insert({level_priority(p.level), operator_rank(p.op), static_cast<int>(p.modality)});
    }
    CHECK(seen.size() == 84);  // every triple exactly once

    auto again = enumerate_propositions();
    CHECK(props == again);
}

TEST_CASE("resolution axioms fire in documented order") {
    SUBCASE("futility precedes everything for impossible user propositions") {
        auto r = resolve_pair(make(Level::EthicalMoral, Operator::Required, Modality::Impossible,
                                   Side::User),
                              system(Level::EthicalMoral, Operator::Required));
        CHECK(r.axiom == Axiom::Futility);
        CHECK(r.winner == Winner::None);
        CHECK(r.severity == Severity::NoConflict);
    }
    SUBCASE("indifferent user propositions generate no conflict") {
        auto r = resolve_pair(user(Level::Legal, Operator::Indifferent),
                              system(Level::EthicalMoral, Operator::Required));
        CHECK(r.axiom == Axiom::Indifference);
        CHECK(r.severity == Severity::NoConflict);
    }
    SUBCASE("system-side absolute prohibition ignores system modality") {
        auto r = resolve_pair(user(Level::EthicalMoral, Operator::Required),
                              make(Level::EthicalMoral, Operator::Required, Modality::Impossible,
                                   Side::System));
        CHECK(r.axiom == Axiom::AbsoluteProhibition);
        CHECK(r.winner == Winner::System);
        CHECK(r.severity == Severity::Absolute);
    }
    SUBCASE("different levels resolve by priority") {
        auto r = resolve_pair(user(Level::ProfessionalEthics, Operator::Required),
                              system(Level::Legal, Operator::Required));
        CHECK(r.axiom == Axiom::MoralPriority);
        CHECK(r.winner == Winner::System);
        CHECK(r.severity == Severity::Superordinate);

        auto r2 = resolve_pair(user(Level::Legal, Operator::Ought),
                               system(Level::Operational, Operator::Required));
        CHECK(r2.winner == Winner::User);
    }
    SUBCASE("same level resolves by operator rank") {
        auto r = resolve_pair(user(Level::Economic, Operator::Required),
                              system(Level::Economic, Operator::Ought));
        CHECK(r.axiom == Axiom::MoralRank);
        CHECK(r.winner == Winner::User);
        CHECK(r.severity == Severity::Coordinate);
    }
    SUBCASE("equal level and rank are compatible") {
        auto r = resolve_pair(user(Level::ProfessionalEthics, Operator::Required),
                              system(Level::ProfessionalEthics, Operator::Required));
        CHECK(r.axiom == Axiom::NormativeOpenness);
        CHECK(r.winner == Winner::None);
        CHECK(r.severity == Severity::NoConflict);
    }
    SUBCASE("wrong sides are rejected") {
        CHECK_THROWS_AS(resolve_pair(system(Level::Legal, Operator::Ought),
                                     system(Level::Legal, Operator::Ought)),
                        std::invalid_argument);
    }
}

TEST_CASE("resolve_all is row-major and empty-safe") {
    std::vector<Proposition> users{user(Level::ProfessionalEthics, Operator::Required, true),
                                   user(Level::Operational, Operator::Ought, true)};
    std::vector<Proposition> systems{system(Level::ProfessionalEthics, Operator::Required),
                                     system(Level::Legal, Operator::Required),
                                     system(Level::EthicalMoral, Operator::Ought)};
    auto rs = resolve_all(users, systems);
    REQUIRE(rs.size() == 6);
    CHECK(rs[0].axiom == Axiom::NormativeOpenness);
    for (std::size_t i = 1; i < 6; ++i) CHECK(rs[i].axiom == Axiom::MoralPriority);
    CHECK(rs[1].user.level == Level::ProfessionalEthics);
    CHECK(rs[1].system.level == Level::Legal);
    CHECK(rs[3].user.level == Level::Operational);

    CHECK(resolve_all({}, systems).empty());
}

TEST_CASE("single low-level user proposition loses to all higher system propositions") {
    std::vector<Proposition> users{user(Level::Operational, Operator::Ought)};
    std::vector<Proposition> systems{system(Level::ProfessionalEthics, Operator::Required),
                                     system(Level::Legal, Operator::Required),
                                     system(Level::EthicalMoral, Operator::Ought)};
    auto rs = resolve_all(users, systems);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) {
        CHECK(r.axiom == Axiom::MoralPriority);
        CHECK(r.winner == Winner::System);
        CHECK(r.severity == Severity::Superordinate);
    }
}

TEST_CASE("exhaustive evaluation reproduces the certified distribution") {
    auto report = exhaustive_eval();
    CHECK(report.pairs == 7056);
    CHECK(report.deterministic);

    auto expected = reference_distribution();
    CHECK(report.counts.futility == 3528);
    CHECK(report.counts.indifference == 1176);
    CHECK(report.counts.moral_priority_system == 1040);
    CHECK(report.counts.moral_priority_user == 1092);
    CHECK(report.counts.absolute_prohibition == 56);
    CHECK(report.counts.moral_rank == 110);
    CHECK(report.counts.coordinate == 54);
    CHECK(report.counts == expected);
    CHECK(report.counts.total() == 7056);
}

TEST_CASE("monotonicity holds over all single-step strengthenings") {
    auto violations = check_monotonicity();
    for (const auto& v : violations) MESSAGE(v.description);
    CHECK(violations.empty());
}

TEST_CASE("strengthening the operator turns a tie into a win") {
    auto before = resolve_pair(user(Level::Economic, Operator::Ought),
                               system(Level::Economic, Operator::Ought));
    CHECK(before.winner == Winner::None);
    auto after = resolve_pair(user(Level::Economic, Operator::Required),
                              system(Level::Economic, Operator::Ought));
    CHECK(after.winner == Winner::User);
}

TEST_CASE("floor rules fire in priority order") {
    GateThresholds th;

    SUBCASE("any absolute severity prohibits") {
        auto rs = resolve_all(std::vector{user(Level::Legal, Operator::Required, true)},
                              std::vector{system(Level::EthicalMoral, Operator::Required)});
        auto v = apply_floor_rules(rs, 0.0, th, false);
        CHECK(v.kind == VerdictKind::Prohibited);
        CHECK(v.floor_index == 1);
        CHECK(v.axiom_trail == std::vector{Axiom::AbsoluteProhibition});
    }
    SUBCASE("system-won superordinate at Legal or above prohibits when the user side is flagged") {
        std::vector<Proposition> users{user(Level::ProfessionalEthics, Operator::Required, true),
                                       user(Level::Operational, Operator::Ought, true)};
        std::vector<Proposition> systems{system(Level::ProfessionalEthics, Operator::Required),
                                         system(Level::Legal, Operator::Required),
                                         system(Level::EthicalMoral, Operator::Ought)};
        auto rs = resolve_all(users, systems);
        auto v = apply_floor_rules(rs, 0.51, comms_thresholds(), false);
        CHECK(v.kind == VerdictKind::Prohibited);
        CHECK(v.floor_index == 2);
        std::vector<Axiom> want{Axiom::NormativeOpenness, Axiom::MoralPriority,
                                Axiom::MoralPriority,    Axiom::MoralPriority,
                                Axiom::MoralPriority,    Axiom::MoralPriority};
        CHECK(v.axiom_trail == want);
    }
    SUBCASE("the same superordinates stay flourishing when the user side is an unflagged residue") {
        std::vector<Proposition> users{user(Level::Operational, Operator::Ought, false)};
        std::vector<Proposition> systems{system(Level::ProfessionalEthics, Operator::Required),
                                         system(Level::Legal, Operator::Required),
                                         system(Level::EthicalMoral, Operator::Ought)};
        auto v = apply_floor_rules(resolve_all(users, systems), 0.0, th, false);
        CHECK(v.kind == VerdictKind::Flourishing);
        CHECK(v.floor_index == 8);
    }
    SUBCASE("discrepancy at or above reject prohibits") {
        auto v = apply_floor_rules({}, 0.55, th, false);
        CHECK(v.kind == VerdictKind::Prohibited);
        CHECK(v.floor_index == 3);
    }
    SUBCASE("catastrophic feature plus superordinate constrains") {
        auto rs = resolve_all(std::vector{user(Level::Etiquette, Operator::Required, true)},
                              std::vector{system(Level::Economic, Operator::Required)});
        auto v = apply_floor_rules(rs, 0.0, th, true);
        CHECK(v.kind == VerdictKind::Constrained);
        CHECK(v.floor_index == 4);
    }
    SUBCASE("two coordinate conflicts constrain") {
        auto rs = resolve_all(std::vector{user(Level::Economic, Operator::Required, true),
                                          user(Level::Economic, Operator::Required, true)},
                              std::vector{system(Level::Economic, Operator::Ought)});
        auto v = apply_floor_rules(rs, 0.0, th, false);
        CHECK(v.kind == VerdictKind::Constrained);
        CHECK(v.floor_index == 5);
    }
    SUBCASE("discrepancy at or above modify constrains") {
        auto v = apply_floor_rules({}, 0.35, th, false);
        CHECK(v.kind == VerdictKind::Constrained);
        CHECK(v.floor_index == 6);
    }
    SUBCASE("mid-band system-won superordinate constrains") {
        auto rs = resolve_all(std::vector{user(Level::Etiquette, Operator::Required, true)},
                              std::vector{system(Level::ProfessionalEthics, Operator::Required)});
        auto v = apply_floor_rules(rs, 0.0, th, false);
        CHECK(v.kind == VerdictKind::Constrained);
        CHECK(v.floor_index == 7);
    }
    SUBCASE("default flourishes") {
        auto v = apply_floor_rules({}, 0.0, th, false);
        CHECK(v.kind == VerdictKind::Flourishing);
        CHECK(v.floor_index == 8);
        CHECK(v.axiom_trail.empty());
    }
    SUBCASE("invalid thresholds are rejected") {
        CHECK_THROWS_AS(GateThresholds(0.6, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(GateThresholds(0.5, 0.5), std::invalid_argument);
    }
}

TEST_CASE("floor precedence holds for randomized inputs") {
    agentcore::util::Rng rng(2026);
    auto props = enumerate_propositions();
    GateThresholds th;
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n_users = 1 + rng.uniform(3);
        std::size_t n_systems = 1 + rng.uniform(3);
        std::vector<Proposition> users, systems;
        for (std::size_t i = 0; i < n_users; ++i) {
            auto p = as_side(props[rng.uniform(props.size())], Side::User);
            p.from_flagged_feature = rng.chance(0.5);
            users.push_back(p);
        }
        for (std::size_t i = 0; i < n_systems; ++i) {
            systems.push_back(as_side(props[rng.uniform(props.size())], Side::System));
        }
        double dprime = rng.real();
        bool catastrophic = rng.chance(0.3);
        auto rs = resolve_all(users, systems);
        auto v = apply_floor_rules(rs, dprime, th, catastrophic);
        CHECK(v.floor_index == first_floor_expected(rs, dprime, th, catastrophic));
        CHECK(v.axiom_trail.size() == rs.size());
    }
}
