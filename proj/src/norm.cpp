#include "agentcore/norm.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace agentcore::norm {

namespace {

struct LevelInfo {
    Level level;
    int priority;
    const char* name;
    const char* key;
};

// Descending priority. Convention (800) and Preference (300) complete the
// fourteen-tier order alongside the twelve named tiers.
constexpr std::array<LevelInfo, kLevelCount> kLevels{{
    {Level::EthicalMoral, 6000, "Ethical/Moral", "ETHICAL_MORAL"},
    {Level::Legal, 5000, "Legal", "LEGAL"},
    {Level::Prudential, 4500, "Prudential", "PRUDENTIAL"},
    {Level::SocialPolitical, 4000, "Social-Political", "SOCIAL_POLITICAL"},
    {Level::SafetyPhysical, 3500, "Safety (Physical)", "SAFETY_PHYSICAL"},
    {Level::Environmental, 3000, "Environmental", "ENVIRONMENTAL"},
    {Level::Community, 2500, "Community", "COMMUNITY"},
    {Level::ProfessionalEthics, 2000, "Professional Ethics", "PROFESSIONAL_ETHICS"},
    {Level::Economic, 1500, "Economic", "ECONOMIC"},
    {Level::Etiquette, 1000, "Etiquette", "ETIQUETTE"},
    {Level::Convention, 800, "Convention", "CONVENTION"},
    {Level::Aesthetic, 500, "Aesthetic", "AESTHETIC"},
    {Level::Preference, 300, "Preference", "PREFERENCE"},
    {Level::Operational, 100, "Operational", "OPERATIONAL"},
}};

const LevelInfo& info(Level level) {
    for (const auto& li : kLevels) {
        if (li.level == level) return li;
    }
    throw std::invalid_argument("unknown level");
}

}  // namespace

const std::array<Level, kLevelCount>& all_levels() {
    static const std::array<Level, kLevelCount> order = [] {
        std::array<Level, kLevelCount> out{};
        for (std::size_t i = 0; i < kLevels.size(); ++i) out[i] = kLevels[i].level;
        return out;
    }();
    return order;
}

int level_priority(Level level) { return info(level).priority; }
std::string level_name(Level level) { return info(level).name; }
std::string level_key(Level level) { return info(level).key; }

Level parse_level(const std::string& key) {
    for (const auto& li : kLevels) {
        if (key == li.key) return li.level;
    }
    throw std::invalid_argument("unknown level: " + key);
}

int operator_rank(Operator op) {
    switch (op) {
        case Operator::Required: return 3;
        case Operator::Ought: return 2;
        case Operator::Indifferent: return 1;
    }
    throw std::invalid_argument("unknown operator");
}

std::string operator_key(Operator op) {
    switch (op) {
        case Operator::Required: return "REQUIRED";
        case Operator::Ought: return "OUGHT";
        case Operator::Indifferent: return "INDIFFERENT";
    }
    throw std::invalid_argument("unknown operator");
}

Operator parse_operator(const std::string& key) {
    if (key == "REQUIRED") return Operator::Required;
    if (key == "OUGHT") return Operator::Ought;
    if (key == "INDIFFERENT") return Operator::Indifferent;
    throw std::invalid_argument("unknown operator: " + key);
}

std::string modality_key(Modality m) {
    return m == Modality::Possible ? "POSSIBLE" : "IMPOSSIBLE";
}

Modality parse_modality(const std::string& key) {
    if (key == "POSSIBLE") return Modality::Possible;
    if (key == "IMPOSSIBLE") return Modality::Impossible;
    throw std::invalid_argument("unknown modality: " + key);
}

std::string severity_name(Severity s) {
    switch (s) {
        case Severity::NoConflict: return "NoConflict";
        case Severity::Coordinate: return "Coordinate";
        case Severity::Superordinate: return "Superordinate";
        case Severity::Absolute: return "Absolute";
    }
    throw std::invalid_argument("unknown severity");
}

std::string axiom_label(Axiom a) {
    switch (a) {
        case Axiom::Futility: return "6.6";
        case Axiom::Indifference: return "6.7";
        case Axiom::AbsoluteProhibition: return "6.2";
        case Axiom::MoralPriority: return "6.3";
        case Axiom::MoralRank: return "6.4";
        case Axiom::NormativeOpenness: return "6.5";
    }
    throw std::invalid_argument("unknown axiom");
}

std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Flourishing: return "FLOURISHING";
        case VerdictKind::Constrained: return "CONSTRAINED";
        case VerdictKind::Prohibited: return "PROHIBITED";
    }
    throw std::invalid_argument("unknown verdict");
}

std::vector<Proposition> enumerate_propositions() {
    std::vector<Proposition> out;
    out.reserve(84);
    for (Level level : all_levels()) {
        for (Operator op : {Operator::Required, Operator::Ought, Operator::Indifferent}) {
            for (Modality m : {Modality::Possible, Modality::Impossible}) {
                Proposition p;
                p.description = level_key(level) + "/" + operator_key(op) + "/" + modality_key(m);
                p.level = level;
                p.op = op;
                p.modality = m;
                p.side = Side::User;
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

Proposition as_side(Proposition p, Side side) {
    p.side = side;
    return p;
}

Resolution resolve_pair(const Proposition& user, const Proposition& system) {
    if (user.side != Side::User || system.side != Side::System) {
        throw std::invalid_argument("resolve_pair expects a user-side and a system-side proposition");
    }
    Resolution r;
    r.user = user;
    r.system = system;

    // 6.6 Futility: an impossible user proposition is normatively inert.
    if (user.modality == Modality::Impossible) {
        r.axiom = Axiom::Futility;
        r.winner = Winner::None;
        r.severity = Severity::NoConflict;
        return r;
    }
    // 6.7 Indifference: an indifferent user proposition carries no weight.
    if (user.op == Operator::Indifferent) {
        r.axiom = Axiom::Indifference;
        r.winner = Winner::None;
        r.severity = Severity::NoConflict;
        return r;
    }
    // 6.2 Absolute prohibition: Ethical/Moral + Required on the system side is
    // categorical regardless of system modality.
    if (system.level == Level::EthicalMoral && system.op == Operator::Required) {
        r.axiom = Axiom::AbsoluteProhibition;
        r.winner = Winner::System;
        r.severity = Severity::Absolute;
        return r;
    }
    // 6.3 Moral priority: the higher level wins.
    if (user.level != system.level) {
        r.axiom = Axiom::MoralPriority;
        r.winner = level_priority(user.level) > level_priority(system.level) ? Winner::User
                                                                             : Winner::System;
        r.severity = Severity::Superordinate;
        return r;
    }
    // 6.4 Moral rank: at the same level the stronger operator wins.
    if (operator_rank(user.op) != operator_rank(system.op)) {
        r.axiom = Axiom::MoralRank;
        r.winner = operator_rank(user.op) > operator_rank(system.op) ? Winner::User
                                                                     : Winner::System;
        r.severity = Severity::Coordinate;
        return r;
    }
    // 6.5 Normative openness: equal level, equal rank — compatible.
    r.axiom = Axiom::NormativeOpenness;
    r.winner = Winner::None;
    r.severity = Severity::NoConflict;
    return r;
}

std::vector<Resolution> resolve_all(std::span<const Proposition> user_props,
                                    std::span<const Proposition> system_props) {
    std::vector<Resolution> out;
    out.reserve(user_props.size() * system_props.size());
    for (const auto& u : user_props) {
        for (const auto& s : system_props) {
            out.push_back(resolve_pair(u, s));
        }
    }
    return out;
}

GateThresholds::GateThresholds(double modify_at, double reject_at)
    : modify(modify_at), reject(reject_at) {
    validate();
}

void GateThresholds::validate() const {
    if (!(modify > 0.0 && modify < reject && reject <= 1.0)) {
        throw std::invalid_argument("thresholds must satisfy 0 < modify < reject <= 1");
    }
}

Verdict apply_floor_rules(const std::vector<Resolution>& resolutions, double dprime,
                          const GateThresholds& thresholds, bool catastrophic_present) {
    thresholds.validate();
    if (dprime < 0.0 || dprime > 1.0) {
        throw std::invalid_argument("dprime must lie in [0,1]");
    }

    Verdict v;
    v.axiom_trail.reserve(resolutions.size());
    for (const auto& r : resolutions) v.axiom_trail.push_back(r.axiom);

    auto any_severity = [&](Severity s) {
        return std::any_of(resolutions.begin(), resolutions.end(),
                           [s](const Resolution& r) { return r.severity == s; });
    };
    // Floors 2 and 7 ask whether a system value is being *overridden*: they
    // consider only system-won superordinate resolutions whose losing user
    // proposition came from a flagged discrepancy feature.
    auto system_superordinate_vs_flagged = [&](int min_priority, int max_priority) {
        return std::any_of(resolutions.begin(), resolutions.end(), [&](const Resolution& r) {
            if (r.severity != Severity::Superordinate || r.winner != Winner::System) return false;
            if (!r.user.from_flagged_feature) return false;
            int p = level_priority(r.system.level);
            return p >= min_priority && p <= max_priority;
        });
    };

    auto finish = [&](VerdictKind kind, int floor_index) {
        v.kind = kind;
        v.floor_index = floor_index;
        return v;
    };

    // 1. Any absolute severity.
    if (any_severity(Severity::Absolute)) return finish(VerdictKind::Prohibited, 1);
    // 2. Superordinate at Legal (5000) or higher.
    if (system_superordinate_vs_flagged(5000, 1 << 30)) return finish(VerdictKind::Prohibited, 2);
    // 3. Discrepancy at or above the reject threshold.
    if (dprime >= thresholds.reject) return finish(VerdictKind::Prohibited, 3);
    // 4. Catastrophic feature plus a superordinate conflict.
    if (catastrophic_present && any_severity(Severity::Superordinate)) {
        return finish(VerdictKind::Constrained, 4);
    }
    // 5. Two or more coordinate conflicts.
    long coordinate_count = std::count_if(resolutions.begin(), resolutions.end(),
                                          [](const Resolution& r) {
                                              return r.severity == Severity::Coordinate;
                                          });
    if (coordinate_count >= 2) return finish(VerdictKind::Constrained, 5);
    // 6. Discrepancy at or above the modify threshold.
    if (dprime >= thresholds.modify) return finish(VerdictKind::Constrained, 6);
    // 7. Superordinate at Professional Ethics through Safety (Physical).
    if (system_superordinate_vs_flagged(2000, 3500)) return finish(VerdictKind::Constrained, 7);
    // 8. Default.
    return finish(VerdictKind::Flourishing, 8);
}

FiringDistribution reference_distribution() {
    FiringDistribution d;
    d.futility = 3528;
    d.indifference = 1176;
    d.moral_priority_system = 1040;
    d.moral_priority_user = 1092;
    d.absolute_prohibition = 56;
    d.moral_rank = 110;
    d.coordinate = 54;
    return d;
}

namespace {

void tally(FiringDistribution& d, const Resolution& r) {
    switch (r.axiom) {
        case Axiom::Futility: ++d.futility; return;
        case Axiom::Indifference: ++d.indifference; return;
        case Axiom::AbsoluteProhibition: ++d.absolute_prohibition; return;
        case Axiom::MoralPriority:
            if (r.winner == Winner::System) {
                ++d.moral_priority_system;
            } else {
                ++d.moral_priority_user;
            }
            return;
        case Axiom::MoralRank: ++d.moral_rank; return;
        case Axiom::NormativeOpenness: ++d.coordinate; return;
    }
}

std::string fingerprint(const Resolution& r) {
    std::ostringstream os;
    os << axiom_label(r.axiom) << '|' << static_cast<int>(r.winner) << '|'
       << static_cast<int>(r.severity) << ';';
    return os.str();
}

ExhaustiveReport exhaustive_run_once(std::string* digest) {
    ExhaustiveReport rep;
    const auto props = enumerate_propositions();
    std::string local;
    for (const auto& u : props) {
        for (const auto& s : props) {
            Resolution r = resolve_pair(as_side(u, Side::User), as_side(s, Side::System));
            tally(rep.counts, r);
            ++rep.pairs;
            if (digest) local += fingerprint(r);
        }
    }
    if (digest) *digest = std::move(local);
    return rep;
}

}  // namespace

ExhaustiveReport exhaustive_eval() {
    std::string first_digest;
    std::string second_digest;
    ExhaustiveReport rep = exhaustive_run_once(&first_digest);
    ExhaustiveReport again = exhaustive_run_once(&second_digest);
    rep.deterministic = (first_digest == second_digest) && (rep.counts == again.counts) &&
                        (rep.pairs == again.pairs);
    return rep;
}

namespace {

enum class Standing { Inert = 0, Loss = 1, Tie = 2, Win = 3 };

Standing standing_of(const Resolution& r, Side side) {
    if (r.axiom == Axiom::Futility || r.axiom == Axiom::Indifference) return Standing::Inert;
    if (r.winner == Winner::None) return Standing::Tie;
    bool won = (r.winner == Winner::User && side == Side::User) ||
               (r.winner == Winner::System && side == Side::System);
    return won ? Standing::Win : Standing::Loss;
}

std::optional<Level> level_up(Level level) {
    const auto& order = all_levels();
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (order[i] == level) return order[i - 1];
    }
    return std::nullopt;  // already at the top
}

std::optional<Operator> operator_up(Operator op) {
    switch (op) {
        case Operator::Indifferent: return Operator::Ought;
        case Operator::Ought: return Operator::Required;
        case Operator::Required: return std::nullopt;
    }
    return std::nullopt;
}

struct Strengthening {
    const char* step;
    Proposition prop;
};

std::vector<Strengthening> strengthenings(const Proposition& p) {
    std::vector<Strengthening> out;
    if (auto l = level_up(p.level)) {
        Proposition q = p;
        q.level = *l;
        out.push_back({"level+1", q});
    }
    if (auto o = operator_up(p.op)) {
        Proposition q = p;
        q.op = *o;
        out.push_back({"operator+1", q});
    }
    if (p.modality == Modality::Impossible) {
        Proposition q = p;
        q.modality = Modality::Possible;
        out.push_back({"modality->possible", q});
    }
    return out;
}

std::string describe(const Proposition& p) {
    return level_key(p.level) + "/" + operator_key(p.op) + "/" + modality_key(p.modality);
}

}  // namespace

std::vector<MonotonicityViolation> check_monotonicity() {
    std::vector<MonotonicityViolation> violations;
    const auto props = enumerate_propositions();

    auto check_step = [&](const Proposition& user, const Proposition& system, Side changed,
                          const char* step, const Resolution& before, const Resolution& after) {
        Standing sb = standing_of(before, changed);
        Standing sa = standing_of(after, changed);
        bool weakened = static_cast<int>(sa) < static_cast<int>(sb);
        bool severity_dropped = sb == Standing::Win && sa == Standing::Win &&
                                static_cast<int>(after.severity) < static_cast<int>(before.severity);
        if (weakened || severity_dropped) {
            std::ostringstream os;
            os << (changed == Side::User ? "user" : "system") << ' ' << step << " weakened "
               << describe(changed == Side::User ? user : system) << " vs "
               << describe(changed == Side::User ? system : user) << " (" << axiom_label(before.axiom)
               << " -> " << axiom_label(after.axiom) << ")";
            violations.push_back({os.str()});
        }
    };

    for (const auto& u0 : props) {
        Proposition user = as_side(u0, Side::User);
        for (const auto& s0 : props) {
            Proposition system = as_side(s0, Side::System);
            Resolution before = resolve_pair(user, system);
            for (const auto& st : strengthenings(user)) {
                Resolution after = resolve_pair(st.prop, system);
                check_step(user, system, Side::User, st.step, before, after);
            }
            for (const auto& st : strengthenings(system)) {
                Resolution after = resolve_pair(user, st.prop);
                check_step(user, system, Side::System, st.step, before, after);
            }
        }
    }
    return violations;
}

}  // namespace agentcore::norm
