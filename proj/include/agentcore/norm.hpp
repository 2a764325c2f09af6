#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace agentcore::norm {

// ── Ordinal levels ────────────────────────────────────────────────────────────
//
// Fourteen levels with pairwise-distinct priorities; higher priority dominates
// in conflict resolution.

enum class Level {
    EthicalMoral,
    Legal,
    Prudential,
    SocialPolitical,
    SafetyPhysical,
    Environmental,
    Community,
    ProfessionalEthics,
    Economic,
    Etiquette,
    Convention,
    Aesthetic,
    Preference,
    Operational,
};

inline constexpr int kLevelCount = 14;

// All levels in descending priority order.
const std::array<Level, kLevelCount>& all_levels();

int level_priority(Level level);
// Display name, e.g. "Ethical/Moral".
std::string level_name(Level level);
// Configuration identifier, e.g. "ETHICAL_MORAL".
std::string level_key(Level level);
// Throws std::invalid_argument for an unknown key.
Level parse_level(const std::string& key);

// ── Operators, modality, severity ─────────────────────────────────────────────

enum class Operator { Required, Ought, Indifferent };

int operator_rank(Operator op);  // Required=3, Ought=2, Indifferent=1
std::string operator_key(Operator op);
Operator parse_operator(const std::string& key);

enum class Modality { Possible, Impossible };

std::string modality_key(Modality m);
Modality parse_modality(const std::string& key);

enum class Side { User, System };

enum class Severity { NoConflict = 0, Coordinate = 1, Superordinate = 2, Absolute = 3 };

std::string severity_name(Severity s);

struct Proposition {
    std::string description;
    Level level = Level::Operational;
    Operator op = Operator::Ought;
    Modality modality = Modality::Possible;
    Side side = Side::User;
    // Set when the proposition was translated from a discrepancy-flagged
    // feature; floor rules 2 and 7 consider only such propositions.
    bool from_flagged_feature = false;

    bool operator==(const Proposition&) const = default;
};

// ── Pairwise resolution ───────────────────────────────────────────────────────

enum class Axiom {
    Futility,             // 6.6
    Indifference,         // 6.7
    AbsoluteProhibition,  // 6.2
    MoralPriority,        // 6.3
    MoralRank,            // 6.4
    NormativeOpenness,    // 6.5
};

std::string axiom_label(Axiom a);  // "6.6", "6.7", ...

enum class Winner { None, User, System };

struct Resolution {
    Axiom axiom = Axiom::NormativeOpenness;
    Winner winner = Winner::None;
    Severity severity = Severity::NoConflict;
    Proposition user;
    Proposition system;
};

// Full proposition space: 14 levels x 3 operators x 2 modalities, ordered by
// descending priority, then descending operator rank, then Possible before
// Impossible. Side is User; callers flip copies for the system side.
std::vector<Proposition> enumerate_propositions();

Proposition as_side(Proposition p, Side side);

// Applies the resolution axioms in fixed order and returns the first that
// fires. Total over the proposition space; throws std::invalid_argument only
// when the sides are wrong.
Resolution resolve_pair(const Proposition& user, const Proposition& system);

// Row-major: every user proposition against every system proposition, system
// order preserved within each row.
std::vector<Resolution> resolve_all(std::span<const Proposition> user_props,
                                    std::span<const Proposition> system_props);

// ── Verdicts ──────────────────────────────────────────────────────────────────

struct GateThresholds {
    double modify = 0.35;
    double reject = 0.55;

    GateThresholds() = default;
    GateThresholds(double modify_at, double reject_at);

    void validate() const;  // throws std::invalid_argument unless 0 < modify < reject <= 1
};

enum class VerdictKind { Flourishing, Constrained, Prohibited };

std::string verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Flourishing;
    int floor_index = 8;  // 1..8, first floor rule that fired
    std::vector<Axiom> axiom_trail;
};

// Eight floor rules in priority order; the first that fires determines the
// verdict. The axiom trail mirrors the resolutions in order.
Verdict apply_floor_rules(const std::vector<Resolution>& resolutions, double dprime,
                          const GateThresholds& thresholds, bool catastrophic_present);

// ── Exhaustive conformance ────────────────────────────────────────────────────

struct FiringDistribution {
    long futility = 0;              // 6.6
    long indifference = 0;          // 6.7
    long moral_priority_system = 0; // 6.3, system wins
    long moral_priority_user = 0;   // 6.3, user wins
    long absolute_prohibition = 0;  // 6.2
    long moral_rank = 0;            // 6.4
    long coordinate = 0;            // compatible pairs at coordinate level (6.5)

    long total() const {
        return futility + indifference + moral_priority_system + moral_priority_user +
               absolute_prohibition + moral_rank + coordinate;
    }

    bool operator==(const FiringDistribution&) const = default;
};

// The certified distribution for the 84-proposition space (7,056 ordered pairs).
FiringDistribution reference_distribution();

struct ExhaustiveReport {
    FiringDistribution counts;
    long pairs = 0;
    bool deterministic = false;  // second full run produced identical resolutions
};

// Resolves all 84x84 ordered pairs (first as user, second as system), twice,
// and reports the firing counts plus coverage/determinism checks.
ExhaustiveReport exhaustive_eval();

struct MonotonicityViolation {
    std::string description;
};

// For every ordered pair and every single-step strengthening of one side
// (level up one tier, operator up one rank, Impossible -> Possible), verifies
// the strengthened proposition's standing does not weaken. Standing is ordered
// inert <= loss < tie < win, and the severity of a win never decreases.
std::vector<MonotonicityViolation> check_monotonicity();

}  // namespace agentcore::norm
