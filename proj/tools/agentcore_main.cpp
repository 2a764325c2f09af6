// agentcore — batch CLI over the deterministic agent core: calculus
// conformance, gate evaluation, retrieval benchmarks, store queries, affect
// replay, sensorium rendering and audit summaries.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "agentcore/affect.hpp"
#include "agentcore/audit.hpp"
#include "agentcore/bench.hpp"
#include "agentcore/cbr.hpp"
#include "agentcore/facts.hpp"
#include "agentcore/gate.hpp"
#include "agentcore/norm.hpp"
#include "agentcore/sensorium.hpp"
#include "agentcore/stores.hpp"
#include "agentcore/timeutil.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
namespace ac = agentcore;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDataError = 3;

struct GlobalOpts {
    bool json_output = false;
    std::uint64_t seed = 42;
    std::string state_dir;
    std::string at;  // timestamp override for deterministic runs
};

std::int64_t now_or_at(const GlobalOpts& opts) {
    if (!opts.at.empty()) {
        auto ts = ac::util::parse_iso(opts.at);
        if (!ts) throw std::runtime_error("bad --at timestamp: " + opts.at);
        return *ts;
    }
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string fmt2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string fmt3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

// ── calculus-eval ─────────────────────────────────────────────────────────────

struct DistributionRow {
    const char* label;
    long ac::norm::FiringDistribution::* field;
};

constexpr DistributionRow kRows[] = {
    {"6.6 Futility", &ac::norm::FiringDistribution::futility},
    {"6.7 Indifference", &ac::norm::FiringDistribution::indifference},
    {"6.3 Moral priority (system wins)", &ac::norm::FiringDistribution::moral_priority_system},
    {"6.3 Moral priority (user wins)", &ac::norm::FiringDistribution::moral_priority_user},
    {"6.2 Absolute prohibition", &ac::norm::FiringDistribution::absolute_prohibition},
    {"6.4 Moral rank", &ac::norm::FiringDistribution::moral_rank},
    {"Coordinate", &ac::norm::FiringDistribution::coordinate},
};

// Floor-rule spot suite: one constructed input per floor, checked in order.
bool run_floor_spot_suite(std::ostream& os) {
    using namespace ac::norm;
    auto user = [](Level level, Operator op, bool flagged) {
        Proposition p;
        p.description = "u";
        p.level = level;
        p.op = op;
        p.side = Side::User;
        p.from_flagged_feature = flagged;
        return p;
    };
    auto system = [](Level level, Operator op) {
        Proposition p;
        p.description = "s";
        p.level = level;
        p.op = op;
        p.side = Side::System;
        return p;
    };
    GateThresholds th;  // 0.35 / 0.55
    bool ok = true;
    auto expect = [&](int floor, VerdictKind kind, const Verdict& v) {
        if (v.floor_index != floor || v.kind != kind) {
            os << "floor " << floor << " spot check failed (got floor " << v.floor_index << ", "
               << verdict_name(v.kind) << ")\n";
            ok = false;
        }
    };

    // 1: absolute severity.
    expect(1, VerdictKind::Prohibited,
           apply_floor_rules(resolve_all(std::vector{user(Level::Legal, Operator::Required, true)},
                                         std::vector{system(Level::EthicalMoral, Operator::Required)}),
                             0.0, th, false));
    // 2: system-won superordinate at Legal+ against a flagged proposition.
    expect(2, VerdictKind::Prohibited,
           apply_floor_rules(resolve_all(std::vector{user(Level::ProfessionalEthics, Operator::Required, true)},
                                         std::vector{system(Level::Legal, Operator::Required)}),
                             0.4, th, false));
    // 3: discrepancy at the reject threshold.
    expect(3, VerdictKind::Prohibited, apply_floor_rules({}, 0.55, th, false));
    // 4: catastrophic feature plus a superordinate conflict.
    expect(4, VerdictKind::Constrained,
           apply_floor_rules(resolve_all(std::vector{user(Level::Etiquette, Operator::Required, true)},
                                         std::vector{system(Level::Economic, Operator::Required)}),
                             0.0, th, true));
    // 5: two coordinate conflicts.
    expect(5, VerdictKind::Constrained,
           apply_floor_rules(resolve_all(std::vector{user(Level::Economic, Operator::Required, true),
                                                     user(Level::Economic, Operator::Required, true)},
                                         std::vector{system(Level::Economic, Operator::Ought)}),
                             0.0, th, false));
    // 6: discrepancy at the modify threshold.
    expect(6, VerdictKind::Constrained, apply_floor_rules({}, 0.35, th, false));
    // 7: system-won superordinate in the Professional Ethics..Safety band.
    expect(7, VerdictKind::Constrained,
           apply_floor_rules(resolve_all(std::vector{user(Level::Etiquette, Operator::Required, true)},
                                         std::vector{system(Level::ProfessionalEthics, Operator::Required)}),
                             0.0, th, false));
    // 8: default.
    expect(8, VerdictKind::Flourishing, apply_floor_rules({}, 0.0, th, false));
    return ok;
}

int cmd_calculus_eval(const GlobalOpts& opts) {
    auto report = ac::norm::exhaustive_eval();
    auto expected = ac::norm::reference_distribution();
    auto violations = ac::norm::check_monotonicity();

    bool counts_ok = report.counts == expected;
    bool coverage_ok = report.pairs == 7056;
    bool floors_ok = true;
    std::ostringstream floor_log;
    floors_ok = run_floor_spot_suite(floor_log);

    if (opts.json_output) {
        for (const auto& row : kRows) {
            json j;
            j["rule"] = row.label;
            j["count"] = report.counts.*(row.field);
            j["expected"] = expected.*(row.field);
            std::cout << j.dump() << "\n";
        }
        json j;
        j["pairs"] = report.pairs;
        j["deterministic"] = report.deterministic;
        j["monotonicity_violations"] = violations.size();
        j["floor_spot_suite"] = floors_ok;
        std::cout << j.dump() << "\n";
    } else {
        std::printf("%-34s %8s %7s\n", "Resolution rule", "Count", "%");
        for (const auto& row : kRows) {
            long count = report.counts.*(row.field);
            std::printf("%-34s %8s %6.1f%%\n", row.label,
                        ac::audit::format_thousands(count).c_str(),
                        100.0 * static_cast<double>(count) / static_cast<double>(report.pairs));
        }
        std::printf("%-34s %8s\n", "Total", ac::audit::format_thousands(report.pairs).c_str());
        std::cout << "coverage: " << report.pairs << "/7056"
                  << ", determinism: " << (report.deterministic ? "ok" : "VIOLATION")
                  << ", monotonicity violations: " << violations.size()
                  << ", floor spot suite: " << (floors_ok ? "ok" : "FAILED") << "\n";
        if (!counts_ok) {
            std::cout << "distribution mismatch:\n";
            for (const auto& row : kRows) {
                long got = report.counts.*(row.field);
                long want = expected.*(row.field);
                if (got != want) {
                    std::cout << "  " << row.label << ": got " << got << ", expected " << want
                              << "\n";
                }
            }
        }
        std::cout << floor_log.str();
        for (const auto& v : violations) std::cout << "violation: " << v.description << "\n";
    }

    bool ok = counts_ok && coverage_ok && report.deterministic && violations.empty() && floors_ok;
    return ok ? kExitOk : kExitCheckFailure;
}

// ── gate-eval ─────────────────────────────────────────────────────────────────

int cmd_gate_eval(const GlobalOpts& opts, const std::string& sheet_file,
                  const std::string& character_file, const std::string& config_file,
                  const std::string& agent) {
    ac::gate::DecisionSheet sheet = ac::gate::load_sheet(sheet_file);
    if (!agent.empty()) sheet.agent = agent;
    auto character = ac::gate::load_character(character_file);

    ac::norm::GateThresholds thresholds;
    if (!config_file.empty()) {
        auto config = ac::gate::load_gate_config(config_file);
        config.apply_to(sheet);
        thresholds = config.thresholds_for(sheet.agent);
    }

    auto decision = ac::gate::evaluate(sheet, character, thresholds);

    if (opts.json_output) {
        json j;
        j["action"] = ac::gate::action_name(decision.action);
        j["dprime"] = decision.dprime;
        j["fast_path"] = decision.fast_path;
        j["thresholds"] = {{"modify", thresholds.modify}, {"reject", thresholds.reject}};
        if (decision.verdict) {
            j["verdict"] = ac::norm::verdict_name(decision.verdict->kind);
            j["floor_index"] = decision.verdict->floor_index;
            json trail = json::array();
            for (auto a : decision.verdict->axiom_trail) trail.push_back(ac::norm::axiom_label(a));
            j["axiom_trail"] = trail;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "decision: " << ac::gate::action_name(decision.action) << "\n";
        std::cout << "dprime: " << fmt2(decision.dprime) << " (modify " << fmt2(thresholds.modify)
                  << ", reject " << fmt2(thresholds.reject) << ")\n";
        if (decision.fast_path) {
            std::cout << "fast path: no calculus consulted\n";
        } else if (decision.verdict) {
            std::cout << "verdict: " << ac::norm::verdict_name(decision.verdict->kind)
                      << " (floor " << decision.verdict->floor_index << ")\n";
            std::cout << "axiom trail: [";
            for (std::size_t i = 0; i < decision.verdict->axiom_trail.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << ac::norm::axiom_label(decision.verdict->axiom_trail[i]);
            }
            std::cout << "]\n";
        }
    }
    return decision.action == ac::gate::GateAction::Accept ? kExitOk : kExitCheckFailure;
}

// ── cbr bench | query | curve ─────────────────────────────────────────────────

int cmd_cbr_bench(const GlobalOpts& opts, int cases, int queries, int k, int bootstrap) {
    ac::bench::SyntheticSpec spec;
    spec.seed = opts.seed;
    spec.n_cases = cases;
    spec.n_queries = queries;
    spec.mix.easy = queries / 3 + (queries % 3 > 0 ? 1 : 0);
    spec.mix.medium = queries / 3 + (queries % 3 > 1 ? 1 : 0);
    spec.mix.hard = queries / 3;
    auto bench = ac::bench::generate(spec);
    auto setups = ac::bench::default_setups();
    auto results = ac::bench::compare_configs(bench, setups, k, bootstrap);

    if (opts.json_output) {
        for (const auto& [name, report] : results) {
            std::cout << ac::bench::encode_report(name, report).dump() << "\n";
        }
    } else {
        std::printf("%-14s %7s  %-16s %7s %7s %8s %7s\n", "config", "P@4", "95% CI", "MRR",
                    "easy", "medium", "hard");
        for (const auto& [name, report] : results) {
            std::string ci = "[" + fmt3(report.p_ci_low) + ", " + fmt3(report.p_ci_high) + "]";
            std::printf("%-14s %7s  %-16s %7s %7s %8s %7s\n", name.c_str(),
                        fmt3(report.p_at_k).c_str(), ci.c_str(), fmt3(report.mrr).c_str(),
                        fmt3(report.p_easy).c_str(), fmt3(report.p_medium).c_str(),
                        fmt3(report.p_hard).c_str());
        }
    }
    return kExitOk;
}

int cmd_cbr_query(const GlobalOpts& opts, const std::string& query_text, const std::string& domain,
                  int k) {
    if (opts.state_dir.empty()) throw std::runtime_error("--state-dir is required for cbr query");
    if (!std::filesystem::exists(opts.state_dir)) {
        throw std::runtime_error("no such state directory: " + opts.state_dir);
    }
    ac::mem::StateDir state(opts.state_dir);
    std::map<std::string, ac::cbr::CbrCase> by_id;
    for (const auto& record : state.replay(ac::mem::StoreId::CbrCases).records) {
        auto c = ac::cbr::decode_case(record.payload);
        by_id[c.id] = std::move(c);  // replay: last write per id wins
    }
    std::vector<ac::cbr::CbrCase> cases;
    cases.reserve(by_id.size());
    for (auto& [id, c] : by_id) cases.push_back(std::move(c));

    ac::cbr::RetrievalConfig config;
    config.k = k;
    ac::cbr::HashingEmbedder embedder(config.embedding_dim);
    ac::cbr::Query query;
    query.text = query_text;
    if (!domain.empty()) query.domain = domain;
    auto results = ac::cbr::retrieve(query, cases, config, embedder, now_or_at(opts));

    if (opts.json_output) {
        for (const auto& sc : results.cases) {
            json j;
            j["case_id"] = sc.case_id;
            j["fused"] = sc.fused;
            j["signals"] = {{"index", sc.signals.index},     {"embedding", sc.signals.embedding},
                            {"field", sc.signals.field},     {"recency", sc.signals.recency},
                            {"domain", sc.signals.domain},   {"utility", sc.signals.utility}};
            std::cout << j.dump() << "\n";
        }
    } else {
        if (results.degraded) std::cout << "warning: a retrieval signal degraded to 0\n";
        for (std::size_t i = 0; i < results.cases.size(); ++i) {
            const auto& sc = results.cases[i];
            std::cout << (i + 1) << ". " << sc.case_id << "  fused " << fmt3(sc.fused)
                      << "  (index " << fmt3(sc.signals.index) << ", embed "
                      << fmt3(sc.signals.embedding) << ", field " << fmt3(sc.signals.field)
                      << ", recency " << fmt3(sc.signals.recency) << ", domain "
                      << fmt3(sc.signals.domain) << ", utility " << fmt3(sc.signals.utility)
                      << ")\n";
        }
    }
    return kExitOk;
}

int cmd_cbr_curve(const GlobalOpts& opts, std::vector<int> sizes, int cases, int queries) {
    ac::bench::SyntheticSpec spec;
    spec.seed = opts.seed;
    spec.n_cases = cases;
    spec.n_queries = queries;
    spec.mix.easy = queries / 3 + (queries % 3 > 0 ? 1 : 0);
    spec.mix.medium = queries / 3 + (queries % 3 > 1 ? 1 : 0);
    spec.mix.hard = queries / 3;
    auto bench = ac::bench::generate(spec);
    if (sizes.empty()) sizes = ac::bench::default_curve_sizes();
    ac::cbr::RetrievalConfig config;
    auto curve = ac::bench::learning_curve(bench, sizes, config);
    for (const auto& point : curve) {
        if (opts.json_output) {
            json j;
            j["size"] = point.size;
            j["p_overall"] = point.p_overall;
            j["p_hard"] = point.p_hard;
            std::cout << j.dump() << "\n";
        } else {
            std::printf("%5d  overall %s  hard %s\n", point.size, fmt3(point.p_overall).c_str(),
                        fmt3(point.p_hard).c_str());
        }
    }
    return kExitOk;
}

// ── facts ─────────────────────────────────────────────────────────────────────

ac::mem::StateDir open_state(const GlobalOpts& opts) {
    if (opts.state_dir.empty()) throw std::runtime_error("--state-dir is required");
    return ac::mem::StateDir(opts.state_dir);
}

int cmd_facts_set(const GlobalOpts& opts, const std::string& key, const std::string& value,
                  const std::string& scope, double confidence) {
    auto state = open_state(opts);
    ac::mem::FactRecord fact;
    fact.key = key;
    fact.value = value;
    fact.scope = ac::mem::parse_scope(scope);
    fact.confidence0 = confidence;
    fact.created_at = now_or_at(opts);
    long seq = state.append(ac::mem::StoreId::Facts, ac::mem::encode_fact(fact), fact.created_at);
    if (opts.json_output) {
        json j;
        j["seq"] = seq;
        j["key"] = key;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "stored " << key << " (seq " << seq << ")\n";
    }
    return kExitOk;
}

std::vector<ac::mem::FactRecord> replay_facts(const ac::mem::StateDir& state) {
    std::vector<ac::mem::FactRecord> facts;
    for (const auto& record : state.replay(ac::mem::StoreId::Facts).records) {
        facts.push_back(ac::mem::decode_fact(record.payload));
    }
    return facts;
}

int cmd_facts_get(const GlobalOpts& opts, const std::string& key) {
    auto state = open_state(opts);
    std::vector<ac::mem::FactRecord> matching;
    for (auto& f : replay_facts(state)) {
        if (f.key == key) matching.push_back(std::move(f));
    }
    if (matching.empty()) {
        std::cout << "no fact for key " << key << "\n";
        return kExitCheckFailure;
    }
    std::int64_t now = now_or_at(opts);
    ac::mem::DecayParams params;
    auto retained = ac::mem::resolve_fact_conflicts(matching, now, params);
    double conf = ac::mem::effective_confidence(retained, now, params);
    if (opts.json_output) {
        json j = ac::mem::encode_fact(retained);
        j["effective_confidence"] = conf;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << retained.value << "  (confidence " << fmt2(conf) << ")\n";
    }
    return kExitOk;
}

int cmd_facts_list(const GlobalOpts& opts) {
    auto state = open_state(opts);
    std::map<std::string, std::vector<ac::mem::FactRecord>> by_key;
    for (auto& f : replay_facts(state)) by_key[f.key].push_back(std::move(f));
    std::int64_t now = now_or_at(opts);
    ac::mem::DecayParams params;
    for (const auto& [key, facts] : by_key) {
        auto retained = ac::mem::resolve_fact_conflicts(facts, now, params);
        double conf = ac::mem::effective_confidence(retained, now, params);
        if (opts.json_output) {
            json j = ac::mem::encode_fact(retained);
            j["effective_confidence"] = conf;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << key << " = " << retained.value << "  (confidence " << fmt2(conf) << ")\n";
        }
    }
    return kExitOk;
}

// ── audit-summary ─────────────────────────────────────────────────────────────

int cmd_audit_summary(const GlobalOpts& opts, const std::string& from, const std::string& to) {
    if (opts.state_dir.empty()) throw std::runtime_error("--state-dir is required");
    if (!std::filesystem::exists(opts.state_dir)) {
        throw std::runtime_error("no such state directory: " + opts.state_dir);
    }
    ac::mem::StateDir state(opts.state_dir);
    std::optional<std::int64_t> from_ts;
    std::optional<std::int64_t> to_ts;
    if (!from.empty()) {
        auto ts = ac::util::parse_iso(from);
        if (!ts) throw std::runtime_error("bad --from date: " + from);
        from_ts = *ts;
    }
    if (!to.empty()) {
        auto ts = ac::util::parse_iso(to);
        if (!ts) throw std::runtime_error("bad --to date: " + to);
        to_ts = *ts + 86399;  // inclusive day
    }
    auto summary = ac::audit::summarize(state, from_ts, to_ts);
    if (opts.json_output) {
        std::cout << ac::audit::encode_summary(summary).dump() << "\n";
    } else {
        std::cout << ac::audit::format_summary(summary);
    }
    return kExitOk;
}

// ── affect-replay ─────────────────────────────────────────────────────────────

int cmd_affect_replay(const GlobalOpts& opts, const std::string& telemetry_file) {
    std::ifstream in(telemetry_file);
    if (!in) throw std::runtime_error("cannot open " + telemetry_file);
    std::vector<ac::affect::CycleTelemetry> telemetry;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw std::runtime_error(telemetry_file + ":" + std::to_string(line_no) +
                                     ": malformed telemetry record");
        }
        telemetry.push_back(ac::affect::decode_telemetry(j));
    }
    auto snapshots = ac::affect::replay_telemetry(telemetry, {}, now_or_at(opts));
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const auto& s = snapshots[i];
        if (opts.json_output) {
            json j = ac::affect::encode_snapshot(s);
            j["cycle"] = i + 1;
            std::cout << j.dump() << "\n";
        } else {
            const char* arrow = s.trend == ac::affect::Trend::Rising    ? "^"
                                : s.trend == ac::affect::Trend::Falling ? "v"
                                                                        : "-";
            std::printf(
                "cycle %3zu: desperation %5.1f  calm %5.1f  confidence %5.1f  frustration %5.1f  "
                "pressure %5.1f %s\n",
                i + 1, s.desperation, s.calm, s.confidence, s.frustration, s.pressure, arrow);
        }
    }
    return kExitOk;
}

// ── sensorium ─────────────────────────────────────────────────────────────────

int cmd_sensorium(const std::string& state_file) {
    std::ifstream in(state_file);
    if (!in) throw std::runtime_error("cannot open " + state_file);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(state_file + ": " + e.what());
    }
    std::cout << ac::sensorium::render(ac::sensorium::state_from_json(doc));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic agent core: normative gate, case retrieval, replayable stores"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts opts;
    app.add_flag("--json", opts.json_output, "emit machine-readable line records");
    app.add_option("--seed", opts.seed, "seed for generated artifacts");
    app.add_option("--state-dir", opts.state_dir, "state directory with append-only stores");
    app.add_option("--at", opts.at, "fixed evaluation timestamp (ISO-8601)");

    auto* calculus = app.add_subcommand("calculus-eval", "exhaustive calculus conformance check");

    auto* gate_eval = app.add_subcommand("gate-eval", "evaluate a decision sheet");
    std::string sheet_file, character_file, config_file, agent;
    gate_eval->add_option("sheet", sheet_file, "decision sheet document")->required();
    gate_eval->add_option("character", character_file, "character specification")->required();
    gate_eval->add_option("--config", config_file, "gate configuration document");
    gate_eval->add_option("--agent", agent, "agent profile override");

    auto* cbr_cmd = app.add_subcommand("cbr", "case retrieval tools");
    cbr_cmd->require_subcommand(1);
    auto* cbr_bench = cbr_cmd->add_subcommand("bench", "run the retrieval benchmark");
    int bench_cases = 800, bench_queries = 200, bench_k = 4, bench_bootstrap = 1000;
    cbr_bench->add_option("--cases", bench_cases, "corpus size");
    cbr_bench->add_option("--queries", bench_queries, "query count");
    cbr_bench->add_option("--k", bench_k, "retrieval cap");
    cbr_bench->add_option("--bootstrap", bench_bootstrap, "bootstrap resamples");
    auto* cbr_query = cbr_cmd->add_subcommand("query", "query a case store");
    std::string query_text, query_domain;
    int query_k = 4;
    cbr_query->add_option("text", query_text, "query text")->required();
    cbr_query->add_option("--domain", query_domain, "query domain");
    cbr_query->add_option("--k", query_k, "result cap");
    auto* cbr_curve = cbr_cmd->add_subcommand("curve", "learning curve over case-base prefixes");
    std::vector<int> curve_sizes;
    int curve_cases = 800, curve_queries = 200;
    cbr_curve->add_option("--sizes", curve_sizes, "case-base sizes")->delimiter(',');
    cbr_curve->add_option("--cases", curve_cases, "corpus size");
    cbr_curve->add_option("--queries", curve_queries, "query count");

    auto* facts = app.add_subcommand("facts", "key-value memory with read-time decay");
    facts->require_subcommand(1);
    auto* facts_set = facts->add_subcommand("set", "append a fact");
    std::string fact_key, fact_value, fact_scope = "persistent";
    double fact_confidence = 1.0;
    facts_set->add_option("key", fact_key)->required();
    facts_set->add_option("value", fact_value)->required();
    facts_set->add_option("--scope", fact_scope, "session or persistent");
    facts_set->add_option("--confidence", fact_confidence, "initial confidence");
    auto* facts_get = facts->add_subcommand("get", "resolve a key");
    std::string get_key;
    facts_get->add_option("key", get_key)->required();
    auto* facts_list = facts->add_subcommand("list", "resolve all keys");

    auto* audit_cmd = app.add_subcommand("audit-summary", "aggregate statistics via replay");
    std::string from_date, to_date;
    audit_cmd->add_option("--from", from_date, "start date (YYYY-MM-DD)");
    audit_cmd->add_option("--to", to_date, "end date (YYYY-MM-DD)");

    auto* affect_cmd = app.add_subcommand("affect-replay", "replay telemetry into affect snapshots");
    std::string telemetry_file;
    affect_cmd->add_option("telemetry", telemetry_file, "telemetry line records")->required();

    auto* sensorium_cmd = app.add_subcommand("sensorium", "render the self-state block");
    std::string sensorium_file;
    sensorium_cmd->add_option("state", sensorium_file, "sensorium state document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (calculus->parsed()) return cmd_calculus_eval(opts);
        if (gate_eval->parsed()) {
            return cmd_gate_eval(opts, sheet_file, character_file, config_file, agent);
        }
        if (cbr_bench->parsed()) {
            return cmd_cbr_bench(opts, bench_cases, bench_queries, bench_k, bench_bootstrap);
        }
        if (cbr_query->parsed()) return cmd_cbr_query(opts, query_text, query_domain, query_k);
        if (cbr_curve->parsed()) {
            return cmd_cbr_curve(opts, curve_sizes, curve_cases, curve_queries);
        }
        if (facts_set->parsed()) {
            return cmd_facts_set(opts, fact_key, fact_value, fact_scope, fact_confidence);
        }
        if (facts_get->parsed()) return cmd_facts_get(opts, get_key);
        if (facts_list->parsed()) return cmd_facts_list(opts);
        if (audit_cmd->parsed()) return cmd_audit_summary(opts, from_date, to_date);
        if (affect_cmd->parsed()) return cmd_affect_replay(opts, telemetry_file);
        if (sensorium_cmd->parsed()) return cmd_sensorium(sensorium_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}
