#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agentcore/cbr.hpp"
#include "json.hpp"

namespace agentcore::bench {

enum class Difficulty { Easy, Medium, Hard };

std::string difficulty_key(Difficulty d);
Difficulty parse_difficulty(const std::string& key);

struct DifficultyMix {
    int easy = 67;
    int medium = 67;
    int hard = 66;

    int total() const { return easy + medium + hard; }
};

struct SyntheticSpec {
    int n_cases = 800;
    int n_domains = 4;
    int n_queries = 200;
    DifficultyMix mix;
    std::uint64_t seed = 42;
};

struct BenchQuery {
    std::string id;
    std::string text;
    std::set<std::string> keywords;
    std::string domain;
    Difficulty difficulty = Difficulty::Easy;
};

nlohmann::json encode_query(const BenchQuery& q);
BenchQuery decode_query(const nlohmann::json& j);

// Ground truth: same domain AND at least two shared keywords.
bool judge_relevant(const BenchQuery& query, const cbr::CbrCase& c);

struct Benchmark {
    SyntheticSpec spec;
    std::vector<cbr::CbrCase> cases;
    std::vector<BenchQuery> queries;
    std::vector<std::vector<int>> relevant;  // per query, ascending case indexes
};

// Seeded synthetic corpus + queries + judgments. Cases cluster into per-domain
// topics with distinctive vocabulary; easy queries reuse distinctive tokens,
// medium mix in shared tokens, hard rely mostly on shared tokens plus
// paraphrased (inflected) forms. Every query is guaranteed at least one
// relevant case; identical specs generate identical artifacts.
Benchmark generate(const SyntheticSpec& spec);

struct MetricsReport {
    double p_at_k = 0.0;
    double p_ci_low = 0.0;
    double p_ci_high = 0.0;
    double mrr = 0.0;
    double p_easy = 0.0;
    double p_medium = 0.0;
    double p_hard = 0.0;
    int k = 4;
};

nlohmann::json encode_report(const std::string& name, const MetricsReport& r);

struct EngineSetup {
    std::string name;
    cbr::RetrievalConfig config;
    bool random_ranking = false;
};

// hybrid (reference weights), dense_cosine (embedding only), index_only,
// no_embed (reference weights renormalised without the embedding signal),
// and a random baseline.
std::vector<EngineSetup> default_setups();

// P@K over top-K/K, MRR over the full ranking, percentile-bootstrap 95% CI
// over per-query P@K values (seeded by the benchmark seed).
MetricsReport evaluate_config(const Benchmark& bench, const EngineSetup& setup, int k = 4,
                              int bootstrap_n = 1000);

std::vector<std::pair<std::string, MetricsReport>> compare_configs(
    const Benchmark& bench, std::span<const EngineSetup> setups, int k = 4,
    int bootstrap_n = 1000);

struct CurvePoint {
    int size = 0;
    double p_overall = 0.0;
    double p_hard = 0.0;
};

// Evaluates the same queries against nested case-base prefixes. Precision is
// capped at the retrievable count per prefix (queries with no relevant case
// in a prefix are excluded from that point).
std::vector<CurvePoint> learning_curve(const Benchmark& bench, std::span<const int> sizes,
                                       const cbr::RetrievalConfig& config);

inline const std::vector<int>& default_curve_sizes() {
    static const std::vector<int> sizes{25, 50, 100, 200, 400, 800};
    return sizes;
}

}  // namespace agentcore::bench
