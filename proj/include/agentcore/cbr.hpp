#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace agentcore::cbr {

enum class Outcome { Success, Partial, Failure };

std::string outcome_key(Outcome o);
Outcome parse_outcome(const std::string& key);

struct CbrCase {
    std::string id;
    std::string problem;
    std::string solution;
    Outcome outcome = Outcome::Success;
    std::string domain;
    std::set<std::string> keywords;  // lowercase, deduplicated
    std::optional<std::string> pitfalls;
    std::int64_t created_at = 0;  // UTC seconds
    long retrieval_count = 0;
    long success_count = 0;
    double confidence = 0.5;

    bool operator==(const CbrCase&) const = default;
};

nlohmann::json encode_case(const CbrCase& c);
CbrCase decode_case(const nlohmann::json& j);

// Splits on non-alphanumeric boundaries, lowercases, drops tokens shorter
// than two characters. No deduplication at this stage.
std::vector<std::string> tokenize(std::string_view text);

std::set<std::string> token_set(std::string_view text);

// ── Embedding contract ────────────────────────────────────────────────────────

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual int dim() const = 0;
    // Deterministic; unit length for non-empty text, zero vector otherwise.
    virtual std::vector<double> embed(std::string_view text) const = 0;
};

// Default provider: deterministic feature hashing of tokens plus in-word
// character trigrams, signed buckets, L2-normalised. No model or network
// dependency; real providers plug in behind the same contract.
class HashingEmbedder final : public EmbeddingProvider {
public:
    explicit HashingEmbedder(int dim = 256);
    int dim() const override { return dim_; }
    std::vector<double> embed(std::string_view text) const override;

private:
    int dim_;
};

// ── Retrieval configuration ───────────────────────────────────────────────────

struct RetrievalWeights {
    double index = 0.25;
    double embedding = 0.40;
    double field = 0.10;
    double recency = 0.05;
    double domain = 0.10;
    double utility = 0.10;

    double sum() const { return index + embedding + field + recency + domain + utility; }
};

struct RetrievalConfig {
    RetrievalWeights weights;
    int k = 4;
    double recency_half_life_days = 30.0;
    int embedding_dim = 256;

    void validate() const;  // weights sum to 1 +- 1e-9, k > 0, half-life > 0
};

struct SignalScores {
    double index = 0.0;
    double embedding = 0.0;
    double field = 0.0;
    double recency = 0.0;
    double domain = 0.0;
    double utility = 0.0;
};

struct ScoredCase {
    std::string case_id;
    SignalScores signals;
    double fused = 0.0;
};

struct Query {
    std::string text;
    std::optional<std::string> domain;
};

// ── Signals ───────────────────────────────────────────────────────────────────

// Query-coverage containment over problem + keyword tokens; 0 for an empty query.
double index_score(const std::set<std::string>& query_tokens, const CbrCase& c);

// Cosine similarity of embed(query) and embed(problem), clamped to [0,1].
// Provider exceptions propagate; retrieval degrades the signal to 0.
double embedding_score(std::string_view query, const CbrCase& c, const EmbeddingProvider& provider);

struct QueryFields {
    std::set<std::string> problem;
    std::set<std::string> keywords;
    std::set<std::string> solution;
};

// Weighted per-field token Jaccard: problem 0.5, keywords 0.3, solution 0.2.
double field_score(const QueryFields& query, const CbrCase& c);

// 2^(-age_days / half_life_days); rejects negative age.
double recency_score(const CbrCase& c, std::int64_t now, double half_life_days);

double domain_score(const std::optional<std::string>& query_domain, const CbrCase& c);

// Laplace-smoothed outcome ratio: (successes + 1) / (retrievals + 2).
double utility_score(const CbrCase& c);

// Symmetric weighted field similarity between two cases (same 0.5/0.3/0.2
// weighting); used by housekeeping deduplication.
double case_similarity(const CbrCase& a, const CbrCase& b);

// Counter update after a retrieval outcome is known.
CbrCase record_outcome(CbrCase c, bool success);

// ── Retrieval ─────────────────────────────────────────────────────────────────

struct RankedResults {
    std::vector<ScoredCase> cases;
    bool degraded = false;  // some signal failed and was scored as 0
};

// Precomputed per-case tokens and embeddings so repeated queries against the
// same snapshot do not re-embed. The provider must outlive the index.
class CaseIndex {
public:
    CaseIndex(std::span<const CbrCase> cases, const EmbeddingProvider& provider);

    std::size_t size() const { return cases_.size(); }
    const CbrCase& case_at(std::size_t i) const { return cases_[i]; }

    // Scores every case against the query; returns the full ranking
    // (descending fused score, ties by newer created_at then id).
    RankedResults rank_all(const Query& query, const RetrievalConfig& config,
                           std::int64_t now) const;

private:
    const EmbeddingProvider* provider_;
    std::vector<CbrCase> cases_;
    std::vector<std::set<std::string>> case_tokens_;  // problem + keywords
    std::vector<std::set<std::string>> problem_tokens_;
    std::vector<std::set<std::string>> solution_tokens_;
    std::vector<std::vector<double>> embeddings_;
    bool embed_degraded_ = false;
};

// Six-signal weighted fusion, truncated to config.k.
RankedResults retrieve(const Query& query, std::span<const CbrCase> cases,
                       const RetrievalConfig& config, const EmbeddingProvider& provider,
                       std::int64_t now);

}  // namespace agentcore::cbr
