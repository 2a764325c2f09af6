#include "agentcore/cbr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "agentcore/timeutil.hpp"

namespace agentcore::cbr {

using nlohmann::json;

std::string outcome_key(Outcome o) {
    switch (o) {
        case Outcome::Success: return "success";
        case Outcome::Partial: return "partial";
        case Outcome::Failure: return "failure";
    }
    throw std::invalid_argument("unknown outcome");
}

Outcome parse_outcome(const std::string& key) {
    if (key == "success") return Outcome::Success;
    if (key == "partial") return Outcome::Partial;
    if (key == "failure") return Outcome::Failure;
    throw std::invalid_argument("unknown outcome: " + key);
}

json encode_case(const CbrCase& c) {
    json j;
    j["id"] = c.id;
    j["problem"] = c.problem;
    j["solution"] = c.solution;
    j["outcome"] = outcome_key(c.outcome);
    j["domain"] = c.domain;
    j["keywords"] = c.keywords;  // std::set serialises sorted
    if (c.pitfalls) j["pitfalls"] = *c.pitfalls;
    j["created_at"] = util::format_iso(c.created_at);
    j["retrieval_count"] = c.retrieval_count;
    j["success_count"] = c.success_count;
    j["confidence"] = c.confidence;
    return j;
}

CbrCase decode_case(const json& j) {
    CbrCase c;
    c.id = j.at("id").get<std::string>();
    c.problem = j.at("problem").get<std::string>();
    c.solution = j.at("solution").get<std::string>();
    c.outcome = parse_outcome(j.at("outcome").get<std::string>());
    c.domain = j.at("domain").get<std::string>();
    for (const auto& k : j.at("keywords")) c.keywords.insert(k.get<std::string>());
    if (j.contains("pitfalls") && !j["pitfalls"].is_null()) {
        c.pitfalls = j["pitfalls"].get<std::string>();
    }
    auto ts = util::parse_iso(j.at("created_at").get<std::string>());
    if (!ts) throw std::runtime_error("bad created_at timestamp");
    c.created_at = *ts;
    c.retrieval_count = j.value("retrieval_count", 0L);
    c.success_count = j.value("success_count", 0L);
    c.confidence = j.value("confidence", 0.5);
    return c;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2) tokens.push_back(current);
        current.clear();
    };
    for (char ch : text) {
        unsigned char u = static_cast<unsigned char>(ch);
        if (std::isalnum(u)) {
            current.push_back(static_cast<char>(std::tolower(u)));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::set<std::string> token_set(std::string_view text) {
    auto tokens = tokenize(text);
    return {tokens.begin(), tokens.end()};
}

// ── Hashing embedder ──────────────────────────────────────────────────────────

namespace {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

void hash_feature(std::vector<double>& v, std::string_view feature, double weight) {
    std::uint64_t h = fnv1a64(feature);
    std::size_t bucket = static_cast<std::size_t>(h % v.size());
    double sign = ((h >> 32) & 1ull) ? 1.0 : -1.0;
    v[bucket] += sign * weight;
}

}  // namespace

HashingEmbedder::HashingEmbedder(int dim) : dim_(dim) {
    if (dim <= 0) throw std::invalid_argument("embedding dim must be positive");
}

std::vector<double> HashingEmbedder::embed(std::string_view text) const {
    std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
    const auto tokens = tokenize(text);
    for (const auto& tok : tokens) {
        hash_feature(v, tok, 1.0);
        // In-word character trigrams with boundary markers; these carry
        // similarity across inflected or paraphrased word forms.
        std::string padded = "^" + tok + "$";
        for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
            hash_feature(v, std::string_view(padded).substr(i, 3), 0.5);
        }
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

// ── Config ────────────────────────────────────────────────────────────────────

void RetrievalConfig::validate() const {
    if (std::abs(weights.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("retrieval weights must sum to 1");
    }
    if (weights.index < 0 || weights.embedding < 0 || weights.field < 0 || weights.recency < 0 ||
        weights.domain < 0 || weights.utility < 0) {
        throw std::invalid_argument("retrieval weights must be non-negative");
    }
    if (k <= 0) throw std::invalid_argument("k must be positive");
    if (recency_half_life_days <= 0) throw std::invalid_argument("half-life must be positive");
    if (embedding_dim <= 0) throw std::invalid_argument("embedding dim must be positive");
}

// ── Signals ───────────────────────────────────────────────────────────────────

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) dot += a[i] * b[i];
    return dot;
}

double weighted_fields(double problem_j, double keyword_j, double solution_j) {
    return 0.5 * problem_j + 0.3 * keyword_j + 0.2 * solution_j;
}

}  // namespace

double index_score(const std::set<std::string>& query_tokens, const CbrCase& c) {
    if (query_tokens.empty()) return 0.0;
    std::set<std::string> case_tokens = token_set(c.problem);
    case_tokens.insert(c.keywords.begin(), c.keywords.end());
    std::size_t hit = 0;
    for (const auto& t : query_tokens) hit += case_tokens.count(t);
    return static_cast<double>(hit) / static_cast<double>(query_tokens.size());
}

double embedding_score(std::string_view query, const CbrCase& c,
                       const EmbeddingProvider& provider) {
    double sim = cosine(provider.embed(query), provider.embed(c.problem));
    return std::clamp(sim, 0.0, 1.0);
}

double field_score(const QueryFields& query, const CbrCase& c) {
    return weighted_fields(jaccard(query.problem, token_set(c.problem)),
                           jaccard(query.keywords, c.keywords),
                           jaccard(query.solution, token_set(c.solution)));
}

double recency_score(const CbrCase& c, std::int64_t now, double half_life_days) {
    if (now < c.created_at) throw std::invalid_argument("case age is negative");
    if (half_life_days <= 0) throw std::invalid_argument("half-life must be positive");
    double age_days = static_cast<double>(now - c.created_at) / util::kSecondsPerDay;
    return std::exp2(-age_days / half_life_days);
}

double domain_score(const std::optional<std::string>& query_domain, const CbrCase& c) {
    if (!query_domain) return 0.0;
    return *query_domain == c.domain ? 1.0 : 0.0;
}

double utility_score(const CbrCase& c) {
    return static_cast<double>(c.success_count + 1) / static_cast<double>(c.retrieval_count + 2);
}

double case_similarity(const CbrCase& a, const CbrCase& b) {
    return weighted_fields(jaccard(token_set(a.problem), token_set(b.problem)),
                           jaccard(a.keywords, b.keywords),
                           jaccard(token_set(a.solution), token_set(b.solution)));
}

CbrCase record_outcome(CbrCase c, bool success) {
    c.retrieval_count += 1;
    if (success) c.success_count += 1;
    return c;
}

// ── Retrieval ─────────────────────────────────────────────────────────────────

CaseIndex::CaseIndex(std::span<const CbrCase> cases, const EmbeddingProvider& provider)
    : provider_(&provider), cases_(cases.begin(), cases.end()) {
    case_tokens_.reserve(cases_.size());
    problem_tokens_.reserve(cases_.size());
    solution_tokens_.reserve(cases_.size());
    embeddings_.reserve(cases_.size());
    for (const auto& c : cases_) {
        auto problem = token_set(c.problem);
        auto combined = problem;
        combined.insert(c.keywords.begin(), c.keywords.end());
        problem_tokens_.push_back(std::move(problem));
        case_tokens_.push_back(std::move(combined));
        solution_tokens_.push_back(token_set(c.solution));
        try {
            embeddings_.push_back(provider.embed(c.problem));
        } catch (const std::exception&) {
            embeddings_.emplace_back();  // degraded: scores as 0
            embed_degraded_ = true;
        }
    }
}

RankedResults CaseIndex::rank_all(const Query& query, const RetrievalConfig& config,
                                  std::int64_t now) const {
    config.validate();
    RankedResults out;
    out.degraded = embed_degraded_;

    const auto query_tokens = token_set(query.text);
    QueryFields qf;
    qf.problem = query_tokens;
    qf.keywords = query_tokens;

    std::vector<double> query_embedding;
    try {
        query_embedding = provider_->embed(query.text);
    } catch (const std::exception&) {
        out.degraded = true;
    }

    out.cases.reserve(cases_.size());
    for (std::size_t i = 0; i < cases_.size(); ++i) {
        const CbrCase& c = cases_[i];
        ScoredCase sc;
        sc.case_id = c.id;
        if (!query_tokens.empty()) {
            std::size_t hit = 0;
            for (const auto& t : query_tokens) hit += case_tokens_[i].count(t);
            sc.signals.index = static_cast<double>(hit) / static_cast<double>(query_tokens.size());
        }
        if (!query_embedding.empty() && !embeddings_[i].empty()) {
            sc.signals.embedding = std::clamp(cosine(query_embedding, embeddings_[i]), 0.0, 1.0);
        }
        sc.signals.field = weighted_fields(jaccard(qf.problem, problem_tokens_[i]),
                                           jaccard(qf.keywords, c.keywords),
                                           jaccard(qf.solution, solution_tokens_[i]));
        sc.signals.recency = recency_score(c, now, config.recency_half_life_days);
        sc.signals.domain = domain_score(query.domain, c);
        sc.signals.utility = utility_score(c);
        sc.fused = config.weights.index * sc.signals.index +
                   config.weights.embedding * sc.signals.embedding +
                   config.weights.field * sc.signals.field +
                   config.weights.recency * sc.signals.recency +
                   config.weights.domain * sc.signals.domain +
                   config.weights.utility * sc.signals.utility;
        out.cases.push_back(std::move(sc));
    }

    std::vector<std::size_t> order(out.cases.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = out.cases[a];
        const auto& cb = out.cases[b];
        if (ca.fused != cb.fused) return ca.fused > cb.fused;
        if (cases_[a].created_at != cases_[b].created_at) {
            return cases_[a].created_at > cases_[b].created_at;  // newer first
        }
        return ca.case_id < cb.case_id;
    });
    std::vector<ScoredCase> ranked;
    ranked.reserve(order.size());
    for (std::size_t idx : order) ranked.push_back(std::move(out.cases[idx]));
    out.cases = std::move(ranked);
    return out;
}

RankedResults retrieve(const Query& query, std::span<const CbrCase> cases,
                       const RetrievalConfig& config, const EmbeddingProvider& provider,
                       std::int64_t now) {
    CaseIndex index(cases, provider);
    RankedResults all = index.rank_all(query, config, now);
    if (all.cases.size() > static_cast<std::size_t>(config.k)) {
        all.cases.resize(static_cast<std::size_t>(config.k));
    }
    return all;
}

}  // namespace agentcore::cbr
