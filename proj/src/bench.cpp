#include "agentcore/bench.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "agentcore/rng.hpp"
#include "agentcore/timeutil.hpp"

namespace agentcore::bench {

using nlohmann::json;

std::string difficulty_key(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        case Difficulty::Hard: return "hard";
    }
    throw std::invalid_argument("unknown difficulty");
}

Difficulty parse_difficulty(const std::string& key) {
    if (key == "easy") return Difficulty::Easy;
    if (key == "medium") return Difficulty::Medium;
    if (key == "hard") return Difficulty::Hard;
    throw std::invalid_argument("unknown difficulty: " + key);
}

json encode_query(const BenchQuery& q) {
    json j;
    j["id"] = q.id;
    j["text"] = q.text;
    j["keywords"] = q.keywords;
    j["domain"] = q.domain;
    j["difficulty"] = difficulty_key(q.difficulty);
    return j;
}

BenchQuery decode_query(const json& j) {
    BenchQuery q;
    q.id = j.at("id").get<std::string>();
    q.text = j.at("text").get<std::string>();
    for (const auto& k : j.at("keywords")) q.keywords.insert(k.get<std::string>());
    q.domain = j.at("domain").get<std::string>();
    q.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    return q;
}

bool judge_relevant(const BenchQuery& query, const cbr::CbrCase& c) {
    if (query.domain != c.domain) return false;
    int shared = 0;
    for (const auto& k : query.keywords) shared += static_cast<int>(c.keywords.count(k));
    return shared >= 2;
}

// ── Generation ────────────────────────────────────────────────────────────────

namespace {

constexpr int kTopicsPerDomain = 8;
constexpr int kLexemesPerTopic = 8;
constexpr int kGeneralPerDomain = 12;
constexpr int kSharedLexemes = 30;
constexpr std::int64_t kBaseTime = 1767225600;  // 2026-01-01T00:00:00Z
constexpr std::int64_t kSpreadDays = 365;

const std::vector<std::string> kDomainNames = {"infra",    "comms",   "research", "finance",
                                               "support",  "legal",   "design",   "ops"};
const std::vector<std::string> kFillers = {"issue",  "when",   "running", "after",
                                           "update", "with",   "service", "error",
                                           "during", "setup",  "client",  "fails"};
const std::vector<std::string> kActions = {"restart",  "configure", "patch",    "rollback",
                                           "inspect",  "apply",     "upgrade",  "monitor",
                                           "document", "verify"};
const std::vector<std::string> kSuffixes = {"s", "ed", "ing", "ment", "er"};

std::string make_lexeme(util::Rng& rng) {
    static const std::vector<std::string> onsets = {"b",  "d",  "f",  "g",  "k",  "l",  "m",
                                                    "n",  "p",  "r",  "s",  "t",  "v",  "z",
                                                    "br", "st", "tr", "pl", "gr", "sl"};
    static const std::vector<std::string> vowels = {"a", "e", "i", "o", "u", "ai", "or", "en"};
    static const std::vector<std::string> codas = {"", "", "n", "r", "s", "l", "k", "x"};
    int syllables = 2 + static_cast<int>(rng.uniform(2));
    std::string word;
    for (int i = 0; i < syllables; ++i) {
        word += onsets[rng.uniform(onsets.size())];
        word += vowels[rng.uniform(vowels.size())];
    }
    word += codas[rng.uniform(codas.size())];
    return word;
}

std::string unique_lexeme(util::Rng& rng, std::set<std::string>& used) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::string w = make_lexeme(rng);
        if (used.insert(w).second) return w;
    }
    throw std::runtime_error("lexeme pool exhausted");
}

std::string inflect(const std::string& lexeme, util::Rng& rng) {
    return lexeme + kSuffixes[rng.uniform(kSuffixes.size())];
}

struct Vocabulary {
    // [domain][topic][lexeme]
    std::vector<std::vector<std::vector<std::string>>> topics;
    std::vector<std::vector<std::string>> general;  // per domain
    std::vector<std::string> shared;
};

Vocabulary build_vocabulary(int n_domains, util::Rng& rng) {
    Vocabulary v;
    std::set<std::string> used(kFillers.begin(), kFillers.end());
    used.insert(kActions.begin(), kActions.end());
    v.topics.resize(static_cast<std::size_t>(n_domains));
    v.general.resize(static_cast<std::size_t>(n_domains));
    for (int d = 0; d < n_domains; ++d) {
        v.topics[d].resize(kTopicsPerDomain);
        for (int t = 0; t < kTopicsPerDomain; ++t) {
            for (int i = 0; i < kLexemesPerTopic; ++i) {
                v.topics[d][t].push_back(unique_lexeme(rng, used));
            }
        }
        for (int i = 0; i < kGeneralPerDomain; ++i) {
            v.general[d].push_back(unique_lexeme(rng, used));
        }
    }
    for (int i = 0; i < kSharedLexemes; ++i) v.shared.push_back(unique_lexeme(rng, used));
    return v;
}

std::string domain_name(int d) {
    if (d < static_cast<int>(kDomainNames.size())) return kDomainNames[static_cast<std::size_t>(d)];
    return "domain" + std::to_string(d);
}

struct CaseGenInfo {
    int domain = 0;
    int topic = 0;
    std::vector<std::string> topic_keywords;
};

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

}  // namespace

Benchmark generate(const SyntheticSpec& spec) {
    if (spec.n_cases <= 0 || spec.n_domains <= 0 || spec.n_queries <= 0) {
        throw std::invalid_argument("benchmark spec sizes must be positive");
    }
    if (spec.mix.total() != spec.n_queries) {
        throw std::invalid_argument("difficulty mix must sum to the query count");
    }

    util::Rng rng(spec.seed);
    Vocabulary vocab = build_vocabulary(spec.n_domains, rng);

    Benchmark bench;
    bench.spec = spec;
    bench.cases.reserve(static_cast<std::size_t>(spec.n_cases));
    std::vector<CaseGenInfo> info(static_cast<std::size_t>(spec.n_cases));

    for (int i = 0; i < spec.n_cases; ++i) {
        int d = i % spec.n_domains;
        int t = (i / spec.n_domains) % kTopicsPerDomain;
        auto& gi = info[static_cast<std::size_t>(i)];
        gi.domain = d;
        gi.topic = t;

        cbr::CbrCase c;
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "case-%04d", i);
        c.id = idbuf;
        c.domain = domain_name(d);

        int n_topic = 3 + static_cast<int>(rng.uniform(3));    // 3..5
        int n_general = 1 + static_cast<int>(rng.uniform(2));  // 1..2
        int n_shared = static_cast<int>(rng.uniform(3));       // 0..2
        gi.topic_keywords = rng.sample(vocab.topics[d][t], static_cast<std::size_t>(n_topic));
        auto general = rng.sample(vocab.general[d], static_cast<std::size_t>(n_general));
        auto shared = rng.sample(vocab.shared, static_cast<std::size_t>(n_shared));

        std::vector<std::string> problem_tokens;
        for (std::size_t ki = 0; ki < gi.topic_keywords.size(); ++ki) {
            const auto& k = gi.topic_keywords[ki];
            c.keywords.insert(k);
            problem_tokens.push_back(k);
            // Topic terms recur in running text, often in inflected form.
            if (ki < 3) problem_tokens.push_back(inflect(k, rng));
        }
        for (const auto& k : general) {
            c.keywords.insert(k);
            problem_tokens.push_back(k);
        }
        for (const auto& k : shared) {
            c.keywords.insert(k);
            problem_tokens.push_back(k);
        }
        int n_fillers = 2 + static_cast<int>(rng.uniform(2));
        for (int x = 0; x < n_fillers; ++x) {
            problem_tokens.push_back(kFillers[rng.uniform(kFillers.size())]);
        }
        rng.shuffle(problem_tokens);
        c.problem = join(problem_tokens);

        std::vector<std::string> solution_tokens;
        solution_tokens.push_back(kActions[rng.uniform(kActions.size())]);
        auto sol_general = rng.sample(vocab.general[d], 2);
        solution_tokens.insert(solution_tokens.end(), sol_general.begin(), sol_general.end());
        solution_tokens.push_back(kActions[rng.uniform(kActions.size())]);
        c.solution = join(solution_tokens);

        double outcome_draw = rng.real();
        c.outcome = outcome_draw < 0.7   ? cbr::Outcome::Success
                    : outcome_draw < 0.9 ? cbr::Outcome::Partial
                                         : cbr::Outcome::Failure;
        if (rng.chance(0.2)) c.pitfalls = "watch " + vocab.general[d][rng.uniform(vocab.general[d].size())];
        // Bimodal ages: a large fresh cohort keeps the recency signal live
        // (and uncorrelated with relevance) instead of uniformly decayed.
        if (rng.chance(0.45)) {
            c.created_at = kBaseTime - rng.range(0, 12 * 86400 - 1);
        } else {
            c.created_at = kBaseTime - rng.range(60 * 86400, kSpreadDays * 86400 - 1);
        }
        c.confidence = 0.9;
        bench.cases.push_back(std::move(c));
    }

    // Queries: a target case anchors each query; text and keyword choices
    // depend on difficulty. Regenerate until enough relevant cases exist so
    // precision@4 has headroom (the rule itself guarantees the target).
    auto compute_relevant = [&](const BenchQuery& q) {
        std::vector<int> rel;
        for (int ci = 0; ci < spec.n_cases; ++ci) {
            if (judge_relevant(q, bench.cases[static_cast<std::size_t>(ci)])) rel.push_back(ci);
        }
        return rel;
    };

    std::vector<std::pair<Difficulty, int>> plan;
    plan.reserve(static_cast<std::size_t>(spec.n_queries));
    for (int i = 0; i < spec.mix.easy; ++i) plan.emplace_back(Difficulty::Easy, i);
    for (int i = 0; i < spec.mix.medium; ++i) plan.emplace_back(Difficulty::Medium, i);
    for (int i = 0; i < spec.mix.hard; ++i) plan.emplace_back(Difficulty::Hard, i);

    for (std::size_t qi = 0; qi < plan.size(); ++qi) {
        Difficulty diff = plan[qi].first;
        BenchQuery best;
        std::vector<int> best_rel;
        bool have = false;
        for (int attempt = 0; attempt < 50 && !have; ++attempt) {
            int target_idx = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(spec.n_cases)));
            const auto& gi = info[static_cast<std::size_t>(target_idx)];
            const auto& target = bench.cases[static_cast<std::size_t>(target_idx)];

            BenchQuery q;
            char idbuf[16];
            std::snprintf(idbuf, sizeof(idbuf), "query-%03d", static_cast<int>(qi));
            q.id = idbuf;
            q.domain = target.domain;
            q.difficulty = diff;

            std::vector<std::string> text_tokens;
            const auto& tk = gi.topic_keywords;
            if (diff == Difficulty::Easy) {
                std::size_t take = std::min<std::size_t>(tk.size(), 3 + rng.uniform(2));
                auto picked = rng.sample(tk, take);
                for (const auto& k : picked) {
                    q.keywords.insert(k);
                    text_tokens.push_back(k);
                }
                text_tokens.push_back(kFillers[rng.uniform(kFillers.size())]);
            } else if (diff == Difficulty::Medium) {
                auto picked = rng.sample(tk, 2);
                for (const auto& k : picked) {
                    q.keywords.insert(k);
                    // The subject terms recur in running text; repetition is
                    // invisible to the set-based signals but weights the
                    // embedding toward them.
                    for (int x = 0; x < 4; ++x) text_tokens.push_back(k);
                }
                for (int x = 0; x < 2; ++x) {
                    text_tokens.push_back(
                        inflect(vocab.topics[gi.domain][gi.topic][rng.uniform(kLexemesPerTopic)], rng));
                }
                for (int x = 0; x < 10; ++x) {
                    text_tokens.push_back(vocab.shared[rng.uniform(vocab.shared.size())]);
                }
                for (int x = 0; x < 4; ++x) {
                    text_tokens.push_back(kFillers[rng.uniform(kFillers.size())]);
                }
            } else {
                auto picked = rng.sample(tk, 2);
                for (const auto& k : picked) {
                    q.keywords.insert(k);
                    for (int x = 0; x < 2; ++x) text_tokens.push_back(k);
                }
                // Paraphrase: inflected forms of other topic lexemes carry the
                // meaning without exact token overlap.
                for (int x = 0; x < 3; ++x) {
                    text_tokens.push_back(
                        inflect(vocab.topics[gi.domain][gi.topic][rng.uniform(kLexemesPerTopic)], rng));
                }
                // Red-herring terms borrowed from other domains' vocabulary
                // plus scattered shared noise.
                for (int h = 0; h < 4; ++h) {
                    // Borrow a term that demonstrably occurs elsewhere: pick a
                    // random case from another domain and quote one of its
                    // non-topic keywords.
                    for (int tries = 0; tries < 20; ++tries) {
                        int oi = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(spec.n_cases)));
                        if (info[static_cast<std::size_t>(oi)].domain == gi.domain) continue;
                        const auto& other_case = bench.cases[static_cast<std::size_t>(oi)];
                        const auto& other_info = info[static_cast<std::size_t>(oi)];
                        std::vector<std::string> general_kws;
                        for (const auto& kw : other_case.keywords) {
                            bool is_topic = false;
                            for (const auto& tkw : other_info.topic_keywords) {
                                if (tkw == kw) is_topic = true;
                            }
                            if (!is_topic) general_kws.push_back(kw);
                        }
                        if (general_kws.empty()) continue;
                        const std::string& herring = general_kws[rng.uniform(general_kws.size())];
                        for (int x = 0; x < 2; ++x) text_tokens.push_back(herring);
                        break;
                    }
                }
                for (int x = 0; x < 5; ++x) {
                    text_tokens.push_back(vocab.shared[rng.uniform(vocab.shared.size())]);
                }
                text_tokens.push_back(kFillers[rng.uniform(kFillers.size())]);
            }
            rng.shuffle(text_tokens);
            q.text = join(text_tokens);

            auto rel = compute_relevant(q);
            // Easy and medium queries want dense relevant sets; hard queries
            // keep theirs sparse so coverage has to be earned. The fallback is
            // the candidate closest to the goal that still has any target.
            std::size_t goal = diff == Difficulty::Hard ? 7 : 18;
            auto fitness = [&](std::size_t size) {
                return size == 0 ? 1000L
                                 : std::labs(static_cast<long>(size) - static_cast<long>(goal));
            };
            if (fitness(rel.size()) < fitness(best_rel.size()) || best_rel.empty()) {
                best = std::move(q);
                best_rel = std::move(rel);
            }
            bool in_band = diff == Difficulty::Hard
                               ? (best_rel.size() >= 6 && best_rel.size() <= 9)
                               : best_rel.size() >= 16;
            if (in_band) have = true;
        }
        if (best_rel.empty()) {
            throw std::runtime_error("could not generate a query with any relevant case");
        }
        bench.queries.push_back(std::move(best));
        bench.relevant.push_back(std::move(best_rel));
    }
    return bench;
}

// ── Evaluation ────────────────────────────────────────────────────────────────

namespace {

std::vector<int> ranked_indexes(const cbr::CaseIndex& index,
                                const std::unordered_map<std::string, int>& id_to_idx,
                                const BenchQuery& q, const cbr::RetrievalConfig& config) {
    cbr::Query query;
    query.text = q.text;
    query.domain = q.domain;
    auto ranked = index.rank_all(query, config, kBaseTime);
    std::vector<int> out;
    out.reserve(ranked.cases.size());
    for (const auto& sc : ranked.cases) out.push_back(id_to_idx.at(sc.case_id));
    return out;
}

std::vector<int> random_indexes(std::size_t n, std::uint64_t seed, std::size_t query_index) {
    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    util::Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (query_index + 1)));
    rng.shuffle(idx);
    return idx;
}

struct PerQuery {
    double p = 0.0;
    double rr = 0.0;
};

PerQuery score_ranking(const std::vector<int>& ranking, const std::vector<int>& relevant, int k) {
    PerQuery out;
    std::set<int> rel(relevant.begin(), relevant.end());
    int hits = 0;
    for (int i = 0; i < k && i < static_cast<int>(ranking.size()); ++i) {
        if (rel.count(ranking[static_cast<std::size_t>(i)])) ++hits;
    }
    out.p = static_cast<double>(hits) / static_cast<double>(k);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (rel.count(ranking[i])) {
            out.rr = 1.0 / static_cast<double>(i + 1);
            break;
        }
    }
    return out;
}

struct BootstrapCi {
    double low = 0.0;
    double high = 0.0;
};

BootstrapCi bootstrap_ci(const std::vector<double>& values, int resamples, std::uint64_t seed) {
    BootstrapCi ci;
    if (values.empty() || resamples <= 0) return ci;
    util::Rng rng(seed);
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum += values[rng.uniform(values.size())];
        }
        means.push_back(sum / static_cast<double>(values.size()));
    }
    std::sort(means.begin(), means.end());
    auto at = [&](double q) {
        double pos = q * static_cast<double>(means.size() - 1);
        return means[static_cast<std::size_t>(pos + 0.5)];
    };
    ci.low = at(0.025);
    ci.high = at(0.975);
    return ci;
}

MetricsReport evaluate_with_index(const Benchmark& bench, const cbr::CaseIndex& index,
                                  const std::unordered_map<std::string, int>& id_to_idx,
                                  const EngineSetup& setup, int k, int bootstrap_n) {
    MetricsReport report;
    report.k = k;
    std::vector<double> per_query_p;
    per_query_p.reserve(bench.queries.size());
    double rr_sum = 0.0;
    double sums[3] = {0, 0, 0};
    long counts[3] = {0, 0, 0};
    for (std::size_t qi = 0; qi < bench.queries.size(); ++qi) {
        const auto& q = bench.queries[qi];
        std::vector<int> ranking =
            setup.random_ranking
                ? random_indexes(bench.cases.size(), bench.spec.seed, qi)
                : ranked_indexes(index, id_to_idx, q, setup.config);
        PerQuery s = score_ranking(ranking, bench.relevant[qi], k);
        per_query_p.push_back(s.p);
        rr_sum += s.rr;
        int di = static_cast<int>(q.difficulty);
        sums[di] += s.p;
        ++counts[di];
    }
    double total = 0.0;
    for (double p : per_query_p) total += p;
    report.p_at_k = total / static_cast<double>(per_query_p.size());
    report.mrr = rr_sum / static_cast<double>(per_query_p.size());
    report.p_easy = counts[0] ? sums[0] / static_cast<double>(counts[0]) : 0.0;
    report.p_medium = counts[1] ? sums[1] / static_cast<double>(counts[1]) : 0.0;
    report.p_hard = counts[2] ? sums[2] / static_cast<double>(counts[2]) : 0.0;
    BootstrapCi ci = bootstrap_ci(per_query_p, bootstrap_n, bench.spec.seed + 0x5eed);
    report.p_ci_low = std::min(ci.low, report.p_at_k);
    report.p_ci_high = std::max(ci.high, report.p_at_k);
    return report;
}

}  // namespace

std::vector<EngineSetup> default_setups() {
    std::vector<EngineSetup> setups;
    cbr::RetrievalConfig hybrid;
    setups.push_back({"hybrid", hybrid, false});

    cbr::RetrievalConfig dense;
    dense.weights = {0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    setups.push_back({"dense_cosine", dense, false});

    cbr::RetrievalConfig index_only;
    index_only.weights = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    setups.push_back({"index_only", index_only, false});

    // Reference weights with the embedding removed, renormalised.
    cbr::RetrievalConfig no_embed;
    double rest = 1.0 - hybrid.weights.embedding;
    no_embed.weights = {hybrid.weights.index / rest,  0.0,
                        hybrid.weights.field / rest,  hybrid.weights.recency / rest,
                        hybrid.weights.domain / rest, hybrid.weights.utility / rest};
    setups.push_back({"no_embed", no_embed, false});

    cbr::RetrievalConfig random_cfg;
    setups.push_back({"random", random_cfg, true});
    return setups;
}

MetricsReport evaluate_config(const Benchmark& bench, const EngineSetup& setup, int k,
                              int bootstrap_n) {
    cbr::HashingEmbedder embedder(setup.config.embedding_dim);
    cbr::CaseIndex index(bench.cases, embedder);
    std::unordered_map<std::string, int> id_to_idx;
    for (std::size_t i = 0; i < bench.cases.size(); ++i) {
        id_to_idx[bench.cases[i].id] = static_cast<int>(i);
    }
    return evaluate_with_index(bench, index, id_to_idx, setup, k, bootstrap_n);
}

std::vector<std::pair<std::string, MetricsReport>> compare_configs(
    const Benchmark& bench, std::span<const EngineSetup> setups, int k, int bootstrap_n) {
    cbr::HashingEmbedder embedder(256);
    cbr::CaseIndex index(bench.cases, embedder);
    std::unordered_map<std::string, int> id_to_idx;
    for (std::size_t i = 0; i < bench.cases.size(); ++i) {
        id_to_idx[bench.cases[i].id] = static_cast<int>(i);
    }
    std::vector<std::pair<std::string, MetricsReport>> out;
    for (const auto& setup : setups) {
        out.emplace_back(setup.name,
                         evaluate_with_index(bench, index, id_to_idx, setup, k, bootstrap_n));
    }
    return out;
}

std::vector<CurvePoint> learning_curve(const Benchmark& bench, std::span<const int> sizes,
                                       const cbr::RetrievalConfig& config) {
    std::vector<CurvePoint> curve;
    cbr::HashingEmbedder embedder(config.embedding_dim);
    for (int size : sizes) {
        std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(size), bench.cases.size());
        std::span<const cbr::CbrCase> prefix(bench.cases.data(), n);
        cbr::CaseIndex index(prefix, embedder);
        std::unordered_map<std::string, int> id_to_idx;
        for (std::size_t i = 0; i < n; ++i) id_to_idx[bench.cases[i].id] = static_cast<int>(i);

        double sum_all = 0.0, sum_hard = 0.0;
        long n_all = 0, n_hard = 0;
        for (std::size_t qi = 0; qi < bench.queries.size(); ++qi) {
            std::vector<int> rel_prefix;
            for (int ci : bench.relevant[qi]) {
                if (ci < static_cast<int>(n)) rel_prefix.push_back(ci);
            }
            // Queries with nothing retrievable in this prefix score zero.
            double p = 0.0;
            if (!rel_prefix.empty()) {
                auto ranking = ranked_indexes(index, id_to_idx, bench.queries[qi], config);
                std::set<int> rel(rel_prefix.begin(), rel_prefix.end());
                int hits = 0;
                for (int i = 0; i < 4 && i < static_cast<int>(ranking.size()); ++i) {
                    if (rel.count(ranking[static_cast<std::size_t>(i)])) ++hits;
                }
                p = static_cast<double>(hits) / 4.0;
            }
            sum_all += p;
            ++n_all;
            if (bench.queries[qi].difficulty == Difficulty::Hard) {
                sum_hard += p;
                ++n_hard;
            }
        }
        CurvePoint point;
        point.size = static_cast<int>(n);
        point.p_overall = n_all ? sum_all / static_cast<double>(n_all) : 0.0;
        point.p_hard = n_hard ? sum_hard / static_cast<double>(n_hard) : 0.0;
        curve.push_back(point);
    }
    return curve;
}

json encode_report(const std::string& name, const MetricsReport& r) {
    json j;
    j["config"] = name;
    j["k"] = r.k;
    j["p_at_k"] = r.p_at_k;
    j["ci_low"] = r.p_ci_low;
    j["ci_high"] = r.p_ci_high;
    j["mrr"] = r.mrr;
    j["p_easy"] = r.p_easy;
    j["p_medium"] = r.p_medium;
    j["p_hard"] = r.p_hard;
    return j;
}

}  // namespace agentcore::bench
