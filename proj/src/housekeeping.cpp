#include "agentcore/housekeeping.hpp"

#include <algorithm>

#include "agentcore/timeutil.hpp"

namespace agentcore::mem {

namespace {

void merge_into(cbr::CbrCase& survivor, const cbr::CbrCase& absorbed) {
    survivor.keywords.insert(absorbed.keywords.begin(), absorbed.keywords.end());
    survivor.retrieval_count += absorbed.retrieval_count;
    survivor.success_count += absorbed.success_count;
    survivor.confidence = std::max(survivor.confidence, absorbed.confidence);
    if (absorbed.pitfalls) {
        if (survivor.pitfalls) {
            *survivor.pitfalls += "; " + *absorbed.pitfalls;
        } else {
            survivor.pitfalls = absorbed.pitfalls;
        }
    }
}

bool dedup_pass(std::vector<cbr::CbrCase>& cases, double threshold,
                std::vector<MergeEvent>& merges) {
    std::vector<cbr::CbrCase> retained;
    bool merged_any = false;
    for (auto& candidate : cases) {
        cbr::CbrCase* survivor = nullptr;
        for (auto& r : retained) {
            if (cbr::case_similarity(r, candidate) >= threshold) {
                survivor = &r;
                break;
            }
        }
        if (survivor) {
            merge_into(*survivor, candidate);
            merges.push_back({survivor->id, candidate.id});
            merged_any = true;
        } else {
            retained.push_back(std::move(candidate));
        }
    }
    cases = std::move(retained);
    return merged_any;
}

}  // namespace

DedupResult dedup_cases(std::vector<cbr::CbrCase> cases, double threshold) {
    std::stable_sort(cases.begin(), cases.end(), [](const cbr::CbrCase& a, const cbr::CbrCase& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.id < b.id;
    });
    DedupResult result;
    // Keyword unions can raise pairwise similarity, so iterate to a fixpoint;
    // in practice the second pass is already clean.
    while (dedup_pass(cases, threshold, result.merges)) {
    }
    result.cases = std::move(cases);
    return result;
}

PruneResult prune_cases(std::vector<cbr::CbrCase> cases, std::int64_t now, PrunePolicy policy) {
    PruneResult result;
    for (auto& c : cases) {
        double age_days = static_cast<double>(now - c.created_at) / util::kSecondsPerDay;
        bool prune = c.outcome == cbr::Outcome::Failure && age_days > policy.min_age_days &&
                     c.confidence < policy.max_confidence && !c.pitfalls.has_value();
        if (prune) {
            result.removed.push_back(c.id);
        } else {
            result.cases.push_back(std::move(c));
        }
    }
    return result;
}

}  // namespace agentcore::mem
