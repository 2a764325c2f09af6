#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agentcore/cbr.hpp"

namespace agentcore::mem {

struct MergeEvent {
    std::string survivor;
    std::string absorbed;
};

struct DedupResult {
    std::vector<cbr::CbrCase> cases;
    std::vector<MergeEvent> merges;
};

// Greedy pass in created_at order: a case whose similarity to an already
// retained case reaches the threshold is merged into it — older id, problem
// and solution survive; keywords union; counters sum; max confidence;
// pitfalls concatenate. Passes repeat until stable so a second housekeeping
// run merges nothing.
DedupResult dedup_cases(std::vector<cbr::CbrCase> cases, double threshold = 0.92);

struct PrunePolicy {
    double min_age_days = 30.0;
    double max_confidence = 0.3;
};

struct PruneResult {
    std::vector<cbr::CbrCase> cases;
    std::vector<std::string> removed;
};

// Removes failure cases older than min_age_days with confidence below
// max_confidence and no pitfall documentation; everything else is retained.
PruneResult prune_cases(std::vector<cbr::CbrCase> cases, std::int64_t now, PrunePolicy policy = {});

}  // namespace agentcore::mem
