#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace agentcore::mem {

enum class StoreId {
    Narrative,
    Threads,
    Facts,
    CbrCases,
    Tasks,
    Comms,
    Affect,
    DagNodes,
    Artifacts,
    Endeavours,
};

inline constexpr int kStoreCount = 10;

std::string store_name(StoreId s);
StoreId parse_store(const std::string& name);
const std::vector<StoreId>& all_stores();

struct StoreRecord {
    StoreId store = StoreId::Facts;
    long sequence = 0;
    std::int64_t timestamp = 0;
    nlohmann::json payload;
};

nlohmann::json encode_record(const StoreRecord& r);
StoreRecord decode_record(const nlohmann::json& j);

struct ParseError : std::runtime_error {
    ParseError(std::filesystem::path file_in, long line_in, const std::string& what_in)
        : std::runtime_error(file_in.string() + ":" + std::to_string(line_in) + ": " + what_in),
          file(std::move(file_in)),
          line(line_in) {}

    std::filesystem::path file;
    long line;
};

struct ReplayResult {
    std::vector<StoreRecord> records;  // (file-date, sequence) order
    int skipped_partial = 0;           // unreadable trailing partial lines
};

// A state directory holding one append-only line file per store under
// memory/, with the cycle log daily-rotated under memory/cycle-log/.
// Records are never rewritten or deleted during normal operation; current
// state is derived by replaying records chronologically. Single writer per
// store; replay may run concurrently with nothing.
class StateDir {
public:
    explicit StateDir(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path memory_dir() const { return root_ / "memory"; }
    std::filesystem::path store_file(StoreId store) const;
    std::filesystem::path cycle_log_dir() const { return memory_dir() / "cycle-log"; }

    // Appends one record; returns its sequence number (previous + 1). A line
    // is committed only once fully written and flushed.
    long append(StoreId store, nlohmann::json payload, std::int64_t timestamp);

    // Replays every record of the store. Mid-file corruption throws
    // ParseError with the offending line; an unreadable partial line at the
    // very tail is skipped and counted.
    ReplayResult replay(StoreId store) const;

private:
    long last_sequence(StoreId store) const;

    std::filesystem::path root_;
    std::map<StoreId, long> next_sequence_;
};

}  // namespace agentcore::mem
