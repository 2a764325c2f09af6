#include "agentcore/stores.hpp"

#include <algorithm>

#include "agentcore/timeutil.hpp"

namespace agentcore::mem {

using nlohmann::json;

namespace {

struct StoreInfo {
    StoreId id;
    const char* name;
};

constexpr StoreInfo kStores[kStoreCount] = {
    {StoreId::Narrative, "narrative"}, {StoreId::Threads, "threads"},
    {StoreId::Facts, "facts"},         {StoreId::CbrCases, "cbr_cases"},
    {StoreId::Tasks, "tasks"},         {StoreId::Comms, "comms"},
    {StoreId::Affect, "affect"},       {StoreId::DagNodes, "dag_nodes"},
    {StoreId::Artifacts, "artifacts"}, {StoreId::Endeavours, "endeavours"},
};

}  // namespace

std::string store_name(StoreId s) {
    for (const auto& si : kStores) {
        if (si.id == s) return si.name;
    }
    throw std::invalid_argument("unknown store");
}

StoreId parse_store(const std::string& name) {
    for (const auto& si : kStores) {
        if (name == si.name) return si.id;
    }
    throw std::invalid_argument("unknown store: " + name);
}

const std::vector<StoreId>& all_stores() {
    static const std::vector<StoreId> ids = [] {
        std::vector<StoreId> out;
        for (const auto& si : kStores) out.push_back(si.id);
        return out;
    }();
    return ids;
}

json encode_record(const StoreRecord& r) {
    json j;
    j["store"] = store_name(r.store);
    j["seq"] = r.sequence;
    j["ts"] = util::format_iso(r.timestamp);
    j["v"] = 1;
    j["payload"] = r.payload;
    return j;
}

StoreRecord decode_record(const json& j) {
    StoreRecord r;
    r.store = parse_store(j.at("store").get<std::string>());
    r.sequence = j.at("seq").get<long>();
    auto ts = util::parse_iso(j.at("ts").get<std::string>());
    if (!ts) throw std::runtime_error("bad record timestamp");
    r.timestamp = *ts;
    r.payload = j.at("payload");
    return r;
}

StateDir::StateDir(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(cycle_log_dir());
}

std::filesystem::path StateDir::store_file(StoreId store) const {
    return memory_dir() / (store_name(store) + ".jsonl");
}

namespace {

// Splits file content into complete lines; a final segment without a
// trailing newline is returned separately as a partial candidate.
struct FileLines {
    std::vector<std::string> lines;
    std::string partial;
};

FileLines read_lines(const std::filesystem::path& file) {
    FileLines out;
    std::ifstream in(file, std::ios::binary);
    if (!in) return out;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t nl = content.find('\n', start);
        if (nl == std::string::npos) {
            out.partial = content.substr(start);
            break;
        }
        out.lines.push_back(content.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

void parse_file(const std::filesystem::path& file, bool is_last_file, ReplayResult& result) {
    FileLines fl = read_lines(file);
    for (std::size_t i = 0; i < fl.lines.size(); ++i) {
        const std::string& line = fl.lines[i];
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw ParseError(file, static_cast<long>(i + 1), "malformed record");
        }
        try {
            result.records.push_back(decode_record(j));
        } catch (const std::exception& e) {
            throw ParseError(file, static_cast<long>(i + 1), e.what());
        }
    }
    if (!fl.partial.empty()) {
        json j = json::parse(fl.partial, nullptr, false);
        bool parses = !j.is_discarded();
        if (parses) {
            try {
                result.records.push_back(decode_record(j));
                parses = true;
            } catch (const std::exception&) {
                parses = false;
            }
        }
        if (!parses) {
            if (is_last_file) {
                ++result.skipped_partial;  // torn tail write, not yet committed
            } else {
                throw ParseError(file, static_cast<long>(fl.lines.size() + 1), "malformed record");
            }
        }
    }
}

}  // namespace

long StateDir::last_sequence(StoreId store) const {
    long last = 0;
    ReplayResult replayed = replay(store);
    for (const auto& r : replayed.records) last = std::max(last, r.sequence);
    return last;
}

long StateDir::append(StoreId store, json payload, std::int64_t timestamp) {
    auto it = next_sequence_.find(store);
    if (it == next_sequence_.end()) {
        it = next_sequence_.emplace(store, last_sequence(store) + 1).first;
    }
    StoreRecord record;
    record.store = store;
    record.sequence = it->second;
    record.timestamp = timestamp;
    record.payload = std::move(payload);

    std::filesystem::path file;
    if (store == StoreId::DagNodes) {
        file = cycle_log_dir() / (util::utc_date(timestamp) + ".jsonl");
    } else {
        file = store_file(store);
    }
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open store file for append: " + file.string());
    out << encode_record(record).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("store append failed: " + file.string());

    ++it->second;
    return record.sequence;
}

ReplayResult StateDir::replay(StoreId store) const {
    ReplayResult result;
    std::vector<std::filesystem::path> files;
    if (store == StoreId::DagNodes) {
        if (std::filesystem::exists(cycle_log_dir())) {
            for (const auto& entry : std::filesystem::directory_iterator(cycle_log_dir())) {
                if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
                    files.push_back(entry.path());
                }
            }
        }
        std::sort(files.begin(), files.end());  // YYYY-MM-DD names sort chronologically
    } else {
        auto f = store_file(store);
        if (std::filesystem::exists(f)) files.push_back(f);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        parse_file(files[i], i + 1 == files.size(), result);
    }
    long prev = 0;
    for (const auto& r : result.records) {
        if (r.sequence <= prev) {
            throw std::runtime_error("store " + store_name(store) +
                                     ": sequence numbers are not strictly increasing");
        }
        prev = r.sequence;
    }
    return result;
}

}  // namespace agentcore::mem
