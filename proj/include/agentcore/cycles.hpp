#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace agentcore::affect {

enum class NodeKind { User, Scheduler, Agent, Tool };

std::string node_kind_key(NodeKind k);
NodeKind parse_node_kind(const std::string& key);

enum class NodeStatus { Pending, Finalised, Failed };

std::string node_status_key(NodeStatus s);
NodeStatus parse_node_status(const std::string& key);

// One cycle-log node. Nodes form a parent-child tree: a user or scheduler
// cycle at the root with agent sub-cycles and tool calls as descendants.
struct CycleNode {
    std::string id;
    std::optional<std::string> parent_id;
    NodeKind kind = NodeKind::User;
    std::string model;
    long tokens_in = 0;
    long tokens_out = 0;
    long elapsed_ms = 0;
    NodeStatus status = NodeStatus::Pending;

    bool operator==(const CycleNode&) const = default;
};

nlohmann::json encode_node(const CycleNode& n);
CycleNode decode_node(const nlohmann::json& j);

// Records final token counts and flips a pending node to finalised (or
// failed). Double finalisation is rejected.
CycleNode finalize_cycle(CycleNode node, long tokens_in, long tokens_out,
                         NodeStatus final_status = NodeStatus::Finalised);

// Nodes still pending with zero token counts but at least one child — the
// signature of a finalisation step that never ran.
std::vector<std::string> pending_anomalies(std::span<const CycleNode> nodes);

}  // namespace agentcore::affect
