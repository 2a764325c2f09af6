#include "agentcore/cycles.hpp"

#include <set>
#include <stdexcept>

namespace agentcore::affect {

using nlohmann::json;

std::string node_kind_key(NodeKind k) {
    switch (k) {
        case NodeKind::User: return "user";
        case NodeKind::Scheduler: return "scheduler";
        case NodeKind::Agent: return "agent";
        case NodeKind::Tool: return "tool";
    }
    throw std::invalid_argument("unknown node kind");
}

NodeKind parse_node_kind(const std::string& key) {
    if (key == "user") return NodeKind::User;
    if (key == "scheduler") return NodeKind::Scheduler;
    if (key == "agent") return NodeKind::Agent;
    if (key == "tool") return NodeKind::Tool;
    throw std::invalid_argument("unknown node kind: " + key);
}

std::string node_status_key(NodeStatus s) {
    switch (s) {
        case NodeStatus::Pending: return "pending";
        case NodeStatus::Finalised: return "finalised";
        case NodeStatus::Failed: return "failed";
    }
    throw std::invalid_argument("unknown node status");
}

NodeStatus parse_node_status(const std::string& key) {
    if (key == "pending") return NodeStatus::Pending;
    if (key == "finalised") return NodeStatus::Finalised;
    if (key == "failed") return NodeStatus::Failed;
    throw std::invalid_argument("unknown node status: " + key);
}

json encode_node(const CycleNode& n) {
    json j;
    j["type"] = "node";
    j["id"] = n.id;
    if (n.parent_id) j["parent_id"] = *n.parent_id;
    j["kind"] = node_kind_key(n.kind);
    j["model"] = n.model;
    j["tokens_in"] = n.tokens_in;
    j["tokens_out"] = n.tokens_out;
    j["elapsed_ms"] = n.elapsed_ms;
    j["status"] = node_status_key(n.status);
    return j;
}

CycleNode decode_node(const json& j) {
    CycleNode n;
    n.id = j.at("id").get<std::string>();
    if (j.contains("parent_id") && !j["parent_id"].is_null()) {
        n.parent_id = j["parent_id"].get<std::string>();
    }
    n.kind = parse_node_kind(j.at("kind").get<std::string>());
    n.model = j.value("model", "");
    n.tokens_in = j.value("tokens_in", 0L);
    n.tokens_out = j.value("tokens_out", 0L);
    n.elapsed_ms = j.value("elapsed_ms", 0L);
    n.status = parse_node_status(j.at("status").get<std::string>());
    return n;
}

CycleNode finalize_cycle(CycleNode node, long tokens_in, long tokens_out,
                         NodeStatus final_status) {
    if (node.status != NodeStatus::Pending) {
        throw std::invalid_argument("node " + node.id + " is already finalised");
    }
    if (final_status == NodeStatus::Pending) {
        throw std::invalid_argument("final status cannot be pending");
    }
    node.tokens_in = tokens_in;
    node.tokens_out = tokens_out;
    node.status = final_status;
    return node;
}

std::vector<std::string> pending_anomalies(std::span<const CycleNode> nodes) {
    std::set<std::string> parents;
    for (const auto& n : nodes) {
        if (n.parent_id) parents.insert(*n.parent_id);
    }
    std::vector<std::string> anomalies;
    for (const auto& n : nodes) {
        if (n.status == NodeStatus::Pending && n.tokens_in == 0 && n.tokens_out == 0 &&
            parents.count(n.id)) {
            anomalies.push_back(n.id);
        }
    }
    return anomalies;
}

}  // namespace agentcore::affect
