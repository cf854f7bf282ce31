#pragma once

#include "mbfreal/boolean_core.hpp"
#include "mbfreal/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace mbfreal {

struct NetworkNode {
    std::string name;
    Rational decay;
};

struct NetworkEdge {
    int source = 0;
    int target = 0;
    Sign sign = Sign::Plus;
    Rational threshold;
};

// Weighted regulatory network: positive decays, at most one edge per ordered pair,
// distinct positive thresholds on the outgoing edges of every node.
class RegulatoryNetwork {
public:
    RegulatoryNetwork() = default;
    RegulatoryNetwork(std::vector<NetworkNode> nodes, std::vector<NetworkEdge> edges);

    static RegulatoryNetwork from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const NetworkNode& node(int i) const { return nodes_[i]; }
    const std::vector<NetworkEdge>& edges() const { return edges_; }
    int node_index(const std::string& name) const;

    // Incoming edge indices, ordered by source node index. Position p is input bit p.
    const std::vector<int>& inputs(int i) const { return inputs_[i]; }
    // Outgoing edge indices, ordered by ascending threshold.
    const std::vector<int>& outputs(int i) const { return outputs_[i]; }
    int out_degree(int i) const { return static_cast<int>(outputs_[i].size()); }
    int in_degree(int i) const { return static_cast<int>(inputs_[i].size()); }
    // Position of the edge threshold among its source's outgoing thresholds (0 = smallest).
    int threshold_rank(int edge) const { return rank_[edge]; }
    std::vector<Sign> input_signs(int i) const;

private:
    std::vector<NetworkNode> nodes_;
    std::vector<NetworkEdge> edges_;
    std::vector<std::vector<int>> inputs_;
    std::vector<std::vector<int>> outputs_;
    std::vector<int> rank_;
};

// K_{i,A,B} stored per node and indexed by the input corner: bit p is set when
// input p is above its threshold (p follows RegulatoryNetwork::inputs).
struct KCollection {
    std::vector<std::vector<Rational>> values;
};

KCollection k_from_json(const RegulatoryNetwork& net, const nlohmann::json& j);
nlohmann::json k_to_json(const RegulatoryNetwork& net, const KCollection& k);

// Sign-monotonicity violations and values lying exactly on a threshold. Empty when valid.
std::vector<std::string> validate_k(const RegulatoryNetwork& net, const KCollection& k);

// States d with 0 <= d_i <= out_degree(i).
using DomainState = std::vector<int>;

class DomainSpace {
public:
    explicit DomainSpace(const RegulatoryNetwork& net);
    std::size_t size() const { return size_; }
    std::size_t index(const DomainState& d) const;
    DomainState state(std::size_t index) const;
    const std::vector<int>& extents() const { return extents_; }

private:
    std::vector<int> extents_;
    std::size_t size_ = 1;
};

// Input corner seen by node i in state d.
std::uint32_t input_corner(const RegulatoryNetwork& net, int i, const DomainState& d);

// Throws std::invalid_argument on a degenerate K value.
DomainState phi_k(const RegulatoryNetwork& net, const KCollection& k, const DomainState& d);

struct StateTransitionGraph {
    std::vector<DomainState> states;
    std::vector<std::vector<std::size_t>> successors;

    bool has_edge(const DomainState& from, const DomainState& to) const;
    std::size_t edge_count() const;
    std::string to_dot() const;
};

StateTransitionGraph build_stg(const RegulatoryNetwork& net, const KCollection& k);

struct NodeFunctions {
    // Outgoing edge indices by descending threshold; position j carries tuple entry j.
    std::vector<int> targets;
    std::vector<Sign> signs;
    std::vector<BooleanFunction> raw;
    OrderedTuple positive;
};

std::vector<NodeFunctions> k_to_mbfs(const RegulatoryNetwork& net, const KCollection& k);

struct KRealization {
    RegulatoryNetwork network;
    KCollection k;
};

// Canonical K for a tuple per node. Thresholds become b - j + 1/2 and decays 1.
KRealization mbfs_to_k(const RegulatoryNetwork& net, const std::vector<OrderedTuple>& tuples);

// Rescales each outgoing threshold of i by gamma_i and sets every decay to 1.
RegulatoryNetwork gamma_normalize(const RegulatoryNetwork& net);

}  // namespace mbfreal
