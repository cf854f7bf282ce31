#pragma once

#include "mbfreal/ksystem.hpp"
#include "mbfreal/realizability.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mbfreal {

// Vertices are ordered b-tuples over MBF+(m); edges change one bit of one function.
struct FactorGraph {
    int m = 0;
    int b = 0;
    std::vector<Sign> signs;
    std::vector<OrderedTuple> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t index_of(const OrderedTuple& t) const;

private:
    friend FactorGraph build_factor(int m, int b, const std::vector<Sign>& signs);
    std::map<std::vector<std::string>, std::size_t> lookup_;
};

FactorGraph build_factor(int m, int b, const std::vector<Sign>& signs = {});

// Cartesian product of one factor per node; vertex ids are mixed-radix with node 0 fastest.
class ParameterGraph {
public:
    explicit ParameterGraph(const RegulatoryNetwork& net);

    const RegulatoryNetwork& network() const { return net_; }
    const std::vector<FactorGraph>& factors() const { return factors_; }
    std::size_t vertex_count() const;
    std::size_t edge_count() const;
    std::vector<std::size_t> coordinates(std::size_t vertex) const;
    std::size_t vertex(const std::vector<std::size_t>& coords) const;
    std::vector<std::size_t> neighbors(std::size_t vertex) const;

    // Node tuples of a vertex, in the target order of k_to_mbfs.
    std::vector<OrderedTuple> tuples(std::size_t vertex) const;
    // Product vertex whose functions match the K collection.
    std::size_t locate(const KCollection& k) const;

private:
    RegulatoryNetwork net_;
    std::vector<FactorGraph> factors_;
    std::vector<std::vector<std::vector<std::size_t>>> factor_adjacency_;
};

// Per-factor verdicts. A product vertex is realizable iff every coordinate is.
struct RealizabilityAnnotation {
    RealizationClass cls = RealizationClass::K;
    std::vector<std::vector<Verdict::Kind>> factor_verdicts;

    Verdict::Kind vertex_verdict(const ParameterGraph& pg, std::size_t vertex) const;
};

RealizabilityAnnotation annotate_realizability(const ParameterGraph& pg, RealizationClass cls,
                                               const CheckOptions& options = {});

std::string factor_to_dot(const FactorGraph& f);
std::string parameter_graph_to_dot(const ParameterGraph& pg);
nlohmann::json parameter_graph_to_json(const ParameterGraph& pg);
// One row per vertex, with a verdict column per annotation.
std::string parameter_graph_to_csv(const ParameterGraph& pg, const std::vector<RealizabilityAnnotation>& annotations);

}  // namespace mbfreal
