#include "mbfreal/ksystem.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mbfreal {

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
    throw InputError("expected a number or a \"p/q\" string, got " + v.dump());
}

}  // namespace

RegulatoryNetwork::RegulatoryNetwork(std::vector<NetworkNode> nodes, std::vector<NetworkEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    int n = node_count();
    std::set<std::string> names;
    for (const auto& nd : nodes_) {
        if (nd.name.empty() || !names.insert(nd.name).second)
            throw InputError("node names must be unique and non-empty");
        if (!(nd.decay > 0)) throw InputError("decay of node " + nd.name + " must be positive");
    }
    inputs_.assign(n, {});
    outputs_.assign(n, {});
    rank_.assign(edges_.size(), 0);
    std::set<std::pair<int, int>> pairs;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.source < 0 || ed.source >= n || ed.target < 0 || ed.target >= n)
            throw InputError("edge endpoint out of range");
        if (!pairs.insert({ed.source, ed.target}).second)
            throw InputError("duplicate edge " + nodes_[ed.source].name + " -> " + nodes_[ed.target].name);
        if (!(ed.threshold > 0)) throw InputError("thresholds must be positive");
        inputs_[ed.target].push_back(static_cast<int>(e));
        outputs_[ed.source].push_back(static_cast<int>(e));
    }
    for (int i = 0; i < n; ++i) {
        std::sort(inputs_[i].begin(), inputs_[i].end(),
                  [&](int a, int b) { return edges_[a].source < edges_[b].source; });
        std::sort(outputs_[i].begin(), outputs_[i].end(),
                  [&](int a, int b) { return edges_[a].threshold < edges_[b].threshold; });
        for (std::size_t r = 0; r < outputs_[i].size(); ++r) {
            if (r > 0 && edges_[outputs_[i][r]].threshold == edges_[outputs_[i][r - 1]].threshold)
                throw InputError("node " + nodes_[i].name + " has two outgoing edges with the same threshold");
            rank_[outputs_[i][r]] = static_cast<int>(r);
        }
        if (in_degree(i) > kMaxArity) throw InputError("node " + nodes_[i].name + " has too many inputs");
    }
}

int RegulatoryNetwork::node_index(const std::string& name) const {
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[i].name == name) return i;
    throw InputError("unknown node: " + name);
}

std::vector<Sign> RegulatoryNetwork::input_signs(int i) const {
    std::vector<Sign> s;
    for (int e : inputs_[i]) s.push_back(edges_[e].sign);
    return s;
}

RegulatoryNetwork RegulatoryNetwork::from_json(const nlohmann::json& j) {
    try {
        std::vector<NetworkNode> nodes;
        for (const auto& nd : j.at("nodes")) {
            Rational decay = nd.contains("decay") ? json_rational(nd.at("decay")) : Rational(1);
            nodes.push_back({nd.at("name").get<std::string>(), decay});
        }
        auto index = [&](const std::string& name) {
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (nodes[i].name == name) return static_cast<int>(i);
            throw InputError("edge refers to unknown node " + name);
        };
        std::vector<NetworkEdge> edges;
        for (const auto& ed : j.at("edges")) {
            NetworkEdge e;
            e.source = index(ed.at("source").get<std::string>());
            e.target = index(ed.at("target").get<std::string>());
            std::string sign = ed.at("sign").get<std::string>();
            if (sign == "+" || sign == "activating")
                e.sign = Sign::Plus;
            else if (sign == "-" || sign == "repressing")
                e.sign = Sign::Minus;
            else
                throw InputError("edge sign must be '+' or '-'");
            e.threshold = json_rational(ed.at("threshold"));
            edges.push_back(e);
        }
        return RegulatoryNetwork(std::move(nodes), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("network JSON: ") + e.what());
    }
}

nlohmann::json RegulatoryNetwork::to_json() const {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& nd : nodes_) j["nodes"].push_back({{"name", nd.name}, {"decay", format_rational(nd.decay)}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_)
        j["edges"].push_back({{"source", nodes_[e.source].name},
                              {"target", nodes_[e.target].name},
                              {"sign", e.sign == Sign::Plus ? "+" : "-"},
                              {"threshold", format_rational(e.threshold)}});
    return j;
}

namespace {

// Sorted source names that are on in the corner, joined by commas.
std::string k_key(const RegulatoryNetwork& net, int i, std::uint32_t corner) {
    std::vector<std::string> names;
    const auto& in = net.inputs(i);
    for (std::size_t p = 0; p < in.size(); ++p)
        if ((corner >> p) & 1u) names.push_back(net.node(net.edges()[in[p]].source).name);
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
    return out;
}

}  // namespace

KCollection k_from_json(const RegulatoryNetwork& net, const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("K JSON must be an object keyed by node name");
    KCollection k;
    for (int i = 0; i < net.node_count(); ++i) {
        const auto& name = net.node(i).name;
        if (!j.contains(name)) throw InputError("K JSON lacks node " + name);
        const auto& table = j.at(name);
        if (!table.is_object()) throw InputError("K entry for node " + name + " must be an object");
        std::uint32_t size = 1u << net.in_degree(i);
        std::vector<Rational> vals(size);
        std::map<std::string, std::uint32_t> keys;
        for (std::uint32_t c = 0; c < size; ++c) keys[k_key(net, i, c)] = c;
        std::vector<bool> seen(size, false);
        for (auto it = table.begin(); it != table.end(); ++it) {
            // Keys may list names in any order.
            std::vector<std::string> parts;
            std::stringstream ss(it.key());
            std::string part;
            while (std::getline(ss, part, ',')) {
                part.erase(std::remove_if(part.begin(), part.end(), ::isspace), part.end());
                if (!part.empty()) parts.push_back(part);
            }
            std::sort(parts.begin(), parts.end());
            std::string norm;
            for (std::size_t q = 0; q < parts.size(); ++q) norm += (q ? "," : "") + parts[q];
            auto found = keys.find(norm);
            if (found == keys.end()) throw InputError("K key '" + it.key() + "' is not a set of inputs of " + name);
            vals[found->second] = json_rational(it.value());
            if (sgn(vals[found->second]) < 0) throw InputError("K values must be nonnegative");
            seen[found->second] = true;
        }
        for (std::uint32_t c = 0; c < size; ++c)
            if (!seen[c]) throw InputError("K for node " + name + " lacks key '" + k_key(net, i, c) + "'");
        k.values.push_back(std::move(vals));
    }
    return k;
}

nlohmann::json k_to_json(const RegulatoryNetwork& net, const KCollection& k) {
    nlohmann::json j = nlohmann::json::object();
    for (int i = 0; i < net.node_count(); ++i) {
        nlohmann::json t = nlohmann::json::object();
        for (std::uint32_t c = 0; c < k.values[i].size(); ++c) t[k_key(net, i, c)] = format_rational(k.values[i][c]);
        j[net.node(i).name] = t;
    }
    return j;
}

std::vector<std::string> validate_k(const RegulatoryNetwork& net, const KCollection& k) {
    std::vector<std::string> issues;
    if (static_cast<int>(k.values.size()) != net.node_count()) {
        issues.push_back("K has the wrong number of nodes");
        return issues;
    }
    for (int i = 0; i < net.node_count(); ++i) {
        const auto& vals = k.values[i];
        int m = net.in_degree(i);
        if (vals.size() != (std::size_t{1} << m)) {
            issues.push_back("K for node " + net.node(i).name + " has the wrong size");
            continue;
        }
        const auto& in = net.inputs(i);
        for (std::uint32_t c = 0; c < vals.size(); ++c) {
            for (int p = 0; p < m; ++p) {
                if ((c >> p) & 1u) continue;
                std::uint32_t up = c | (1u << p);
                bool plus = net.edges()[in[p]].sign == Sign::Plus;
                if (plus ? vals[c] > vals[up] : vals[c] < vals[up])
                    issues.push_back("node " + net.node(i).name + ": K{" + k_key(net, i, c) + "} and K{" +
                                     k_key(net, i, up) + "} violate the sign of input " +
                                     net.node(net.edges()[in[p]].source).name);
            }
            for (int e : net.outputs(i))
                if (vals[c] == net.node(i).decay * net.edges()[e].threshold)
                    issues.push_back("node " + net.node(i).name + ": K{" + k_key(net, i, c) +
                                     "} lies exactly on a threshold");
        }
    }
    return issues;
}

DomainSpace::DomainSpace(const RegulatoryNetwork& net) {
    for (int i = 0; i < net.node_count(); ++i) {
        extents_.push_back(net.out_degree(i) + 1);
        size_ *= static_cast<std::size_t>(extents_.back());
    }
}

std::size_t DomainSpace::index(const DomainState& d) const {
    std::size_t idx = 0;
    for (std::size_t i = extents_.size(); i-- > 0;) {
        if (d[i] < 0 || d[i] >= extents_[i]) throw std::out_of_range("domain state out of range");
        idx = idx * extents_[i] + d[i];
    }
    return idx;
}

DomainState DomainSpace::state(std::size_t index) const {
    DomainState d(extents_.size());
    for (std::size_t i = 0; i < extents_.size(); ++i) {
        d[i] = static_cast<int>(index % extents_[i]);
        index /= extents_[i];
    }
    return d;
}

std::uint32_t input_corner(const RegulatoryNetwork& net, int i, const DomainState& d) {
    std::uint32_t c = 0;
    const auto& in = net.inputs(i);
    for (std::size_t p = 0; p < in.size(); ++p) {
        int e = in[p];
        if (d[net.edges()[e].source] > net.threshold_rank(e)) c |= 1u << p;
    }
    return c;
}

DomainState phi_k(const RegulatoryNetwork& net, const KCollection& k, const DomainState& d) {
    DomainState out(net.node_count());
    for (int i = 0; i < net.node_count(); ++i) {
        const Rational& value = k.values[i][input_corner(net, i, d)];
        const Rational& gamma = net.node(i).decay;
        int below = 0;
        for (int e : net.outputs(i)) {
            Rational scaled = gamma * net.edges()[e].threshold;
            if (value == scaled)
                throw std::invalid_argument("K value of node " + net.node(i).name + " lies exactly on a threshold");
            if (value > scaled) ++below;
        }
        out[i] = below;
    }
    return out;
}

bool StateTransitionGraph::has_edge(const DomainState& from, const DomainState& to) const {
    for (std::size_t a = 0; a < states.size(); ++a) {
        if (states[a] != from) continue;
        for (auto b : successors[a])
            if (states[b] == to) return true;
    }
    return false;
}

std::size_t StateTransitionGraph::edge_count() const {
    std::size_t c = 0;
    for (const auto& s : successors) c += s.size();
    return c;
}

namespace {

std::string state_label(const DomainState& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

}  // namespace

std::string StateTransitionGraph::to_dot() const {
    std::ostringstream out;
    out << "digraph stg {\n";
    for (std::size_t a = 0; a < states.size(); ++a) out << "  s" << a << " [label=\"" << state_label(states[a]) << "\"];\n";
    for (std::size_t a = 0; a < states.size(); ++a)
        for (auto b : successors[a]) out << "  s" << a << " -> s" << b << ";\n";
    out << "}\n";
    return out.str();
}

StateTransitionGraph build_stg(const RegulatoryNetwork& net, const KCollection& k) {
    DomainSpace space(net);
    StateTransitionGraph g;
    g.successors.resize(space.size());
    for (std::size_t a = 0; a < space.size(); ++a) g.states.push_back(space.state(a));
    for (std::size_t a = 0; a < space.size(); ++a) {
        const auto& d = g.states[a];
        DomainState target = phi_k(net, k, d);
        if (target == d) {
            g.successors[a].push_back(a);
            continue;
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (target[i] == d[i]) continue;
            DomainState next = d;
            next[i] += target[i] > d[i] ? 1 : -1;
            g.successors[a].push_back(space.index(next));
        }
    }
    return g;
}

std::vector<NodeFunctions> k_to_mbfs(const RegulatoryNetwork& net, const KCollection& k) {
    std::vector<NodeFunctions> out;
    for (int i = 0; i < net.node_count(); ++i) {
        NodeFunctions nf;
        nf.targets.assign(net.outputs(i).rbegin(), net.outputs(i).rend());
        nf.signs = net.input_signs(i);
        int m = net.in_degree(i);
        for (int e : nf.targets) {
            BooleanFunction raw{m, {}};
            Rational scaled = net.node(i).decay * net.edges()[e].threshold;
            for (std::uint32_t c = 0; c < (1u << m); ++c) {
                if (k.values[i][c] == scaled) throw std::invalid_argument("K value lies exactly on a threshold");
                if (k.values[i][c] > scaled) raw.table.set(c);
            }
            nf.raw.push_back(raw);
            nf.positive.push_back(beta_normalize(raw, nf.signs));
        }
        out.push_back(std::move(nf));
    }
    return out;
}

KRealization mbfs_to_k(const RegulatoryNetwork& net, const std::vector<OrderedTuple>& tuples) {
    if (static_cast<int>(tuples.size()) != net.node_count()) throw ArityMismatch("one tuple per node is required");
    std::vector<NetworkNode> nodes;
    for (int i = 0; i < net.node_count(); ++i) nodes.push_back({net.node(i).name, Rational(1)});
    std::vector<NetworkEdge> edges = net.edges();
    KCollection k;
    for (int i = 0; i < net.node_count(); ++i) {
        const auto& tuple = tuples[i];
        int b = net.out_degree(i);
        int m = net.in_degree(i);
        if (static_cast<int>(tuple.size()) != b) throw ArityMismatch("tuple length differs from out-degree");
        for (const auto& f : tuple)
            if (f.arity() != m) throw ArityMismatch("tuple arity differs from in-degree");
        validate_tuple(tuple);
        // Position j (descending original threshold) gets threshold b - j + 1/2.
        for (int j = 1; j <= b; ++j) {
            int e = net.outputs(i)[b - j];
            edges[e].threshold = Rational(static_cast<long>(2 * (b - j) + 1), 2L);
        }
        auto signs = net.input_signs(i);
        std::vector<Rational> vals(std::size_t{1} << m, Rational(0));
        std::vector<BooleanFunction> raws;
        for (const auto& f : tuple) raws.push_back(beta_denormalize(f, signs));
        for (std::uint32_t c = 0; c < vals.size(); ++c) {
            for (const auto& r : raws)
                if (r(c)) vals[c] += 1;
        }
        k.values.push_back(std::move(vals));
    }
    return {RegulatoryNetwork(std::move(nodes), std::move(edges)), std::move(k)};
}

RegulatoryNetwork gamma_normalize(const RegulatoryNetwork& net) {
    std::vector<NetworkNode> nodes;
    for (int i = 0; i < net.node_count(); ++i) nodes.push_back({net.node(i).name, Rational(1)});
    std::vector<NetworkEdge> edges = net.edges();
    for (auto& e : edges) e.threshold *= net.node(e.source).decay;
    return RegulatoryNetwork(std::move(nodes), std::move(edges));
}

}  // namespace mbfreal
