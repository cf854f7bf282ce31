#include "mbfreal/paramgraph.hpp"

#include <algorithm>
#include <sstream>

namespace mbfreal {

namespace {

std::vector<std::string> tuple_key(const OrderedTuple& t) {
    std::vector<std::string> k;
    for (const auto& f : t) k.push_back(f.to_hex());
    return k;
}

std::string tuple_label(const OrderedTuple& t) {
    std::string s = "[";
    for (std::size_t j = 0; j < t.size(); ++j) s += (j ? " " : "") + t[j].corners_str();
    return s + "]";
}

}  // namespace

std::size_t FactorGraph::index_of(const OrderedTuple& t) const {
    auto it = lookup_.find(tuple_key(t));
    if (it == lookup_.end()) throw std::out_of_range("tuple is not a vertex of this factor");
    return it->second;
}

FactorGraph build_factor(int m, int b, const std::vector<Sign>& signs) {
    if (m < 0 || m > 4) throw ArityMismatch("factor input count out of range");
    if (b < 0 || b > 3) throw ArityMismatch("factor output count out of range");
    FactorGraph fg;
    fg.m = m;
    fg.b = b;
    fg.signs = signs.empty() ? std::vector<Sign>(m, Sign::Plus) : signs;
    if (static_cast<int>(fg.signs.size()) != m) throw ArityMismatch("sign count differs from input count");
    fg.vertices = enumerate_ordered_tuples(m, b);
    for (std::size_t v = 0; v < fg.vertices.size(); ++v) fg.lookup_[tuple_key(fg.vertices[v])] = v;
    for (std::size_t v = 0; v < fg.vertices.size(); ++v) {
        const auto& t = fg.vertices[v];
        for (std::size_t j = 0; j < t.size(); ++j) {
            for (std::uint32_t c = 0; c < t[j].corner_count(); ++c) {
                TruthTable table = t[j].table();
                table.flip(c);
                if (!is_monotone_positive(m, table)) continue;
                OrderedTuple nt = t;
                nt[j] = MbfFunction(m, table);
                auto it = fg.lookup_.find(tuple_key(nt));
                // A flip that breaks the chain order leaves the vertex set.
                if (it != fg.lookup_.end() && it->second > v) fg.edges.emplace_back(v, it->second);
            }
        }
    }
    std::sort(fg.edges.begin(), fg.edges.end());
    return fg;
}

ParameterGraph::ParameterGraph(const RegulatoryNetwork& net) : net_(net) {
    for (int i = 0; i < net.node_count(); ++i) {
        factors_.push_back(build_factor(net.in_degree(i), net.out_degree(i), net.input_signs(i)));
        std::vector<std::vector<std::size_t>> adj(factors_.back().vertices.size());
        for (auto [a, b] : factors_.back().edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& l : adj) std::sort(l.begin(), l.end());
        factor_adjacency_.push_back(std::move(adj));
    }
}

std::size_t ParameterGraph::vertex_count() const {
    std::size_t n = 1;
    for (const auto& f : factors_) n *= f.vertices.size();
    return n;
}

std::size_t ParameterGraph::edge_count() const {
    std::size_t total = 0;
    std::size_t all = vertex_count();
    for (const auto& f : factors_) total += f.edges.size() * (all / f.vertices.size());
    return total;
}

std::vector<std::size_t> ParameterGraph::coordinates(std::size_t vertex) const {
    std::vector<std::size_t> c(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        c[i] = vertex % factors_[i].vertices.size();
        vertex /= factors_[i].vertices.size();
    }
    return c;
}

std::size_t ParameterGraph::vertex(const std::vector<std::size_t>& coords) const {
    std::size_t v = 0;
    for (std::size_t i = factors_.size(); i-- > 0;) v = v * factors_[i].vertices.size() + coords[i];
    return v;
}

std::vector<std::size_t> ParameterGraph::neighbors(std::size_t v) const {
    auto c = coordinates(v);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (auto other : factor_adjacency_[i][c[i]]) {
            auto nc = c;
            nc[i] = other;
            out.push_back(vertex(nc));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OrderedTuple> ParameterGraph::tuples(std::size_t v) const {
    auto c = coordinates(v);
    std::vector<OrderedTuple> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i].vertices[c[i]]);
    return out;
}

std::size_t ParameterGraph::locate(const KCollection& k) const {
    auto fns = k_to_mbfs(net_, k);
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < factors_.size(); ++i) c.push_back(factors_[i].index_of(fns[i].positive));
    return vertex(c);
}

Verdict::Kind RealizabilityAnnotation::vertex_verdict(const ParameterGraph& pg, std::size_t v) const {
    auto c = pg.coordinates(v);
    Verdict::Kind out = Verdict::Kind::Realizable;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto k = factor_verdicts[i][c[i]];
        if (k == Verdict::Kind::NotRealizable) return k;
        if (k == Verdict::Kind::Unknown) out = k;
    }
    return out;
}

RealizabilityAnnotation annotate_realizability(const ParameterGraph& pg, RealizationClass cls,
                                               const CheckOptions& options) {
    RealizabilityAnnotation ann;
    ann.cls = cls;
    for (const auto& f : pg.factors()) {
        std::vector<Verdict::Kind> kinds;
        for (const auto& t : f.vertices) {
            // Tuples without functions or without inputs are realized by constant targets.
            if (t.empty() || f.m == 0)
                kinds.push_back(Verdict::Kind::Realizable);
            else
                kinds.push_back(check_class(t, cls, options).kind);
        }
        ann.factor_verdicts.push_back(std::move(kinds));
    }
    return ann;
}

std::string factor_to_dot(const FactorGraph& f) {
    std::ostringstream out;
    out << "graph factor_m" << f.m << "_b" << f.b << " {\n";
    for (std::size_t v = 0; v < f.vertices.size(); ++v)
        out << "  v" << v << " [label=\"" << tuple_label(f.vertices[v]) << "\"];\n";
    for (auto [a, b] : f.edges) out << "  v" << a << " -- v" << b << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

std::string coord_label(const std::vector<std::size_t>& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

}  // namespace

std::string parameter_graph_to_dot(const ParameterGraph& pg) {
    std::ostringstream out;
    out << "graph parameter_graph {\n";
    for (std::size_t v = 0; v < pg.vertex_count(); ++v)
        out << "  p" << v << " [label=\"" << coord_label(pg.coordinates(v)) << "\"];\n";
    for (std::size_t v = 0; v < pg.vertex_count(); ++v)
        for (auto u : pg.neighbors(v))
            if (u > v) out << "  p" << v << " -- p" << u << ";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json parameter_graph_to_json(const ParameterGraph& pg) {
    nlohmann::json j;
    j["network"] = pg.network().to_json();
    j["factors"] = nlohmann::json::array();
    for (const auto& f : pg.factors()) {
        nlohmann::json fj;
        fj["inputs"] = f.m;
        fj["outputs"] = f.b;
        fj["vertices"] = nlohmann::json::array();
        for (const auto& t : f.vertices) fj["vertices"].push_back(tuple_key(t));
        fj["edges"] = f.edges;
        j["factors"].push_back(fj);
    }
    j["vertex_count"] = pg.vertex_count();
    j["edge_count"] = pg.edge_count();
    j["adjacency"] = nlohmann::json::array();
    for (std::size_t v = 0; v < pg.vertex_count(); ++v) j["adjacency"].push_back(pg.neighbors(v));
    return j;
}

std::string parameter_graph_to_csv(const ParameterGraph& pg, const std::vector<RealizabilityAnnotation>& annotations) {
    std::ostringstream out;
    out << "vertex";
    for (int i = 0; i < pg.network().node_count(); ++i) out << ",node_" << pg.network().node(i).name;
    for (const auto& a : annotations) out << "," << class_name(a.cls);
    out << "\n";
    for (std::size_t v = 0; v < pg.vertex_count(); ++v) {
        out << v;
        auto c = pg.coordinates(v);
        for (std::size_t i = 0; i < c.size(); ++i) {
            out << ",";
            const auto& t = pg.factors()[i].vertices[c[i]];
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j].to_hex();
        }
        for (const auto& a : annotations) out << "," << verdict_name(a.vertex_verdict(pg, v));
        out << "\n";
    }
    return out.str();
}

}  // namespace mbfreal
