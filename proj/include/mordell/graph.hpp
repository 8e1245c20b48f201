#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/rational.hpp"

namespace mordell {

struct GraphVertex {
    std::string id;
    long long weight = 0; // genus of the vertex
};

struct GraphEdge {
    std::string id;
    std::array<std::string, 2> ends; // equal ends = loop
    Rational length;                 // positive
};

// Connected vertex-weighted multigraph with positive rational edge lengths.
// Loops are allowed and count twice toward valency.
class MetricGraph {
public:
    MetricGraph(std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        if (vertices_.empty()) throw schema_error("graph needs at least one vertex");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vertices_[i].weight < 0)
                throw schema_error("vertex \"" + vertices_[i].id + "\" has negative weight");
            if (!vertex_index_.emplace(vertices_[i].id, i).second)
                throw schema_error("duplicate vertex id \"" + vertices_[i].id + "\"");
        }
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            if (!edge_index_.emplace(e.id, i).second)
                throw schema_error("duplicate edge id \"" + e.id + "\"");
            for (const auto& end : e.ends)
                if (!vertex_index_.count(end))
                    throw schema_error("edge \"" + e.id + "\" references unknown vertex \"" + end +
                                       "\"");
            if (e.length <= 0)
                throw schema_error("edge \"" + e.id + "\" must have positive length");
        }
        if (!connected()) throw precondition_error("graph must be connected");
    }

    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    std::size_t vertex_index(const std::string& id) const {
        auto it = vertex_index_.find(id);
        if (it == vertex_index_.end()) throw schema_error("unknown vertex id \"" + id + "\"");
        return it->second;
    }

    const GraphEdge& edge(const std::string& id) const {
        auto it = edge_index_.find(id);
        if (it == edge_index_.end()) throw schema_error("unknown edge id \"" + id + "\"");
        return edges_[it->second];
    }

    bool has_edge(const std::string& id) const { return edge_index_.count(id) > 0; }

    long long degree(const std::string& vertex_id) const {
        long long d = 0;
        for (const auto& e : edges_) {
            if (e.ends[0] == vertex_id) ++d;
            if (e.ends[1] == vertex_id) ++d;
        }
        return d;
    }

    long long loop_count(const std::string& vertex_id) const {
        long long c = 0;
        for (const auto& e : edges_)
            if (e.ends[0] == vertex_id && e.ends[1] == vertex_id) ++c;
        return c;
    }

    long long total_loop_count() const {
        long long c = 0;
        for (const auto& e : edges_)
            if (e.ends[0] == e.ends[1]) ++c;
        return c;
    }

private:
    bool connected() const {
        std::vector<bool> seen(vertices_.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (const auto& e : edges_) {
                std::size_t a = vertex_index_.at(e.ends[0]);
                std::size_t b = vertex_index_.at(e.ends[1]);
                if (a == v && !seen[b]) seen[b] = true, stack.push_back(b);
                if (b == v && !seen[a]) seen[a] = true, stack.push_back(a);
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    }

    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> edge_index_;
};

// A point of the geometric realization: a vertex, or an interior point of an
// edge at a position measured from the edge's first endpoint.
struct GraphPoint {
    enum class Kind { vertex, interior };
    Kind kind;
    std::string id;    // vertex id or edge id
    Rational position; // 0 for vertices

    static GraphPoint at_vertex(std::string vertex_id) {
        return GraphPoint{Kind::vertex, std::move(vertex_id), Rational(0)};
    }
    static GraphPoint on_edge(std::string edge_id, Rational pos) {
        return GraphPoint{Kind::interior, std::move(edge_id), std::move(pos)};
    }

    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.id != b.id) return a.id < b.id;
        return a.position < b.position;
    }
    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        return a.kind == b.kind && a.id == b.id && a.position == b.position;
    }

    std::string str() const {
        if (kind == Kind::vertex) return id;
        return id + "@" + to_string(position);
    }
};

// Finitely supported integer-valued function on graph points; zero
// coefficients are never stored.
class GraphDivisor {
public:
    void add(const GraphPoint& at, long long c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.emplace(at, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    long long coefficient(const GraphPoint& at) const {
        auto it = coeffs_.find(at);
        return it == coeffs_.end() ? 0 : it->second;
    }

    long long degree() const {
        long long d = 0;
        for (const auto& [pt, c] : coeffs_) d += c;
        return d;
    }

    bool effective() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const auto& kv) { return kv.second >= 0; });
    }

    const std::map<GraphPoint, long long>& coefficients() const { return coeffs_; }

    friend GraphDivisor operator+(const GraphDivisor& a, const GraphDivisor& b) {
        GraphDivisor out = a;
        for (const auto& [pt, c] : b.coeffs_) out.add(pt, c);
        return out;
    }

    friend bool operator==(const GraphDivisor& a, const GraphDivisor& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::map<GraphPoint, long long> coeffs_;
};

// genus = first Betti number + total vertex weight.
inline long long genus(const MetricGraph& g) {
    long long E = static_cast<long long>(g.edges().size());
    long long V = static_cast<long long>(g.vertices().size());
    long long w = 0;
    for (const auto& v : g.vertices()) w += v.weight;
    return (E - V + 1) + w;
}

// K = sum over vertices of (2*weight - 2 + degree); its degree is always
// 2*genus - 2.
inline GraphDivisor canonical_divisor(const MetricGraph& g) {
    GraphDivisor k;
    for (const auto& v : g.vertices())
        k.add(GraphPoint::at_vertex(v.id), 2 * v.weight - 2 + g.degree(v.id));
    return k;
}

inline bool has_genus_zero_leaf(const MetricGraph& g) {
    for (const auto& v : g.vertices())
        if (v.weight == 0 && g.degree(v.id) == 1) return true;
    return false;
}

// Stability: every vertex has positive canonical multiplicity
// 2*weight - 2 + degree > 0.  (A single vertex of weight >= 2 passes with no
// edges.)  Only meaningful for genus >= 2.
inline bool is_stable(const MetricGraph& g) {
    if (genus(g) < 2) throw precondition_error("stability is defined for genus >= 2");
    for (const auto& v : g.vertices())
        if (2 * v.weight - 2 + g.degree(v.id) <= 0) return false;
    return true;
}

struct StableStats {
    long long vertex_count, vertex_bound;   // <= 2g - 2
    long long edge_count, edge_bound;       // <= 3g - 3
    long long loop_count, loop_bound;       // <= g
    long long max_degree, degree_bound;     // <= 2g
    bool all_pass;
};

inline StableStats stable_stats_check(const MetricGraph& g) {
    long long gg = genus(g);
    if (gg < 2 || !is_stable(g))
        throw precondition_error("stable_stats_check requires a stable graph of genus >= 2");
    StableStats s{};
    s.vertex_count = static_cast<long long>(g.vertices().size());
    s.edge_count = static_cast<long long>(g.edges().size());
    s.loop_count = g.total_loop_count();
    s.max_degree = 0;
    for (const auto& v : g.vertices()) s.max_degree = std::max(s.max_degree, g.degree(v.id));
    s.vertex_bound = 2 * gg - 2;
    s.edge_bound = 3 * gg - 3;
    s.loop_bound = gg;
    s.degree_bound = 2 * gg;
    s.all_pass = s.vertex_count <= s.vertex_bound && s.edge_count <= s.edge_bound &&
                 s.loop_count <= s.loop_bound && s.max_degree <= s.degree_bound;
    return s;
}

// Discrete Laplacian on the unit-length model: the divisor with coefficient
// sum_{edges e = vw} (f(w) - f(v)) at each vertex v.  Metric lengths are
// deliberately ignored; loops contribute nothing.  Its degree is always 0.
inline GraphDivisor discrete_laplacian(const MetricGraph& g,
                                       const std::map<std::string, long long>& f) {
    for (const auto& v : g.vertices())
        if (!f.count(v.id))
            throw precondition_error("discrete_laplacian: f missing vertex \"" + v.id + "\"");
    GraphDivisor d;
    for (const auto& e : g.edges()) {
        long long fa = f.at(e.ends[0]);
        long long fb = f.at(e.ends[1]);
        d.add(GraphPoint::at_vertex(e.ends[0]), fb - fa);
        d.add(GraphPoint::at_vertex(e.ends[1]), fa - fb);
    }
    return d;
}

enum class DaggerVariant { one, two };

// Degeneracy conditions on the skeleton candidate: variant one requires
// genus > 2*weight + degree at every vertex, variant two
// genus > 2*weight + 2*degree - 2.
inline bool check_dagger(const MetricGraph& g, DaggerVariant variant) {
    long long gg = genus(g);
    if (gg < 2) throw precondition_error("check_dagger requires genus >= 2");
    for (const auto& v : g.vertices()) {
        long long d = g.degree(v.id);
        long long threshold =
            variant == DaggerVariant::one ? 2 * v.weight + d : 2 * v.weight + 2 * d - 2;
        if (!(gg > threshold)) return false;
    }
    return true;
}

} // namespace mordell
