#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/graph.hpp"
#include "mordell/rational.hpp"

namespace mordell {

// Continuous piecewise-affine function on a metric graph with integer slopes.
// The data is a value at every vertex plus, per edge, a sorted list of
// interior breakpoints (position, value); continuity holds by construction
// because vertex values anchor the edge ends, and slope integrality is
// validated here, so being tropical-meromorphic is a type invariant.
class PLFunction {
public:
    using Breakpoints = std::vector<std::pair<Rational, Rational>>;

    PLFunction(const MetricGraph& g, std::map<std::string, Rational> vertex_values,
               std::map<std::string, Breakpoints> edge_breakpoints)
        : vertex_values_(std::move(vertex_values)), edge_breakpoints_(std::move(edge_breakpoints)) {
        for (const auto& v : g.vertices())
            if (!vertex_values_.count(v.id))
                throw schema_error("missing value at vertex \"" + v.id + "\"");
        for (const auto& [eid, bps] : edge_breakpoints_) {
            if (!g.has_edge(eid)) throw schema_error("breakpoints on unknown edge \"" + eid + "\"");
            const GraphEdge& e = g.edge(eid);
            Rational prev(0);
            for (const auto& [pos, val] : bps) {
                if (!(pos > prev) || !(pos < e.length))
                    throw schema_error("breakpoint positions on edge \"" + eid +
                                       "\" must be strictly increasing inside (0, length)");
                prev = pos;
            }
        }
        for (const auto& e : g.edges()) {
            for (long long s : piece_slopes(g, e.id)) (void)s; // validates integrality
        }
    }

    const Rational& value_at_vertex(const std::string& vertex_id) const {
        auto it = vertex_values_.find(vertex_id);
        if (it == vertex_values_.end())
            throw schema_error("no value at vertex \"" + vertex_id + "\"");
        return it->second;
    }

    const Breakpoints& breakpoints(const std::string& edge_id) const {
        static const Breakpoints empty;
        auto it = edge_breakpoints_.find(edge_id);
        return it == edge_breakpoints_.end() ? empty : it->second;
    }

    // Sample chain along an edge: (0, F(end0)), breakpoints..., (len, F(end1)).
    std::vector<std::pair<Rational, Rational>> chain(const MetricGraph& g,
                                                     const std::string& edge_id) const {
        const GraphEdge& e = g.edge(edge_id);
        std::vector<std::pair<Rational, Rational>> c;
        c.emplace_back(Rational(0), value_at_vertex(e.ends[0]));
        for (const auto& bp : breakpoints(edge_id)) c.push_back(bp);
        c.emplace_back(e.length, value_at_vertex(e.ends[1]));
        return c;
    }

    // Integer slopes of the affine pieces along an edge, in increasing
    // position order.
    std::vector<long long> piece_slopes(const MetricGraph& g, const std::string& edge_id) const {
        auto c = chain(g, edge_id);
        std::vector<long long> slopes;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            Rational s = (c[i + 1].second - c[i].second) / (c[i + 1].first - c[i].first);
            if (s.get_den() != 1)
                throw precondition_error("non-integer slope " + to_string(s) + " on edge \"" +
                                         edge_id + "\"");
            if (!s.get_num().fits_slong_p())
                throw precondition_error("slope overflow on edge \"" + edge_id + "\"");
            slopes.push_back(s.get_num().get_si());
        }
        return slopes;
    }

    const std::map<std::string, Rational>& vertex_values() const { return vertex_values_; }
    const std::map<std::string, Breakpoints>& edge_breakpoints() const { return edge_breakpoints_; }

private:
    std::map<std::string, Rational> vertex_values_;
    std::map<std::string, Breakpoints> edge_breakpoints_;
};

// div(F): at each point, the sum of incoming slopes over all directions.
// Supported at vertices and edge breakpoints; zeros omitted.
inline GraphDivisor divisor_of(const PLFunction& f, const MetricGraph& g) {
    GraphDivisor d;
    for (const auto& e : g.edges()) {
        auto slopes = f.piece_slopes(g, e.id);
        const auto& bps = f.breakpoints(e.id);
        // outgoing slope at end0 is slopes.front(), at end1 it is -slopes.back()
        d.add(GraphPoint::at_vertex(e.ends[0]), -slopes.front());
        d.add(GraphPoint::at_vertex(e.ends[1]), slopes.back());
        for (std::size_t i = 0; i < bps.size(); ++i)
            d.add(GraphPoint::on_edge(e.id, bps[i].first), slopes[i] - slopes[i + 1]);
    }
    return d;
}

// Section test for the tropical canonical bundle: div(F) + K >= 0 pointwise.
inline bool is_canonical_section(const PLFunction& f, const MetricGraph& g) {
    return (divisor_of(f, g) + canonical_divisor(g)).effective();
}

inline long long max_abs_slope(const PLFunction& f, const MetricGraph& g) {
    long long m = 0;
    for (const auto& e : g.edges())
        for (long long s : f.piece_slopes(g, e.id)) m = std::max(m, s < 0 ? -s : s);
    return m;
}

struct StarMassReport {
    long long end_slope_sum;
    long long interior_order_sum;
};

// Mass formula on a star-shaped subgraph (center plus half-open arms): the
// total order of div(F) strictly inside the star equals the sum of the
// incoming slopes at the arm ends.  Both sides are computed independently and
// compared.  The graph must be a star: every edge joins the center to a
// distinct leaf of valency 1, no loops.
inline StarMassReport star_mass_formula(const PLFunction& f, const MetricGraph& g,
                                        const std::string& center_id) {
    g.vertex_index(center_id);
    for (const auto& e : g.edges()) {
        if (e.ends[0] == e.ends[1])
            throw precondition_error("star_mass_formula: loops are not star arms");
        bool touches = e.ends[0] == center_id || e.ends[1] == center_id;
        if (!touches) throw precondition_error("star_mass_formula: edge \"" + e.id +
                                               "\" does not touch the center");
        const std::string& leaf = e.ends[0] == center_id ? e.ends[1] : e.ends[0];
        if (g.degree(leaf) != 1)
            throw precondition_error("star_mass_formula: arm end \"" + leaf +
                                     "\" must have valency 1");
    }
    if (g.edges().empty()) throw precondition_error("star_mass_formula: star needs at least one arm");

    long long end_sum = 0;
    for (const auto& e : g.edges()) {
        auto slopes = f.piece_slopes(g, e.id);
        // incoming slope at the far end, pointing toward the center
        end_sum += e.ends[1] == center_id ? slopes.front() : -slopes.back();
    }

    GraphDivisor div = divisor_of(f, g);
    long long interior = 0;
    for (const auto& [pt, c] : div.coefficients()) {
        bool is_end = pt.kind == GraphPoint::Kind::vertex && pt.id != center_id;
        if (!is_end) interior += c;
    }

    if (interior != end_sum)
        throw invariant_error("star mass formula mismatch: interior order sum " +
                              std::to_string(interior) + " vs end slope sum " +
                              std::to_string(end_sum));
    return StarMassReport{end_sum, interior};
}

} // namespace mordell
