#pragma once

#include <json.hpp>

#include <map>
#include <sstream>
#include <string>

#include "mordell/bounds.hpp"
#include "mordell/errors.hpp"
#include "mordell/graph.hpp"
#include "mordell/pl_function.hpp"
#include "mordell/series.hpp"

namespace mordell {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw schema_error(where + ": missing field \"" + name + "\"");
    return j.at(name);
}

inline std::string string_field(const json& j, const char* name, const std::string& where) {
    const json& f = field(j, name, where);
    if (!f.is_string()) throw schema_error(where + ": field \"" + name + "\" must be a string");
    return f.get<std::string>();
}

inline Rational rational_field(const json& j, const char* name, const std::string& where) {
    try {
        return parse_rational(string_field(j, name, where));
    } catch (const schema_error& e) {
        throw schema_error(where + ": field \"" + name + "\": " + e.what());
    }
}

} // namespace detail

// Series file:
//   {"p": 3, "mode": "annulus", "modulus": "2", "terms": [{"n": -4, "val": "1"}, ...]}
//   {"p": 3, "mode": "disc", "terms": [...]}
inline ValuationSeries series_from_json(const json& j) {
    const std::string where = "series";
    const json& pj = detail::field(j, "p", where);
    if (!pj.is_number_unsigned() && !pj.is_number_integer())
        throw schema_error("series: field \"p\" must be an integer");
    long long p = pj.get<long long>();
    if (p < 2) throw schema_error("series: field \"p\" must be a prime >= 2");
    std::string mode = detail::string_field(j, "mode", where);
    if (mode != "annulus" && mode != "disc")
        throw schema_error("series: field \"mode\" must be \"annulus\" or \"disc\"");
    Rational modulus(0);
    if (mode == "annulus") modulus = detail::rational_field(j, "modulus", where);
    const json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) throw schema_error("series: field \"terms\" must be an array");
    std::map<long long, Rational> support;
    for (const json& t : terms) {
        const json& nj = detail::field(t, "n", "series.terms");
        if (!nj.is_number_integer()) throw schema_error("series.terms: field \"n\" must be an integer");
        long long n = nj.get<long long>();
        if (support.count(n)) throw schema_error("series.terms: duplicate exponent " + std::to_string(n));
        support.emplace(n, detail::rational_field(t, "val", "series.terms"));
    }
    try {
        return ValuationSeries(static_cast<unsigned long>(p),
                               mode == "annulus" ? SeriesMode::annulus : SeriesMode::disc, modulus,
                               std::move(support));
    } catch (const precondition_error& e) {
        throw schema_error(std::string("series: ") + e.what());
    }
}

inline json series_to_json(const ValuationSeries& s) {
    json j;
    j["p"] = s.prime();
    j["mode"] = s.mode() == SeriesMode::annulus ? "annulus" : "disc";
    if (s.mode() == SeriesMode::annulus) j["modulus"] = to_string(s.modulus());
    json terms = json::array();
    for (const auto& [n, v] : s.terms()) terms.push_back({{"n", n}, {"val", to_string(v)}});
    j["terms"] = std::move(terms);
    return j;
}

// Graph file:
//   {"vertices": [{"id": "v1", "weight": 0}, ...],
//    "edges": [{"id": "e1", "ends": ["v1", "v2"], "length": "3/2"}, ...]}
inline MetricGraph graph_from_json(const json& j) {
    const json& vj = detail::field(j, "vertices", "graph");
    if (!vj.is_array()) throw schema_error("graph: field \"vertices\" must be an array");
    std::vector<GraphVertex> vertices;
    for (const json& v : vj) {
        GraphVertex gv;
        gv.id = detail::string_field(v, "id", "graph.vertices");
        const json& w = detail::field(v, "weight", "graph.vertices");
        if (!w.is_number_integer() && !w.is_number_unsigned())
            throw schema_error("graph.vertices: field \"weight\" must be an integer");
        gv.weight = w.get<long long>();
        if (gv.weight < 0) throw schema_error("graph.vertices: field \"weight\" must be >= 0");
        vertices.push_back(std::move(gv));
    }
    const json& ej = detail::field(j, "edges", "graph");
    if (!ej.is_array()) throw schema_error("graph: field \"edges\" must be an array");
    std::vector<GraphEdge> edges;
    for (const json& e : ej) {
        GraphEdge ge;
        ge.id = detail::string_field(e, "id", "graph.edges");
        const json& ends = detail::field(e, "ends", "graph.edges");
        if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
            throw schema_error("graph.edges: field \"ends\" must be a pair of vertex ids");
        ge.ends = {ends[0].get<std::string>(), ends[1].get<std::string>()};
        ge.length = detail::rational_field(e, "length", "graph.edges");
        if (ge.length <= 0) throw schema_error("graph.edges: field \"length\" must be positive");
        edges.push_back(std::move(ge));
    }
    return MetricGraph(std::move(vertices), std::move(edges));
}

inline json graph_to_json(const MetricGraph& g) {
    json j;
    json vs = json::array();
    for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}, {"weight", v.weight}});
    json es = json::array();
    for (const auto& e : g.edges())
        es.push_back({{"id", e.id},
                      {"ends", json::array({e.ends[0], e.ends[1]})},
                      {"length", to_string(e.length)}});
    j["vertices"] = std::move(vs);
    j["edges"] = std::move(es);
    return j;
}

// Function file:
//   {"vertex_values": {"v1": "0", ...},
//    "edges": {"e1": [{"pos": "1/2", "val": "1"}, ...], ...}}
inline PLFunction function_from_json(const json& j, const MetricGraph& g) {
    const json& vv = detail::field(j, "vertex_values", "function");
    if (!vv.is_object()) throw schema_error("function: field \"vertex_values\" must be an object");
    std::map<std::string, Rational> values;
    for (auto it = vv.begin(); it != vv.end(); ++it) {
        if (!it.value().is_string())
            throw schema_error("function.vertex_values: values must be rational strings");
        values[it.key()] = parse_rational(it.value().get<std::string>());
    }
    std::map<std::string, PLFunction::Breakpoints> breaks;
    if (j.contains("edges")) {
        const json& ee = j.at("edges");
        if (!ee.is_object()) throw schema_error("function: field \"edges\" must be an object");
        for (auto it = ee.begin(); it != ee.end(); ++it) {
            if (!it.value().is_array())
                throw schema_error("function.edges: breakpoint lists must be arrays");
            PLFunction::Breakpoints bps;
            for (const json& bp : it.value())
                bps.emplace_back(detail::rational_field(bp, "pos", "function.edges"),
                                 detail::rational_field(bp, "val", "function.edges"));
            breaks[it.key()] = std::move(bps);
        }
    }
    return PLFunction(g, std::move(values), std::move(breaks));
}

inline json function_to_json(const PLFunction& f) {
    json j;
    json vv = json::object();
    for (const auto& [v, val] : f.vertex_values()) vv[v] = to_string(val);
    j["vertex_values"] = std::move(vv);
    json ee = json::object();
    for (const auto& [e, bps] : f.edge_breakpoints()) {
        json arr = json::array();
        for (const auto& [pos, val] : bps)
            arr.push_back({{"pos", to_string(pos)}, {"val", to_string(val)}});
        ee[e] = std::move(arr);
    }
    j["edges"] = std::move(ee);
    return j;
}

inline json divisor_to_json(const GraphDivisor& d) {
    json arr = json::array();
    for (const auto& [pt, c] : d.coefficients()) arr.push_back({{"at", pt.str()}, {"coeff", c}});
    return arr;
}

inline json report_to_json(const BoundReport& rep) {
    json j;
    j["kind"] = rep.kind;
    json in = json::object();
    for (const auto& [k, v] : rep.inputs) in[k] = v;
    j["inputs"] = std::move(in);
    json calls = json::array();
    for (const auto& c : rep.np_calls)
        calls.push_back({{"p", c.p},
                         {"r", to_string(c.r)},
                         {"n0", to_string(c.n0)},
                         {"value", to_string(c.value)}});
    j["np_calls"] = std::move(calls);
    json steps = json::array();
    for (const auto& s : rep.derivation)
        steps.push_back({{"label", s.label}, {"value", s.value}, {"factor", s.factor}});
    j["derivation"] = std::move(steps);
    j["final_bound"] = to_string(rep.final_bound);
    if (rep.caveat) j["caveat"] = *rep.caveat;
    return j;
}

inline std::string render_report_table(const BoundReport& rep) {
    std::ostringstream out;
    out << "bound kind: " << rep.kind << "\n";
    out << "inputs:\n";
    for (const auto& [k, v] : rep.inputs) out << "  " << k << " = " << v << "\n";
    if (!rep.np_calls.empty()) {
        out << "correction calls:\n";
        for (const auto& c : rep.np_calls)
            out << "  np(p=" << c.p << ", r=" << to_string(c.r) << ", n0=" << to_string(c.n0)
                << ") = " << to_string(c.value) << "\n";
    }
    out << "derivation:\n";
    for (const auto& s : rep.derivation)
        out << "  " << (s.factor ? "[*] " : "    ") << s.label << " = " << s.value << "\n";
    if (rep.caveat) out << "caveat: " << *rep.caveat << "\n";
    out << "final bound: " << to_string(rep.final_bound) << "\n";
    return out.str();
}

// Columns: inputs..., np_calls..., final_bound.
inline std::string render_report_csv(const BoundReport& rep) {
    std::ostringstream head, row;
    bool first = true;
    for (const auto& [k, v] : rep.inputs) {
        head << (first ? "" : ",") << k;
        row << (first ? "" : ",") << v;
        first = false;
    }
    for (std::size_t i = 0; i < rep.np_calls.size(); ++i) {
        const auto& c = rep.np_calls[i];
        head << ",np" << i + 1 << "_p,np" << i + 1 << "_r,np" << i + 1 << "_n0,np" << i + 1
             << "_value";
        row << "," << c.p << "," << to_string(c.r) << "," << to_string(c.n0) << ","
            << to_string(c.value);
    }
    head << ",final_bound";
    row << "," << to_string(rep.final_bound);
    return head.str() + "\n" + row.str() + "\n";
}

} // namespace mordell
