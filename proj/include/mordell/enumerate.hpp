#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/graph.hpp"

namespace mordell {

// Dense multigraph on a handful of vertices, used for enumeration and
// canonical labeling.  adj[i][j] is the edge multiplicity between i and j for
// i != j; adj[i][i] counts loops (each loop once).
struct SmallGraph {
    int n = 0;
    std::vector<int> weight;
    std::vector<std::vector<int>> adj;

    explicit SmallGraph(int vertices = 0)
        : n(vertices), weight(vertices, 0), adj(vertices, std::vector<int>(vertices, 0)) {}

    int degree(int v) const {
        int d = 2 * adj[v][v];
        for (int j = 0; j < n; ++j)
            if (j != v) d += adj[v][j];
        return d;
    }

    int edge_count() const {
        int e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) e += adj[i][j];
        return e;
    }

    int loop_count() const {
        int c = 0;
        for (int i = 0; i < n; ++i) c += adj[i][i];
        return c;
    }

    long long genus() const {
        long long w = std::accumulate(weight.begin(), weight.end(), 0LL);
        return edge_count() - n + 1 + w;
    }

    bool connected() const {
        if (n == 0) return false;
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j)
                if (j != v && adj[v][j] > 0 && !seen[j]) seen[j] = true, stack.push_back(j);
        }
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    }

    bool stable() const {
        for (int v = 0; v < n; ++v)
            if (2 * weight[v] - 2 + degree(v) <= 0) return false;
        return true;
    }
};

namespace detail {

// Label-independent per-vertex invariant used to seed color refinement.
inline std::vector<std::vector<int>> initial_colors(const SmallGraph& g) {
    std::vector<std::vector<int>> inv(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> mults;
        for (int j = 0; j < g.n; ++j)
            if (j != v && g.adj[v][j] > 0) mults.push_back(g.adj[v][j]);
        std::sort(mults.begin(), mults.end());
        inv[v] = {g.weight[v], g.degree(v), g.adj[v][v]};
        inv[v].insert(inv[v].end(), mults.begin(), mults.end());
    }
    return inv;
}

// Refine colors by the multiset of (multiplicity, neighbor color) until
// stable.  Colors are ranks of label-independent invariant vectors, so the
// final coloring is itself label-independent.
inline std::vector<int> refined_colors(const SmallGraph& g) {
    auto inv = initial_colors(g);
    std::vector<int> color(g.n, 0);
    {
        auto sorted = inv;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < g.n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), inv[v]) - sorted.begin());
    }
    for (;;) {
        std::vector<std::vector<int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<std::pair<int, int>> nb;
            for (int j = 0; j < g.n; ++j)
                if (j != v && g.adj[v][j] > 0) nb.emplace_back(g.adj[v][j], color[j]);
            std::sort(nb.begin(), nb.end());
            sig[v] = {color[v]};
            for (auto& [m, c] : nb) {
                sig[v].push_back(m);
                sig[v].push_back(c);
            }
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(g.n);
        for (int v = 0; v < g.n; ++v)
            next[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (next == color) return color;
        color = next;
    }
}

struct CanonSearch {
    const SmallGraph& g;
    std::vector<int> color;
    std::vector<int> order;      // order[k] = vertex placed at position k
    std::vector<bool> used;
    std::vector<int> best;       // best (smallest) encoding found so far
    std::vector<int> current;    // encoding prefix for the current order
    std::vector<int> best_order;
    bool have_best = false;

    explicit CanonSearch(const SmallGraph& graph, std::vector<int> colors)
        : g(graph), color(std::move(colors)), used(graph.n, false) {}

    // Row appended when vertex v is placed at position k:
    //   color, weight, loop count, adjacency to the k previously placed.
    void append_row(int v, int k) {
        current.push_back(color[v]);
        current.push_back(g.weight[v]);
        current.push_back(g.adj[v][v]);
        for (int i = 0; i < k; ++i) current.push_back(g.adj[v][order[i]]);
    }

    void search(int k) {
        if (have_best) {
            // prefix pruning: compare what is built so far against best
            std::size_t len = current.size();
            for (std::size_t i = 0; i < len; ++i) {
                if (current[i] < best[i]) break;
                if (current[i] > best[i]) return;
            }
        }
        if (k == g.n) {
            if (!have_best || current < best) {
                best = current;
                best_order = order;
                have_best = true;
            }
            return;
        }
        // candidates: unused vertices of the minimal remaining color
        int cmin = -1;
        for (int v = 0; v < g.n; ++v)
            if (!used[v] && (cmin == -1 || color[v] < cmin)) cmin = color[v];
        for (int v = 0; v < g.n; ++v) {
            if (used[v] || color[v] != cmin) continue;
            used[v] = true;
            order.push_back(v);
            std::size_t mark = current.size();
            append_row(v, k);
            search(k + 1);
            current.resize(mark);
            order.pop_back();
            used[v] = false;
        }
    }
};

} // namespace detail

// Canonical encoding of a vertex-weighted multigraph, invariant under
// relabeling: color-refine, then minimize the row encoding over all orderings
// compatible with the refinement (exhaustive within cells, with prefix
// pruning).  Graphs here are small (at most 2g-2 vertices), so this is cheap.
inline std::string canonical_form(const SmallGraph& g) {
    if (g.n == 0) return std::string{};
    detail::CanonSearch s(g, detail::refined_colors(g));
    s.search(0);
    std::string out;
    out.reserve(s.best.size() + 1);
    out.push_back(static_cast<char>(g.n));
    for (int x : s.best) out.push_back(static_cast<char>(x));
    return out;
}

// The graph relabeled into its canonical vertex order, so isomorphic inputs
// produce identical SmallGraphs.
inline SmallGraph canonical_relabel(const SmallGraph& g) {
    if (g.n == 0) return g;
    detail::CanonSearch s(g, detail::refined_colors(g));
    s.search(0);
    SmallGraph out(g.n);
    for (int k = 0; k < g.n; ++k) {
        out.weight[k] = g.weight[s.best_order[k]];
        for (int l = 0; l < g.n; ++l) out.adj[k][l] = g.adj[s.best_order[k]][s.best_order[l]];
    }
    return out;
}

enum class EnumerationOrder { pair_major, reverse_rows };

namespace detail {

// Realization enumeration: fill the adjacency of vertex `row` (loops plus
// forward multiplicities) so every vertex ends with its prescribed degree.
// Each labeled multigraph with the given degree sequence is produced exactly
// once.  `reversed` flips the vertex processing order, giving an independent
// generation order for cross-checking.
template <typename Sink>
inline void fill_rows(SmallGraph& g, std::vector<int>& rem, int row, bool reversed, Sink&& sink) {
    int n = g.n;
    int r = reversed ? n - 1 - row : row;
    if (row == n) {
        sink(g);
        return;
    }

    // choose loops at r, then multiplicities toward unprocessed vertices
    std::vector<int> targets;
    for (int j = 0; j < n; ++j) {
        bool processed = reversed ? (j > r) : (j < r);
        if (j != r && !processed) targets.push_back(j);
    }

    struct Rec {
        SmallGraph& g;
        std::vector<int>& rem;
        int r;
        int row;
        bool reversed;
        std::vector<int>& targets;
        Sink& sink;

        void go(std::size_t t) {
            if (rem[r] == 0) {
                fill_rows(g, rem, row + 1, reversed, sink);
                return;
            }
            if (t == targets.size()) return; // leftover stubs, dead end
            int j = targets[t];
            int cap = std::min(rem[r], rem[j]);
            for (int m = 0; m <= cap; ++m) {
                g.adj[r][j] = g.adj[j][r] = m;
                rem[r] -= m;
                rem[j] -= m;
                go(t + 1);
                rem[r] += m;
                rem[j] += m;
            }
            g.adj[r][j] = g.adj[j][r] = 0;
        }
    };

    int max_loops = rem[r] / 2;
    for (int l = 0; l <= max_loops; ++l) {
        g.adj[r][r] = l;
        rem[r] -= 2 * l;
        Rec rec{g, rem, r, row, reversed, targets, sink};
        rec.go(0);
        rem[r] += 2 * l;
    }
    g.adj[r][r] = 0;
}

// Degree sequences with given lower bounds, total 2E, non-increasing within
// runs of equal weight (a safe symmetry reduction: vertices of equal weight
// may be permuted freely).
template <typename Sink>
inline void degree_sequences(const std::vector<int>& weight, const std::vector<int>& min_deg,
                             int remaining, int idx, std::vector<int>& acc, Sink&& sink) {
    int n = static_cast<int>(weight.size());
    if (idx == n) {
        if (remaining == 0) sink(acc);
        return;
    }
    int hi = remaining;
    if (idx > 0 && weight[idx] == weight[idx - 1]) hi = std::min(hi, acc[idx - 1]);
    for (int d = hi; d >= min_deg[idx]; --d) {
        // the rest still needs at least its minimum degrees
        int rest_min = 0;
        for (int j = idx + 1; j < n; ++j) rest_min += min_deg[j];
        if (remaining - d < rest_min) continue;
        acc.push_back(d);
        degree_sequences(weight, min_deg, remaining - d, idx + 1, acc, sink);
        acc.pop_back();
    }
}

// Weight multisets: non-increasing vectors of the given length and sum.
template <typename Sink>
inline void weight_partitions(int length, int total, int cap, std::vector<int>& acc, Sink&& sink) {
    if (length == 0) {
        if (total == 0) sink(acc);
        return;
    }
    for (int w = std::min(cap, total); w >= 0; --w) {
        acc.push_back(w);
        weight_partitions(length - 1, total - w, w, acc, sink);
        acc.pop_back();
    }
}

} // namespace detail

// All isomorphism classes of connected stable vertex-weighted multigraphs of
// the given genus, as canonical-form keyed SmallGraphs in deterministic
// (sorted) order.  Default cap keeps runtimes at desk scale; the bound
// machinery only ever consumes small genus.
inline std::vector<SmallGraph> enumerate_stable_graphs(
    long long g, long long max_genus = 5, EnumerationOrder order = EnumerationOrder::pair_major) {
    if (g < 2 || g > max_genus)
        throw precondition_error("enumerate_stable_graphs: genus must be in [2, " +
                                 std::to_string(max_genus) + "]");
    std::map<std::string, SmallGraph> found;
    const bool reversed = order == EnumerationOrder::reverse_rows;

    for (int V = 1; V <= 2 * g - 2; ++V) {
        for (int W = 0; W <= g; ++W) {
            long long h1 = g - W;
            if (h1 < 0) continue;
            long long E = h1 + V - 1;
            if (E < 0) continue;
            if (E > 3 * g - 3) continue;
            std::vector<int> acc;
            detail::weight_partitions(V, W, W, acc, [&](const std::vector<int>& w) {
                std::vector<int> min_deg(V);
                for (int v = 0; v < V; ++v) {
                    min_deg[v] = std::max(0, 3 - 2 * w[v]); // stability
                    if (V >= 2) min_deg[v] = std::max(min_deg[v], 1);
                }
                std::vector<int> dacc;
                detail::degree_sequences(
                    w, min_deg, static_cast<int>(2 * E), 0, dacc, [&](const std::vector<int>& d) {
                        SmallGraph base(V);
                        base.weight = w;
                        std::vector<int> rem = d;
                        detail::fill_rows(base, rem, 0, reversed, [&](const SmallGraph& cand) {
                            if (!cand.connected()) return;
                            std::string key = canonical_form(cand);
                            if (!found.count(key)) found.emplace(std::move(key), canonical_relabel(cand));
                        });
                    });
            });
        }
    }

    std::vector<SmallGraph> out;
    out.reserve(found.size());
    for (auto& [key, graph] : found) out.push_back(graph);
    return out;
}

// Combinatorial type as a metric graph with unit edge lengths and stable ids.
inline MetricGraph to_metric_graph(const SmallGraph& g) {
    std::vector<GraphVertex> vs;
    for (int v = 0; v < g.n; ++v) vs.push_back({"v" + std::to_string(v), g.weight[v]});
    std::vector<GraphEdge> es;
    int next = 0;
    for (int i = 0; i < g.n; ++i) {
        for (int l = 0; l < g.adj[i][i]; ++l)
            es.push_back({"e" + std::to_string(next++),
                          {"v" + std::to_string(i), "v" + std::to_string(i)},
                          Rational(1)});
        for (int j = i + 1; j < g.n; ++j)
            for (int m = 0; m < g.adj[i][j]; ++m)
                es.push_back({"e" + std::to_string(next++),
                              {"v" + std::to_string(i), "v" + std::to_string(j)},
                              Rational(1)});
    }
    return MetricGraph(std::move(vs), std::move(es));
}

// Canonical form for metric graph combinatorial types (lengths ignored).
inline std::string canonical_form(const MetricGraph& g) {
    SmallGraph s(static_cast<int>(g.vertices().size()));
    std::map<std::string, int> idx;
    for (int i = 0; i < s.n; ++i) {
        idx[g.vertices()[i].id] = i;
        if (g.vertices()[i].weight > 127)
            throw precondition_error("canonical_form: vertex weight too large");
        s.weight[i] = static_cast<int>(g.vertices()[i].weight);
    }
    for (const auto& e : g.edges()) {
        int a = idx.at(e.ends[0]);
        int b = idx.at(e.ends[1]);
        if (a == b)
            ++s.adj[a][a];
        else
            ++s.adj[a][b], ++s.adj[b][a];
    }
    return canonical_form(s);
}

} // namespace mordell
