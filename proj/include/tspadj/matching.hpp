#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace tspadj {

struct MatchArc {
    int to;
    int edge;  // index into MatchGraph::edges()
};

// Undirected matching instance. Adjacency is edge-index aware so that
// parallel edges (which the directed reduction produces for arcs shared by
// both tours) stay distinguishable.
class MatchGraph {
public:
    explicit MatchGraph(int vertices, int left_count = -1)
        : left_count_(left_count), adjacency_(vertices) {
        if (vertices < 0) throw InternalError("negative vertex count");
    }

    int add_edge(int a, int b) {
        int n = vertex_count();
        if (a < 0 || a >= n || b < 0 || b >= n) throw InternalError("matching edge endpoint out of range");
        if (a == b) throw InternalError("matching graphs have no self-loops");
        int idx = static_cast<int>(edges_.size());
        edges_.emplace_back(a, b);
        adjacency_[a].push_back({b, idx});
        adjacency_[b].push_back({a, idx});
        return idx;
    }

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Vertices 0..left_count-1 form the left side when a bipartition is
    // declared; -1 means none.
    int left_count() const { return left_count_; }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::vector<MatchArc>>& adjacency() const { return adjacency_; }

private:
    int left_count_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<MatchArc>> adjacency_;
};

struct Matching {
    std::vector<int> mate;       // partner vertex, -1 if unmatched
    std::vector<int> mate_edge;  // edge index realizing the pair, -1 if unmatched

    bool perfect() const {
        for (int m : mate)
            if (m == -1) return false;
        return true;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int v = 0; v < static_cast<int>(mate.size()); ++v)
            if (mate[v] > v) out.emplace_back(v, mate[v]);
        return out;
    }

    std::vector<int> edge_indexes() const {
        std::vector<int> out;
        for (int v = 0; v < static_cast<int>(mate.size()); ++v)
            if (mate[v] > v) out.push_back(mate_edge[v]);
        return out;
    }

    bool contains_edge(int edge_index) const {
        for (int v = 0; v < static_cast<int>(mate.size()); ++v)
            if (mate[v] > v && mate_edge[v] == edge_index) return true;
        return false;
    }
};

namespace detail {

inline void check_matching(const MatchGraph& g, const Matching& m, const std::vector<int>& forced) {
    int n = g.vertex_count();
    ensure(static_cast<int>(m.mate.size()) == n && static_cast<int>(m.mate_edge.size()) == n,
           "matching arrays sized to the graph");
    for (int v = 0; v < n; ++v) {
        ensure(m.mate[v] != -1, "matching is perfect");
        ensure(m.mate[m.mate[v]] == v, "mate is symmetric");
        ensure(m.mate_edge[v] == m.mate_edge[m.mate[v]], "pair agrees on its edge");
        const auto& [a, b] = g.edges()[m.mate_edge[v]];
        ensure((a == v && b == m.mate[v]) || (b == v && a == m.mate[v]),
               "mate edge joins the pair");
    }
    for (int e : forced) ensure(m.contains_edge(e), "forced edge present in matching");
}

// Shared forced-edge preprocessing: record the forced pairs in `m`, mark
// their endpoints dead, and leave the engines to match everyone else.
inline std::vector<char> apply_forced(const MatchGraph& g, const std::vector<int>& forced, Matching& m) {
    int n = g.vertex_count();
    m.mate.assign(n, -1);
    m.mate_edge.assign(n, -1);
    std::vector<char> dead(n, 0);
    for (int e : forced) {
        if (e < 0 || e >= g.edge_count()) throw InternalError("forced edge index out of range");
        const auto& [a, b] = g.edges()[e];
        if (dead[a] || dead[b]) throw ForcedConflict("forced edges share a vertex");
        dead[a] = dead[b] = 1;
        m.mate[a] = b;
        m.mate[b] = a;
        m.mate_edge[a] = m.mate_edge[b] = e;
    }
    return dead;
}

inline std::vector<std::vector<MatchArc>> shuffled_adjacency(const MatchGraph& g, std::uint64_t order_seed) {
    auto adj = g.adjacency();
    Rng rng(order_seed);
    for (auto& list : adj) rng.shuffle(list);
    return adj;
}

}  // namespace detail

// Edmonds blossom search on a general graph, honoring forced edges by
// deleting their endpoints first. Returns std::nullopt when no perfect
// matching containing the forced set exists. `order_seed` permutes the
// adjacency scan order; distinct seeds can reach distinct matchings. `warm`
// edges seed the initial matching where compatible, so the result stays
// close to a known matching instead of being rebuilt from scratch.
inline std::optional<Matching> perfect_matching_general(const MatchGraph& g,
                                                        const std::vector<int>& forced = {},
                                                        std::uint64_t order_seed = 0,
                                                        const std::vector<int>& warm = {}) {
    int n = g.vertex_count();
    Matching result;
    std::vector<char> dead = detail::apply_forced(g, forced, result);
    auto adj = detail::shuffled_adjacency(g, order_seed);

    std::vector<int> match(n, -1), p(n, -1), base(n);
    std::vector<char> used(n, 0), blossom(n, 0);

    for (int e : warm) {
        if (e < 0 || e >= g.edge_count()) throw InternalError("warm edge index out of range");
        const auto& [a, b] = g.edges()[e];
        if (dead[a] || dead[b] || match[a] != -1 || match[b] != -1) continue;
        match[a] = b;
        match[b] = a;
    }

    for (int v = 0; v < n; ++v)
        if (!dead[v])
            for (const auto& arc : adj[v])
                if (!dead[arc.to] && match[v] == -1 && match[arc.to] == -1) {
                    match[v] = arc.to;
                    match[arc.to] = v;
                }

    auto lca = [&](int a, int b) {
        std::vector<char> seen(n, 0);
        int v = a;
        while (true) {
            v = base[v];
            seen[v] = 1;
            if (match[v] == -1) break;
            v = p[match[v]];
        }
        v = b;
        while (true) {
            v = base[v];
            if (seen[v]) return v;
            v = p[match[v]];
        }
    };

    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    };

    auto find_path = [&](int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::vector<int> queue{root};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (const auto& arc : adj[v]) {
                int to = arc.to;
                if (dead[to]) continue;
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && p[match[to]] != -1)) {
                    int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (match[to] == -1) {
                        return to;
                    }
                    used[match[to]] = 1;
                    queue.push_back(match[to]);
                }
            }
        }
        return -1;
    };

    for (int v = 0; v < n; ++v) {
        if (dead[v] || match[v] != -1) continue;
        int u = find_path(v);
        if (u == -1) return std::nullopt;
        while (u != -1) {
            int pv = p[u];
            int ppv = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = ppv;
        }
    }

    // Recover edge indexes; between parallel copies the smallest wins.
    std::map<std::pair<int, int>, int> first_edge;
    for (int i = 0; i < g.edge_count(); ++i) {
        auto [a, b] = g.edges()[i];
        if (a > b) std::swap(a, b);
        first_edge.try_emplace({a, b}, i);
    }
    for (int v = 0; v < n; ++v) {
        if (dead[v]) continue;
        if (match[v] == -1) return std::nullopt;
        result.mate[v] = match[v];
        if (match[v] > v) {
            int e = first_edge.at({v, match[v]});
            result.mate_edge[v] = result.mate_edge[match[v]] = e;
        }
    }
    detail::check_matching(g, result, forced);
    return result;
}

// Hopcroft–Karp on a declared bipartition, same forced-edge and warm-start
// contract.
inline std::optional<Matching> perfect_matching_bipartite(const MatchGraph& g,
                                                          const std::vector<int>& forced = {},
                                                          std::uint64_t order_seed = 0,
                                                          const std::vector<int>& warm = {}) {
    int n = g.vertex_count();
    int left = g.left_count();
    if (left < 0 || left > n) throw NotBipartite("graph carries no bipartition");
    for (const auto& [a, b] : g.edges()) {
        bool a_left = a < left, b_left = b < left;
        if (a_left == b_left) throw NotBipartite("edge does not cross the bipartition");
    }

    Matching result;
    std::vector<char> dead = detail::apply_forced(g, forced, result);

    std::vector<std::vector<MatchArc>> adj(left);  // left vertex -> right arcs
    for (int i = 0; i < g.edge_count(); ++i) {
        auto [a, b] = g.edges()[i];
        if (a >= left) std::swap(a, b);
        if (dead[a] || dead[b]) continue;
        adj[a].push_back({b, i});
    }
    Rng rng(order_seed);
    for (auto& list : adj) rng.shuffle(list);

    constexpr int kInf = 1 << 30;
    std::vector<int> mate_left(left, -1), mate_right(n - left, -1);
    std::vector<int> edge_left(left, -1);
    std::vector<int> dist(left, 0);

    for (int e : warm) {
        if (e < 0 || e >= g.edge_count()) throw InternalError("warm edge index out of range");
        auto [a, b] = g.edges()[e];
        if (a >= left) std::swap(a, b);
        if (dead[a] || dead[b] || mate_left[a] != -1 || mate_right[b - left] != -1) continue;
        mate_left[a] = b;
        mate_right[b - left] = a;
        edge_left[a] = e;
    }

    auto bfs = [&]() {
        std::vector<int> queue;
        for (int u = 0; u < left; ++u) {
            if (dead[u]) {
                dist[u] = kInf;
                continue;
            }
            if (mate_left[u] == -1) {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = kInf;
            }
        }
        bool reachable = false;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (const auto& arc : adj[u]) {
                int w = mate_right[arc.to - left];
                if (w == -1) {
                    reachable = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return reachable;
    };

    std::function<bool(int)> try_augment = [&](int u) {
        for (const auto& arc : adj[u]) {
            int w = mate_right[arc.to - left];
            if (w == -1 || (dist[w] == dist[u] + 1 && try_augment(w))) {
                mate_left[u] = arc.to;
                mate_right[arc.to - left] = u;
                edge_left[u] = arc.edge;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    };

    while (bfs())
        for (int u = 0; u < left; ++u)
            if (!dead[u] && mate_left[u] == -1) try_augment(u);

    for (int u = 0; u < left; ++u) {
        if (dead[u]) continue;
        if (mate_left[u] == -1) return std::nullopt;
        result.mate[u] = mate_left[u];
        result.mate[mate_left[u]] = u;
        result.mate_edge[u] = result.mate_edge[mate_left[u]] = edge_left[u];
    }
    for (int v = left; v < n; ++v)
        if (!dead[v] && result.mate[v] == -1) return std::nullopt;
    detail::check_matching(g, result, forced);
    return result;
}

}  // namespace tspadj
