#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dsu.hpp"
#include "errors.hpp"
#include "tour.hpp"

namespace tspadj {

enum class EdgeOrigin { FromX, FromY, Unattributed };

// One edge of the union multigraph. Ids are dense in 0..2n-1; parallel edges
// (an edge shared by both tours) get distinct ids.
struct EdgeRef {
    int id;
    int tail;
    int head;
    EdgeOrigin origin;
};

// The edge-identified multigraph x ∪ y: 4-regular when undirected,
// 2-in/2-out when directed, and always connected.
class UnionMultigraph {
public:
    static UnionMultigraph from_tours(const Tour& x, const Tour& y) {
        if (x.size() != y.size() || x.directed() != y.directed())
            throw MismatchedInstances("tours differ in size or directedness");
        if (x == y) throw IdenticalTours("x and y are the same tour");
        UnionMultigraph g;
        g.n_ = x.size();
        g.directed_ = x.directed();
        auto add = [&](const std::pair<int, int>& e, EdgeOrigin origin) {
            int id = static_cast<int>(g.edges_.size());
            g.edges_.push_back({id, e.first, e.second, origin});
        };
        for (const auto& e : x.edge_list()) add(e, EdgeOrigin::FromX);
        for (const auto& e : y.edge_list()) add(e, EdgeOrigin::FromY);
        g.finish();
        return g;
    }

    // Raw 4-regular / 2-in-2-out input, 0-based endpoints, one EdgeRef per
    // listed pair in order.
    static UnionMultigraph from_edges(int n, bool directed,
                                      const std::vector<std::pair<int, int>>& endpoints) {
        UnionMultigraph g;
        g.n_ = n;
        g.directed_ = directed;
        if (n < 3) throw RegularityViolation("vertex count must be at least 3");
        if (static_cast<int>(endpoints.size()) != 2 * n)
            throw RegularityViolation("edge count must be exactly 2n");
        for (const auto& [a, b] : endpoints) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw RegularityViolation("edge endpoint out of range");
            if (a == b) throw RegularityViolation("self-loops are not allowed");
            int id = static_cast<int>(g.edges_.size());
            int tail = a;
            int head = b;
            if (!directed && tail > head) std::swap(tail, head);
            g.edges_.push_back({id, tail, head, EdgeOrigin::Unattributed});
        }
        g.finish();
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return 2 * n_; }
    bool directed() const { return directed_; }
    const std::vector<EdgeRef>& edges() const { return edges_; }
    const EdgeRef& edge(int id) const { return edges_[id]; }

    // Incident edge ids per vertex; always 4 entries (for directed graphs,
    // the 2 out-arcs and 2 in-arcs combined).
    const std::vector<std::vector<int>>& incidence() const { return incidence_; }

private:
    void finish() {
        incidence_.assign(n_, {});
        for (const auto& e : edges_) {
            incidence_[e.tail].push_back(e.id);
            incidence_[e.head].push_back(e.id);
        }
        if (directed_) {
            std::vector<int> in(n_, 0), out(n_, 0);
            for (const auto& e : edges_) {
                ++out[e.tail];
                ++in[e.head];
            }
            for (int v = 0; v < n_; ++v)
                if (in[v] != 2 || out[v] != 2)
                    throw RegularityViolation("every vertex must have indegree 2 and outdegree 2");
        } else {
            for (int v = 0; v < n_; ++v)
                if (incidence_[v].size() != 4)
                    throw RegularityViolation("every vertex must have degree 4");
        }
        DisjointSets dsu(n_);
        for (const auto& e : edges_) dsu.unite(e.tail, e.head);
        if (dsu.components() != 1) throw DisconnectedGraph("the multigraph must be connected");
    }

    int n_ = 0;
    bool directed_ = false;
    std::vector<EdgeRef> edges_;
    std::vector<std::vector<int>> incidence_;
};

inline UnionMultigraph union_multigraph(const Tour& x, const Tour& y) {
    return UnionMultigraph::from_tours(x, y);
}

// A subset of one multigraph's edge ids, as a bitset.
class EdgeSubset {
public:
    EdgeSubset() = default;
    explicit EdgeSubset(int universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    int universe() const { return universe_; }

    bool test(int id) const { return (words_[id >> 6] >> (id & 63)) & 1; }
    void set(int id) { words_[id >> 6] |= std::uint64_t(1) << (id & 63); }
    void reset(int id) { words_[id >> 6] &= ~(std::uint64_t(1) << (id & 63)); }

    void flip(int id) { words_[id >> 6] ^= std::uint64_t(1) << (id & 63); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    EdgeSubset complement() const {
        EdgeSubset out(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        int spare = static_cast<int>(words_.size()) * 64 - universe_;
        if (spare > 0) out.words_.back() &= ~std::uint64_t(0) >> spare;
        return out;
    }

    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(count());
        for (int id = 0; id < universe_; ++id)
            if (test(id)) out.push_back(id);
        return out;
    }

    bool disjoint_with(const EdgeSubset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return false;
        return true;
    }

    bool operator==(const EdgeSubset& other) const = default;

private:
    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

inline EdgeSubset subset_from_ids(int universe, const std::vector<int>& ids) {
    EdgeSubset s(universe);
    for (int id : ids) s.set(id);
    return s;
}

struct ComponentInfo {
    int count;
    std::vector<int> label;  // per vertex, root id of its component
};

// Connected components of the spanning subgraph (V, sub). Isolated vertices
// count; arc orientation is ignored.
inline ComponentInfo components(const EdgeSubset& sub, const UnionMultigraph& g) {
    DisjointSets dsu(g.vertex_count());
    for (const auto& e : g.edges())
        if (sub.test(e.id)) dsu.unite(e.tail, e.head);
    ComponentInfo info;
    info.count = dsu.components();
    info.label.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) info.label[v] = dsu.find(v);
    return info;
}

// Degree condition of a vertex-disjoint cycle cover: degree 2 everywhere
// (undirected, counting parallel copies) or indegree 1 and outdegree 1.
inline bool is_cycle_cover(const EdgeSubset& sub, const UnionMultigraph& g) {
    int n = g.vertex_count();
    if (g.directed()) {
        std::vector<int> in(n, 0), out(n, 0);
        for (const auto& e : g.edges()) {
            if (!sub.test(e.id)) continue;
            ++out[e.tail];
            ++in[e.head];
        }
        for (int v = 0; v < n; ++v)
            if (in[v] != 1 || out[v] != 1) return false;
    } else {
        std::vector<int> deg(n, 0);
        for (const auto& e : g.edges()) {
            if (!sub.test(e.id)) continue;
            ++deg[e.tail];
            ++deg[e.head];
        }
        for (int v = 0; v < n; ++v)
            if (deg[v] != 2) return false;
    }
    return true;
}

inline bool is_hamiltonian(const EdgeSubset& sub, const UnionMultigraph& g) {
    if (sub.count() != g.vertex_count()) return false;
    if (!is_cycle_cover(sub, g)) return false;
    return components(sub, g).count == 1;
}

// Endpoint-level comparison with a tour; parallel copies of a shared edge are
// interchangeable, so origin tags and ids play no role here.
inline bool subset_equals_tour(const EdgeSubset& sub, const UnionMultigraph& g, const Tour& t) {
    if (t.size() != g.vertex_count() || t.directed() != g.directed()) return false;
    if (sub.count() != g.vertex_count()) return false;
    std::map<std::pair<int, int>, int> need;
    for (const auto& e : t.edge_list()) ++need[e];
    for (const auto& e : g.edges()) {
        if (!sub.test(e.id)) continue;
        auto it = need.find({e.tail, e.head});
        if (it == need.end() || it->second == 0) return false;
        --it->second;
    }
    return true;
}

// Reads a Hamiltonian subset back as a canonical Tour. Pre: is_hamiltonian.
inline Tour subset_to_tour(const EdgeSubset& sub, const UnionMultigraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
    for (const auto& e : g.edges()) {
        if (!sub.test(e.id)) continue;
        adj[e.tail].emplace_back(e.head, e.id);
        if (!g.directed()) adj[e.head].emplace_back(e.tail, e.id);
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> used_edge(g.edge_count(), 0);
    int v = 0;
    for (int step = 0; step < n; ++step) {
        order.push_back(v);
        int next = -1;
        for (const auto& [to, id] : adj[v]) {
            if (used_edge[id]) continue;
            used_edge[id] = 1;
            next = to;
            break;
        }
        ensure(next != -1 || step == n - 1, "subset_to_tour: walk stuck before visiting all vertices");
        v = next;
    }
    ensure(static_cast<int>(order.size()) == n, "subset_to_tour: not spanning");
    return Tour::from_internal(std::move(order), g.directed());
}

// The SA walks only over valid cover pairs; this is asserted every iteration.
struct CoverPair {
    EdgeSubset z;
    EdgeSubset w;
};

inline void validate_cover_pair(const CoverPair& pair, const UnionMultigraph& g) {
    ensure(pair.z.universe() == g.edge_count() && pair.w.universe() == g.edge_count(),
           "cover pair: wrong universe");
    ensure(pair.z.disjoint_with(pair.w), "cover pair: z and w overlap");
    ensure(pair.z.count() + pair.w.count() == g.edge_count(),
           "cover pair: z and w do not partition the edges");
    ensure(is_cycle_cover(pair.z, g), "cover pair: z is not a vertex-disjoint cycle cover");
    ensure(is_cycle_cover(pair.w, g), "cover pair: w is not a vertex-disjoint cycle cover");
}

}  // namespace tspadj
