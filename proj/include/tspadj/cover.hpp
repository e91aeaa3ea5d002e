#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matching.hpp"
#include "union_graph.hpp"

namespace tspadj {

enum class ReductionKind { UndirectedGadget, DirectedBipartite };

// A matching instance tied to its source multigraph: port_edge maps each
// multigraph edge id to the matching edge that decides its membership in z,
// port_owner is the partial inverse (-1 for gadget-internal edges).
struct MatchInstance {
    MatchGraph graph;
    ReductionKind kind;
    std::vector<int> port_edge;
    std::vector<int> port_owner;
};

// Each vertex becomes a K4,2 block: 4 port vertices, one per incident edge
// id, plus 2 inner vertices adjacent to all 4 ports. Vertex v occupies
// matching vertices 6v..6v+5 (ports first). One extra edge joins the two
// ports of every multigraph edge.
inline MatchInstance build_gadget_instance(const UnionMultigraph& g) {
    ensure(!g.directed(), "gadget reduction expects an undirected multigraph");
    int n = g.vertex_count();
    MatchInstance inst{MatchGraph(6 * n), ReductionKind::UndirectedGadget, {}, {}};
    for (int v = 0; v < n; ++v)
        for (int inner = 4; inner < 6; ++inner)
            for (int port = 0; port < 4; ++port) {
                int idx = inst.graph.add_edge(6 * v + port, 6 * v + inner);
                inst.port_owner.push_back(-1);
                ensure(idx + 1 == static_cast<int>(inst.port_owner.size()), "edge bookkeeping in step");
            }
    std::vector<int> port_of(static_cast<std::size_t>(n) * 4, -1);  // (v, slot) -> edge id
    auto port_vertex = [&](int v, int edge_id) {
        const auto& inc = g.incidence()[v];
        for (int k = 0; k < 4; ++k)
            if (inc[k] == edge_id && port_of[v * 4 + k] == -1) {
                port_of[v * 4 + k] = edge_id;
                return 6 * v + k;
            }
        throw InternalError("no free port for incident edge");
    };
    inst.port_edge.assign(g.edge_count(), -1);
    for (const auto& e : g.edges()) {
        int a = port_vertex(e.tail, e.id);
        int b = port_vertex(e.head, e.id);
        int idx = inst.graph.add_edge(a, b);
        inst.port_edge[e.id] = idx;
        inst.port_owner.push_back(e.id);
    }
    ensure(inst.graph.vertex_count() == 6 * n && inst.graph.edge_count() == 10 * n,
           "gadget instance has 6n vertices and 10n edges");
    return inst;
}

// Directed reduction: v splits into v_L = v and v_R = n + v; arc (u,v) with
// id e becomes the matching edge (u_L, v_R).
inline MatchInstance build_bipartite_instance(const UnionMultigraph& g) {
    ensure(g.directed(), "bipartite reduction expects a directed multigraph");
    int n = g.vertex_count();
    MatchInstance inst{MatchGraph(2 * n, n), ReductionKind::DirectedBipartite, {}, {}};
    inst.port_edge.assign(g.edge_count(), -1);
    for (const auto& e : g.edges()) {
        int idx = inst.graph.add_edge(e.tail, n + e.head);
        inst.port_edge[e.id] = idx;
        inst.port_owner.push_back(e.id);
    }
    ensure(inst.graph.vertex_count() == 2 * n && inst.graph.edge_count() == 2 * n,
           "bipartite instance has 2n vertices and 2n edges");
    return inst;
}

inline MatchInstance build_instance(const UnionMultigraph& g) {
    return g.directed() ? build_bipartite_instance(g) : build_gadget_instance(g);
}

// z = multigraph edges whose deciding matching edge was used; w = the rest.
inline CoverPair extract_cover(const Matching& m, const MatchInstance& inst, const UnionMultigraph& g) {
    if (!m.perfect()) throw NotPerfect("cover extraction needs a perfect matching");
    std::vector<char> in_match(inst.graph.edge_count(), 0);
    for (int v = 0; v < inst.graph.vertex_count(); ++v)
        if (m.mate[v] > v) in_match[m.mate_edge[v]] = 1;
    CoverPair pair{EdgeSubset(g.edge_count()), EdgeSubset(g.edge_count())};
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_match[inst.port_edge[e]])
            pair.z.set(e);
        else
            pair.w.set(e);
    }
    validate_cover_pair(pair, g);
    return pair;
}

// Removes ids that would oversaturate a vertex (two incident fixed edges per
// vertex undirected, one out- and one in-arc directed): the newest entry
// wins, the oldest conflicting one is evicted. Duplicate ids keep their
// newest occurrence.
inline std::vector<int> sanitize_fixed(const UnionMultigraph& g, const std::vector<int>& fixed) {
    std::vector<int> kept;
    auto drop = [&](std::size_t i) { kept.erase(kept.begin() + static_cast<long>(i)); };
    for (int e : fixed) {
        ensure(e >= 0 && e < g.edge_count(), "fixed id is an edge of the multigraph");
        for (std::size_t i = 0; i < kept.size();)
            if (kept[i] == e)
                drop(i);
            else
                ++i;
        const auto& cur = g.edge(e);
        if (g.directed()) {
            for (std::size_t i = 0; i < kept.size();) {
                const auto& old = g.edge(kept[i]);
                if (old.tail == cur.tail || old.head == cur.head)
                    drop(i);
                else
                    ++i;
            }
        } else {
            for (int v : {cur.tail, cur.head}) {
                auto load = [&] {
                    int deg = 1;  // the incoming edge itself
                    for (int id : kept) {
                        const auto& old = g.edge(id);
                        if (old.tail == v || old.head == v) ++deg;
                    }
                    return deg;
                };
                while (load() > 2)
                    for (std::size_t i = 0; i < kept.size(); ++i) {
                        const auto& old = g.edge(kept[i]);
                        if (old.tail == v || old.head == v) {
                            drop(i);
                            break;
                        }
                    }
            }
        }
        kept.push_back(e);
    }
    return kept;
}

struct CoverResult {
    CoverPair cover;
    std::vector<int> fixed_used;
};

// Matching edges realizing a known cover: the deciding edge of every z
// member plus, on the gadget side, an internal pairing of each block's two
// unused ports with its inner vertices. Feeding these to the matcher as a
// warm start keeps the completed cover close to this one.
inline std::vector<int> matching_for_cover(const EdgeSubset& z, const MatchInstance& inst,
                                           const UnionMultigraph& g) {
    std::vector<int> warm;
    for (int e = 0; e < g.edge_count(); ++e)
        if (z.test(e)) warm.push_back(inst.port_edge[e]);
    if (inst.kind == ReductionKind::DirectedBipartite) return warm;
    int n = g.vertex_count();
    std::vector<char> used(static_cast<std::size_t>(n) * 4, 0);
    for (int e : warm)
        for (int port : {inst.graph.edges()[e].first, inst.graph.edges()[e].second})
            used[(port / 6) * 4 + port % 6] = 1;
    for (int v = 0; v < n; ++v) {
        int inner = 4;
        for (int k = 0; k < 4; ++k)
            if (!used[v * 4 + k]) {
                warm.push_back(8 * v + (inner - 4) * 4 + k);
                ++inner;
            }
        ensure(inner == 6, "each block leaves exactly two ports internal");
    }
    return warm;
}

// Forces the surviving fixed edges into z and completes them to a full cover
// via the matcher, preferring `warm` matching edges where consistent. On
// infeasibility the oldest fixed edge is dropped and the match retried; the
// empty set always succeeds for a valid multigraph.
inline CoverResult cover_with_fixed(const UnionMultigraph& g, const MatchInstance& inst,
                                    const std::vector<int>& fixed, std::uint64_t seed,
                                    const std::vector<int>& warm = {}) {
    std::vector<int> surviving = sanitize_fixed(g, fixed);
    while (true) {
        std::vector<int> forced;
        forced.reserve(surviving.size());
        for (int e : surviving) forced.push_back(inst.port_edge[e]);
        std::optional<Matching> m =
            inst.kind == ReductionKind::DirectedBipartite
                ? perfect_matching_bipartite(inst.graph, forced, seed, warm)
                : perfect_matching_general(inst.graph, forced, seed, warm);
        if (m) {
            CoverPair pair = extract_cover(*m, inst, g);
            for (int e : surviving) ensure(pair.z.test(e), "fixed edge survived into z");
            return {std::move(pair), std::move(surviving)};
        }
        ensure(!surviving.empty(), "empty fixed set must be feasible");
        surviving.erase(surviving.begin());
    }
}

}  // namespace tspadj
