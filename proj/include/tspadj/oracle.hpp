#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dsu.hpp"
#include "errors.hpp"
#include "tour.hpp"
#include "union_graph.hpp"

namespace tspadj {

// A witness must split the union's edge ids into two Hamiltonian halves,
// each different from both input tours at the endpoint level.
inline bool validate_witness(const Tour& x, const Tour& y, const EdgeSubset& z,
                             const EdgeSubset& w, const UnionMultigraph& g) {
    if (z.universe() != g.edge_count() || w.universe() != g.edge_count()) return false;
    if (!z.disjoint_with(w)) return false;
    if (z.count() + w.count() != g.edge_count()) return false;
    if (!is_hamiltonian(z, g) || !is_hamiltonian(w, g)) return false;
    for (const EdgeSubset* side : {&z, &w})
        if (subset_equals_tour(*side, g, x) || subset_equals_tour(*side, g, y)) return false;
    return true;
}

// Raw-graph variant: any complementary Hamiltonian pair counts.
inline bool validate_witness(const EdgeSubset& z, const EdgeSubset& w, const UnionMultigraph& g) {
    if (z.universe() != g.edge_count() || w.universe() != g.edge_count()) return false;
    if (!z.disjoint_with(w)) return false;
    if (z.count() + w.count() != g.edge_count()) return false;
    return is_hamiltonian(z, g) && is_hamiltonian(w, g);
}

namespace detail {

// Greedy id assignment: parallel copies are interchangeable, so any
// endpoint-level realization of the tour over unused ids will do.
inline std::optional<EdgeSubset> realize_as_subset(const Tour& t, const UnionMultigraph& g,
                                                   std::vector<char>& used) {
    if (t.size() != g.vertex_count() || t.directed() != g.directed()) return std::nullopt;
    std::map<std::pair<int, int>, std::vector<int>> pool;
    for (const auto& e : g.edges()) pool[{e.tail, e.head}].push_back(e.id);
    EdgeSubset sub(g.edge_count());
    for (const auto& want : t.edge_list()) {
        auto it = pool.find(want);
        if (it == pool.end()) return std::nullopt;
        int chosen = -1;
        for (int id : it->second)
            if (!used[id]) {
                chosen = id;
                break;
            }
        if (chosen == -1) return std::nullopt;
        used[chosen] = 1;
        sub.set(chosen);
    }
    return sub;
}

}  // namespace detail

// Tour-level wrapper: lifts z and w onto disjoint id sets first.
inline bool validate_witness(const Tour& x, const Tour& y, const Tour& z, const Tour& w,
                             const UnionMultigraph& g) {
    std::vector<char> used(g.edge_count(), 0);
    auto zs = detail::realize_as_subset(z, g, used);
    if (!zs) return false;
    auto ws = detail::realize_as_subset(w, g, used);
    if (!ws) return false;
    return validate_witness(x, y, *zs, *ws, g);
}

namespace detail {

// Union-find with rollback for the backtracking search; no path compression
// so undo is a stack pop.
class RewindableSets {
public:
    explicit RewindableSets(int n) : parent_(n), size_(n, 1) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    int find(int v) const {
        while (parent_[v] != v) v = parent_[v];
        return v;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        trail_.push_back(b);
        return true;
    }

    void rewind(std::size_t mark) {
        while (trail_.size() > mark) {
            int b = trail_.back();
            trail_.pop_back();
            size_[parent_[b]] -= size_[b];
            parent_[b] = b;
        }
    }

    std::size_t mark() const { return trail_.size(); }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> trail_;
};

struct ExhaustiveSearch {
    const UnionMultigraph& g;
    const Tour& x;
    const Tour& y;
    int n;
    std::vector<char> in_z;
    std::vector<int> deg_z, deg_w;      // undirected degrees
    std::vector<int> out_z, in_zc, out_w, in_wc;  // directed degrees
    RewindableSets comp_z, comp_w;
    int count_z = 0;

    ExhaustiveSearch(const UnionMultigraph& graph, const Tour& tx, const Tour& ty)
        : g(graph), x(tx), y(ty), n(graph.vertex_count()),
          in_z(graph.edge_count(), 0),
          deg_z(n, 0), deg_w(n, 0), out_z(n, 0), in_zc(n, 0), out_w(n, 0), in_wc(n, 0),
          comp_z(n), comp_w(n) {}

    bool fits(bool to_z, const EdgeRef& e) const {
        if (g.directed()) {
            if (to_z) return out_z[e.tail] < 1 && in_zc[e.head] < 1;
            return out_w[e.tail] < 1 && in_wc[e.head] < 1;
        }
        if (to_z) return deg_z[e.tail] < 2 && deg_z[e.head] < 2;
        return deg_w[e.tail] < 2 && deg_w[e.head] < 2;
    }

    void apply(bool to_z, const EdgeRef& e, int delta) {
        if (g.directed()) {
            if (to_z) {
                out_z[e.tail] += delta;
                in_zc[e.head] += delta;
            } else {
                out_w[e.tail] += delta;
                in_wc[e.head] += delta;
            }
        } else {
            auto& deg = to_z ? deg_z : deg_w;
            deg[e.tail] += delta;
            deg[e.head] += delta;
        }
    }

    std::optional<CoverPair> run() {
        return place(0);
    }

    std::optional<CoverPair> place(int id) {
        if (id == g.edge_count()) return finish();
        const EdgeRef& e = g.edge(id);
        // Edge 0 goes to z without loss of generality (z/w symmetry).
        for (bool to_z : {true, false}) {
            if (id == 0 && !to_z) continue;
            if (to_z && count_z == n) continue;
            if (!to_z && id - count_z == n) continue;
            if (!fits(to_z, e)) continue;
            RewindableSets& comp = to_z ? comp_z : comp_w;
            std::size_t mark = comp.mark();
            bool joined = comp.unite(e.tail, e.head);
            int side_edges = to_z ? count_z + 1 : id - count_z + 1;
            // Closing a cycle early (before the side holds all n edges)
            // creates a short component; then that side cannot be Hamiltonian.
            if (!joined && side_edges != n) {
                comp.rewind(mark);
                continue;
            }
            apply(to_z, e, +1);
            in_z[id] = to_z ? 1 : 0;
            if (to_z) ++count_z;
            auto found = place(id + 1);
            if (found) return found;
            if (to_z) --count_z;
            apply(to_z, e, -1);
            comp.rewind(mark);
        }
        return std::nullopt;
    }

    std::optional<CoverPair> finish() {
        CoverPair pair{EdgeSubset(g.edge_count()), EdgeSubset(g.edge_count())};
        for (int id = 0; id < g.edge_count(); ++id) {
            if (in_z[id])
                pair.z.set(id);
            else
                pair.w.set(id);
        }
        if (!is_hamiltonian(pair.z, g) || !is_hamiltonian(pair.w, g)) return std::nullopt;
        if (!validate_witness(x, y, pair.z, pair.w, g)) return std::nullopt;
        return pair;
    }
};

// Existence-only search, directed case. Splitting the out-arcs of v between
// z and w couples, through the in-degree-one constraint at each u, the
// choices at the two predecessors of u: they must take the same side. The
// vertices therefore fall into groups that switch sides together, and the
// search branches once per group with cycle pruning on both sides.
struct DirectedSplitSearch {
    int n;
    std::vector<int> xnext, ynext;
    std::vector<std::vector<int>> groups;
    RewindableSets comp_z, comp_w;
    int placed_z = 0, placed_w = 0;
    int match_x = 0, match_y = 0;  // assigned vertices whose z-arc copies x / y

    DirectedSplitSearch(const Tour& x, const Tour& y)
        : n(x.size()), xnext(n), ynext(n), comp_z(n), comp_w(n) {
        std::vector<int> xprev(n), yprev(n);
        const auto& xo = x.order();
        const auto& yo = y.order();
        for (int i = 0; i < n; ++i) {
            xnext[xo[i]] = xo[(i + 1) % n];
            xprev[xo[(i + 1) % n]] = xo[i];
            ynext[yo[i]] = yo[(i + 1) % n];
            yprev[yo[(i + 1) % n]] = yo[i];
        }
        DisjointSets sides(n);
        for (int u = 0; u < n; ++u) sides.unite(xprev[u], yprev[u]);
        std::vector<std::vector<int>> by_root(n);
        for (int v = 0; v < n; ++v) by_root[sides.find(v)].push_back(v);
        for (auto& members : by_root)
            if (!members.empty()) groups.push_back(std::move(members));
        order_by_adjacency();
    }

    // Visits the largest group first, then always the group with the most
    // arcs into the region assigned so far, so cycle pruning engages early.
    void order_by_adjacency() {
        int count = static_cast<int>(groups.size());
        if (count <= 2) return;
        std::vector<int> gid(n);
        for (int g = 0; g < count; ++g)
            for (int v : groups[g]) gid[v] = g;
        std::vector<std::vector<int>> adj(count);
        for (int v = 0; v < n; ++v)
            for (int to : {xnext[v], ynext[v]})
                if (gid[v] != gid[to]) {
                    adj[gid[v]].push_back(gid[to]);
                    adj[gid[to]].push_back(gid[v]);
                }
        std::vector<int> score(count, 0);
        std::vector<char> taken(count, 0);
        std::vector<std::vector<int>> ordered;
        ordered.reserve(count);
        int first = 0;
        for (int g = 1; g < count; ++g)
            if (groups[g].size() > groups[first].size()) first = g;
        for (int step = 0; step < count; ++step) {
            int pick = step == 0 ? first : -1;
            if (pick < 0)
                for (int g = 0; g < count; ++g) {
                    if (taken[g]) continue;
                    if (pick < 0 || score[g] > score[pick] ||
                        (score[g] == score[pick] && groups[g].size() > groups[pick].size()))
                        pick = g;
                }
            taken[pick] = 1;
            for (int h : adj[pick])
                if (!taken[h]) ++score[h];
            ordered.push_back(std::move(groups[pick]));
        }
        groups = std::move(ordered);
    }

    bool add_arc(RewindableSets& comp, int tail, int head, int& placed) {
        if (!comp.unite(tail, head) && placed + 1 != n) return false;
        ++placed;
        return true;
    }

    bool assign_group(const std::vector<int>& group, bool take_x) {
        for (int v : group) {
            int zn = take_x ? xnext[v] : ynext[v];
            int wn = take_x ? ynext[v] : xnext[v];
            if (!add_arc(comp_z, v, zn, placed_z)) return false;
            if (!add_arc(comp_w, v, wn, placed_w)) return false;
            if (zn == xnext[v]) ++match_x;
            if (zn == ynext[v]) ++match_y;
        }
        return true;
    }

    bool search(std::size_t gi = 0) {
        if (gi == groups.size()) return match_x < n && match_y < n;
        for (bool take_x : {true, false}) {
            // The first group goes to z's x-side without loss of generality
            // (z/w swap symmetry).
            if (gi == 0 && !take_x) break;
            std::size_t mz = comp_z.mark(), mw = comp_w.mark();
            int pz = placed_z, pw = placed_w, mx = match_x, my = match_y;
            if (assign_group(groups[gi], take_x) && search(gi + 1)) return true;
            comp_z.rewind(mz);
            comp_w.rewind(mw);
            placed_z = pz;
            placed_w = pw;
            match_x = mx;
            match_y = my;
        }
        return false;
    }
};

// Existence-only search, undirected case. Edges present in both tours pin
// one copy to each side, so only the residual edges are branched on, with
// per-vertex side quotas, unit propagation, and cycle pruning on both sides.
struct UndirectedSplitSearch {
    struct REdge {
        int u, v;
        bool from_x;
        int state;  // 0 undecided, 1 in z, 2 in w
    };

    int n;
    std::vector<REdge> edges;
    std::vector<std::vector<int>> at;
    std::vector<int> quota, cnt_z, cnt_w;
    RewindableSets comp_z, comp_w;
    int shared = 0;
    int placed_z = 0, placed_w = 0;
    int z_from_x = 0, z_from_y = 0;
    bool blocked = false;  // shared edges close a cycle by themselves

    UndirectedSplitSearch(const Tour& x, const Tour& y)
        : n(x.size()), at(n), quota(n, 2), cnt_z(n, 0), cnt_w(n, 0), comp_z(n), comp_w(n) {
        std::map<std::pair<int, int>, int> left;
        for (const auto& e : x.edge_list()) ++left[e];
        for (const auto& e : y.edge_list()) {
            auto it = left.find(e);
            if (it != left.end() && it->second > 0) {
                --it->second;
                ++shared;
                --quota[e.first];
                --quota[e.second];
                if (!comp_z.unite(e.first, e.second)) blocked = true;
                comp_w.unite(e.first, e.second);
            } else {
                edges.push_back({e.first, e.second, false, 0});
            }
        }
        for (const auto& [e, count] : left)
            if (count > 0) edges.push_back({e.first, e.second, true, 0});
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            at[edges[i].u].push_back(i);
            at[edges[i].v].push_back(i);
        }
    }

    bool assign(int ei, int side, std::vector<int>& trail) {
        REdge& e = edges[ei];
        if (e.state != 0) return e.state == side;
        auto& cnt = side == 1 ? cnt_z : cnt_w;
        if (cnt[e.u] >= quota[e.u] || cnt[e.v] >= quota[e.v]) return false;
        auto& comp = side == 1 ? comp_z : comp_w;
        int& placed = side == 1 ? placed_z : placed_w;
        if (!comp.unite(e.u, e.v) && shared + placed + 1 != n) return false;
        e.state = side;
        trail.push_back(ei);
        ++cnt[e.u];
        ++cnt[e.v];
        ++placed;
        if (side == 1) ++(e.from_x ? z_from_x : z_from_y);
        return true;
    }

    bool propagate(std::vector<int>& work, std::vector<int>& trail) {
        while (!work.empty()) {
            int v = work.back();
            work.pop_back();
            bool z_full = cnt_z[v] == quota[v];
            bool w_full = cnt_w[v] == quota[v];
            if (!z_full && !w_full) continue;
            for (int ei : at[v]) {
                if (edges[ei].state != 0) continue;
                if (z_full && w_full) return false;
                if (!assign(ei, z_full ? 2 : 1, trail)) return false;
                work.push_back(edges[ei].u == v ? edges[ei].v : edges[ei].u);
            }
        }
        return true;
    }

    // Most-constrained residual edge: fewest undecided edges at an endpoint.
    int pick() const {
        int best = -1, best_slack = 1 << 30;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            const REdge& e = edges[i];
            if (e.state != 0) continue;
            int su = 2 * quota[e.u] - cnt_z[e.u] - cnt_w[e.u];
            int sv = 2 * quota[e.v] - cnt_z[e.v] - cnt_w[e.v];
            if (std::min(su, sv) < best_slack) {
                best_slack = std::min(su, sv);
                best = i;
            }
        }
        return best;
    }

    bool dfs(bool root) {
        int ei = pick();
        if (ei < 0) return z_from_x > 0 && z_from_y > 0;
        for (int side : {1, 2}) {
            // The first branched edge goes to z without loss of generality.
            if (root && side == 2) break;
            std::size_t mz = comp_z.mark(), mw = comp_w.mark();
            int pz = placed_z, pw = placed_w, zx = z_from_x, zy = z_from_y;
            std::vector<int> trail;
            std::vector<int> work{edges[ei].u, edges[ei].v};
            bool ok = assign(ei, side, trail) && propagate(work, trail);
            if (ok && dfs(false)) return true;
            for (int t : trail) {
                REdge& e = edges[t];
                auto& cnt = e.state == 1 ? cnt_z : cnt_w;
                --cnt[e.u];
                --cnt[e.v];
                e.state = 0;
            }
            comp_z.rewind(mz);
            comp_w.rewind(mw);
            placed_z = pz;
            placed_w = pw;
            z_from_x = zx;
            z_from_y = zy;
        }
        return false;
    }

    bool search() { return !blocked && dfs(true); }
};

}  // namespace detail

inline constexpr int kExhaustiveBound = 12;

// Exact search for a complementary Hamiltonian pair, or std::nullopt when
// none exists. Exponential, so guarded by a vertex bound.
inline std::optional<std::pair<Tour, Tour>> find_complementary_exhaustive(
    const Tour& x, const Tour& y, int bound = kExhaustiveBound) {
    if (x.size() > bound) throw BoundExceeded("instance too large for the exhaustive search");
    UnionMultigraph g = union_multigraph(x, y);
    detail::ExhaustiveSearch search(g, x, y);
    auto pair = search.run();
    if (!pair) return std::nullopt;
    Tour z = subset_to_tour(pair->z, g);
    Tour w = subset_to_tour(pair->w, g);
    ensure(validate_witness(x, y, z, w, g), "exhaustive witness validates");
    return std::make_pair(z, w);
}

// Decides whether a complementary Hamiltonian pair exists, without
// materializing a witness. Same answer as the exhaustive search, but the
// structure-aware branching stays fast well past its size bound.
inline bool complementary_split_exists(const Tour& x, const Tour& y) {
    if (x.size() != y.size() || x.directed() != y.directed())
        throw MismatchedInstances("tours differ in size or directedness");
    if (x == y) throw IdenticalTours("x and y are the same tour");
    if (x.directed()) return detail::DirectedSplitSearch(x, y).search();
    return detail::UndirectedSplitSearch(x, y).search();
}

}  // namespace tspadj
