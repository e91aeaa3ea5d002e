#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "errors.hpp"
#include "fixed_edge_queue.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "tour.hpp"
#include "union_graph.hpp"

namespace tspadj {

enum class Mode { Match, Random };

struct AnnealConfig {
    double init_t = 0;     // nonpositive: use the vertex count
    int iter_n = 8000;
    int fix_edges_n = -1;  // negative: use floor(n / 3)
    Mode mode = Mode::Match;
    int ex_edges_n = 3;    // Random mode only
    int ans_n = 5;         // Random mode multistart count
    std::uint64_t seed = 0;
};

enum class Outcome { NotAdjacent, ProbablyAdjacent };

struct Verdict {
    Outcome outcome = Outcome::ProbablyAdjacent;
    std::optional<std::pair<Tour, Tour>> witness;  // z, w on NotAdjacent
    int iterations_used = 0;
    double elapsed_ms = 0;
};

inline int energy(const CoverPair& pair, const UnionMultigraph& g) {
    int e = components(pair.z, g).count + components(pair.w, g).count;
    ensure(e >= 2, "energy has floor 2");
    return e;
}

inline double cooling(double init_t, int k) {
    ensure(k >= 1, "cooling step counts from 1");
    return init_t / k;
}

inline bool accept(int curr_e, int cand_e, double t, Rng& rng) {
    if (cand_e < curr_e) return true;
    return rng.uniform() < std::exp(-(cand_e - curr_e) / t);
}

namespace detail {

struct AnnealState {
    CoverPair pair;
    int energy;
};

// Picks the edge to force next: uniformly among w-edges whose endpoints lie
// in different components of z. No crossing edge means both sides are
// already tours, so the pair collides with an input tour; forcing a w-edge
// that z does not hold a parallel copy of steers the walk off it, whereas a
// parallel copy would only swap ids and leave the collision in place.
inline int pick_w_edge(const AnnealState& s, const UnionMultigraph& g, Rng& rng) {
    ComponentInfo comp = components(s.pair.z, g);
    std::vector<int> crossing;
    std::vector<int> all;
    for (const auto& e : g.edges()) {
        if (!s.pair.w.test(e.id)) continue;
        all.push_back(e.id);
        if (comp.label[e.tail] != comp.label[e.head]) crossing.push_back(e.id);
    }
    ensure(!all.empty(), "w always holds n edges");
    if (!crossing.empty()) return crossing[rng.index(crossing.size())];
    auto ends = [&](const EdgeRef& e) {
        return g.directed() || e.tail < e.head ? std::pair{e.tail, e.head}
                                               : std::pair{e.head, e.tail};
    };
    std::set<std::pair<int, int>> in_z;
    for (const auto& e : g.edges())
        if (s.pair.z.test(e.id)) in_z.insert(ends(e));
    std::vector<int> fresh;
    for (int id : all)
        if (!in_z.count(ends(g.edge(id)))) fresh.push_back(id);
    if (!fresh.empty()) return fresh[rng.index(fresh.size())];
    return all[rng.index(all.size())];
}

// The queue only ever pins edges of the current z: entries left over from a
// rejected candidate or from the pre-swap side are dropped before the push,
// so the forced set stays a stabilizer of the state plus one new edge. The
// matcher warm-starts from the current z, making each candidate a local
// repair around that edge; the per-call seed randomizes only the repair.
inline CoverPair neighbor_match(AnnealState& s, const UnionMultigraph& g, const MatchInstance& inst,
                                FixedEdgeQueue& queue, Rng& rng) {
    ComponentInfo cz = components(s.pair.z, g);
    if (cz.count == 1 && components(s.pair.w, g).count > 1) {
        std::swap(s.pair.z, s.pair.w);
        s.energy = energy(s.pair, g);
    }
    queue.retain(s.pair.z);
    queue.push(pick_w_edge(s, g, rng));
    CoverResult result = cover_with_fixed(g, inst, queue.contents(), rng.next(),
                                          matching_for_cover(s.pair.z, inst, g));
    queue.assign(std::move(result.fixed_used));
    return std::move(result.cover);
}

// Uniform k-subset: partial Fisher-Yates, leaving the choice in pool[0..k).
inline void sample_prefix(std::vector<int>& pool, int k, Rng& rng) {
    int n = static_cast<int>(pool.size());
    for (int i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)))]);
}

// Swapping edge sets keeps both sides covers exactly when the moved
// endpoint multisets agree (per direction for arcs): every vertex degree
// then stays at its cover value.
inline bool balanced_swap(const UnionMultigraph& g, const std::vector<int>& from_z,
                          const std::vector<int>& from_w, int k) {
    std::vector<int> za, zb, wa, wb;
    for (int i = 0; i < k; ++i) {
        const auto& ez = g.edge(from_z[i]);
        const auto& ew = g.edge(from_w[i]);
        za.push_back(ez.tail);
        zb.push_back(ez.head);
        wa.push_back(ew.tail);
        wb.push_back(ew.head);
    }
    if (!g.directed()) {
        za.insert(za.end(), zb.begin(), zb.end());
        wa.insert(wa.end(), wb.begin(), wb.end());
        std::sort(za.begin(), za.end());
        std::sort(wa.begin(), wa.end());
        return za == wa;
    }
    std::sort(za.begin(), za.end());
    std::sort(wa.begin(), wa.end());
    std::sort(zb.begin(), zb.end());
    std::sort(wb.begin(), wb.end());
    return za == wa && zb == wb;
}

// One uniform draw per call; a draw whose endpoint multisets do not balance
// returns the pair unchanged.
inline CoverPair neighbor_random(const AnnealState& s, const UnionMultigraph& g, int ex_edges_n,
                                 Rng& rng) {
    if (ex_edges_n == 0) return s.pair;
    std::vector<int> z_ids = s.pair.z.ids();
    std::vector<int> w_ids = s.pair.w.ids();
    if (ex_edges_n > static_cast<int>(z_ids.size()) ||
        ex_edges_n > static_cast<int>(w_ids.size()))
        return s.pair;
    sample_prefix(z_ids, ex_edges_n, rng);
    sample_prefix(w_ids, ex_edges_n, rng);
    if (!balanced_swap(g, z_ids, w_ids, ex_edges_n)) return s.pair;
    CoverPair cand = s.pair;
    for (int i = 0; i < ex_edges_n; ++i) {
        cand.z.reset(z_ids[i]);
        cand.w.set(z_ids[i]);
        cand.w.reset(w_ids[i]);
        cand.z.set(w_ids[i]);
    }
    return cand;
}

struct SuccessCheck {
    const Tour* x;  // null in raw-graph mode
    const Tour* y;

    bool operator()(const AnnealState& s, const UnionMultigraph& g) const {
        if (s.energy != 2) return false;
        if (!x) return true;
        for (const EdgeSubset* side : {&s.pair.z, &s.pair.w})
            if (subset_equals_tour(*side, g, *x) || subset_equals_tour(*side, g, *y)) return false;
        return true;
    }
};

inline Verdict anneal_impl(const UnionMultigraph& g, const Tour* x, const Tour* y,
                           const AnnealConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    ensure(cfg.iter_n >= 1, "iterN is at least 1");
    int n = g.vertex_count();
    double init_t = cfg.init_t > 0 ? cfg.init_t : n;
    int fix_n = cfg.fix_edges_n >= 0 ? cfg.fix_edges_n : n / 3;
    ensure(fix_n <= g.edge_count(), "fixEdgesN bounded by the edge count");

    MatchInstance inst = build_instance(g);
    Rng rng(cfg.seed);
    FixedEdgeQueue queue(g, fix_n);
    SuccessCheck succeeded{x, y};

    AnnealState state{cover_with_fixed(g, inst, {}, rng.next()).cover, 0};
    state.energy = energy(state.pair, g);

    auto finish = [&](Outcome outcome, int iterations) {
        Verdict v{outcome, std::nullopt, iterations, 0};
        if (outcome == Outcome::NotAdjacent) {
            Tour z = subset_to_tour(state.pair.z, g);
            Tour w = subset_to_tour(state.pair.w, g);
            if (x)
                ensure(validate_witness(*x, *y, state.pair.z, state.pair.w, g),
                       "emitted witness validates");
            else
                ensure(validate_witness(state.pair.z, state.pair.w, g),
                       "emitted witness validates");
            v.witness = std::make_pair(std::move(z), std::move(w));
        }
        v.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        return v;
    };

    double t = init_t;
    for (int k = 1; k <= cfg.iter_n; ++k) {
        if (succeeded(state, g)) return finish(Outcome::NotAdjacent, k - 1);
        CoverPair cand = cfg.mode == Mode::Match
                             ? neighbor_match(state, g, inst, queue, rng)
                             : neighbor_random(state, g, cfg.ex_edges_n, rng);
        validate_cover_pair(cand, g);
        int cand_e = energy(cand, g);
        if (accept(state.energy, cand_e, t, rng)) {
            state.pair = std::move(cand);
            state.energy = cand_e;
        }
        t = cooling(init_t, k);
    }
    return finish(Outcome::ProbablyAdjacent, cfg.iter_n);
}

}  // namespace detail

inline Verdict anneal(const Tour& x, const Tour& y, const AnnealConfig& cfg) {
    UnionMultigraph g = union_multigraph(x, y);
    return detail::anneal_impl(g, &x, &y, cfg);
}

inline Verdict anneal(const UnionMultigraph& g, const AnnealConfig& cfg) {
    return detail::anneal_impl(g, nullptr, nullptr, cfg);
}

namespace detail {

template <typename RunOnce>
Verdict multistart_impl(const AnnealConfig& cfg, RunOnce run_once) {
    Verdict total{Outcome::ProbablyAdjacent, std::nullopt, 0, 0};
    for (int i = 0; i < cfg.ans_n; ++i) {
        AnnealConfig sub = cfg;
        sub.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(i));
        Verdict v = run_once(sub);
        total.iterations_used += v.iterations_used;
        total.elapsed_ms += v.elapsed_ms;
        if (v.outcome == Outcome::NotAdjacent) {
            total.outcome = Outcome::NotAdjacent;
            total.witness = std::move(v.witness);
            return total;
        }
    }
    return total;
}

}  // namespace detail

inline Verdict multistart(const Tour& x, const Tour& y, const AnnealConfig& cfg) {
    ensure(cfg.mode == Mode::Random, "multistart is the Random-mode driver");
    return detail::multistart_impl(cfg, [&](const AnnealConfig& sub) { return anneal(x, y, sub); });
}

inline Verdict multistart(const UnionMultigraph& g, const AnnealConfig& cfg) {
    ensure(cfg.mode == Mode::Random, "multistart is the Random-mode driver");
    return detail::multistart_impl(cfg, [&](const AnnealConfig& sub) { return anneal(g, sub); });
}

inline Verdict solve(const Tour& x, const Tour& y, const AnnealConfig& cfg) {
    return cfg.mode == Mode::Random ? multistart(x, y, cfg) : anneal(x, y, cfg);
}

inline Verdict solve(const UnionMultigraph& g, const AnnealConfig& cfg) {
    return cfg.mode == Mode::Random ? multistart(g, cfg) : anneal(g, cfg);
}

}  // namespace tspadj
