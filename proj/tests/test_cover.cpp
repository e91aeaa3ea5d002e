#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "support/fixtures.hpp"
#include "tspadj/cover.hpp"
#include "tspadj/instances.hpp"
#include "tspadj/tour.hpp"
#include "tspadj/union_graph.hpp"

using namespace tspadj;

TEST_CASE("gadget instance has the advertised shape") {
    UnionMultigraph g = fixtures::six_union_graph();
    MatchInstance inst = build_gadget_instance(g);
    CHECK(inst.kind == ReductionKind::UndirectedGadget);
    CHECK(inst.graph.vertex_count() == 36);
    CHECK(inst.graph.edge_count() == 60);
    CHECK(inst.graph.left_count() == -1);

    int internal = 0;
    for (int owner : inst.port_owner) internal += owner == -1;
    CHECK(internal == 48);  // 8 per block

    for (const auto& e : g.edges()) {
        auto [a, b] = inst.graph.edges()[inst.port_edge[e.id]];
        int block_a = a / 6, block_b = b / 6;
        if (block_a > block_b) std::swap(block_a, block_b);
        CHECK(block_a == std::min(e.tail, e.head));
        CHECK(block_b == std::max(e.tail, e.head));
        CHECK(a % 6 < 4);
        CHECK(b % 6 < 4);
        CHECK(inst.port_owner[inst.port_edge[e.id]] == e.id);
    }

    MatchInstance eight = build_gadget_instance(
        union_multigraph(fixtures::eight_x(), fixtures::eight_y()));
    CHECK(eight.graph.vertex_count() == 48);
    CHECK(eight.graph.edge_count() == 80);
}

TEST_CASE("bipartite instance mirrors the arcs") {
    UnionMultigraph g = fixtures::directed_six_graph();
    MatchInstance inst = build_bipartite_instance(g);
    CHECK(inst.kind == ReductionKind::DirectedBipartite);
    CHECK(inst.graph.vertex_count() == 12);
    CHECK(inst.graph.edge_count() == 12);
    CHECK(inst.graph.left_count() == 6);

    // arc 5->4 sits at id 8 in the listing and becomes edge (4, 9)
    auto [a, b] = inst.graph.edges()[inst.port_edge[8]];
    CHECK(a == 4);
    CHECK(b == 9);

    for (int v = 0; v < 12; ++v) CHECK(inst.graph.adjacency()[v].size() == 2);
    for (const auto& e : g.edges()) {
        auto [tail, head] = inst.graph.edges()[inst.port_edge[e.id]];
        CHECK(tail == e.tail);
        CHECK(head == 6 + e.head);
    }
}

TEST_CASE("build_instance dispatches on direction") {
    CHECK(build_instance(fixtures::six_union_graph()).kind == ReductionKind::UndirectedGadget);
    CHECK(build_instance(fixtures::directed_six_graph()).kind == ReductionKind::DirectedBipartite);
    CHECK_THROWS_AS(build_gadget_instance(fixtures::directed_six_graph()), InternalError);
    CHECK_THROWS_AS(build_bipartite_instance(fixtures::six_union_graph()), InternalError);
}

TEST_CASE("cover extraction reproduces the worked directed example") {
    UnionMultigraph g = fixtures::directed_six_graph();
    MatchInstance inst = build_bipartite_instance(g);
    // arcs 1->5, 2->6, 3->2, 4->1, 5->4, 6->3
    std::vector<int> z_ids{1, 3, 5, 6, 8, 10};
    std::vector<int> forced;
    for (int e : z_ids) forced.push_back(inst.port_edge[e]);
    auto m = perfect_matching_bipartite(inst.graph, forced);
    REQUIRE(m.has_value());

    CoverPair pair = extract_cover(*m, inst, g);
    CHECK(pair.z == subset_from_ids(12, z_ids));
    CHECK(components(pair.z, g).count == 2);
    CHECK(is_hamiltonian(pair.w, g));
    CHECK(subset_to_tour(pair.w, g) == tour_from_permutation({1, 2, 5, 6, 4, 3}, true));
    CHECK(components(pair.z, g).count + components(pair.w, g).count == 3);
}

TEST_CASE("imperfect matchings cannot be extracted") {
    UnionMultigraph g = fixtures::directed_six_graph();
    MatchInstance inst = build_bipartite_instance(g);
    Matching empty;
    empty.mate.assign(12, -1);
    empty.mate_edge.assign(12, -1);
    CHECK_THROWS_AS(extract_cover(empty, inst, g), NotPerfect);
}

TEST_CASE("sanitation keeps the newest of conflicting fixed edges") {
    UnionMultigraph g = fixtures::six_union_graph();
    // ids 0, 1, 7 all touch vertex 2; the oldest is evicted when the third lands
    CHECK(sanitize_fixed(g, {0, 1, 7}) == std::vector<int>{1, 7});
    CHECK(sanitize_fixed(g, {0, 4, 7}) == std::vector<int>{0, 4, 7});
    CHECK(sanitize_fixed(g, {3, 3, 3}) == std::vector<int>{3});
    CHECK(sanitize_fixed(g, {}) == std::vector<int>{});

    UnionMultigraph d = fixtures::directed_six_graph();
    // arcs 1->2 and 1->5 share a tail; arcs 3->2 and 1->2 share a head
    CHECK(sanitize_fixed(d, {0, 1}) == std::vector<int>{1});
    CHECK(sanitize_fixed(d, {0, 5}) == std::vector<int>{5});
    CHECK(sanitize_fixed(d, {0, 8}) == std::vector<int>{0, 8});
}

TEST_CASE("an empty fixed set always completes to a cover") {
    UnionMultigraph u = fixtures::six_union_graph();
    MatchInstance ui = build_instance(u);
    UnionMultigraph d = fixtures::directed_six_graph();
    MatchInstance di = build_instance(d);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CoverResult r = cover_with_fixed(u, ui, {}, seed);
        CHECK(r.fixed_used.empty());
        CHECK(r.cover.z.count() == 6);
        CoverResult s = cover_with_fixed(d, di, {}, seed);
        CHECK(s.fixed_used.empty());
        CHECK(s.cover.z.count() == 6);
    }
}

TEST_CASE("feasible fixed sets survive intact and constrain z") {
    UnionMultigraph g = fixtures::six_union_graph();
    MatchInstance inst = build_instance(g);
    std::vector<int> fixed{0, 4, 7};
    // only three covers contain all of ids 0, 4 and 7
    std::set<std::vector<int>> allowed{
        {0, 2, 3, 4, 7, 10}, {0, 2, 4, 5, 7, 11}, {0, 4, 7, 8, 10, 11}};
    std::set<std::vector<int>> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CoverResult r = cover_with_fixed(g, inst, fixed, seed);
        CHECK(r.fixed_used == fixed);
        for (int e : fixed) CHECK(r.cover.z.test(e));
        CHECK(allowed.count(r.cover.z.ids()) == 1);
        seen.insert(r.cover.z.ids());
    }
    CHECK(seen.size() >= 2);
}

TEST_CASE("infeasible fixed sets shed their oldest entry") {
    // complete digraph on three vertices
    UnionMultigraph d = UnionMultigraph::from_edges(
        3, true, {{0, 1}, {1, 2}, {2, 0}, {0, 2}, {2, 1}, {1, 0}});
    MatchInstance di = build_instance(d);
    // arcs 0->1 and 1->0 lock both vertices, stranding vertex 2
    CoverResult r = cover_with_fixed(d, di, {0, 5}, 11);
    CHECK(r.fixed_used == std::vector<int>{5});
    CHECK(r.cover.z.test(5));
    CHECK_FALSE(r.cover.z.test(0));

    UnionMultigraph u = union_multigraph(tour_from_permutation({1, 2, 3, 4}, false),
                                         tour_from_permutation({1, 3, 2, 4}, false));
    MatchInstance ui = build_instance(u);
    // ids 0, 1, 4 form a triangle on vertices 0, 1, 2, walling off vertex 3
    CoverResult s = cover_with_fixed(u, ui, {0, 1, 4}, 11);
    CHECK(s.fixed_used == std::vector<int>{1, 4});
    CHECK(s.cover.z.test(1));
    CHECK(s.cover.z.test(4));
}

TEST_CASE("a cover's matching warm-starts the matcher back to the same z") {
    Rng rng(0xc0feeu);
    for (bool directed : {false, true})
        for (int round = 0; round < 20; ++round) {
            int n = 6 + static_cast<int>(rng.below(6));
            auto [x, y] = random_tour_pair(n, directed, TourKind::Random, rng);
            UnionMultigraph g = union_multigraph(x, y);
            MatchInstance inst = build_instance(g);
            CoverPair first = cover_with_fixed(g, inst, {}, rng.next()).cover;
            std::vector<int> warm = matching_for_cover(first.z, inst, g);
            CoverPair again = cover_with_fixed(g, inst, {}, rng.next(), warm).cover;
            CHECK(again.z == first.z);
            CHECK(again.w == first.w);
        }
}
