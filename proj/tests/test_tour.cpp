#include <catch2/catch_amalgamated.hpp>

#include "tspadj/rng.hpp"
#include "tspadj/tour.hpp"

using namespace tspadj;

TEST_CASE("permutation input is validated") {
    CHECK_THROWS_AS(tour_from_permutation({1, 2}, false), TooSmall);
    CHECK_THROWS_AS(tour_from_permutation({}, true), TooSmall);
    CHECK_THROWS_AS(tour_from_permutation({1, 2, 2}, false), NotAPermutation);
    CHECK_THROWS_AS(tour_from_permutation({1, 2, 4}, false), NotAPermutation);
    CHECK_THROWS_AS(tour_from_permutation({0, 1, 2}, false), NotAPermutation);
    CHECK_NOTHROW(tour_from_permutation({3, 1, 2}, false));
}

TEST_CASE("canonical form starts at label 1") {
    Tour t = tour_from_permutation({3, 1, 4, 2}, true);
    CHECK(t.labels() == std::vector<int>{1, 4, 2, 3});
}

TEST_CASE("rotations collapse to one representation") {
    Tour a = tour_from_permutation({1, 2, 3, 4, 5}, true);
    Tour b = tour_from_permutation({3, 4, 5, 1, 2}, true);
    CHECK(a == b);
}

TEST_CASE("undirected tours quotient reversal, directed ones keep orientation") {
    Tour fwd_u = tour_from_permutation({1, 2, 3}, false);
    Tour rev_u = tour_from_permutation({1, 3, 2}, false);
    CHECK(fwd_u == rev_u);

    Tour fwd_d = tour_from_permutation({1, 2, 3}, true);
    Tour rev_d = tour_from_permutation({1, 3, 2}, true);
    CHECK_FALSE(fwd_d == rev_d);
    CHECK(fwd_d.labels() == std::vector<int>{1, 2, 3});
    CHECK(rev_d.labels() == std::vector<int>{1, 3, 2});
}

TEST_CASE("edge lists normalize undirected endpoints") {
    Tour t = tour_from_permutation({1, 4, 2, 3}, false);
    auto edges = t.edge_list();
    for (auto [a, b] : edges) CHECK(a < b);
    CHECK(edges.size() == 4);

    Tour d = tour_from_permutation({1, 3, 2}, true);
    std::vector<std::pair<int, int>> want{{0, 2}, {2, 1}, {1, 0}};
    CHECK(d.edge_list() == want);
}

TEST_CASE("canonicalization is stable under re-representation") {
    Rng rng(41);
    for (int round = 0; round < 200; ++round) {
        int n = 4 + rng.index(8);
        bool directed = rng.coin();
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i + 1;
        rng.shuffle(perm);
        Tour t = tour_from_permutation(perm, directed);

        std::vector<int> rotated = perm;
        std::rotate(rotated.begin(), rotated.begin() + rng.index(n), rotated.end());
        CHECK(tour_from_permutation(rotated, directed) == t);

        if (!directed) {
            std::vector<int> reversed(perm.rbegin(), perm.rend());
            CHECK(tour_from_permutation(reversed, directed) == t);
        }

        CHECK(Tour::from_internal(t.order(), directed) == t);
    }
}
