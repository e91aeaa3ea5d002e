#pragma once

#include <utility>
#include <vector>

#include "tspadj/instances.hpp"
#include "tspadj/tour.hpp"
#include "tspadj/union_graph.hpp"

namespace fixtures {

// 8-vertex undirected pair with two shared edges ({1,2} and {5,8}) and a
// known complementary witness pair.
inline tspadj::Tour eight_x() { return tspadj::tour_from_permutation({1, 2, 4, 7, 6, 8, 5, 3}, false); }
inline tspadj::Tour eight_y() { return tspadj::tour_from_permutation({1, 2, 3, 4, 6, 7, 8, 5}, false); }
inline tspadj::Tour eight_z() { return tspadj::tour_from_permutation({1, 2, 4, 6, 7, 8, 5, 3}, false); }
inline tspadj::Tour eight_w() { return tspadj::tour_from_permutation({1, 2, 3, 4, 7, 6, 8, 5}, false); }

// 6-vertex undirected pair whose union supports a complementary witness.
inline tspadj::Tour six_x() { return tspadj::tour_from_permutation({1, 4, 5, 3, 2, 6}, false); }
inline tspadj::Tour six_y() { return tspadj::tour_from_permutation({1, 2, 6, 4, 3, 5}, false); }

// The same 6-vertex union written as an explicit edge list: ids 0..5 trace
// the cycle 1-2-6-1 3-4-5-3 structure of one tour, ids 6..11 the other.
inline std::vector<std::pair<int, int>> six_union_edges() {
    return {{0, 1}, {1, 5}, {5, 0}, {2, 3}, {3, 4}, {4, 2},
            {0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
}

inline tspadj::UnionMultigraph six_union_graph() {
    return tspadj::UnionMultigraph::from_edges(6, false, six_union_edges());
}

// 6-vertex directed union, listed as 1-based arcs.
inline std::vector<std::pair<int, int>> directed_six_arcs() {
    return {{1, 2}, {1, 5}, {2, 5}, {2, 6}, {3, 1}, {3, 2},
            {4, 1}, {4, 3}, {5, 4}, {5, 6}, {6, 3}, {6, 4}};
}

inline tspadj::UnionMultigraph directed_six_graph() {
    std::vector<std::pair<int, int>> zero;
    for (auto [u, v] : directed_six_arcs()) zero.emplace_back(u - 1, v - 1);
    return tspadj::UnionMultigraph::from_edges(6, true, zero);
}

}  // namespace fixtures
