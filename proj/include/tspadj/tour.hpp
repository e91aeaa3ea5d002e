#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tspadj {

// A Hamiltonian tour stored as a canonical vertex permutation.
//
// Internally vertices are 0-based; the canonical form starts at vertex 0, and
// an undirected tour is additionally oriented so that the second vertex is
// smaller than the last one. A cycle and its reversal therefore share one
// representation in the undirected case, while directed tours keep their
// orientation.
class Tour {
public:
    // `zero_based` must be a permutation of 0..n-1; canonicalizes in place.
    static Tour from_internal(std::vector<int> zero_based, bool directed) {
        Tour t;
        t.order_ = std::move(zero_based);
        t.directed_ = directed;
        t.canonicalize();
        return t;
    }

    int size() const { return static_cast<int>(order_.size()); }
    bool directed() const { return directed_; }

    // Canonical order, 0-based.
    const std::vector<int>& order() const { return order_; }

    // Canonical order with 1-based external labels.
    std::vector<int> labels() const {
        std::vector<int> out(order_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) out[i] = order_[i] + 1;
        return out;
    }

    // Edge list, 0-based. Undirected edges come out as (min, max) pairs,
    // directed ones as (tail, head).
    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(order_.size());
        int n = size();
        for (int i = 0; i < n; ++i) {
            int a = order_[i];
            int b = order_[(i + 1) % n];
            if (!directed_ && a > b) std::swap(a, b);
            out.emplace_back(a, b);
        }
        return out;
    }

    bool operator==(const Tour& other) const = default;

private:
    void canonicalize() {
        int n = size();
        auto at0 = std::find(order_.begin(), order_.end(), 0);
        std::rotate(order_.begin(), at0, order_.end());
        if (!directed_ && n >= 3 && order_[1] > order_[n - 1]) {
            std::reverse(order_.begin() + 1, order_.end());
        }
    }

    std::vector<int> order_;
    bool directed_ = false;
};

// Builds a Tour from an external permutation of 1..n.
inline Tour tour_from_permutation(const std::vector<int>& perm, bool directed) {
    if (perm.size() < 3) throw TooSmall("a tour needs at least 3 vertices");
    int n = static_cast<int>(perm.size());
    std::vector<char> seen(n, 0);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        int label = perm[i];
        if (label < 1 || label > n || seen[label - 1])
            throw NotAPermutation("input is not a permutation of 1..n");
        seen[label - 1] = 1;
        order[i] = label - 1;
    }
    return Tour::from_internal(std::move(order), directed);
}

}  // namespace tspadj
