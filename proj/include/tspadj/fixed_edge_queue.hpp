#pragma once

#include <vector>

#include "errors.hpp"
#include "union_graph.hpp"

namespace tspadj {

// FIFO of multigraph edge ids forced into z during matching-based neighbor
// generation. Capacity overflow evicts the front. Entries never oversaturate
// a vertex (two incident entries per vertex undirected, one out- and one
// in-arc directed); the newest push evicts the oldest conflicting entry.
class FixedEdgeQueue {
public:
    FixedEdgeQueue(const UnionMultigraph& g, int capacity)
        : g_(&g), capacity_(capacity) {
        ensure(capacity >= 0, "queue capacity is nonnegative");
    }

    int capacity() const { return capacity_; }
    const std::vector<int>& contents() const { return entries_; }

    void push(int edge_id) {
        ensure(edge_id >= 0 && edge_id < g_->edge_count(), "queued id is an edge");
        if (capacity_ == 0) return;
        erase_id(edge_id);
        const auto& cur = g_->edge(edge_id);
        if (g_->directed()) {
            for (std::size_t i = 0; i < entries_.size();) {
                const auto& old = g_->edge(entries_[i]);
                if (old.tail == cur.tail || old.head == cur.head)
                    entries_.erase(entries_.begin() + static_cast<long>(i));
                else
                    ++i;
            }
        } else {
            for (int v : {cur.tail, cur.head})
                while (incident_count(v) >= 2) evict_oldest_at(v);
        }
        if (static_cast<int>(entries_.size()) == capacity_) entries_.erase(entries_.begin());
        entries_.push_back(edge_id);
    }

    // Drops entries outside `keep`; used when z and w are swapped so stale
    // ids would otherwise pin the wrong side.
    void retain(const EdgeSubset& keep) {
        std::vector<int> next;
        for (int e : entries_)
            if (keep.test(e)) next.push_back(e);
        entries_ = std::move(next);
    }

    // Adopts the list the cover step actually managed to force (feasibility
    // retries may have dropped leading entries).
    void assign(std::vector<int> entries) {
        ensure(static_cast<int>(entries.size()) <= capacity_, "assigned contents fit the capacity");
        entries_ = std::move(entries);
    }

private:
    void erase_id(int edge_id) {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] == edge_id) {
                entries_.erase(entries_.begin() + static_cast<long>(i));
                return;
            }
    }

    int incident_count(int v) const {
        int c = 0;
        for (int e : entries_) {
            const auto& r = g_->edge(e);
            if (r.tail == v || r.head == v) ++c;
        }
        return c;
    }

    void evict_oldest_at(int v) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& r = g_->edge(entries_[i]);
            if (r.tail == v || r.head == v) {
                entries_.erase(entries_.begin() + static_cast<long>(i));
                return;
            }
        }
        throw InternalError("eviction requested at a vertex with no entries");
    }

    const UnionMultigraph* g_;
    int capacity_;
    std::vector<int> entries_;
};

}  // namespace tspadj
