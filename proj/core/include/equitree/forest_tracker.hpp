#pragma once

#include <cstddef>
#include <vector>

#include "equitree/coloring.hpp"
#include "equitree/graph.hpp"

namespace equitree {

// Incremental forest maintenance for a partial k-coloring. Each color class
// carries a union-find over its vertices (union by size, no path
// compression) plus a count of "extra" edges: intra-class edges that closed
// a cycle when added. A class induces a forest iff its count is zero.
//
// Every mutation appends undo records to a journal; checkpoint()/rollback()
// restore any earlier state in LIFO order, which is what the backtracking
// solvers need. Unassigning out of LIFO order is also supported (the class
// is rebuilt and the rebuild itself journaled).
class ForestTracker {
  public:
    ForestTracker(const Graph& g, int k);

    int n() const { return static_cast<int>(color_.size()); }
    int k() const { return k_; }
    int color(int v) const { return color_[v]; }
    int class_size(int c) const { return class_size_[c]; }
    long long extra_edges(int c) const { return extra_[c]; }
    bool forest_ok(int c) const { return extra_[c] == 0; }
    bool all_forests_ok() const;

    // v must be unassigned / assigned respectively.
    void assign(int v, int c);
    void unassign(int v);

    using Checkpoint = std::size_t;
    Checkpoint checkpoint() const { return journal_.size(); }
    void rollback(Checkpoint cp);

    int neighbors_in_class(int v, int c) const;
    // True when assigning v to c would keep class c a forest (v unassigned).
    bool addition_keeps_forest(int v, int c) const;

    std::vector<int> members(int c) const;
    Coloring to_coloring() const;

  private:
    enum class Op : unsigned char { color, parent, dsu_size, extra, class_size };
    struct Entry {
        Op op;
        int a;
        long long b;
    };

    int find(int v) const;
    void set_parent(int v, int p);
    void set_dsu_size(int v, long long s);
    void set_color_raw(int v, int c);
    void set_extra(int c, long long e);
    void set_class_size(int c, long long s);
    // Merges the components of roots ra != rb.
    void link(int ra, int rb);

    const Graph* g_;
    int k_;
    std::vector<int> color_;
    std::vector<int> parent_;
    std::vector<long long> dsu_size_;
    std::vector<long long> extra_;       // per color, index 0 unused
    std::vector<int> class_size_;
    std::vector<Entry> journal_;
};

}  // namespace equitree
