#include "equitree/forest_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace equitree {

ForestTracker::ForestTracker(const Graph& g, int k) : g_(&g), k_(k) {
    if (k < 0) throw std::invalid_argument("ForestTracker: negative k");
    color_.assign(g.n, 0);
    parent_.resize(g.n);
    for (int v = 0; v < g.n; ++v) parent_[v] = v;
    dsu_size_.assign(g.n, 1);
    extra_.assign(k + 1, 0);
    class_size_.assign(k + 1, 0);
}

bool ForestTracker::all_forests_ok() const {
    for (int c = 1; c <= k_; ++c)
        if (extra_[c] != 0) return false;
    return true;
}

int ForestTracker::find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
}

void ForestTracker::set_parent(int v, int p) {
    journal_.push_back({Op::parent, v, parent_[v]});
    parent_[v] = p;
}

void ForestTracker::set_dsu_size(int v, long long s) {
    journal_.push_back({Op::dsu_size, v, dsu_size_[v]});
    dsu_size_[v] = s;
}

void ForestTracker::set_color_raw(int v, int c) {
    journal_.push_back({Op::color, v, color_[v]});
    color_[v] = c;
}

void ForestTracker::set_extra(int c, long long e) {
    journal_.push_back({Op::extra, c, extra_[c]});
    extra_[c] = e;
}

void ForestTracker::set_class_size(int c, long long s) {
    journal_.push_back({Op::class_size, c, class_size_[c]});
    class_size_[c] = static_cast<int>(s);
}

void ForestTracker::link(int ra, int rb) {
    // Attach the smaller component under the larger; ties keep the smaller
    // id as root so runs are reproducible.
    if (dsu_size_[ra] < dsu_size_[rb] || (dsu_size_[ra] == dsu_size_[rb] && rb < ra))
        std::swap(ra, rb);
    set_parent(rb, ra);
    set_dsu_size(ra, dsu_size_[ra] + dsu_size_[rb]);
}

void ForestTracker::assign(int v, int c) {
    if (c < 1 || c > k_) throw std::invalid_argument("ForestTracker::assign: bad color");
    if (color_[v] != 0) throw std::invalid_argument("ForestTracker::assign: vertex already colored");
    set_color_raw(v, c);
    set_class_size(c, class_size_[c] + 1);
    for (int w : g_->adj[v]) {
        if (color_[w] != c) continue;
        int ra = find(v), rb = find(w);
        if (ra == rb)
            set_extra(c, extra_[c] + 1);
        else
            link(ra, rb);
    }
}

void ForestTracker::unassign(int v) {
    int c = color_[v];
    if (c == 0) throw std::invalid_argument("ForestTracker::unassign: vertex not colored");
    set_color_raw(v, 0);
    set_class_size(c, class_size_[c] - 1);

    // The removed vertex may have been an articulation point of its class
    // component, so rebuild class c's union-find from scratch (journaled,
    // so this plays nicely with rollback).
    std::vector<int> mem;
    for (int u = 0; u < n(); ++u)
        if (color_[u] == c) mem.push_back(u);
    if (parent_[v] != v) set_parent(v, v);
    if (dsu_size_[v] != 1) set_dsu_size(v, 1);
    for (int u : mem) {
        if (parent_[u] != u) set_parent(u, u);
        if (dsu_size_[u] != 1) set_dsu_size(u, 1);
    }
    long long fresh_extra = 0;
    for (int u : mem) {
        for (int w : g_->adj[u]) {
            if (w >= u || color_[w] != c) continue;
            int ra = find(u), rb = find(w);
            if (ra == rb)
                ++fresh_extra;
            else
                link(ra, rb);
        }
    }
    if (extra_[c] != fresh_extra) set_extra(c, fresh_extra);
}

void ForestTracker::rollback(Checkpoint cp) {
    if (cp > journal_.size())
        throw std::invalid_argument("ForestTracker::rollback: checkpoint is ahead of journal");
    while (journal_.size() > cp) {
        const Entry e = journal_.back();
        journal_.pop_back();
        switch (e.op) {
            case Op::color: color_[e.a] = static_cast<int>(e.b); break;
            case Op::parent: parent_[e.a] = static_cast<int>(e.b); break;
            case Op::dsu_size: dsu_size_[e.a] = e.b; break;
            case Op::extra: extra_[e.a] = e.b; break;
            case Op::class_size: class_size_[e.a] = static_cast<int>(e.b); break;
        }
    }
}

int ForestTracker::neighbors_in_class(int v, int c) const {
    int cnt = 0;
    for (int w : g_->adj[v])
        if (color_[w] == c) ++cnt;
    return cnt;
}

bool ForestTracker::addition_keeps_forest(int v, int c) const {
    // The class must be acyclic now, and the new vertex's neighbors inside
    // it must lie in pairwise distinct components.
    if (extra_[c] != 0) return false;
    std::vector<int> roots;
    for (int w : g_->adj[v]) {
        if (color_[w] != c) continue;
        roots.push_back(find(w));
    }
    std::sort(roots.begin(), roots.end());
    return std::adjacent_find(roots.begin(), roots.end()) == roots.end();
}

std::vector<int> ForestTracker::members(int c) const {
    std::vector<int> out;
    for (int v = 0; v < n(); ++v)
        if (color_[v] == c) out.push_back(v);
    return out;
}

Coloring ForestTracker::to_coloring() const {
    return Coloring::from_assignment(k_, color_);
}

}  // namespace equitree
