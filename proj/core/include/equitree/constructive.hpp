#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "equitree/coloring.hpp"
#include "equitree/forest_tracker.hpp"
#include "equitree/graph.hpp"
#include "equitree/rational.hpp"

namespace equitree {

// Thrown when an internal invariant that the construction guarantees is
// observed to fail; always a bug, never a property of the input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Parameters of the degree-split phase for one recursion level.
struct SplitParams {
    int n = 0;
    int k = 0;
    int t = 0;       // ceil(n/k), block size
    long long r = 0; // k*t - n, deficiency
    int s = 0;       // 1 for 3<=t<=7, ceil(t/5) for t>=8
    Frac lambda;     // 1 + t/s, exact
    int mu = 0;      // count of vertices with degree >= lambda*d
};

// degrees_desc must be non-increasing. Requires t = ceil(n/k) >= 3.
// mu is computed by the exact comparison deg*s >= (s+t)*d.
SplitParams compute_split_params(int n, int k, int d,
                                 const std::vector<int>& degrees_desc);

// The small-deficiency reduction applies iff d < 2(r+1): delete a
// minimum-degree vertex, color the rest, re-insert.
bool reduce_small_r_applies(int d, long long r);

struct SolveOptions {
    // Re-verify the full state from scratch after every witness switch and
    // check conditions (forests, size caps, protected colors) after every
    // placement. Expensive; for tests and --debug runs.
    bool debug_checks = false;
};

struct SolveStats {
    long long greedy_placements = 0;
    long long case2_insertions = 0;  // placements that needed the digraph
    long long witness_moves = 0;     // individual witness relocations
    int max_layer_depth = 0;         // deepest layer a target was taken from
    int max_recursion_depth = 0;
    long long reduce_steps = 0;
    long long split_steps = 0;
};

// Auxiliary digraph on color classes: arc X->Y iff some unprotected vertex
// of X (the arc's witness) has at most one neighbor in Y. Only the layered
// part reachable into the small classes is retained for switching.
struct WitnessDigraph {
    int k = 0;
    // witness[X][Y] = smallest-id unprotected witness for arc X->Y, -1 if
    // the arc is absent. Index 0 unused.
    std::vector<std::vector<int>> witness;
    std::vector<std::vector<int>> layers;  // layers[0] = small classes, ...
    std::vector<int> layer_of;             // per class; -1 = not reachable
    std::vector<int> parent_class;         // per class, layer >= 1: chosen head
    std::vector<int> parent_witness;       // witness of the arc to parent_class
    std::vector<int> frak_order;           // reachable classes, (layer, index) order
    int y() const { return static_cast<int>(frak_order.size()); }
};

struct IneqLink {
    std::string lhs;
    std::string rel;  // "<", "<=", ">", ">=", "=="
    std::string rhs;
    bool holds = false;
};

struct IneqEval {
    int id = 0;  // 8..24
    std::string name;
    bool applicable = true;
    bool holds = true;  // conjunction of links (true when no links)
    std::vector<IneqLink> links;
    std::string note;
};

struct StuckMeasured {
    int n = 0, k = 0, t = 0, s = 0, mu = 0, d = 0;
    long long r = 0;
    std::string lambda;
    int position = 0;  // i: 1-based position of the failing vertex
    int deg_vi = 0;    // degree in the level graph
    int delta = 0;     // max degree of the level graph
    long long e_g = 0; // edges of the level graph
    int y = 0;
    long long a_size = 0, b_size = 0, a_star_size = 0;
    long long sum_deg_a_star = 0;  // level-graph degrees summed over A*
    long long e_a_star = 0;        // edges inside A*
    long long e_b_frak = 0;   // e(B, union of reachable classes)
    int m0_class = 0;         // chosen small class (extremal e(M*,B))
    long long m0_size = 0, m_star_size = 0, m_star_core = 0;  // |M0|,|M*|,l
    long long e_mstar_b = 0;
    std::vector<int> class_sizes;                       // 1..k
    std::vector<std::pair<int, long long>> small_embs;  // (class, e(M*,B)) per small class
    bool delta_ge_10d = false;
    bool k_ge_theorem_min = false;  // 2k >= delta+1
};

// Everything needed to replay the stuck state: the recursion level's graph,
// the augmented assignment, and the mapping back to the caller's ids.
struct StuckSnapshot {
    int n = 0, k = 0, r = 0;
    std::vector<std::pair<int, int>> edges;  // level graph, local ids
    std::vector<int> star_assignment;        // size n + r; virtual ids n..n+r-1
    std::vector<char> protected_flags;       // size n + r
    std::vector<int> degree_order;           // v_1..v_n as local ids
    std::vector<int> local_to_root;          // size n
};

struct TraceFrame {
    std::string action;  // "peel" or "core"
    int n = 0;           // level size when the frame was entered
    int vertex = -1;     // peeled vertex (root ids), for "peel"
    int mu = 0;          // split index, for "core"
};

struct StuckReport {
    int failing_vertex = -1;        // root ids
    int failing_vertex_local = -1;  // id inside snapshot's level graph
    int case_id = 0;                // 1 if 5i < 3n else 2
    StuckMeasured measured;
    std::vector<IneqEval> inequalities;
    std::vector<int> violated;  // applicable && !holds
    StuckSnapshot snapshot;
    std::vector<TraceFrame> trace;
};

using SolveResult = std::variant<Coloring, StuckReport>;

// One recursion level after the split: G* = G (level graph) plus a virtual
// K_r, the protected prefix colored, and the degree-descending tail waiting
// to be placed one vertex per step.
class ExtendState {
  public:
    // order: degree-descending permutation of g's vertices; core_colors:
    // colors for order[0..mu) (the recursive result on the high-degree
    // core), may be empty iff mu == 0.
    ExtendState(const Graph& g, const SplitParams& params, int d,
                std::vector<int> order, const std::vector<int>& core_colors,
                SolveOptions opts = {}, SolveStats* stats = nullptr);

    // The tracker holds a pointer into star_, so relocation is unsafe.
    ExtendState(const ExtendState&) = delete;
    ExtendState& operator=(const ExtendState&) = delete;

    enum class StepResult { placed, done, stuck };
    StepResult step();  // places the next tail vertex, or reports stuck

    // Individual mechanisms, exposed for targeted tests.
    bool greedy_place(int v);
    WitnessDigraph build_witness_digraph() const;
    // Smallest (layer, index) reachable class where v has <= 1 neighbor.
    std::optional<int> pick_insert_target(int v, const WitnessDigraph& h) const;
    void switch_and_insert(int v, int target, const WitnessDigraph& h);
    StuckReport audit_stuck_state(int v, const WitnessDigraph& h) const;

    // Testing hook: place a vertex bypassing the placement rules (the
    // tracker still updates); lets tests fabricate mid-extension states.
    void force_assign(int v, int color);

    bool finished() const { return pos_ > n_; }
    int next_position() const { return pos_; }  // 1-based index into order
    Coloring extract_restriction() const;       // strips virtual vertices
    const ForestTracker& tracker() const { return tracker_; }
    const Graph& star_graph() const { return star_; }
    const SplitParams& params() const { return params_; }
    bool is_protected(int v) const { return protected_[v] != 0; }

    void check_conditions() const;  // (a),(b),(c) from scratch; throws internal_error

  private:
    int neighbors_in_class_star(int v, int c) const;
    void note_protected_baseline();

    Graph star_;
    SplitParams params_;
    int d_ = 0;
    int n_ = 0;  // real vertices; star has n_ + r
    std::vector<int> order_;
    std::vector<char> protected_;
    std::vector<int> baseline_colors_;  // protected colors for condition (c)
    ForestTracker tracker_;
    int pos_ = 1;  // next position in order_, 1-based
    SolveOptions opts_;
    SolveStats* stats_ = nullptr;
};

// Full pipeline. Success -> Coloring passing verify with exactly k classes.
// Failure -> StuckReport (only possible outside the guarantee regime
// max_degree >= 10*degeneracy and k >= ceil((max_degree+1)/2)).
SolveResult equitable_tree_color(const Graph& g, int k, const SolveOptions& opts = {},
                                 SolveStats* stats = nullptr);

}  // namespace equitree
