#include "equitree/constructive.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace equitree {

namespace {

long long ll(int x) { return static_cast<long long>(x); }

// The level graph plus a disjoint clique on r virtual vertices n..n+r-1.
Graph make_star_graph(const Graph& g, int r) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(g.m) + static_cast<std::size_t>(r) * (r - 1) / 2);
    for (int u = 0; u < g.n; ++u)
        for (int w : g.adj[u])
            if (u < w) edges.emplace_back(u, w);
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) edges.emplace_back(g.n + a, g.n + b);
    return build_graph(g.n + r, edges);
}

}  // namespace

SplitParams compute_split_params(int n, int k, int d,
                                 const std::vector<int>& degrees_desc) {
    if (k < 1) throw std::invalid_argument("compute_split_params: k < 1");
    if (static_cast<int>(degrees_desc.size()) != n)
        throw std::invalid_argument("compute_split_params: degree list size mismatch");
    SplitParams p;
    p.n = n;
    p.k = k;
    p.t = static_cast<int>((ll(n) + k - 1) / k);
    if (p.t < 3)
        throw std::invalid_argument("compute_split_params: requires t >= 3, got t=" +
                                    std::to_string(p.t));
    p.r = ll(k) * p.t - n;
    p.s = (p.t <= 7) ? 1 : (p.t + 4) / 5;
    p.lambda = Frac(p.s + p.t, p.s);
    for (int i = 1; i < n; ++i)
        if (degrees_desc[i] > degrees_desc[i - 1])
            throw std::invalid_argument("compute_split_params: degrees not non-increasing");
    // deg >= lambda*d  <=>  deg*s >= (s+t)*d, all integral.
    p.mu = 0;
    for (int i = 0; i < n; ++i) {
        if (ll(degrees_desc[i]) * p.s >= ll(p.s + p.t) * d)
            p.mu = i + 1;
        else
            break;
    }
    return p;
}

bool reduce_small_r_applies(int d, long long r) { return d < 2 * (r + 1); }

// ---------------------------------------------------------------------------
// ExtendState

ExtendState::ExtendState(const Graph& g, const SplitParams& params, int d,
                         std::vector<int> order, const std::vector<int>& core_colors,
                         SolveOptions opts, SolveStats* stats)
    : star_(make_star_graph(g, static_cast<int>(params.r))),
      params_(params), d_(d), n_(g.n), order_(std::move(order)),
      tracker_(star_, params.k), opts_(opts), stats_(stats) {
    if (params_.k < 1 || params_.r < 0 || params_.r >= params_.k || params_.n != n_)
        throw std::invalid_argument("ExtendState: malformed split parameters");
    if (static_cast<int>(order_.size()) != n_)
        throw std::invalid_argument("ExtendState: order size mismatch");
    if (static_cast<int>(core_colors.size()) != params_.mu)
        throw std::invalid_argument("ExtendState: core coloring size must equal mu");
    const int r = static_cast<int>(params_.r);
    protected_.assign(n_ + r, 0);

    for (int j = 1; j <= r; ++j) {
        int w = n_ + j - 1;
        tracker_.assign(w, j);
        protected_[w] = 1;
    }
    for (int i = 0; i < params_.mu; ++i) {
        int v = order_[i];
        int c = core_colors[i];
        if (c < 1 || c > params_.k)
            throw std::invalid_argument("ExtendState: core color out of range");
        tracker_.assign(v, c);
        protected_[v] = 1;
        if (!tracker_.forest_ok(c))
            throw std::invalid_argument("ExtendState: core coloring is not a forest partition");
    }
    // Per-class load of protected vertices: core part <= s, with the single
    // virtual seed allowed on top (<= s+1 total).
    std::vector<int> core_per_class(params_.k + 1, 0);
    for (int i = 0; i < params_.mu; ++i) ++core_per_class[core_colors[i]];
    for (int c = 1; c <= params_.k; ++c) {
        if (core_per_class[c] > params_.s)
            throw internal_error("ExtendState: class " + std::to_string(c) + " holds " +
                                 std::to_string(core_per_class[c]) +
                                 " core vertices, limit s=" + std::to_string(params_.s));
        int vstar = core_per_class[c] + (c <= r ? 1 : 0);
        if (vstar > params_.s + 1)
            throw internal_error("ExtendState: protected load " + std::to_string(vstar) +
                                 " exceeds s+1 in class " + std::to_string(c));
    }
    pos_ = params_.mu + 1;
    note_protected_baseline();
}

void ExtendState::note_protected_baseline() {
    baseline_colors_.assign(star_.n, 0);
    for (int v = 0; v < star_.n; ++v)
        if (protected_[v]) baseline_colors_[v] = tracker_.color(v);
}

int ExtendState::neighbors_in_class_star(int v, int c) const {
    return tracker_.neighbors_in_class(v, c);
}

bool ExtendState::greedy_place(int v) {
    if (tracker_.color(v) != 0)
        throw std::invalid_argument("greedy_place: vertex already colored");
    std::vector<int> cnt(params_.k + 1, 0);
    for (int w : star_.adj[v]) {
        int c = tracker_.color(w);
        if (c > 0) ++cnt[c];
    }
    for (int c = 1; c <= params_.k; ++c) {
        if (tracker_.class_size(c) >= params_.t || cnt[c] > 1) continue;
        tracker_.assign(v, c);
        if (!tracker_.forest_ok(c))
            throw internal_error("greedy_place: one new edge closed a cycle");
        if (stats_) ++stats_->greedy_placements;
        if (opts_.debug_checks) check_conditions();
        return true;
    }
    return false;
}

WitnessDigraph ExtendState::build_witness_digraph() const {
    const int k = params_.k;
    WitnessDigraph h;
    h.k = k;
    h.witness.assign(k + 1, std::vector<int>(k + 1, -1));
    std::vector<int> cnt(k + 1, 0);
    for (int x = 0; x < star_.n; ++x) {
        int cx = tracker_.color(x);
        if (cx == 0 || protected_[x]) continue;
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int w : star_.adj[x]) {
            int cw = tracker_.color(w);
            if (cw > 0) ++cnt[cw];
        }
        for (int y = 1; y <= k; ++y) {
            if (y == cx || cnt[y] > 1) continue;
            if (h.witness[cx][y] == -1) h.witness[cx][y] = x;
        }
    }
    h.layer_of.assign(k + 1, -1);
    h.parent_class.assign(k + 1, -1);
    h.parent_witness.assign(k + 1, -1);
    std::vector<int> level0;
    for (int c = 1; c <= k; ++c)
        if (tracker_.class_size(c) < params_.t) {
            level0.push_back(c);
            h.layer_of[c] = 0;
        }
    h.layers.push_back(level0);
    while (true) {
        const std::vector<int>& prev = h.layers.back();
        std::vector<int> next;
        for (int c = 1; c <= k; ++c) {
            if (h.layer_of[c] != -1) continue;
            for (int p : prev) {
                if (h.witness[c][p] == -1) continue;
                h.layer_of[c] = static_cast<int>(h.layers.size());
                h.parent_class[c] = p;
                h.parent_witness[c] = h.witness[c][p];
                next.push_back(c);
                break;  // prev is ascending, first hit = smallest index
            }
        }
        if (next.empty()) break;
        h.layers.push_back(std::move(next));
    }
    for (const auto& layer : h.layers)
        for (int c : layer) h.frak_order.push_back(c);
    return h;
}

std::optional<int> ExtendState::pick_insert_target(int v, const WitnessDigraph& h) const {
    for (int c : h.frak_order)
        if (neighbors_in_class_star(v, c) <= 1) return c;
    return std::nullopt;
}

void ExtendState::switch_and_insert(int v, int target, const WitnessDigraph& h) {
    if (tracker_.color(v) != 0)
        throw std::invalid_argument("switch_and_insert: vertex already colored");
    if (h.layer_of[target] < 0)
        throw std::invalid_argument("switch_and_insert: target class is not reachable");
    if (neighbors_in_class_star(v, target) > 1)
        throw std::invalid_argument("switch_and_insert: vertex has >1 neighbor in target");

    std::vector<int> path{target};  // layer j down to layer 0
    while (h.layer_of[path.back()] > 0) path.push_back(h.parent_class[path.back()]);
    const int j = static_cast<int>(path.size()) - 1;

    std::vector<int> movers(j, -1);  // movers[l]: from path[l] to path[l+1]
    for (int l = 0; l < j; ++l) {
        int x = h.parent_witness[path[l]];
        if (x < 0 || protected_[x] || tracker_.color(x) != path[l] ||
            neighbors_in_class_star(x, path[l + 1]) > 1)
            throw internal_error("switch_and_insert: stale witness for arc " +
                                 std::to_string(path[l]) + "->" + std::to_string(path[l + 1]));
        movers[l] = x;
    }

    std::vector<int> size_before(path.size());
    for (std::size_t idx = 0; idx < path.size(); ++idx)
        size_before[idx] = tracker_.class_size(path[idx]);

    // All departures first, then all arrivals: no class ever exceeds its
    // pre-move size, and every arrival lands with at most one edge into the
    // members present at evaluation time.
    for (int l = 0; l < j; ++l) tracker_.unassign(movers[l]);
    tracker_.assign(v, target);
    for (int l = 0; l < j; ++l) tracker_.assign(movers[l], path[l + 1]);

    for (std::size_t idx = 0; idx < path.size(); ++idx) {
        int c = path[idx];
        if (!tracker_.forest_ok(c))
            throw internal_error("switch_and_insert: class " + std::to_string(c) +
                                 " lost the forest property");
        int expect = size_before[idx] + (idx + 1 == path.size() ? 1 : 0);
        if (tracker_.class_size(c) != expect)
            throw internal_error("switch_and_insert: class " + std::to_string(c) +
                                 " size drifted");
        if (tracker_.class_size(c) > params_.t)
            throw internal_error("switch_and_insert: class " + std::to_string(c) +
                                 " exceeds t");
    }
    if (stats_) {
        ++stats_->case2_insertions;
        stats_->witness_moves += j;
        stats_->max_layer_depth = std::max(stats_->max_layer_depth, j);
    }
    if (opts_.debug_checks) check_conditions();
}

void ExtendState::force_assign(int v, int color) {
    tracker_.assign(v, color);
}

ExtendState::StepResult ExtendState::step() {
    if (pos_ > n_) return StepResult::done;
    int v = order_[pos_ - 1];
    if (greedy_place(v)) {
        ++pos_;
        return StepResult::placed;
    }
    WitnessDigraph h = build_witness_digraph();
    if (auto target = pick_insert_target(v, h)) {
        switch_and_insert(v, *target, h);
        ++pos_;
        return StepResult::placed;
    }
    return StepResult::stuck;
}

Coloring ExtendState::extract_restriction() const {
    std::vector<int> a(n_);
    for (int v = 0; v < n_; ++v) {
        a[v] = tracker_.color(v);
        if (a[v] == 0) throw internal_error("extract_restriction: uncolored vertex");
    }
    return Coloring::from_assignment(params_.k, std::move(a));
}

void ExtendState::check_conditions() const {
    Coloring c = tracker_.to_coloring();
    for (int col = 1; col <= params_.k; ++col) {
        std::vector<int> cyc;
        if (!class_induces_forest(star_, c, col, &cyc))
            throw internal_error("condition (a) violated: class " + std::to_string(col) +
                                 " contains a cycle");
        if (tracker_.forest_ok(col) != true)
            throw internal_error("tracker extra-edge count disagrees with scratch check");
        if (tracker_.class_size(col) > params_.t)
            throw internal_error("condition (b) violated: class " + std::to_string(col) +
                                 " has " + std::to_string(tracker_.class_size(col)) +
                                 " > t vertices");
    }
    for (int v = 0; v < star_.n; ++v)
        if (protected_[v] && tracker_.color(v) != baseline_colors_[v])
            throw internal_error("condition (c) violated: protected vertex " +
                                 std::to_string(v) + " was recolored");
}

// ---------------------------------------------------------------------------
// Stuck-state audit

namespace {

struct Chain {
    IneqEval eq;
    Chain(int id, std::string name) {
        eq.id = id;
        eq.name = std::move(name);
    }
    Chain& link(const Frac& lhs, const char* rel, const Frac& rhs) {
        std::string r = rel;
        bool ok = false;
        if (r == "<") ok = lhs < rhs;
        else if (r == "<=") ok = lhs <= rhs;
        else if (r == ">") ok = lhs > rhs;
        else if (r == ">=") ok = lhs >= rhs;
        else if (r == "==") ok = lhs == rhs;
        else throw std::invalid_argument("Chain::link: bad relation " + r);
        eq.links.push_back({frac_str(lhs), r, frac_str(rhs), ok});
        if (!ok) eq.holds = false;
        return *this;
    }
    Chain& gate(bool applicable, std::string why_not = {}) {
        eq.applicable = applicable;
        if (!applicable && !why_not.empty()) eq.note = std::move(why_not);
        return *this;
    }
    Chain& note(std::string s) {
        eq.note = std::move(s);
        return *this;
    }
};

// min over reachable classes of |N(v) cap class|; -1 when undefined
struct AuditExtras {
    int min_vi_frak = -1;
    int min_b_frak = -1;
};

std::vector<IneqEval> evaluate_inequalities(const StuckMeasured& m, int case_id,
                                            const AuditExtras& ex) {
    std::vector<IneqEval> out;
    const Frac n(m.n), k(m.k), t(m.t), s(m.s), d(m.d), r(m.r), i(m.position);
    const Frac D(m.deg_vi), delta(m.delta), y(m.y);
    const Frac lam(ll(m.s + m.t), ll(m.s));
    const Frac A(m.a_size), B(m.b_size), Astar(m.a_star_size);
    const Frac half_D(ll(m.deg_vi / 2));  // floor(D/2)

    {
        Chain c(8, "stuck-count-lower-bounds-i");
        c.link(i, ">", (k - half_D) * t + 2 * half_D - r)
            .note("holds in any genuine stuck state: at most floor(deg/2) classes are small");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(9, "i-exceeds-fraction-of-n");
        c.link((k - half_D) * t + 2 * half_D - r, ">=", k * t - (t - 2) * D / 2 - r);
        c.link(k * t - (t - 2) * D / 2 - r, ">", (k - lam * d / 2) * t);
        Frac branch = (m.t >= 4) ? (k - 4 * d) * t : (k - 2 * d) * t;
        Frac fifth = (m.t >= 4) ? k * t / 5 : 3 * k * t / 5;
        Frac nn = (m.t >= 4) ? n / 5 : 3 * n / 5;
        c.link((k - lam * d / 2) * t, ">=", branch);
        c.link(branch, ">", fifth);
        c.link(fifth, ">=", nn);
        c.note(std::string("conclusion: i > ") + (m.t >= 4 ? "n/5" : "3n/5") +
               "; the strict middle step needs k > 5d; last step uses kt >= n");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(10, "tail-degree-vs-peel-bound");
        c.link(2 * (n - i), "<", d * t * (i + n) / i)
            .note("combines the stuck count with the degree-position bound");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(11, "n-plus-k-bound");
        c.link(n + k, "<", t * n / (t - 1)).note("equivalent to k(t-1) < n");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(12, "maxdeg-ratio-window");
        bool applicable = (case_id == 1) && (m.t >= 4) && (m.position < m.n);
        c.gate(applicable, "derived only for case 1 with t >= 4 and i < n");
        if (applicable) {
            c.link(delta, "<=", 2 * k - 1);
            c.link(2 * k / d, "<=", (n + k) * (n + i) / ((n - i) * i));
            c.link((n + k) * (n + i) / ((n - i) * i), "<=",
                   Frac(4, 3) * n * (n + i) / (i * (n - i)));
            c.note("first step needs k >= (max_degree+1)/2; last uses 3k <= n");
        }
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(13, "stuck-vertex-sees-two-per-reachable-class");
        c.link(Frac(ex.min_vi_frak), ">=", Frac(2));
        c.link(D, ">=", 2 * y);
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(14, "outside-vertices-see-two-per-reachable-class");
        if (m.b_size == 0)
            c.note("B empty; vacuously true");
        else
            c.link(Frac(ex.min_b_frak), ">=", Frac(2));
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(15, "edges-into-reachable-classes");
        c.link(Frac(m.e_b_frak), ">=", 2 * y * B);
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(16, "high-degree-core-incident-edges");
        c.gate(m.a_star_size >= 1, "A* empty; strict bound is vacuous");
        if (m.a_star_size >= 1) {
            c.link(Frac(m.sum_deg_a_star), ">=", lam * d * Astar);
            c.link(lam * d * Astar - Frac(m.e_a_star), ">", (lam - 1) * d * Astar);
            c.note("second step is e(A*) < d|A*|, from degeneracy");
        }
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(17, "reachable-count-vs-tail-degree");
        c.link(2 * y, "<=", D);
        c.link(D, "<", d * (i + n) / i);
        c.link(d * (i + n) / i, "<=", 8 * d / 3);
        c.link(8 * d / 3, "<", (lam - 1) * d);
        c.note("third step holds exactly when 5i >= 3n (case 2)");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(18, "outside-partition-size-identity");
        c.link(A + B, "==", t * (k - y)).note("bookkeeping identity, never a hypothesis");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(19, "global-edge-lower-bound");
        Frac krr = r * (r - 1) / 2;
        c.link(Frac(m.e_g) + krr, ">=", 2 * y * B + (lam - 1) * d * Astar + krr);
        c.link(2 * y * B + (lam - 1) * d * Astar, ">=", 2 * y * (B + A - r));
        c.note("second step uses (lambda-1)d >= 2y and |A|-r <= |A*|; "
               "non-strict so an empty A* stays vacuous");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(20, "quadratic-balance");
        c.link(Frac(m.e_g), "<", d * n);
        c.link((2 * y * y - 2 * k * y + k * d) * t, ">", (d - 2 * y) * r);
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(21, "reachable-classes-below-0.6d");
        c.link(y, "<", 3 * d / 5);
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(22, "protected-light-unprotected-heavy");
        c.link(A, "<=", s * (k - y) + r);
        c.link(B, ">=", (t - s) * (k - y) - r);
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(23, "small-class-boundary-upper");
        const Frac l(m.m_star_core), Mstar(m.m_star_size);
        c.link(Frac(m.e_mstar_b), "<=", l * delta + (Mstar - l) * lam * d);
        c.link(l * delta + (Mstar - l) * lam * d, "<=", s * delta + (Mstar - s) * lam * d);
        c.link(s * delta + (Mstar - s) * lam * d, "<=", s * delta + (t - s - 1) * lam * d);
        c.note("evaluated on the small class maximizing e(M*,B); middle step "
               "needs max_degree >= lambda*d and l <= s");
        out.push_back(std::move(c.eq));
    }
    {
        Chain c(24, "combined-degree-gap");
        const Frac dd3_5 = 3 * d / 5;
        c.link(Frac(m.e_mstar_b), ">=", 2 * B);
        c.link(B, ">=", (t - s) * (k - y) - r);
        c.link(2 * ((t - s) * (k - y) - r), ">", 2 * (t - s) * (k - y) - d);
        c.link(2 * (t - s) * (k - y) - d, ">", 2 * (t - s) * (k - dd3_5) - d);
        c.link(2 * (t - s) * (k - dd3_5) - d, ">=",
               2 * (t - s) * ((delta + 1) / 2 - dd3_5) - d);
        c.link((t - 2 * s) * delta, "<", (Frac(6, 5) * (t - s) + (t - s - 1) * lam + 1) * d);
        c.note("fifth step needs k >= (max_degree+1)/2; last link is the headline claim");
        out.push_back(std::move(c.eq));
    }
    return out;
}

}  // namespace

StuckReport ExtendState::audit_stuck_state(int v, const WitnessDigraph& h) const {
    if (pos_ > n_ || order_[pos_ - 1] != v || tracker_.color(v) != 0)
        throw std::invalid_argument("audit_stuck_state: v is not the pending vertex");
    if (pick_insert_target(v, h))
        throw std::invalid_argument("audit_stuck_state: state is not stuck, a target exists");

    StuckReport rep;
    rep.failing_vertex = v;
    rep.failing_vertex_local = v;

    StuckMeasured& m = rep.measured;
    m.n = n_;
    m.k = params_.k;
    m.t = params_.t;
    m.s = params_.s;
    m.mu = params_.mu;
    m.d = d_;
    m.r = params_.r;
    m.lambda = frac_str(params_.lambda);
    m.position = pos_;
    m.deg_vi = star_.degree(v);
    m.e_g = star_.m - m.r * (m.r - 1) / 2;
    m.delta = 0;
    for (int u = 0; u < n_; ++u) m.delta = std::max(m.delta, star_.degree(u));
    rep.case_id = (5LL * m.position < 3LL * m.n) ? 1 : 2;
    m.delta_ge_10d = (m.delta >= 10 * m.d);
    m.k_ge_theorem_min = (2LL * m.k >= ll(m.delta) + 1);

    m.y = h.y();
    if (m.y < 1) throw internal_error("audit_stuck_state: no small class exists");
    std::vector<char> in_frak(params_.k + 1, 0);
    for (int c : h.frak_order) in_frak[c] = 1;

    m.class_sizes.assign(params_.k, 0);
    for (int c = 1; c <= params_.k; ++c) m.class_sizes[c - 1] = tracker_.class_size(c);

    std::vector<int> b_list;
    for (int u = 0; u < star_.n; ++u) {
        int c = tracker_.color(u);
        if (c == 0 || in_frak[c]) continue;
        if (protected_[u]) {
            ++m.a_size;
            if (u < n_) {
                ++m.a_star_size;
                m.sum_deg_a_star += star_.degree(u);
            }
        } else {
            ++m.b_size;
            b_list.push_back(u);
        }
    }
    {
        std::vector<int> a_star;
        for (int u = 0; u < n_; ++u) {
            int c = tracker_.color(u);
            if (c != 0 && !in_frak[c] && protected_[u]) a_star.push_back(u);
        }
        m.e_a_star = edges_between(star_, a_star, a_star);
    }
    for (int u : b_list)
        for (int w : star_.adj[u]) {
            int c = tracker_.color(w);
            if (c > 0 && in_frak[c]) ++m.e_b_frak;
        }

    AuditExtras ex;
    {
        std::vector<int> cnt(params_.k + 1, 0);
        for (int w : star_.adj[v]) {
            int c = tracker_.color(w);
            if (c > 0) ++cnt[c];
        }
        for (int c : h.frak_order)
            if (ex.min_vi_frak < 0 || cnt[c] < ex.min_vi_frak) ex.min_vi_frak = cnt[c];
        for (int u : b_list) {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (int w : star_.adj[u]) {
                int c = tracker_.color(w);
                if (c > 0) ++cnt[c];
            }
            for (int c : h.frak_order)
                if (ex.min_b_frak < 0 || cnt[c] < ex.min_b_frak) ex.min_b_frak = cnt[c];
        }
    }

    // e(M*, B) for every small class; keep the extremal one.
    std::vector<char> in_b(star_.n, 0);
    for (int u : b_list) in_b[u] = 1;
    for (int c : h.layers[0]) {
        long long emb = 0;
        for (int u = 0; u < n_; ++u) {
            if (tracker_.color(u) != c) continue;
            for (int w : star_.adj[u])
                if (in_b[w]) ++emb;
        }
        m.small_embs.emplace_back(c, emb);
        if (m.m0_class == 0 || emb > m.e_mstar_b) {
            m.m0_class = c;
            m.e_mstar_b = emb;
        }
    }
    for (int u = 0; u < star_.n; ++u) {
        if (tracker_.color(u) != m.m0_class) continue;
        ++m.m0_size;
        if (u < n_) {
            ++m.m_star_size;
            if (protected_[u]) ++m.m_star_core;
        }
    }

    rep.inequalities = evaluate_inequalities(m, rep.case_id, ex);
    for (const auto& eq : rep.inequalities)
        if (eq.applicable && !eq.holds) rep.violated.push_back(eq.id);

    StuckSnapshot& snap = rep.snapshot;
    snap.n = n_;
    snap.k = params_.k;
    snap.r = static_cast<int>(params_.r);
    for (int u = 0; u < n_; ++u)
        for (int w : star_.adj[u])
            if (u < w && w < n_) snap.edges.emplace_back(u, w);
    snap.star_assignment.resize(star_.n);
    for (int u = 0; u < star_.n; ++u) snap.star_assignment[u] = tracker_.color(u);
    snap.protected_flags = protected_;
    snap.degree_order = order_;
    snap.local_to_root.resize(n_);
    std::iota(snap.local_to_root.begin(), snap.local_to_root.end(), 0);
    return rep;
}

// ---------------------------------------------------------------------------
// Recursive driver

namespace {

Coloring round_robin_coloring(int n, int k) {
    std::vector<int> a(n);
    for (int j = 0; j < n; ++j) a[j] = j % k + 1;
    return Coloring::from_assignment(k, std::move(a));
}

// Parent-first traversal order of a forest: every vertex has at most one
// earlier neighbor, so filling classes in contiguous runs keeps each class
// acyclic no matter where the run boundaries fall.
Coloring forest_fill_coloring(const Graph& g, int k) {
    std::vector<int> order;
    order.reserve(g.n);
    std::vector<char> seen(g.n, 0);
    for (int root = 0; root < g.n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::deque<int> q{root};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            order.push_back(u);
            for (int w : g.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
    }
    const int big = g.n % k;
    const int floor_sz = g.n / k;
    std::vector<int> a(g.n, 0);
    std::size_t idx = 0;
    for (int c = 1; c <= k; ++c) {
        int target = floor_sz + (c <= big ? 1 : 0);
        for (int j = 0; j < target; ++j) a[order[idx++]] = c;
    }
    return Coloring::from_assignment(k, std::move(a));
}

SolveResult solve_level(const Graph& g, int k, const SolveOptions& opts, SolveStats* stats,
                        const std::vector<int>& to_root, int depth) {
    if (stats) stats->max_recursion_depth = std::max(stats->max_recursion_depth, depth);
    const int n = g.n;
    if (n == 0) return Coloring::empty(0, k);
    const int t = static_cast<int>((ll(n) + k - 1) / k);
    if (t <= 2) return round_robin_coloring(n, k);

    DegeneracyResult dres = degeneracy_ordering(g);
    const int d = dres.degeneracy;
    if (d <= 1) return forest_fill_coloring(g, k);

    const long long r = ll(k) * t - n;
    if (reduce_small_r_applies(d, r)) {
        const int x = dres.ordering.order[0];
        if (g.degree(x) > d)
            throw internal_error("solve_level: minimum degree exceeds degeneracy");
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (int u = 0; u < n; ++u)
            if (u != x) rest.push_back(u);
        InducedSubgraph sub = induced_subgraph(g, rest);
        std::vector<int> sub_to_root(rest.size());
        for (std::size_t idx = 0; idx < rest.size(); ++idx)
            sub_to_root[idx] = to_root[rest[idx]];
        SolveResult rec = solve_level(sub.graph, k, opts, stats, sub_to_root, depth + 1);
        if (std::holds_alternative<StuckReport>(rec)) {
            StuckReport rep = std::get<StuckReport>(std::move(rec));
            rep.trace.insert(rep.trace.begin(), TraceFrame{"peel", n, to_root[x], 0});
            return rep;
        }
        const Coloring& sub_col = std::get<Coloring>(rec);
        std::vector<int> a(n, 0);
        for (std::size_t idx = 0; idx < rest.size(); ++idx)
            a[rest[idx]] = sub_col.assignment[idx];
        Coloring col = Coloring::from_assignment(k, std::move(a));

        int small_classes = 0;
        for (int c = 1; c <= k; ++c)
            if (col.class_sizes[c] == t - 1) ++small_classes;
        if (small_classes != r + 1)
            throw internal_error("solve_level: expected " + std::to_string(r + 1) +
                                 " classes of size t-1, found " +
                                 std::to_string(small_classes));
        int best = -1;
        for (int c = 1; c <= k && best == -1; ++c) {
            if (col.class_sizes[c] != t - 1) continue;
            int cnt = 0;
            for (int w : g.adj[x])
                if (col.assignment[w] == c) ++cnt;
            if (cnt <= 1) best = c;
        }
        if (best == -1)
            throw internal_error("solve_level: no insertion class with <= 1 neighbor");
        col.set(x, best);
        if (stats) ++stats->reduce_steps;
        if (opts.debug_checks && !verify(g, col).ok())
            throw internal_error("solve_level: reduction produced an invalid coloring");
        return col;
    }

    // Split on the high-degree prefix.
    VertexOrdering order = degree_descending_order(g);
    std::vector<int> degrees(n);
    for (int idx = 0; idx < n; ++idx) degrees[idx] = g.degree(order.order[idx]);
    SplitParams params = compute_split_params(n, k, d, degrees);
    // mu*(lambda-1) < n, i.e. mu*t < n*s, must hold for the peel-position
    // degree bound to be respected; violation means d or the order is wrong.
    if (ll(params.mu) * params.t >= ll(n) * params.s || params.mu >= n)
        throw internal_error("solve_level: high-degree prefix too large (mu=" +
                             std::to_string(params.mu) + ", n=" + std::to_string(n) + ")");

    std::vector<int> core_colors;
    if (params.mu > 0) {
        std::vector<int> core(order.order.begin(), order.order.begin() + params.mu);
        InducedSubgraph sub = induced_subgraph(g, core);
        std::vector<int> sub_to_root(core.size());
        for (std::size_t idx = 0; idx < core.size(); ++idx)
            sub_to_root[idx] = to_root[core[idx]];
        SolveResult rec = solve_level(sub.graph, k, opts, stats, sub_to_root, depth + 1);
        if (std::holds_alternative<StuckReport>(rec)) {
            StuckReport rep = std::get<StuckReport>(std::move(rec));
            rep.trace.insert(rep.trace.begin(), TraceFrame{"core", n, -1, params.mu});
            return rep;
        }
        core_colors = std::get<Coloring>(rec).assignment;
        int limit = static_cast<int>((ll(params.mu) + k - 1) / k);
        if (limit > params.s)
            throw internal_error("solve_level: core classes exceed s");
    }
    if (stats) ++stats->split_steps;

    ExtendState state(g, params, d, order.order, core_colors, opts, stats);
    while (true) {
        ExtendState::StepResult sr = state.step();
        if (sr == ExtendState::StepResult::done) break;
        if (sr == ExtendState::StepResult::placed) continue;
        const int v = order.order[state.next_position() - 1];
        WitnessDigraph h = state.build_witness_digraph();
        StuckReport rep = state.audit_stuck_state(v, h);
        rep.failing_vertex = to_root[v];
        rep.snapshot.local_to_root = to_root;
        return rep;
    }
    Coloring col = state.extract_restriction();
    if (opts.debug_checks && !verify(g, col).ok())
        throw internal_error("solve_level: extension produced an invalid coloring");
    return col;
}

}  // namespace

SolveResult equitable_tree_color(const Graph& g, int k, const SolveOptions& opts,
                                 SolveStats* stats) {
    if (k < 1) throw std::invalid_argument("equitable_tree_color: need k >= 1");
    std::vector<int> identity(g.n);
    std::iota(identity.begin(), identity.end(), 0);
    SolveResult res = solve_level(g, k, opts, stats, identity, 0);
    if (std::holds_alternative<Coloring>(res)) {
        const Coloring& col = std::get<Coloring>(res);
        VerificationReport rep = verify(g, col);
        if (!rep.ok() || col.k != k)
            throw internal_error("equitable_tree_color: final verification failed: " +
                                 rep.summary());
    }
    return res;
}

}  // namespace equitree
