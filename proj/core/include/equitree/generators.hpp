#pragma once

#include <cstdint>
#include <string>

#include "equitree/graph.hpp"

namespace equitree {

// splitmix64, fixed here so identical seeds give identical graphs on every
// platform. next(): state += 0x9E3779B97F4A7C15; z = state;
// z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
// return z ^ z>>31. bounded(b) = next() % b (modulo bias accepted and pinned).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t bounded(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

enum class Attachment { uniform, skewed };

// Random graph with degeneracy exactly d: vertices 0..d form a clique, and
// every later vertex attaches to exactly d distinct earlier vertices.
// uniform: earlier vertices drawn equiprobably. skewed: drawn with weight
// degree+1, degrees snapshotted when the vertex's round starts; duplicate
// draws are rejected and redrawn. Requires n >= d+1, d >= 1.
Graph random_d_degenerate(int n, int d, Attachment attach, std::uint64_t seed);

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);  // n >= 3
Graph path_graph(int n);   // n >= 1

// K_d fully joined to an independent set of s_count vertices
// (vertices 0..d-1 form the clique, the rest are the independent set).
// Requires d >= 2, s_count >= 1.
Graph treewidth_gadget(int d, int s_count);

// Regenerates random_d_degenerate with seeds seed, seed+1, ... until the
// result has max degree >= min_delta. Throws std::runtime_error after
// max_attempts failures.
struct MinDeltaResult {
    Graph graph;
    std::uint64_t seed_used = 0;
    int attempts = 0;
};
MinDeltaResult random_d_degenerate_min_delta(int n, int d, Attachment attach,
                                             std::uint64_t seed, int min_delta,
                                             int max_attempts = 1000);

// Declarative description of one instance, the unit the CLI layers work in.
struct GenSpec {
    std::string kind;  // random-d-degenerate | complete | complete-bipartite |
                       // cycle | path | treewidth-gadget
    int n = 0;
    int d = 0;
    int a = 0, b = 0;  // complete-bipartite sides
    int s_count = 0;   // treewidth-gadget independent set size
    Attachment attach = Attachment::uniform;
    std::uint64_t seed = 0;
    int min_delta = 0;  // random-d-degenerate only; 0 = unconstrained
};

struct GenInfo {
    std::uint64_t seed_used = 0;
    int attempts = 1;
};

Graph generate(const GenSpec& spec, GenInfo* info = nullptr);

}  // namespace equitree
