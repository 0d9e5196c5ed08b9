#pragma once

#include <string>
#include <vector>

#include "equitree/graph.hpp"

namespace equitree {

// A (possibly partial) assignment of colors 1..k; 0 means unassigned.
// class_sizes[c] tracks |class c| and is kept consistent by the helpers.
struct Coloring {
    int k = 0;
    std::vector<int> assignment;          // size n, values 0..k
    std::vector<int> class_sizes;         // size k+1, [0] unused

    static Coloring empty(int n, int k);
    // Validates range and recomputes class_sizes.
    static Coloring from_assignment(int k, std::vector<int> assignment);

    int n() const { return static_cast<int>(assignment.size()); }
    bool complete() const;
    void set(int v, int color);           // handles reassignment and 0
};

// True when the vertices of the given color induce a forest. When false
// and cycle_out is non-null, *cycle_out receives the vertices of one cycle
// in order (first != last; the closing edge is implicit).
bool class_induces_forest(const Graph& g, const Coloring& c, int color,
                          std::vector<int>* cycle_out = nullptr);

// Sizes of any two classes differ by at most one. Throws
// std::invalid_argument if the coloring is partial.
bool is_equitable(const Coloring& c);

struct ClassForestCheck {
    int color = 0;
    bool ok = true;
    std::vector<int> cycle;
};

struct VerificationReport {
    bool complete = true;
    bool forests_ok = true;
    bool equitable_ok = true;
    std::vector<ClassForestCheck> classes;   // only failing classes listed
    int size_min = 0, size_max = 0;
    int color_min = 0, color_max = 0;        // witnesses for a size violation
    bool ok() const { return complete && forests_ok && equitable_ok; }
    std::string summary() const;
};

VerificationReport verify(const Graph& g, const Coloring& c);

}  // namespace equitree
