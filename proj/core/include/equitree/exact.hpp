#pragma once

#include <optional>

#include "equitree/coloring.hpp"
#include "equitree/graph.hpp"

namespace equitree {

struct SearchBudget {
    long long node_limit = 100'000'000;
    double time_limit_secs = 60.0;
};

enum class Verdict { sat, unsat, indeterminate };

const char* verdict_name(Verdict v);

struct Decision {
    Verdict verdict = Verdict::indeterminate;
    std::optional<Coloring> witness;  // present iff sat
    long long nodes = 0;
    double millis = 0.0;
};

// Complete decision procedure: does g admit a partition into k classes,
// each inducing a forest, with the (unique) equitable size profile
// (n mod k classes of ceil(n/k), the rest floor(n/k)) enforced as hard
// caps? Search assigns vertices in degree-descending order, prunes any
// placement that closes a cycle or overfills a class, and breaks color
// symmetry by only opening the lowest-indexed empty class within each
// group of equal-cap classes. indeterminate = budget exhausted.
Decision exact_equitable_tree_k(const Graph& g, int k, const SearchBudget& budget = {});

struct VaEqResult {
    int value = 0;          // meaningful when verdict == sat
    Verdict verdict = Verdict::indeterminate;
    long long nodes = 0;    // summed over all probes
    double millis = 0.0;
};

// Smallest k admitting an equitable tree-k-coloring. Scans k = 1,2,...;
// every k >= ceil(n/2) is satisfiable (classes of size <= 2 induce
// forests), so the scan is finite. indeterminate propagates.
VaEqResult va_eq(const Graph& g, const SearchBudget& budget = {});

// Smallest k0 such that every k >= k0 is satisfiable. Scans downward from
// ceil(n/2); the answer is one above the first unsatisfiable k (1 if none).
VaEqResult va_eq_star(const Graph& g, const SearchBudget& budget = {});

// Reference oracle: enumerate all k^n assignments. Guarded to tiny inputs
// (n <= 10); used to validate the pruned search in tests.
bool cross_check_naive(const Graph& g, int k);

}  // namespace equitree
