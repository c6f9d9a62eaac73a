#ifndef TREEDIST_TESTS_ORACLE_HPP
#define TREEDIST_TESTS_ORACLE_HPP

// Deliberately naive reference implementations. These recompute everything
// from first definitions (set intersections, exhaustive enumeration) and
// never call into the engine's algorithms; engine types appear only as
// passive data carriers.

#include <vector>

#include "core/maxflow.hpp"
#include "core/tree.hpp"

namespace oracle {

// A split as plain data: one block of the partition of {0..n}.
struct OSplit {
    int n = 0;
    std::vector<int> block; // sorted
    double weight = 0.0;
};

bool osplit_compatible(const OSplit& a, const OSplit& b);

// Minimum over all proper-path supports (ordered partition pairs satisfying
// P1 and P2) of sqrt(sum (||A_i||+||B_i||)^2). Sides capped at 5 splits.
double brute_geodesic(const std::vector<OSplit>& A, const std::vector<OSplit>& B);

// Same search restricted to supports that also pass an exhaustive P3
// sub-partition scan; every survivor must agree on the value.
double brute_geodesic_p3(const std::vector<OSplit>& A, const std::vector<OSplit>& B);

struct BruteCover {
    std::vector<int> left, right;
    double weight = 0.0;
};

// Exhaustive minimum-weight cover over all vertex subsets (<= 20 vertices);
// ties resolved towards the lexicographically smallest vertex set.
BruteCover brute_min_cover(const treedist::IncompatGraph& g);

// Exhaustive minimum s-t cut weight of the implied flow network.
double brute_min_cut(const treedist::IncompatGraph& g);

// Robinson-Foulds by independent clade traversal.
int brute_rf(const treedist::Tree& a, const treedist::Tree& b);

} // namespace oracle

#endif
