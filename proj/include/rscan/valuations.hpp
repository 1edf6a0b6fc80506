#pragma once
// Minimal valuations of the (a,b)-subgrids of chi11 of a scan: the row-sweep
// enumeration over binary row lifts of the target's 2D running sum, the
// row/column reduction order, and the Cartesian combination step feeding the
// general reconstruction.

#include <cstddef>
#include <vector>

#include "rscan/scan.hpp"

namespace rscan {

// A binary grid supported on one residue class (rows = a mod p, cols = b mod q)
// whose chi, restricted to that class's subgrid, matches a target pattern.
struct Valuation {
    BinaryGrid grid;     // full m x n grid, zero off the support class
    SubgridRef support;  // parent dims are (m, n)

    bool operator==(const Valuation&) const = default;
};

// Zeroes all-1 rows/columns of the compact subgrid view until none remain.
// chi-preserving and idempotent; the result is minimal in the deletion order.
BinaryGrid reduce_valuation_grid(BinaryGrid sub);
Valuation reduce_valuation(const Valuation& v);

// Per-state expansion records from the row sweep, used by the property tests
// on branching and frontier growth. One entry per (live state, row) step.
struct EnumerationTrace {
    struct Expansion {
        bool parent_has_zero_row = false;  // partial grid had an all-0 row
        int children = 0;                  // surviving lifts for the next row
    };
    std::vector<Expansion> expansions;
    std::size_t max_frontier = 0;  // max live states across row levels
};

// All minimal valuations of `target` as compact grids of dimensions
// (target.rows()+1) x (target.cols()+1): chi_{1,1} equals target, no all-1 row
// or column. Canonical order (lexicographic by row-major cells). Target cells
// must lie in [-2,2]. Empty result = target unrealizable.
std::vector<BinaryGrid> enumerate_minimal_grids(const IntGrid& target,
                                                EnumerationTrace* trace = nullptr,
                                                OpCounter* ops = nullptr);

// Same, scattered onto full parent-sized grids over the ref's residue class.
// The target must be the (ref.a, ref.b)-subgrid of the chi11 of a scan whose
// preimages have the ref's parent dimensions.
std::vector<Valuation> enumerate_minimal(const IntGrid& target, const SubgridRef& ref,
                                         EnumerationTrace* trace = nullptr,
                                         OpCounter* ops = nullptr);

// Cartesian-product sums taking one valuation from each subgrid sequence, in
// lexicographic order of the per-sequence indices (last index fastest).
// Supports of distinct subgrids are disjoint, so every sum is binary. Returns
// empty when any sequence is empty.
std::vector<BinaryGrid> combine_valuations(
    const std::vector<std::vector<Valuation>>& per_subgrid);

}  // namespace rscan
