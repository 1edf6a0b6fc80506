#pragma once
// Ground-truth machinery: exhaustive (pruned) preimage search, exhaustive
// minimal-valuation search, and seeded instance generators. The exhaustive
// searches are the independent referees for the reconstruction algorithms.

#include <cstdint>
#include <stdexcept>

#include "rscan/valuations.hpp"

namespace rscan {

struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every binary M with rectangular_scan(M, w) = a, by column-major DFS with
// incremental window-sum pruning. cap = 0 means unbounded. The preimage has
// m*n = (rows+p-1)*(cols+q-1) cells; max_cells guards that product.
std::vector<BinaryGrid> oracle_preimages(const IntGrid& a, const WindowSpec& w,
                                         std::size_t cap = 0, int max_cells = 24);

// Every minimal valuation of `target` (compact (h+1) x (w+1) grids: chi11
// matches, no all-1 row/column), by pruned DFS over the valuation cells.
// Guard: target area h*w <= 16. Canonical order, identical to
// enumerate_minimal_grids' order.
std::vector<BinaryGrid> oracle_minimal_valuation_grids(const IntGrid& target);
std::vector<Valuation> oracle_minimal_valuations(const IntGrid& target,
                                                 const SubgridRef& ref);

enum class Family { General, Smooth, RowInvariant, ColInvariant, Homogeneous };

struct InstanceSpec {
    int m = 1;
    int n = 1;
    WindowSpec window;
    double density = 0.5;
    std::uint64_t seed = 0;
    Family family = Family::General;
};

// Deterministic per seed. Families: general = iid cells; row-invariant =
// (0,q)-invariant; col-invariant = (p,0)-invariant; homogeneous = union of
// full residue classes; smooth = disjoint (p,0)- and (0,q)-invariant parts
// (verified smooth after construction).
BinaryGrid generate(const InstanceSpec& spec);

}  // namespace rscan
