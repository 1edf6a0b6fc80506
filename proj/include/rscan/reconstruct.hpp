#pragma once
// General reconstruction of a binary matrix from its rectangular scan: minimal
// valuations of the chi pattern per residue class, a lazy Cartesian walk over
// their combinations, and for each candidate a smooth completion of the
// residual scan merged around the candidate's cells.

#include <optional>

#include "rscan/smooth_recon.hpp"
#include "rscan/valuations.hpp"

namespace rscan {

struct ReconstructionStats {
    unsigned long long candidates_tried = 0;   // valuation combinations examined
    unsigned long long symbolic_grids_tried = 0;
    unsigned long long merge_conflicts = 0;
    OpCounter ops;
};

struct ReconstructionOutcome {
    std::optional<BinaryGrid> solution;
    ReconstructionStats stats;

    bool ok() const { return solution.has_value(); }
};

// Places one symbolic completion around the fixed cells of base: P/Q cells
// become 1s, each unit picks, per actual column (or row), the first of its
// residue classes that fits. nullopt on any collision.
std::optional<BinaryGrid> merge_symbolic(const BinaryGrid& base, const SymbolicGrid& sym,
                                         const WindowSpec& w, OpCounter* ops = nullptr);

// Throws std::invalid_argument when the scan is empty or has a cell outside
// [0, p*q] (no binary matrix produces such a scan). Otherwise returns either a
// verified solution or failure diagnostics.
ReconstructionOutcome reconstruct(const IntGrid& a, const WindowSpec& w);

// True iff m_grid has the dimensions the scan dictates and re-scanning it
// reproduces a exactly.
bool verify(const IntGrid& a, const BinaryGrid& m_grid, const WindowSpec& w);

}  // namespace rscan
