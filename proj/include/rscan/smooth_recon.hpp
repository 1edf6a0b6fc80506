#pragma once
// Reconstruction from a (1,1)-smooth scan. Each decomposition of the scan
// yields per-row and per-column budgets; a p x q window template assigns each
// residue class a role (row-periodic part, column-periodic part, or a full
// residue-class unit), and materializing the template produces a preimage.
// The *_all variant keeps the units symbolic so the general reconstruction
// can still choose, per row or column, where each unit lands.

#include <functional>
#include <optional>
#include <vector>

#include "rscan/invariant_recon.hpp"
#include "rscan/scan.hpp"

namespace rscan {

enum class SymbolKind : std::uint8_t {
    Zero,
    One,   // fixed full residue class (plain variant only)
    P,     // cell of the (p,0)-invariant part
    Q,     // cell of the (0,q)-invariant part
    UnitP, // indexed unit, placed per actual column at merge time
    UnitQ, // indexed unit, placed per actual row at merge time
};

struct Symbol {
    SymbolKind kind = SymbolKind::Zero;
    std::uint8_t index = 0;  // 1-based unit number for UnitP / UnitQ

    bool operator==(const Symbol&) const = default;
};

using WindowTemplate = Grid<Symbol>;  // p x q
using SymbolicGrid = Grid<Symbol>;    // m x n

// Per residue class, the maximum budget over its members.
std::vector<int> class_max(const std::vector<int>& per_index, int period);

// First p x q template over {0, 1, P, Q} with: #Q in row r = q_row_need[r],
// #P in column c = p_col_need[c], total #1 = ones. Cells enumerated row-major,
// symbols tried in the order 0, 1, P, Q.
std::optional<WindowTemplate> find_window_template(const std::vector<int>& q_row_need,
                                                   const std::vector<int>& p_col_need,
                                                   int ones, const WindowSpec& w,
                                                   OpCounter* ops = nullptr);

// One preimage of a (1,1)-smooth scan, or nullopt if none exists.
std::optional<BinaryGrid> rec_smooth(const IntGrid& a, const WindowSpec& w,
                                     OpCounter* ops = nullptr);

// Streams every symbolic preimage shape of a (1,1)-smooth scan in canonical
// order (decomposition index ascending, then template enumeration order),
// deduplicated by cell content. P/Q cells are concrete 1s of the periodic
// parts; UnitP/UnitQ cells mark whole residue classes a unit may occupy.
// Returns false iff the sink stopped the stream early.
bool for_each_smooth_symbolic(const IntGrid& a, const WindowSpec& w,
                              const std::function<bool(const SymbolicGrid&)>& sink,
                              OpCounter* ops = nullptr);

// All symbolic grids, collected. (Diagnostic/test form of the stream.)
std::vector<SymbolicGrid> rec_smooth_all(const IntGrid& a, const WindowSpec& w,
                                         OpCounter* ops = nullptr);

// Resolves a symbolic grid with no Unit symbols into the binary matrix it
// denotes (P/Q cells become 1s); nullopt if units are present.
std::optional<BinaryGrid> concretize(const SymbolicGrid& g);

}  // namespace rscan
