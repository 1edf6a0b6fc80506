#pragma once
// Splitting a (1,1)-smooth nonnegative scan A into its k+1 decompositions
// A = row_part + col_part (constant rows plus constant columns), k = min cell.

#include <optional>
#include <vector>

#include "rscan/scan.hpp"

namespace rscan {

struct Decomposition {
    IntGrid row_part;  // every row constant
    IntGrid col_part;  // every column constant
    int t = 0;         // shift index in [0, k]

    bool operator==(const Decomposition&) const = default;
};

bool has_constant_rows(const IntGrid& a);
bool has_constant_cols(const IntGrid& a);

// Exactly k+1 decompositions in ascending t, both parts nonnegative; nullopt
// when the residual after peeling the global and per-row minima is not
// column-constant (equivalently: a is not (1,1)-smooth). Cells must be >= 0.
std::optional<std::vector<Decomposition>> decompose(const IntGrid& a);

}  // namespace rscan
