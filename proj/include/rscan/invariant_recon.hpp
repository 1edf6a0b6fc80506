#pragma once
// Reconstruction of a matrix invariant under (0,q) translations from a scan
// with constant rows, and the transpose dual for (p,0)-invariant matrices.
// The Step-1 bookkeeping (per-row budgets over the first q columns) is also
// consumed by the smooth reconstruction.

#include <optional>
#include <vector>

#include "rscan/scan.hpp"

namespace rscan {

// Which transition rule fired between consecutive scan rows.
enum class Step1Case : std::uint8_t {
    Fill = 1,   // next scan value >= current: row i+p opens with the surplus
    Covered = 2,// deficit fits inside row i's existing budget
    TopUp = 3,  // deficit exceeds row i's budget: widen its whole residue class
};

struct PartialFill {
    BinaryGrid partial;     // m x n; only columns 1..q are populated here
    std::vector<int> pent;  // per row, number of 1s placed in columns 1..q
    int k_remaining = 0;    // leftover weight the corner windows still need

    int pent_at(int i) const { return pent[static_cast<std::size_t>(i) - 1]; }
};

// Step 1: walk the first scan column and fill row budgets. Output dims are
// m = a.rows()+p-1, n = a.cols()+q-1. Returns nullopt when a budget would
// exceed q or the leftover corner weight goes negative. `fired` (if given)
// receives the rule applied at each of the a.rows()-1 transitions.
std::optional<PartialFill> rec_const_rows_step1(const IntGrid& a, const WindowSpec& w,
                                                std::vector<Step1Case>* fired = nullptr,
                                                OpCounter* ops = nullptr);

// Full reconstruction of a (0,q)-invariant binary matrix whose scan equals a
// (which must have constant rows); nullopt when no such matrix exists.
std::optional<BinaryGrid> rec_const_rows(const IntGrid& a, const WindowSpec& w,
                                         OpCounter* ops = nullptr);

// Transpose dual: (p,0)-invariant matrix from a scan with constant columns.
std::optional<BinaryGrid> rec_const_cols(const IntGrid& a, const WindowSpec& w,
                                         OpCounter* ops = nullptr);

}  // namespace rscan
