#include "rscan/valuations.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace rscan {

namespace {

bool row_all_one(const BinaryGrid& b, int r) {
    for (int c = 1; c <= b.cols(); ++c)
        if (!b.at(r, c)) return false;
    return b.cols() > 0;
}

bool col_all_one(const BinaryGrid& b, int c) {
    for (int r = 1; r <= b.rows(); ++r)
        if (!b.at(r, c)) return false;
    return b.rows() > 0;
}

bool cells_less(const BinaryGrid& a, const BinaryGrid& b) { return a.cells() < b.cells(); }

// Partial assignment of binary row lifts u_1..u_k together with the per-column
// envelope (min and max) of Z(i,j) = psum(i,j) + u_i over the assigned rows.
struct LiftState {
    std::vector<std::int8_t> u;
    std::vector<int> lo, hi;
};

}  // namespace

BinaryGrid reduce_valuation_grid(BinaryGrid sub) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 1; r <= sub.rows(); ++r)
            if (row_all_one(sub, r)) {
                for (int c = 1; c <= sub.cols(); ++c) sub.at(r, c) = 0;
                changed = true;
            }
        for (int c = 1; c <= sub.cols(); ++c)
            if (col_all_one(sub, c)) {
                for (int r = 1; r <= sub.rows(); ++r) sub.at(r, c) = 0;
                changed = true;
            }
    }
    return sub;
}

Valuation reduce_valuation(const Valuation& v) {
    Valuation out{BinaryGrid(v.grid.rows(), v.grid.cols(), 0), v.support};
    scatter_subgrid(out.grid, reduce_valuation_grid(extract_subgrid(v.grid, v.support)),
                    v.support);
    return out;
}

std::vector<BinaryGrid> enumerate_minimal_grids(const IntGrid& target, EnumerationTrace* trace,
                                                OpCounter* ops) {
    for (int i = 1; i <= target.rows(); ++i)
        for (int j = 1; j <= target.cols(); ++j)
            if (target.at(i, j) < -2 || target.at(i, j) > 2) return {};

    const int rows = target.rows() + 1;
    const int cols = target.cols() + 1;

    // The difference pattern fixes a grid up to one offset per row plus one
    // per column around the running 2D sum of the target:
    //   B(i,j) = psum(i,j) + u_i + v_j,  psum(i,j) = sum of target above-left.
    // Minimality pins v to minus the per-column minimum of Z(i,j) =
    // psum(i,j) + u_i — any slack would make an all-1 column — leaving only
    // the binary row lifts u to search. A lift vector is valid iff every
    // column of Z has spread <= 1 (cells stay binary) and every row of Z
    // touches some column minimum (no all-1 row). Both conditions only
    // tighten as rows are added, so every solution's prefix survives the
    // sweep and the search never needs to backtrack across rows.
    IntGrid psum(rows, cols, 0);
    for (int i = 2; i <= rows; ++i)
        for (int j = 2; j <= cols; ++j)
            psum.at(i, j) = target.at(i - 1, j - 1) + psum.at(i - 1, j) + psum.at(i, j - 1) -
                            psum.at(i - 1, j - 1);

    if (trace) {
        trace->expansions.clear();
        trace->max_frontier = 1;
    }

    std::vector<LiftState> frontier(1);

    for (int r = 1; r <= rows; ++r) {
        std::vector<LiftState> next;
        for (const LiftState& s : frontier) {
            const int assigned = static_cast<int>(s.u.size());
            int kids = 0;
            for (int lift = 0; lift <= 1; ++lift) {
                LiftState t;
                t.u = s.u;
                t.u.push_back(static_cast<std::int8_t>(lift));
                t.lo.resize(static_cast<std::size_t>(cols));
                t.hi.resize(static_cast<std::size_t>(cols));
                bool ok = true;
                for (int j = 1; j <= cols && ok; ++j) {
                    const int z = psum.at(r, j) + lift;
                    const int lo = assigned == 0 ? z : std::min(s.lo[std::size_t(j - 1)], z);
                    const int hi = assigned == 0 ? z : std::max(s.hi[std::size_t(j - 1)], z);
                    if (hi - lo > 1) ok = false;
                    t.lo[std::size_t(j - 1)] = lo;
                    t.hi[std::size_t(j - 1)] = hi;
                }
                count_ops(ops, static_cast<std::size_t>(cols));
                for (int i = 1; i <= r && ok; ++i) {
                    bool touch = false;
                    for (int j = 1; j <= cols && !touch; ++j)
                        touch = psum.at(i, j) + t.u[std::size_t(i - 1)] == t.lo[std::size_t(j - 1)];
                    ok = touch;
                    count_ops(ops, static_cast<std::size_t>(cols));
                }
                if (!ok) continue;
                next.push_back(std::move(t));
                ++kids;
            }
            if (trace) {
                bool zero_row = s.u.empty();
                for (int i = 1; i <= assigned && !zero_row; ++i) {
                    bool flat = true;
                    for (int j = 1; j <= cols && flat; ++j)
                        flat = psum.at(i, j) + s.u[std::size_t(i - 1)] == s.lo[std::size_t(j - 1)];
                    zero_row = flat;
                }
                trace->expansions.push_back({zero_row, kids});
            }
        }
        frontier = std::move(next);
        if (trace) trace->max_frontier = std::max(trace->max_frontier, frontier.size());
    }

    // The row/column split is unique up to a constant, so distinct lift
    // vectors only collide on the all-0 vs all-1 pair; a set handles it.
    std::set<std::vector<std::uint8_t>> seen;
    std::vector<BinaryGrid> out;
    for (const LiftState& s : frontier) {
        BinaryGrid b(rows, cols, 0);
        for (int i = 1; i <= rows; ++i)
            for (int j = 1; j <= cols; ++j)
                b.at(i, j) = static_cast<std::uint8_t>(psum.at(i, j) + s.u[std::size_t(i - 1)] -
                                                       s.lo[std::size_t(j - 1)]);
        count_ops(ops, b.cells().size());
        if (seen.insert(b.cells()).second) out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), cells_less);
    return out;
}

std::vector<Valuation> enumerate_minimal(const IntGrid& target, const SubgridRef& ref,
                                         EnumerationTrace* trace, OpCounter* ops) {
    require_subgrid_ref(ref);
    const auto rr = residue_rows(ref.a, ref.w.p, ref.parent_rows);
    const auto cc = residue_cols(ref.b, ref.w.q, ref.parent_cols);
    if (static_cast<int>(rr.size()) != target.rows() + 1 ||
        static_cast<int>(cc.size()) != target.cols() + 1)
        throw std::invalid_argument("enumerate_minimal: ref class sizes do not fit target");

    std::vector<Valuation> out;
    for (BinaryGrid& g : enumerate_minimal_grids(target, trace, ops)) {
        Valuation v{BinaryGrid(ref.parent_rows, ref.parent_cols, 0), ref};
        scatter_subgrid(v.grid, g, ref);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<BinaryGrid> combine_valuations(const std::vector<std::vector<Valuation>>& per_subgrid) {
    if (per_subgrid.empty()) return {};
    for (const auto& seq : per_subgrid)
        if (seq.empty()) return {};

    const int m_rows = per_subgrid[0][0].grid.rows();
    const int n_cols = per_subgrid[0][0].grid.cols();
    std::vector<std::size_t> idx(per_subgrid.size(), 0);
    std::vector<BinaryGrid> out;
    while (true) {
        IntGrid acc(m_rows, n_cols, 0);
        for (std::size_t k = 0; k < per_subgrid.size(); ++k) {
            const Valuation& v = per_subgrid[k][idx[k]];
            assert(v.grid.rows() == m_rows && v.grid.cols() == n_cols);
            acc = add(acc, to_int(v.grid));
        }
        out.push_back(to_binary(acc));  // throws if supports ever overlapped

        std::size_t k = per_subgrid.size();
        while (k > 0) {
            --k;
            if (++idx[k] < per_subgrid[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
    }
}

}  // namespace rscan
