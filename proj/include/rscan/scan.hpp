#pragma once
// Forward transforms: rectangular window scan, the chi four-corner difference,
// subgrid extraction over residue classes, and the smooth/invariance predicates.

#include <utility>

#include "rscan/grid.hpp"

namespace rscan {

// R_{p,q}(M): window sums over all p x q placements; dims (m-p+1) x (n-q+1).
// Throws if the window does not fit.
IntGrid rectangular_scan(const BinaryGrid& m_grid, const WindowSpec& w);

// chi_{p,q}(G)[i,j] = G[i,j] + G[i+p,j+q] - G[i+p,j] - G[i,j+q];
// dims (rows-p) x (cols-q), possibly empty. Throws if p > rows or q > cols.
IntGrid chi(const IntGrid& g, const WindowSpec& w);
inline IntGrid chi(const BinaryGrid& g, const WindowSpec& w) { return chi(to_int(g), w); }

// chi_{1,1} applied to a scan A; equals chi_{p,q} of any preimage of A.
inline IntGrid chi11_of_scan(const IntGrid& a) { return chi(a, {1, 1}); }

bool all_zero(const IntGrid& g);

// M is smooth for (p,q) iff chi_{p,q}(M) is all-zero (vacuously for empty chi).
bool is_smooth(const BinaryGrid& m_grid, const WindowSpec& w);

// A scan is (1,1)-smooth iff chi11 vanishes.
inline bool is_smooth_scan(const IntGrid& a) { return all_zero(chi11_of_scan(a)); }

// True iff M[i + k*dr, j + k*dc] = M[i,j] for every integer k keeping the cell
// in range (both directions). (dr,dc) = (0,0) is trivially true.
bool is_invariant_at(const BinaryGrid& m_grid, int i, int j, int dr, int dc);
bool is_invariant(const BinaryGrid& m_grid, int dr, int dc);

// Splits a smooth M into (M1, M2): M1 keeps the 1-cells whose full (p,0) orbit
// is 1 (so M1 is (p,0)-invariant), M2 the rest (all (0,q)-invariant). Disjoint
// supports, M1 + M2 = M. Cells invariant both ways go to M1. Throws on
// non-smooth input.
std::pair<BinaryGrid, BinaryGrid> classify_smooth_cells(const BinaryGrid& m_grid,
                                                        const WindowSpec& w);

// The (a,b)-subgrid: rows congruent to a mod p, columns congruent to b mod q,
// both ascending. parent_rows/parent_cols name the grid the ref applies to.
struct SubgridRef {
    int a = 1;
    int b = 1;
    WindowSpec w;
    int parent_rows = 0;
    int parent_cols = 0;
};

void require_subgrid_ref(const SubgridRef& ref);  // 1 <= a <= p, 1 <= b <= q

template <typename T>
Grid<T> extract_subgrid(const Grid<T>& g, const SubgridRef& ref) {
    require_subgrid_ref(ref);
    assert(ref.parent_rows == g.rows() && ref.parent_cols == g.cols());
    const auto rr = residue_rows(ref.a, ref.w.p, g.rows());
    const auto cc = residue_cols(ref.b, ref.w.q, g.cols());
    Grid<T> out(int(rr.size()), int(cc.size()));
    for (int i = 1; i <= out.rows(); ++i)
        for (int j = 1; j <= out.cols(); ++j) out.at(i, j) = g.at(rr[i - 1], cc[j - 1]);
    return out;
}

// Writes sub into the residue-class cells of g named by ref.
template <typename T>
void scatter_subgrid(Grid<T>& g, const Grid<T>& sub, const SubgridRef& ref) {
    require_subgrid_ref(ref);
    assert(ref.parent_rows == g.rows() && ref.parent_cols == g.cols());
    const auto rr = residue_rows(ref.a, ref.w.p, g.rows());
    const auto cc = residue_cols(ref.b, ref.w.q, g.cols());
    assert(int(rr.size()) == sub.rows() && int(cc.size()) == sub.cols());
    for (int i = 1; i <= sub.rows(); ++i)
        for (int j = 1; j <= sub.cols(); ++j) g.at(rr[i - 1], cc[j - 1]) = sub.at(i, j);
}

}  // namespace rscan
