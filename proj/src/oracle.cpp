#include "rscan/oracle.hpp"

#include <algorithm>
#include <random>

namespace rscan {

namespace {

bool cells_less(const BinaryGrid& a, const BinaryGrid& b) {
    return a.cells() < b.cells();
}

// Deterministic coin: top 53 bits of the next draw mapped to [0,1).
bool coin(std::mt19937_64& rng, double prob) {
    const double u = double(rng() >> 11) * (1.0 / 9007199254740992.0);
    return u < prob;
}

}  // namespace

std::vector<BinaryGrid> oracle_preimages(const IntGrid& a, const WindowSpec& w,
                                         std::size_t cap, int max_cells) {
    require_window(w);
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("oracle_preimages: scan must be nonempty");
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    if (m * n > max_cells)
        throw SizeGuardError("oracle_preimages: preimage cell count exceeds guard");

    const int bound = w.p * w.q;
    for (int v : a.cells())
        if (v < 0 || v > bound) return {};

    const int sr = a.rows(), sc = a.cols();
    std::vector<int> sum(size_t(sr) * size_t(sc), 0);
    std::vector<int> rem(size_t(sr) * size_t(sc), bound);
    auto widx = [sc](int r, int c) { return size_t(r - 1) * size_t(sc) + size_t(c - 1); };

    BinaryGrid cur(m, n);
    std::vector<BinaryGrid> out;

    // Cells are fixed in column-major order; a window's sum is checked as soon
    // as it can no longer change (upper bound) or can no longer reach the
    // target (lower bound via remaining free cells).
    auto dfs = [&](auto&& self, int idx) -> bool {
        if (idx == m * n) {
            out.push_back(cur);
            return cap == 0 || out.size() < cap;
        }
        const int col = idx / m + 1;
        const int row = idx % m + 1;
        const int r_lo = std::max(1, row - w.p + 1), r_hi = std::min(sr, row);
        const int c_lo = std::max(1, col - w.q + 1), c_hi = std::min(sc, col);

        for (int v = 0; v <= 1; ++v) {
            bool ok = true;
            for (int r = r_lo; ok && r <= r_hi; ++r)
                for (int c = c_lo; ok && c <= c_hi; ++c) {
                    const size_t k = widx(r, c);
                    const int s = sum[k] + v, left = rem[k] - 1;
                    if (s > a.at(r, c) || s + left < a.at(r, c)) ok = false;
                }
            if (!ok) continue;
            for (int r = r_lo; r <= r_hi; ++r)
                for (int c = c_lo; c <= c_hi; ++c) {
                    const size_t k = widx(r, c);
                    sum[k] += v;
                    rem[k] -= 1;
                }
            cur.at(row, col) = std::uint8_t(v);
            const bool keep_going = self(self, idx + 1);
            cur.at(row, col) = 0;
            for (int r = r_lo; r <= r_hi; ++r)
                for (int c = c_lo; c <= c_hi; ++c) {
                    const size_t k = widx(r, c);
                    sum[k] -= v;
                    rem[k] += 1;
                }
            if (!keep_going) return false;
        }
        return true;
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(), cells_less);
    return out;
}

std::vector<BinaryGrid> oracle_minimal_valuation_grids(const IntGrid& target) {
    const int h = target.rows(), w = target.cols();
    if (h * w > 16)
        throw SizeGuardError("oracle_minimal_valuation_grids: target area exceeds guard");
    for (int v : target.cells())
        if (v < -2 || v > 2) return {};

    const int m = h + 1, n = w + 1;
    BinaryGrid cur(m, n);
    std::vector<BinaryGrid> out;

    // Column-major DFS; the chi cell (i-1, j-1) is determined once cur(i, j)
    // is fixed, which prunes most of the 2^(m*n) space immediately.
    auto dfs = [&](auto&& self, int idx) -> void {
        if (idx == m * n) {
            for (int i = 1; i <= m; ++i) {
                bool full = true;
                for (int j = 1; full && j <= n; ++j) full = cur.at(i, j);
                if (full) return;
            }
            for (int j = 1; j <= n; ++j) {
                bool full = true;
                for (int i = 1; full && i <= m; ++i) full = cur.at(i, j);
                if (full) return;
            }
            out.push_back(cur);
            return;
        }
        const int col = idx / m + 1;
        const int row = idx % m + 1;
        for (int v = 0; v <= 1; ++v) {
            cur.at(row, col) = std::uint8_t(v);
            if (row >= 2 && col >= 2) {
                const int x = cur.at(row - 1, col - 1) + cur.at(row, col) -
                              cur.at(row, col - 1) - cur.at(row - 1, col);
                if (x != target.at(row - 1, col - 1)) continue;
            }
            self(self, idx + 1);
        }
        cur.at(row, col) = 0;
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(), cells_less);
    return out;
}

std::vector<Valuation> oracle_minimal_valuations(const IntGrid& target,
                                                 const SubgridRef& ref) {
    require_subgrid_ref(ref);
    const auto rr = residue_rows(ref.a, ref.w.p, ref.parent_rows);
    const auto cc = residue_cols(ref.b, ref.w.q, ref.parent_cols);
    if (int(rr.size()) != target.rows() + 1 || int(cc.size()) != target.cols() + 1)
        throw std::invalid_argument(
            "oracle_minimal_valuations: target does not match the ref's class sizes");

    std::vector<Valuation> out;
    for (const BinaryGrid& sub : oracle_minimal_valuation_grids(target)) {
        Valuation v{BinaryGrid(ref.parent_rows, ref.parent_cols), ref};
        scatter_subgrid(v.grid, sub, ref);
        out.push_back(std::move(v));
    }
    return out;
}

BinaryGrid generate(const InstanceSpec& spec) {
    if (spec.m < 1 || spec.n < 1)
        throw std::invalid_argument("generate: dimensions must be positive");
    require_window_fits(spec.window, spec.m, spec.n);
    if (!(spec.density >= 0.0 && spec.density <= 1.0))
        throw std::invalid_argument("generate: density must lie in [0,1]");

    const int m = spec.m, n = spec.n, p = spec.window.p, q = spec.window.q;
    std::mt19937_64 rng(spec.seed);
    BinaryGrid g(m, n);

    switch (spec.family) {
        case Family::General:
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= n; ++j) g.at(i, j) = coin(rng, spec.density);
            break;

        case Family::RowInvariant:
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= n; ++j)
                    g.at(i, j) = (j <= q) ? std::uint8_t(coin(rng, spec.density))
                                          : g.at(i, j - q);
            break;

        case Family::ColInvariant:
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= n; ++j)
                    g.at(i, j) = (i <= p) ? std::uint8_t(coin(rng, spec.density))
                                          : g.at(i - p, j);
            break;

        case Family::Homogeneous:
            for (int r = 1; r <= p; ++r)
                for (int c = 1; c <= q; ++c) {
                    if (!coin(rng, spec.density)) continue;
                    for (int i : residue_rows(r, p, m))
                        for (int j : residue_cols(c, q, n)) g.at(i, j) = 1;
                }
            break;

        case Family::Smooth: {
            // Disjoint template cells keep the (p,0)-invariant part and the
            // (0,q)-invariant part from overlapping; their sum is smooth.
            enum Kind { None, PCell, QCell };
            Grid<int> kind(p, q);
            for (int r = 1; r <= p; ++r)
                for (int c = 1; c <= q; ++c) {
                    if (coin(rng, 0.4))
                        kind.at(r, c) = PCell;
                    else if (coin(rng, 0.6))
                        kind.at(r, c) = QCell;
                }
            for (int j = 1; j <= n; ++j)
                for (int r = 1; r <= p; ++r)
                    if (kind.at(r, class_rep(j, q)) == PCell && coin(rng, spec.density))
                        for (int i : residue_rows(r, p, m)) g.at(i, j) = 1;
            for (int i = 1; i <= m; ++i)
                for (int c = 1; c <= q; ++c)
                    if (kind.at(class_rep(i, p), c) == QCell && coin(rng, spec.density))
                        for (int j : residue_cols(c, q, n)) g.at(i, j) = 1;
            if (!is_smooth(g, spec.window))
                throw std::logic_error("generate: smooth construction failed");
            break;
        }
    }
    return g;
}

}  // namespace rscan
