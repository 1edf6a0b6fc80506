#include "rscan/scan.hpp"

namespace rscan {

IntGrid rectangular_scan(const BinaryGrid& m_grid, const WindowSpec& w) {
    const int m = m_grid.rows(), n = m_grid.cols();
    require_window_fits(w, m, n);

    // Summed-area table: pre[i][j] = sum of the i x j top-left block.
    std::vector<std::vector<int>> pre(size_t(m) + 1, std::vector<int>(size_t(n) + 1, 0));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            pre[i][j] = m_grid.at(i, j) + pre[i - 1][j] + pre[i][j - 1] - pre[i - 1][j - 1];

    IntGrid out(m - w.p + 1, n - w.q + 1);
    for (int i = 1; i <= out.rows(); ++i)
        for (int j = 1; j <= out.cols(); ++j) {
            const int i2 = i + w.p - 1, j2 = j + w.q - 1;
            out.at(i, j) = pre[i2][j2] - pre[i - 1][j2] - pre[i2][j - 1] + pre[i - 1][j - 1];
        }
    return out;
}

IntGrid chi(const IntGrid& g, const WindowSpec& w) {
    require_window(w);
    if (w.p > g.rows() || w.q > g.cols())
        throw std::invalid_argument("chi: window exceeds grid dimensions");
    IntGrid out(g.rows() - w.p, g.cols() - w.q);
    for (int i = 1; i <= out.rows(); ++i)
        for (int j = 1; j <= out.cols(); ++j)
            out.at(i, j) = g.at(i, j) + g.at(i + w.p, j + w.q) - g.at(i + w.p, j) -
                           g.at(i, j + w.q);
    return out;
}

bool all_zero(const IntGrid& g) {
    for (int v : g.cells())
        if (v != 0) return false;
    return true;
}

bool is_smooth(const BinaryGrid& m_grid, const WindowSpec& w) {
    return all_zero(chi(m_grid, w));
}

bool is_invariant_at(const BinaryGrid& m_grid, int i, int j, int dr, int dc) {
    assert(i >= 1 && i <= m_grid.rows() && j >= 1 && j <= m_grid.cols());
    if (dr == 0 && dc == 0) return true;
    const int v = m_grid.at(i, j);
    for (int sign : {1, -1}) {
        int r = i + sign * dr, c = j + sign * dc;
        while (r >= 1 && r <= m_grid.rows() && c >= 1 && c <= m_grid.cols()) {
            if (m_grid.at(r, c) != v) return false;
            r += sign * dr;
            c += sign * dc;
        }
    }
    return true;
}

bool is_invariant(const BinaryGrid& m_grid, int dr, int dc) {
    for (int i = 1; i <= m_grid.rows(); ++i)
        for (int j = 1; j <= m_grid.cols(); ++j)
            if (!is_invariant_at(m_grid, i, j, dr, dc)) return false;
    return true;
}

std::pair<BinaryGrid, BinaryGrid> classify_smooth_cells(const BinaryGrid& m_grid,
                                                        const WindowSpec& w) {
    if (!is_smooth(m_grid, w))
        throw std::invalid_argument("classify_smooth_cells: input is not smooth");
    BinaryGrid m1(m_grid.rows(), m_grid.cols());
    BinaryGrid m2(m_grid.rows(), m_grid.cols());
    for (int i = 1; i <= m_grid.rows(); ++i)
        for (int j = 1; j <= m_grid.cols(); ++j) {
            if (!m_grid.at(i, j)) continue;
            if (is_invariant_at(m_grid, i, j, w.p, 0))
                m1.at(i, j) = 1;
            else
                m2.at(i, j) = 1;
        }
    return {m1, m2};
}

void require_subgrid_ref(const SubgridRef& ref) {
    require_window(ref.w);
    if (ref.a < 1 || ref.a > ref.w.p || ref.b < 1 || ref.b > ref.w.q)
        throw std::invalid_argument("subgrid: offsets must satisfy 1<=a<=p, 1<=b<=q");
}

}  // namespace rscan
