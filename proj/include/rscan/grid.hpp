#pragma once
// Dense row-major grids with 1-based indexing, the p x q window descriptor,
// and residue-class index helpers. All public indices are 1-based.

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace rscan {

template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(int rows, int cols, T init = T{}) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("Grid: negative dimensions");
        cells_.assign(size_t(rows) * size_t(cols), init);
    }

    static Grid from_rows(std::initializer_list<std::initializer_list<T>> rows) {
        Grid g(int(rows.size()), rows.size() ? int(rows.begin()->size()) : 0);
        int i = 1;
        for (const auto& row : rows) {
            if (int(row.size()) != g.cols_)
                throw std::invalid_argument("Grid::from_rows: ragged rows");
            int j = 1;
            for (const T& v : row) g.at(i, j++) = v;
            ++i;
        }
        return g;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& at(int i, int j) {
        assert(i >= 1 && i <= rows_ && j >= 1 && j <= cols_);
        return cells_[size_t(i - 1) * size_t(cols_) + size_t(j - 1)];
    }
    const T& at(int i, int j) const {
        assert(i >= 1 && i <= rows_ && j >= 1 && j <= cols_);
        return cells_[size_t(i - 1) * size_t(cols_) + size_t(j - 1)];
    }

    const std::vector<T>& cells() const { return cells_; }

    bool operator==(const Grid&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> cells_;
};

using BinaryGrid = Grid<std::uint8_t>;
using IntGrid = Grid<int>;

IntGrid to_int(const BinaryGrid& g);
BinaryGrid to_binary(const IntGrid& g);  // throws if any cell is not 0 or 1

IntGrid add(const IntGrid& a, const IntGrid& b);  // throws on dimension mismatch
IntGrid sub(const IntGrid& a, const IntGrid& b);
IntGrid add_scalar(const IntGrid& a, int v);

template <typename T>
Grid<T> transpose(const Grid<T>& g) {
    Grid<T> t(g.cols(), g.rows());
    for (int i = 1; i <= g.rows(); ++i)
        for (int j = 1; j <= g.cols(); ++j) t.at(j, i) = g.at(i, j);
    return t;
}

// All rows in [1,m] congruent to i modulo p, ascending. Representatives live in
// [1,p]: row p belongs to class p, not class 0. Always contains i when i <= m.
std::vector<int> residue_rows(int i, int p, int m);

inline std::vector<int> residue_cols(int j, int q, int n) { return residue_rows(j, q, n); }

// Least class representative of i modulo p, in [1,p].
inline int class_rep(int i, int p) {
    assert(i >= 1 && p >= 1);
    return (i - 1) % p + 1;
}

struct WindowSpec {
    int p = 1;
    int q = 1;
    WindowSpec transposed() const { return {q, p}; }
    bool operator==(const WindowSpec&) const = default;
};

void require_window(const WindowSpec& w);                     // p,q >= 1
void require_window_fits(const WindowSpec& w, int m, int n);  // and p <= m, q <= n

// Instrumentation hook for the complexity assertions; counts elementary cell
// operations. Callers pass nullptr when they do not care.
struct OpCounter {
    unsigned long long ops = 0;
    void bump(unsigned long long k = 1) { ops += k; }
};

inline void count_ops(OpCounter* c, unsigned long long k = 1) {
    if (c) c->ops += k;
}

}  // namespace rscan
