#include "rscan/grid.hpp"

namespace rscan {

IntGrid to_int(const BinaryGrid& g) {
    IntGrid r(g.rows(), g.cols());
    for (int i = 1; i <= g.rows(); ++i)
        for (int j = 1; j <= g.cols(); ++j) r.at(i, j) = g.at(i, j);
    return r;
}

BinaryGrid to_binary(const IntGrid& g) {
    BinaryGrid r(g.rows(), g.cols());
    for (int i = 1; i <= g.rows(); ++i)
        for (int j = 1; j <= g.cols(); ++j) {
            int v = g.at(i, j);
            if (v != 0 && v != 1)
                throw std::invalid_argument("to_binary: cell outside {0,1}");
            r.at(i, j) = std::uint8_t(v);
        }
    return r;
}

static void require_same_dims(const IntGrid& a, const IntGrid& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

IntGrid add(const IntGrid& a, const IntGrid& b) {
    require_same_dims(a, b, "add");
    IntGrid r(a.rows(), a.cols());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

IntGrid sub(const IntGrid& a, const IntGrid& b) {
    require_same_dims(a, b, "sub");
    IntGrid r(a.rows(), a.cols());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

IntGrid add_scalar(const IntGrid& a, int v) {
    IntGrid r(a.rows(), a.cols());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) r.at(i, j) = a.at(i, j) + v;
    return r;
}

std::vector<int> residue_rows(int i, int p, int m) {
    assert(i >= 1 && p >= 1 && m >= 0);
    std::vector<int> out;
    for (int r = class_rep(i, p); r <= m; r += p) out.push_back(r);
    return out;
}

void require_window(const WindowSpec& w) {
    if (w.p < 1 || w.q < 1) throw std::invalid_argument("window: p,q must be >= 1");
}

void require_window_fits(const WindowSpec& w, int m, int n) {
    require_window(w);
    if (w.p > m || w.q > n)
        throw std::invalid_argument("window: p x q exceeds grid dimensions");
}

}  // namespace rscan
