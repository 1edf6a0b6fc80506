#include "rscan/decompose.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rscan {

bool has_constant_rows(const IntGrid& a) {
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 2; j <= a.cols(); ++j)
            if (a.at(i, j) != a.at(i, 1)) return false;
    return true;
}

bool has_constant_cols(const IntGrid& a) {
    for (int j = 1; j <= a.cols(); ++j)
        for (int i = 2; i <= a.rows(); ++i)
            if (a.at(i, j) != a.at(1, j)) return false;
    return true;
}

std::optional<std::vector<Decomposition>> decompose(const IntGrid& a) {
    if (a.empty()) throw std::invalid_argument("decompose: empty scan");
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.at(i, j) < 0) throw std::invalid_argument("decompose: negative cell");

    // Peel the global minimum k, then each row's minimum; what remains must be
    // constant down every column or no split into the two parts exists.
    int k = std::numeric_limits<int>::max();
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) k = std::min(k, a.at(i, j));

    IntGrid residual = add_scalar(a, -k);
    IntGrid row_base(a.rows(), a.cols(), 0);
    for (int i = 1; i <= a.rows(); ++i) {
        int row_min = std::numeric_limits<int>::max();
        for (int j = 1; j <= a.cols(); ++j) row_min = std::min(row_min, residual.at(i, j));
        for (int j = 1; j <= a.cols(); ++j) {
            row_base.at(i, j) = row_min;
            residual.at(i, j) -= row_min;
        }
    }
    if (!has_constant_cols(residual)) return std::nullopt;

    std::vector<Decomposition> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int t = 0; t <= k; ++t)
        out.push_back({add_scalar(row_base, t), add_scalar(residual, k - t), t});
    return out;
}

}  // namespace rscan
