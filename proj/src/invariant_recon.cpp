#include "rscan/invariant_recon.hpp"

#include <cassert>
#include <stdexcept>

#include "rscan/decompose.hpp"

namespace rscan {

std::optional<PartialFill> rec_const_rows_step1(const IntGrid& a, const WindowSpec& w,
                                                std::vector<Step1Case>* fired,
                                                OpCounter* ops) {
    if (a.empty()) throw std::invalid_argument("rec_const_rows_step1: empty scan");
    if (!has_constant_rows(a)) throw std::invalid_argument("rec_const_rows_step1: rows not constant");
    require_window(w);
    if (fired) fired->clear();

    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    PartialFill pf{BinaryGrid(m, n, 0), std::vector<int>(static_cast<std::size_t>(m), 0), 0};
    auto pent = [&pf](int i) -> int& { return pf.pent[static_cast<std::size_t>(i) - 1]; };

    // Walk consecutive first-column values. The row entering the sliding
    // window (i+p) must hold exactly pent(i) + (a[i+1]-a[i]) ones among the
    // first q columns; when that count would be negative, the only fix is to
    // widen every already-filled row of i's residue class.
    for (int i = 1; i + 1 <= a.rows(); ++i) {
        count_ops(ops);
        const int delta = a.at(i + 1, 1) - a.at(i, 1);
        if (delta >= 0 || -delta <= pent(i)) {
            const int count = pent(i) + delta;
            if (count > w.q) return std::nullopt;
            if (fired) fired->push_back(delta >= 0 ? Step1Case::Fill : Step1Case::Covered);
            pent(i + w.p) = count;
            for (int j = 1; j <= count; ++j) {
                pf.partial.at(i + w.p, j) = 1;
                count_ops(ops);
            }
        } else {
            const int extra = -delta - pent(i);
            if (fired) fired->push_back(Step1Case::TopUp);
            for (int i2 = class_rep(i, w.p); i2 <= i; i2 += w.p) {
                if (pent(i2) + extra > w.q) return std::nullopt;
                for (int j = pent(i2) + 1; j <= pent(i2) + extra; ++j) {
                    pf.partial.at(i2, j) = 1;
                    count_ops(ops);
                }
                pent(i2) += extra;
            }
            pent(i + w.p) = 0;
        }
    }

    int corner = 0;
    for (int i = 1; i <= w.p; ++i) corner += pent(i);
    pf.k_remaining = a.at(1, 1) - corner;
    if (pf.k_remaining < 0) return std::nullopt;
    return pf;
}

std::optional<BinaryGrid> rec_const_rows(const IntGrid& a, const WindowSpec& w, OpCounter* ops) {
    if (a.empty()) throw std::invalid_argument("rec_const_rows: empty scan");
    require_window(w);
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.at(i, j) < 0 || a.at(i, j) > w.p * w.q) return std::nullopt;

    auto pf = rec_const_rows_step1(a, w, nullptr, ops);
    if (!pf) return std::nullopt;
    const int m = pf->partial.rows();
    const int n = pf->partial.cols();

    // Place the leftover corner weight as whole residue-class stacks: each
    // stack is one column j <= q filled across every row of one class, which
    // adds exactly 1 to every window once replicated with period q.
    for (int s = 0; s < pf->k_remaining; ++s) {
        bool placed = false;
        for (int j = 1; j <= w.q && !placed; ++j) {
            for (int r = 1; r <= w.p && !placed; ++r) {
                bool free_col = true;
                for (int i : residue_rows(r, w.p, m)) {
                    count_ops(ops);
                    if (pf->partial.at(i, j) != 0) {
                        free_col = false;
                        break;
                    }
                }
                if (!free_col) continue;
                for (int i : residue_rows(r, w.p, m)) pf->partial.at(i, j) = 1;
                placed = true;
            }
        }
        if (!placed) return std::nullopt;
    }

    // Replicate the first q columns with period q.
    for (int i = 1; i <= m; ++i)
        for (int j = w.q + 1; j <= n; ++j) {
            pf->partial.at(i, j) = pf->partial.at(i, j - w.q);
            count_ops(ops);
        }
    assert(is_invariant(pf->partial, 0, w.q));
    return pf->partial;
}

std::optional<BinaryGrid> rec_const_cols(const IntGrid& a, const WindowSpec& w, OpCounter* ops) {
    auto dual = rec_const_rows(transpose(a), w.transposed(), ops);
    if (!dual) return std::nullopt;
    return transpose(*dual);
}

}  // namespace rscan
