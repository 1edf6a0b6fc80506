#include "rscan/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rscan/decompose.hpp"
#include "rscan/invariant_recon.hpp"

namespace rscan {

namespace {

// Occurrence classes of one unit, recovered from its propagated cells.
struct UnitClasses {
    int fixed = 0;              // shared column class (UnitP) or row class (UnitQ)
    std::vector<int> choices;   // candidate row classes (UnitP) / column classes (UnitQ)
};

using UnitMap = std::map<int, UnitClasses>;  // unit index -> classes

void note_unit(UnitMap& units, int index, int fixed, int choice) {
    auto& u = units[index];
    if (u.choices.empty()) u.fixed = fixed;
    assert(u.fixed == fixed);
    if (std::find(u.choices.begin(), u.choices.end(), choice) == u.choices.end())
        u.choices.push_back(choice);
}

}  // namespace

std::optional<BinaryGrid> merge_symbolic(const BinaryGrid& base, const SymbolicGrid& sym,
                                         const WindowSpec& w, OpCounter* ops) {
    assert(base.rows() == sym.rows() && base.cols() == sym.cols());
    const int m = base.rows();
    const int n = base.cols();
    BinaryGrid out = base;

    // Fixed cells first; units are read off into their class sets.
    UnitMap units_p, units_q;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            const Symbol s = sym.at(i, j);
            count_ops(ops);
            switch (s.kind) {
                case SymbolKind::Zero: break;
                case SymbolKind::One:
                case SymbolKind::P:
                case SymbolKind::Q:
                    if (out.at(i, j)) return std::nullopt;
                    out.at(i, j) = 1;
                    break;
                case SymbolKind::UnitP:
                    note_unit(units_p, s.index, class_rep(j, w.q), class_rep(i, w.p));
                    break;
                case SymbolKind::UnitQ:
                    note_unit(units_q, s.index, class_rep(i, w.p), class_rep(j, w.q));
                    break;
            }
        }

    // Each UnitP must land once in every actual column of its column class:
    // the first row class whose cells in that column are all free. Distinct
    // units own distinct row classes there, so greedy placement is exhaustive.
    for (auto& [index, u] : units_p) {
        std::sort(u.choices.begin(), u.choices.end());
        for (int j = u.fixed; j <= n; j += w.q) {
            bool placed = false;
            for (int r : u.choices) {
                bool free_col = true;
                for (int i : residue_rows(r, w.p, m)) {
                    count_ops(ops);
                    if (out.at(i, j)) {
                        free_col = false;
                        break;
                    }
                }
                if (!free_col) continue;
                for (int i : residue_rows(r, w.p, m)) out.at(i, j) = 1;
                placed = true;
                break;
            }
            if (!placed) return std::nullopt;
        }
    }

    // Dual: each UnitQ lands once in every actual row of its row class.
    for (auto& [index, u] : units_q) {
        std::sort(u.choices.begin(), u.choices.end());
        for (int i = u.fixed; i <= m; i += w.p) {
            bool placed = false;
            for (int c : u.choices) {
                bool free_row = true;
                for (int j : residue_cols(c, w.q, n)) {
                    count_ops(ops);
                    if (out.at(i, j)) {
                        free_row = false;
                        break;
                    }
                }
                if (!free_row) continue;
                for (int j : residue_cols(c, w.q, n)) out.at(i, j) = 1;
                placed = true;
                break;
            }
            if (!placed) return std::nullopt;
        }
    }
    return out;
}

bool verify(const IntGrid& a, const BinaryGrid& m_grid, const WindowSpec& w) {
    require_window(w);
    if (m_grid.rows() != a.rows() + w.p - 1 || m_grid.cols() != a.cols() + w.q - 1) return false;
    return rectangular_scan(m_grid, w) == a;
}

namespace {

// ---------------------------------------------------------------------------
// Smooth completion around a fixed base.
//
// Every binary matrix with a smooth scan is a disjoint union of full
// residue-class column stacks (each column j holds a set S_j of row classes)
// and full residue-class row runs (each row i holds a set R_i of column
// classes). Completing a base therefore means choosing per-line class sets of
// prescribed sizes that avoid the base's occupied classes, with one global
// exclusivity rule: a (row class, column class) pair may serve column stacks
// or row runs, never both, since every actual (row, column) combination of
// the two classes exists and would collide.
//
// Line budgets come from the scan decomposition: per decomposition part, the
// Step-1 walk yields the class-wise minimal budget vector (every residue
// chain touches zero), and the full solution family is exactly that vector
// plus a nonnegative per-class deviation summing to the leftover corner
// weight. Enumerating (deviation pair, exclusivity split) and filling each
// line greedily is complete: line fills touch pairwise disjoint cells, so any
// per-line choice of the required size works whenever one exists.
// ---------------------------------------------------------------------------

using Mask = std::uint64_t;

int bits_set(Mask v) { return std::popcount(v); }

// Lowest `want` set bits of `mask`, as positions 1..width.
std::vector<int> lowest_bits(Mask mask, int want) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(want));
    for (int pos = 1; want > 0 && mask != 0; ++pos, mask >>= 1)
        if (mask & 1u) {
            out.push_back(pos);
            --want;
        }
    return out;
}

// Per-line free residue classes of the base, as bitmasks.
struct FreeClasses {
    std::vector<Mask> col;  // col[j-1] bit r-1: rows of class r are all 0 in column j
    std::vector<Mask> row;  // row[i-1] bit c-1: columns of class c are all 0 in row i
};

FreeClasses free_classes(const BinaryGrid& base, const WindowSpec& w, OpCounter* ops) {
    const int m = base.rows();
    const int n = base.cols();
    FreeClasses fc{std::vector<Mask>(static_cast<std::size_t>(n), (Mask{1} << w.p) - 1),
                   std::vector<Mask>(static_cast<std::size_t>(m), (Mask{1} << w.q) - 1)};
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            count_ops(ops);
            if (!base.at(i, j)) continue;
            fc.col[static_cast<std::size_t>(j) - 1] &= ~(Mask{1} << (class_rep(i, w.p) - 1));
            fc.row[static_cast<std::size_t>(i) - 1] &= ~(Mask{1} << (class_rep(j, w.q) - 1));
        }
    return fc;
}

// Nonnegative vectors with the given sum and per-part caps, ascending
// lexicographic order. fn returns false to stop; so does the enumerator.
template <typename Fn>
bool for_each_capped_sum(int part, int remaining, const std::vector<int>& caps,
                         const std::vector<int>& suffix_cap, std::vector<int>& v, Fn&& fn) {
    const int k = static_cast<int>(caps.size());
    if (remaining > suffix_cap[static_cast<std::size_t>(part)]) return true;
    if (part == k - 1) {
        v[static_cast<std::size_t>(part)] = remaining;
        return fn(v);
    }
    const int hi = std::min(caps[static_cast<std::size_t>(part)], remaining);
    for (int x = 0; x <= hi; ++x) {
        v[static_cast<std::size_t>(part)] = x;
        if (!for_each_capped_sum(part + 1, remaining - x, caps, suffix_cap, v, fn)) return false;
    }
    return true;
}

template <typename Fn>
bool for_each_capped_sum(int total, const std::vector<int>& caps, Fn&& fn) {
    if (caps.empty()) return true;
    std::vector<int> suffix(caps.size() + 1, 0);
    for (std::size_t k = caps.size(); k > 0; --k)
        suffix[k - 1] = suffix[k] + caps[k - 1];
    if (total > suffix[0]) return true;
    std::vector<int> v(caps.size(), 0);
    return for_each_capped_sum(0, total, caps, suffix, v, fn);
}

// One completion attempt for fixed per-line budgets: search the exclusivity
// splits of the (row class, column class) pairs; on the first split where
// every line keeps enough free granted classes, fill and return.
struct BudgetSearch {
    const FreeClasses& fc;
    const BinaryGrid& base;
    const WindowSpec& w;
    const std::vector<int>& col_budget;  // per column j, stacks wanted
    const std::vector<int>& row_budget;  // per row i, runs wanted
    OpCounter* ops;

    std::vector<Mask> stack_ok;  // per column class: row classes some budgeted column can use
    std::vector<Mask> run_ok;    // per row class: column classes some budgeted row can use
    std::vector<Mask> grant_stack;  // per column class: row classes granted to stacks
    std::vector<Mask> grant_run;    // per row class: column classes granted to runs

    bool columns_of_class_ok(int c) const {
        const int n = base.cols();
        for (int j = c; j <= n; j += w.q) {
            count_ops(ops);
            const Mask usable = fc.col[static_cast<std::size_t>(j) - 1] &
                                grant_stack[static_cast<std::size_t>(c) - 1];
            if (bits_set(usable) < col_budget[static_cast<std::size_t>(j) - 1]) return false;
        }
        return true;
    }

    bool rows_ok() const {
        const int m = base.rows();
        for (int i = 1; i <= m; ++i) {
            count_ops(ops);
            const Mask usable = fc.row[static_cast<std::size_t>(i) - 1] &
                                grant_run[static_cast<std::size_t>(class_rep(i, w.p)) - 1];
            if (bits_set(usable) < row_budget[static_cast<std::size_t>(i) - 1]) return false;
        }
        return true;
    }

    std::optional<BinaryGrid> fill() const {
        const int m = base.rows();
        const int n = base.cols();
        BinaryGrid out = base;
        for (int j = 1; j <= n; ++j) {
            const Mask usable = fc.col[static_cast<std::size_t>(j) - 1] &
                                grant_stack[static_cast<std::size_t>(class_rep(j, w.q)) - 1];
            for (int r : lowest_bits(usable, col_budget[static_cast<std::size_t>(j) - 1]))
                for (int i = r; i <= m; i += w.p) {
                    out.at(i, j) = 1;
                    count_ops(ops);
                }
        }
        for (int i = 1; i <= m; ++i) {
            const Mask usable = fc.row[static_cast<std::size_t>(i) - 1] &
                                grant_run[static_cast<std::size_t>(class_rep(i, w.p)) - 1];
            for (int c : lowest_bits(usable, row_budget[static_cast<std::size_t>(i) - 1]))
                for (int j = c; j <= n; j += w.q) {
                    out.at(i, j) = 1;
                    count_ops(ops);
                }
        }
        return out;
    }

    // Depth-first over pairs (column class outer, row class inner); pairs
    // useless to one side go to the other without branching.
    std::optional<BinaryGrid> assign(int c, int r) {
        if (r > w.p) {
            if (!columns_of_class_ok(c)) return std::nullopt;
            ++c;
            r = 1;
        }
        if (c > w.q) {
            if (!rows_ok()) return std::nullopt;
            return fill();
        }
        const bool stack_side = (stack_ok[static_cast<std::size_t>(c) - 1] >> (r - 1)) & 1u;
        const bool run_side = (run_ok[static_cast<std::size_t>(r) - 1] >> (c - 1)) & 1u;
        if (stack_side) {
            grant_stack[static_cast<std::size_t>(c) - 1] |= Mask{1} << (r - 1);
            if (auto got = assign(c, r + 1)) return got;
            grant_stack[static_cast<std::size_t>(c) - 1] &= ~(Mask{1} << (r - 1));
        }
        if (run_side || !stack_side) {
            grant_run[static_cast<std::size_t>(r) - 1] |= Mask{1} << (c - 1);
            if (auto got = assign(c, r + 1)) return got;
            grant_run[static_cast<std::size_t>(r) - 1] &= ~(Mask{1} << (c - 1));
        }
        return std::nullopt;
    }

    std::optional<BinaryGrid> run() {
        const int m = base.rows();
        const int n = base.cols();
        stack_ok.assign(static_cast<std::size_t>(w.q), 0);
        run_ok.assign(static_cast<std::size_t>(w.p), 0);
        for (int j = 1; j <= n; ++j)
            if (col_budget[static_cast<std::size_t>(j) - 1] > 0)
                stack_ok[static_cast<std::size_t>(class_rep(j, w.q)) - 1] |=
                    fc.col[static_cast<std::size_t>(j) - 1];
        for (int i = 1; i <= m; ++i)
            if (row_budget[static_cast<std::size_t>(i) - 1] > 0)
                run_ok[static_cast<std::size_t>(class_rep(i, w.p)) - 1] |=
                    fc.row[static_cast<std::size_t>(i) - 1];

        // Necessary bounds before searching: even granting every useful class
        // to one side must cover that side's budgets.
        for (int j = 1; j <= n; ++j) {
            count_ops(ops);
            const Mask best = fc.col[static_cast<std::size_t>(j) - 1] &
                              stack_ok[static_cast<std::size_t>(class_rep(j, w.q)) - 1];
            if (bits_set(best) < col_budget[static_cast<std::size_t>(j) - 1]) return std::nullopt;
        }
        for (int i = 1; i <= m; ++i) {
            count_ops(ops);
            const Mask best = fc.row[static_cast<std::size_t>(i) - 1] &
                              run_ok[static_cast<std::size_t>(class_rep(i, w.p)) - 1];
            if (bits_set(best) < row_budget[static_cast<std::size_t>(i) - 1]) return std::nullopt;
        }

        grant_stack.assign(static_cast<std::size_t>(w.q), 0);
        grant_run.assign(static_cast<std::size_t>(w.p), 0);
        return assign(1, 1);
    }
};

// Budget family of one decomposition part: the Step-1 minimal vector plus a
// per-class deviation. Returns false when Step 1 already rules the part out.
struct BudgetFamily {
    std::vector<int> minimal;  // per line
    std::vector<int> caps;     // per class, max extra stacks/runs
    int spare = 0;             // total deviation to distribute
};

std::optional<BudgetFamily> budget_family(const IntGrid& part, const WindowSpec& w, int lines,
                                          int classes, int depth, OpCounter* ops) {
    auto pf = rec_const_rows_step1(part, w, nullptr, ops);
    if (!pf) return std::nullopt;
    BudgetFamily fam;
    fam.minimal.resize(static_cast<std::size_t>(lines));
    for (int i = 1; i <= lines; ++i)
        fam.minimal[static_cast<std::size_t>(i) - 1] = pf->pent_at(i);
    fam.caps.assign(static_cast<std::size_t>(classes), depth);
    for (int i = 1; i <= lines; ++i) {
        auto& cap = fam.caps[static_cast<std::size_t>(class_rep(i, classes)) - 1];
        cap = std::min(cap, depth - fam.minimal[static_cast<std::size_t>(i) - 1]);
    }
    fam.spare = pf->k_remaining;
    return fam;
}

// Complete `base` into a matrix scanning to base's scan plus `residual`.
// Tries every decomposition of the residual, every deviation pair of the
// budget families, and every exclusivity split; complete over that space.
std::optional<BinaryGrid> complete_candidate(const BinaryGrid& base, const IntGrid& residual,
                                             const WindowSpec& w, ReconstructionStats& stats,
                                             OpCounter* ops) {
    const auto decos = decompose(residual);
    assert(decos.has_value());
    if (!decos) return std::nullopt;
    const int m = base.rows();
    const int n = base.cols();
    const FreeClasses fc = free_classes(base, w, ops);

    for (const Decomposition& d : *decos) {
        const auto rows_fam = budget_family(d.row_part, w, m, w.p, w.q, ops);
        if (!rows_fam) continue;
        const auto cols_fam =
            budget_family(transpose(d.col_part), w.transposed(), n, w.q, w.p, ops);
        if (!cols_fam) continue;

        std::optional<BinaryGrid> found;
        std::vector<int> col_budget(static_cast<std::size_t>(n));
        std::vector<int> row_budget(static_cast<std::size_t>(m));
        for_each_capped_sum(cols_fam->spare, cols_fam->caps, [&](const std::vector<int>& dev_c) {
            bool sane = true;
            for (int j = 1; j <= n && sane; ++j) {
                count_ops(ops);
                const int b = cols_fam->minimal[static_cast<std::size_t>(j) - 1] +
                              dev_c[static_cast<std::size_t>(class_rep(j, w.q)) - 1];
                col_budget[static_cast<std::size_t>(j) - 1] = b;
                sane = b <= bits_set(fc.col[static_cast<std::size_t>(j) - 1]);
            }
            if (!sane) return true;
            return for_each_capped_sum(
                rows_fam->spare, rows_fam->caps, [&](const std::vector<int>& dev_r) {
                    bool fits = true;
                    for (int i = 1; i <= m && fits; ++i) {
                        count_ops(ops);
                        const int b = rows_fam->minimal[static_cast<std::size_t>(i) - 1] +
                                      dev_r[static_cast<std::size_t>(class_rep(i, w.p)) - 1];
                        row_budget[static_cast<std::size_t>(i) - 1] = b;
                        fits = b <= bits_set(fc.row[static_cast<std::size_t>(i) - 1]);
                    }
                    if (!fits) return true;
                    ++stats.symbolic_grids_tried;
                    BudgetSearch search{fc, base, w, col_budget, row_budget, ops, {}, {}, {}, {}};
                    if (auto got = search.run()) {
                        found = std::move(got);
                        return false;
                    }
                    ++stats.merge_conflicts;
                    return true;
                });
        });
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace

ReconstructionOutcome reconstruct(const IntGrid& a, const WindowSpec& w) {
    require_window(w);
    if (a.empty()) throw std::invalid_argument("reconstruct: empty scan");
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.at(i, j) < 0 || a.at(i, j) > w.p * w.q)
                throw std::invalid_argument("reconstruct: scan cell outside [0, p*q]");

    ReconstructionOutcome res;
    OpCounter* ops = &res.stats.ops;
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    const IntGrid x = chi11_of_scan(a);

    // Minimal valuations of each residue-class slice of the chi pattern, as
    // compact grids plus the refs that scatter them onto the full matrix.
    std::vector<std::vector<BinaryGrid>> lists;
    std::vector<SubgridRef> refs;
    for (int a0 = 1; a0 <= w.p; ++a0)
        for (int b0 = 1; b0 <= w.q; ++b0) {
            const SubgridRef xref{a0, b0, w, x.rows(), x.cols()};
            auto grids = enumerate_minimal_grids(extract_subgrid(x, xref), nullptr, ops);
            if (grids.empty()) return res;  // this slice of chi is unrealizable
            lists.push_back(std::move(grids));
            refs.push_back(SubgridRef{a0, b0, w, m, n});
        }

    // Lazy Cartesian walk, last index fastest.
    std::vector<std::size_t> idx(lists.size(), 0);
    while (true) {
        ++res.stats.candidates_tried;
        BinaryGrid cand(m, n, 0);
        for (std::size_t k = 0; k < lists.size(); ++k)
            scatter_subgrid(cand, lists[k][idx[k]], refs[k]);
        count_ops(ops, cand.cells().size());

        const IntGrid residual = sub(a, rectangular_scan(cand, w));
        count_ops(ops, a.cells().size());
        bool nonneg = true;
        for (int i = 1; i <= residual.rows() && nonneg; ++i)
            for (int j = 1; j <= residual.cols(); ++j)
                if (residual.at(i, j) < 0) {
                    nonneg = false;
                    break;
                }
        if (nonneg) {
            assert(is_smooth_scan(residual));
            auto merged = complete_candidate(cand, residual, w, res.stats, ops);
            if (merged) {
                const bool good = verify(a, *merged, w);
                assert(good);
                if (good) {
                    res.solution = std::move(*merged);
                    return res;
                }
            }
        }

        std::size_t k = lists.size();
        bool rolled_over = true;
        while (k > 0) {
            --k;
            if (++idx[k] < lists[k].size()) {
                rolled_over = false;
                break;
            }
            idx[k] = 0;
        }
        if (rolled_over) break;
    }
    return res;
}

}  // namespace rscan
