#include "rscan/smooth_recon.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "rscan/decompose.hpp"

namespace rscan {

std::vector<int> class_max(const std::vector<int>& per_index, int period) {
    assert(period >= 1);
    std::vector<int> out(static_cast<std::size_t>(period), 0);
    for (std::size_t i = 0; i < per_index.size(); ++i) {
        int r = class_rep(static_cast<int>(i) + 1, period);
        out[static_cast<std::size_t>(r) - 1] = std::max(out[static_cast<std::size_t>(r) - 1], per_index[i]);
    }
    return out;
}

namespace {

// --- plain template search -------------------------------------------------

struct PlainSearch {
    const std::vector<int>& qneed;  // #Q per template row, exact
    const std::vector<int>& pneed;  // #P per template column, exact
    int ones;                       // #1 total, exact
    WindowSpec w;
    OpCounter* ops;
    WindowTemplate grid;
    std::vector<int> qrow, pcol;
    int ones_used = 0;

    PlainSearch(const std::vector<int>& qn, const std::vector<int>& pn, int o,
                const WindowSpec& win, OpCounter* c)
        : qneed(qn), pneed(pn), ones(o), w(win), ops(c),
          grid(win.p, win.q, Symbol{}),
          qrow(static_cast<std::size_t>(win.p), 0),
          pcol(static_cast<std::size_t>(win.q), 0) {}

    bool feasible(int r, int c) const {
        // Cells strictly after (r,c) in row-major order must be able to hold
        // every still-missing Q, P, and 1.
        int left_in_row = w.q - c;
        if (qneed[static_cast<std::size_t>(r) - 1] - qrow[static_cast<std::size_t>(r) - 1] > left_in_row)
            return false;
        int need_rest = ones - ones_used;
        for (int c2 = 1; c2 <= w.q; ++c2) {
            int below = (w.p - r) + (c2 > c ? 1 : 0);
            int miss = pneed[static_cast<std::size_t>(c2) - 1] - pcol[static_cast<std::size_t>(c2) - 1];
            if (miss > below) return false;
            need_rest += miss;
        }
        for (int r2 = 1; r2 <= w.p; ++r2)
            need_rest += qneed[static_cast<std::size_t>(r2) - 1] - qrow[static_cast<std::size_t>(r2) - 1];
        return need_rest <= (w.p - r) * w.q + (w.q - c);
    }

    bool dfs(int idx) {
        count_ops(ops);
        if (idx == w.p * w.q) {
            for (int r = 1; r <= w.p; ++r)
                if (qrow[static_cast<std::size_t>(r) - 1] != qneed[static_cast<std::size_t>(r) - 1]) return false;
            for (int c = 1; c <= w.q; ++c)
                if (pcol[static_cast<std::size_t>(c) - 1] != pneed[static_cast<std::size_t>(c) - 1]) return false;
            return ones_used == ones;
        }
        const int r = idx / w.q + 1;
        const int c = idx % w.q + 1;
        // Symbol order: 0, 1, P, Q.
        for (int choice = 0; choice < 4; ++choice) {
            Symbol sym;
            bool ok = true;
            switch (choice) {
                case 0: sym = {SymbolKind::Zero, 0}; break;
                case 1:
                    sym = {SymbolKind::One, 0};
                    if (ones_used + 1 > ones) ok = false;
                    else ++ones_used;
                    break;
                case 2:
                    sym = {SymbolKind::P, 0};
                    if (pcol[static_cast<std::size_t>(c) - 1] + 1 > pneed[static_cast<std::size_t>(c) - 1]) ok = false;
                    else ++pcol[static_cast<std::size_t>(c) - 1];
                    break;
                case 3:
                    sym = {SymbolKind::Q, 0};
                    if (qrow[static_cast<std::size_t>(r) - 1] + 1 > qneed[static_cast<std::size_t>(r) - 1]) ok = false;
                    else ++qrow[static_cast<std::size_t>(r) - 1];
                    break;
            }
            if (ok) {
                grid.at(r, c) = sym;
                if (feasible(r, c) && dfs(idx + 1)) return true;
                grid.at(r, c) = Symbol{};
                if (choice == 1) --ones_used;
                if (choice == 2) --pcol[static_cast<std::size_t>(c) - 1];
                if (choice == 3) --qrow[static_cast<std::size_t>(r) - 1];
            }
        }
        return false;
    }
};

// --- budgets from one decomposition -----------------------------------------

struct Budgets {
    PartialFill row;  // pent indexed by actual row, k = leftover row weight
    PartialFill col;  // pent indexed by actual column, k = leftover col weight
};

std::optional<Budgets> budgets_for(const Decomposition& d, const WindowSpec& w, OpCounter* ops) {
    auto row = rec_const_rows_step1(d.row_part, w, nullptr, ops);
    if (!row) return std::nullopt;
    auto col = rec_const_rows_step1(transpose(d.col_part), w.transposed(), nullptr, ops);
    if (!col) return std::nullopt;
    return Budgets{std::move(*row), std::move(*col)};
}

// --- materialization ---------------------------------------------------------

// Stamp the per-row Q budget and per-column P budget cells plus the template's
// fixed/unit cells into an m x n symbolic grid. Returns nullopt on a cell
// collision (the parts are provably disjoint; this is a defensive check).
std::optional<SymbolicGrid> materialize(const WindowTemplate& t, const Budgets& b,
                                        const WindowSpec& w, int m, int n, OpCounter* ops) {
    SymbolicGrid g(m, n, Symbol{});
    auto put = [&g, ops](int i, int j, Symbol s) {
        count_ops(ops);
        if (g.at(i, j).kind != SymbolKind::Zero) return false;
        g.at(i, j) = s;
        return true;
    };

    for (int i = 1; i <= m; ++i) {
        const int r = class_rep(i, w.p);
        int budget = b.row.pent_at(i);
        for (int c = 1; c <= w.q && budget > 0; ++c) {
            if (t.at(r, c).kind != SymbolKind::Q) continue;
            --budget;
            for (int j = c; j <= n; j += w.q)
                if (!put(i, j, {SymbolKind::Q, 0})) return std::nullopt;
        }
        assert(budget == 0);
    }
    for (int j = 1; j <= n; ++j) {
        const int c = class_rep(j, w.q);
        int budget = b.col.pent_at(j);
        for (int r = 1; r <= w.p && budget > 0; ++r) {
            if (t.at(r, c).kind != SymbolKind::P) continue;
            --budget;
            for (int i = r; i <= m; i += w.p)
                if (!put(i, j, {SymbolKind::P, 0})) return std::nullopt;
        }
        assert(budget == 0);
    }
    for (int r = 1; r <= w.p; ++r)
        for (int c = 1; c <= w.q; ++c) {
            const Symbol s = t.at(r, c);
            if (s.kind != SymbolKind::One && s.kind != SymbolKind::UnitP &&
                s.kind != SymbolKind::UnitQ)
                continue;
            for (int i = r; i <= m; i += w.p)
                for (int j = c; j <= n; j += w.q)
                    if (!put(i, j, s)) return std::nullopt;
        }
    return g;
}

std::optional<BinaryGrid> to_concrete(const SymbolicGrid& g) {
    BinaryGrid out(g.rows(), g.cols(), 0);
    for (int i = 1; i <= g.rows(); ++i)
        for (int j = 1; j <= g.cols(); ++j) {
            switch (g.at(i, j).kind) {
                case SymbolKind::Zero: break;
                case SymbolKind::One:
                case SymbolKind::P:
                case SymbolKind::Q: out.at(i, j) = 1; break;
                default: return std::nullopt;
            }
        }
    return out;
}

// --- template enumeration with units (the *_all variant) ---------------------

using CellList = std::vector<std::pair<int, int>>;  // template coords, 1-based

// Splits `cells` into exactly `groups` unlabeled nonempty parts, parts ordered
// by first appearance; restricted-growth-string order.
void set_partitions(const CellList& cells, int groups, std::vector<std::vector<CellList>>& out) {
    std::vector<int> assign(cells.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, int used) -> void {
        if (idx == cells.size()) {
            if (used != groups) return;
            std::vector<CellList> parts(static_cast<std::size_t>(groups));
            for (std::size_t k = 0; k < cells.size(); ++k)
                parts[static_cast<std::size_t>(assign[k])].push_back(cells[k]);
            out.push_back(std::move(parts));
            return;
        }
        int hi = std::min(used, groups - 1);
        for (int gidx = 0; gidx <= hi; ++gidx) {
            assign[idx] = gidx;
            // Remaining cells must still be able to open all missing groups.
            int used2 = std::max(used, gidx + 1);
            if (groups - used2 <= static_cast<int>(cells.size() - idx - 1)) self(self, idx + 1, used2);
        }
    };
    rec(rec, 0, 0);
}

// All ways to partition per-line unit cells (UnitP grouped by template column,
// UnitQ by template row) into exactly `units` groups, each confined to its
// line. Emits lists of groups ordered line-ascending, first-appearance within.
void enumerate_unit_groups(const std::vector<CellList>& lines, int units,
                           const std::function<void(const std::vector<CellList>&)>& emit) {
    int total = 0;
    for (const auto& l : lines) total += static_cast<int>(l.size());
    if (units < static_cast<int>(lines.size()) || units > total) return;
    std::vector<CellList> acc;
    auto rec = [&](auto&& self, std::size_t li, int left) -> void {
        if (li == lines.size()) {
            if (left == 0) emit(acc);
            return;
        }
        int rest_lines = static_cast<int>(lines.size() - li - 1);
        int rest_cells = 0;
        for (std::size_t k = li + 1; k < lines.size(); ++k)
            rest_cells += static_cast<int>(lines[k].size());
        const int sz = static_cast<int>(lines[li].size());
        for (int g = 1; g <= std::min(sz, left - rest_lines); ++g) {
            if (left - g > rest_cells) continue;
            std::vector<std::vector<CellList>> splits;
            set_partitions(lines[li], g, splits);
            for (const auto& parts : splits) {
                const std::size_t before = acc.size();
                for (const auto& p : parts) acc.push_back(p);
                self(self, li + 1, left - g);
                acc.resize(before);
            }
        }
    };
    rec(rec, 0, units);
}

// Enumerates all p x q templates over {0, P, Q, unit-P, unit-Q} meeting the
// exact row/column needs, with unit_p groups of UnitP cells (each group in one
// template column) and unit_q groups of UnitQ cells (each in one row).
// Emission order: shape search order (cells row-major; symbol order 0, P, Q,
// unit-P, unit-Q), then UnitP groupings, then UnitQ groupings.
void enumerate_templates(const std::vector<int>& qneed, const std::vector<int>& pneed,
                         int unit_p, int unit_q, const WindowSpec& w, OpCounter* ops,
                         const std::function<bool(const WindowTemplate&)>& emit,
                         bool& keep_going) {
    enum Code : std::uint8_t { Z, Pc, Qc, UP, UQ };
    Grid<std::uint8_t> shape(w.p, w.q, Z);
    std::vector<int> qrow(static_cast<std::size_t>(w.p), 0), pcol(static_cast<std::size_t>(w.q), 0);
    int up_cnt = 0, uq_cnt = 0;

    auto shape_done = [&]() {
        for (int c = 1; c <= w.q; ++c)
            if (pcol[static_cast<std::size_t>(c) - 1] != pneed[static_cast<std::size_t>(c) - 1]) return;
        // Gather unit cells by their line.
        std::vector<CellList> up_cols, uq_rows;
        for (int c = 1; c <= w.q; ++c) {
            CellList l;
            for (int r = 1; r <= w.p; ++r)
                if (shape.at(r, c) == UP) l.emplace_back(r, c);
            if (!l.empty()) up_cols.push_back(std::move(l));
        }
        for (int r = 1; r <= w.p; ++r) {
            CellList l;
            for (int c = 1; c <= w.q; ++c)
                if (shape.at(r, c) == UQ) l.emplace_back(r, c);
            if (!l.empty()) uq_rows.push_back(std::move(l));
        }
        enumerate_unit_groups(up_cols, unit_p, [&](const std::vector<CellList>& pgroups) {
            if (!keep_going) return;
            enumerate_unit_groups(uq_rows, unit_q, [&](const std::vector<CellList>& qgroups) {
                if (!keep_going) return;
                WindowTemplate t(w.p, w.q, Symbol{});
                for (int r = 1; r <= w.p; ++r)
                    for (int c = 1; c <= w.q; ++c) {
                        if (shape.at(r, c) == Pc) t.at(r, c) = {SymbolKind::P, 0};
                        if (shape.at(r, c) == Qc) t.at(r, c) = {SymbolKind::Q, 0};
                    }
                for (std::size_t u = 0; u < pgroups.size(); ++u)
                    for (auto [r, c] : pgroups[u])
                        t.at(r, c) = {SymbolKind::UnitP, static_cast<std::uint8_t>(u + 1)};
                for (std::size_t u = 0; u < qgroups.size(); ++u)
                    for (auto [r, c] : qgroups[u])
                        t.at(r, c) = {SymbolKind::UnitQ, static_cast<std::uint8_t>(u + 1)};
                if (!emit(t)) keep_going = false;
            });
        });
    };

    auto rec = [&](auto&& self, int idx) -> void {
        if (!keep_going) return;
        count_ops(ops);
        if (idx == w.p * w.q) {
            for (int r = 1; r <= w.p; ++r)
                if (qrow[static_cast<std::size_t>(r) - 1] != qneed[static_cast<std::size_t>(r) - 1]) return;
            shape_done();
            return;
        }
        const int r = idx / w.q + 1;
        const int c = idx % w.q + 1;
        auto fits = [&]() {
            int left_in_row = w.q - c;
            if (qneed[static_cast<std::size_t>(r) - 1] - qrow[static_cast<std::size_t>(r) - 1] > left_in_row)
                return false;
            int need_rest = std::max(0, unit_p - up_cnt) + std::max(0, unit_q - uq_cnt);
            for (int c2 = 1; c2 <= w.q; ++c2) {
                int below = (w.p - r) + (c2 > c ? 1 : 0);
                int miss = pneed[static_cast<std::size_t>(c2) - 1] - pcol[static_cast<std::size_t>(c2) - 1];
                if (miss > below) return false;
                need_rest += miss;
            }
            for (int r2 = 1; r2 <= w.p; ++r2)
                need_rest += qneed[static_cast<std::size_t>(r2) - 1] - qrow[static_cast<std::size_t>(r2) - 1];
            int cells_left = (w.p - r) * w.q + (w.q - c);
            return need_rest <= cells_left;
        };
        for (std::uint8_t code = Z; code <= UQ; ++code) {
            bool ok = true;
            switch (code) {
                case Z: break;
                case Pc:
                    if (pcol[static_cast<std::size_t>(c) - 1] + 1 > pneed[static_cast<std::size_t>(c) - 1]) ok = false;
                    else ++pcol[static_cast<std::size_t>(c) - 1];
                    break;
                case Qc:
                    if (qrow[static_cast<std::size_t>(r) - 1] + 1 > qneed[static_cast<std::size_t>(r) - 1]) ok = false;
                    else ++qrow[static_cast<std::size_t>(r) - 1];
                    break;
                case UP:
                    if (unit_p == 0) ok = false;
                    else ++up_cnt;
                    break;
                case UQ:
                    if (unit_q == 0) ok = false;
                    else ++uq_cnt;
                    break;
            }
            if (ok) {
                shape.at(r, c) = code;
                if (fits()) self(self, idx + 1);
                shape.at(r, c) = Z;
                if (code == Pc) --pcol[static_cast<std::size_t>(c) - 1];
                if (code == Qc) --qrow[static_cast<std::size_t>(r) - 1];
                if (code == UP) --up_cnt;
                if (code == UQ) --uq_cnt;
            }
            if (!keep_going) return;
        }
    };
    rec(rec, 0);
}

std::vector<std::uint16_t> pack(const SymbolicGrid& g) {
    std::vector<std::uint16_t> key;
    key.reserve(g.cells().size());
    for (const Symbol& s : g.cells())
        key.push_back(static_cast<std::uint16_t>(static_cast<std::uint16_t>(s.kind) << 8 |
                                                 s.index));
    return key;
}

void validate_smooth_input(const IntGrid& a, const WindowSpec& w) {
    if (a.empty()) throw std::invalid_argument("smooth reconstruction: empty scan");
    require_window(w);
    if (!is_smooth_scan(a)) throw std::invalid_argument("smooth reconstruction: scan is not (1,1)-smooth");
}

bool cells_in_range(const IntGrid& a, const WindowSpec& w) {
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.at(i, j) < 0 || a.at(i, j) > w.p * w.q) return false;
    return true;
}

}  // namespace

std::optional<WindowTemplate> find_window_template(const std::vector<int>& q_row_need,
                                                   const std::vector<int>& p_col_need,
                                                   int ones, const WindowSpec& w,
                                                   OpCounter* ops) {
    require_window(w);
    assert(static_cast<int>(q_row_need.size()) == w.p);
    assert(static_cast<int>(p_col_need.size()) == w.q);
    PlainSearch s(q_row_need, p_col_need, ones, w, ops);
    if (s.dfs(0)) return s.grid;
    return std::nullopt;
}

std::optional<BinaryGrid> rec_smooth(const IntGrid& a, const WindowSpec& w, OpCounter* ops) {
    validate_smooth_input(a, w);
    if (!cells_in_range(a, w)) return std::nullopt;
    auto decos = decompose(a);
    assert(decos.has_value());
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    for (const Decomposition& d : *decos) {
        auto b = budgets_for(d, w, ops);
        if (!b) continue;
        auto t = find_window_template(class_max(b->row.pent, w.p), class_max(b->col.pent, w.q),
                                      b->row.k_remaining + b->col.k_remaining, w, ops);
        if (!t) continue;
        auto sym = materialize(*t, *b, w, m, n, ops);
        if (!sym) continue;
        auto out = to_concrete(*sym);
        assert(out.has_value());
        if (!out) continue;
        assert(rectangular_scan(*out, w) == a);
        return out;
    }
    return std::nullopt;
}

bool for_each_smooth_symbolic(const IntGrid& a, const WindowSpec& w,
                              const std::function<bool(const SymbolicGrid&)>& sink,
                              OpCounter* ops) {
    validate_smooth_input(a, w);
    if (!cells_in_range(a, w)) return true;
    auto decos = decompose(a);
    assert(decos.has_value());
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    std::set<std::vector<std::uint16_t>> seen;
    bool keep_going = true;
    for (const Decomposition& d : *decos) {
        if (!keep_going) break;
        auto b = budgets_for(d, w, ops);
        if (!b) continue;
        enumerate_templates(
            class_max(b->row.pent, w.p), class_max(b->col.pent, w.q), b->col.k_remaining,
            b->row.k_remaining, w, ops,
            [&](const WindowTemplate& t) {
                auto sym = materialize(t, *b, w, m, n, ops);
                if (!sym) return true;
                if (!seen.insert(pack(*sym)).second) return true;
                return sink(*sym);
            },
            keep_going);
    }
    return keep_going;
}

std::vector<SymbolicGrid> rec_smooth_all(const IntGrid& a, const WindowSpec& w, OpCounter* ops) {
    std::vector<SymbolicGrid> out;
    for_each_smooth_symbolic(a, w, [&out](const SymbolicGrid& g) {
        out.push_back(g);
        return true;
    }, ops);
    return out;
}

std::optional<BinaryGrid> concretize(const SymbolicGrid& g) { return to_concrete(g); }

}  // namespace rscan
