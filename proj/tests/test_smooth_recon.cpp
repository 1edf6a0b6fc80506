#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "rscan/oracle.hpp"
#include "rscan/smooth_recon.hpp"

using namespace rscan;

namespace {

// Mask of cells holding a given symbol kind, for invariance checks.
BinaryGrid kind_mask(const SymbolicGrid& g, SymbolKind k) {
    BinaryGrid out(g.rows(), g.cols(), 0);
    for (int i = 1; i <= g.rows(); ++i)
        for (int j = 1; j <= g.cols(); ++j)
            if (g.at(i, j).kind == k) out.at(i, j) = 1;
    return out;
}

bool has_units(const SymbolicGrid& g) {
    for (const Symbol& s : g.cells())
        if (s.kind == SymbolKind::UnitP || s.kind == SymbolKind::UnitQ) return true;
    return false;
}

IntGrid constant_rows_scan(const std::vector<int>& profile, int cols) {
    IntGrid a(int(profile.size()), cols);
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= cols; ++j) a.at(i, j) = profile[std::size_t(i - 1)];
    return a;
}

}  // namespace

TEST_CASE("class_max folds budgets over residue classes") {
    CHECK(class_max({0, 0, 2, 0, 1, 0, 0}, 3) == std::vector<int>{0, 1, 2});
    CHECK(class_max({0, 1, 1, 0, 0, 0, 0, 0, 1, 1}, 3) == std::vector<int>{1, 1, 1});
    // Period >= length: each index is its own class representative.
    CHECK(class_max({4, 2}, 5) == std::vector<int>{4, 2, 0, 0, 0});
    CHECK(class_max({}, 2) == std::vector<int>{0, 0});
    CHECK(class_max({7}, 1) == std::vector<int>{7});
}

TEST_CASE("window template search honors exact row/column/one counts") {
    // 1 x 2 window, one Q in the single row: cells scanned row-major with
    // symbol order 0,1,P,Q, so the first solution parks the Q as late as it can.
    auto t = find_window_template({1}, {0, 0}, 0, {1, 2});
    REQUIRE(t.has_value());
    CHECK(t->at(1, 1) == Symbol{SymbolKind::Zero, 0});
    CHECK(t->at(1, 2) == Symbol{SymbolKind::Q, 0});

    // Both cells forced.
    auto full = find_window_template({2}, {0, 0}, 0, {1, 2});
    REQUIRE(full.has_value());
    CHECK(full->at(1, 1) == Symbol{SymbolKind::Q, 0});
    CHECK(full->at(1, 2) == Symbol{SymbolKind::Q, 0});

    // Ones only: the lone cell becomes a 1.
    auto one = find_window_template({0}, {0}, 1, {1, 1});
    REQUIRE(one.has_value());
    CHECK(one->at(1, 1) == Symbol{SymbolKind::One, 0});

    // Infeasible demands.
    CHECK_FALSE(find_window_template({3}, {0, 0}, 0, {1, 2}).has_value());
    CHECK_FALSE(find_window_template({0}, {0}, 2, {1, 1}).has_value());
    CHECK_FALSE(find_window_template({0, 0}, {1, 1}, 3, {2, 2}).has_value());
}

TEST_CASE("window template search satisfies demands on random instances") {
    std::mt19937_64 rng(911);
    int found = 0;
    for (int iter = 0; iter < 300; ++iter) {
        WindowSpec w{1 + int(rng() % 4), 1 + int(rng() % 4)};
        std::vector<int> qneed(std::size_t(w.p)), pneed(std::size_t(w.q));
        for (int& v : qneed) v = int(rng() % std::uint64_t(w.q + 1));
        for (int& v : pneed) v = int(rng() % std::uint64_t(w.p + 1));
        int ones = int(rng() % 3);
        auto t = find_window_template(qneed, pneed, ones, w);
        if (!t) continue;
        ++found;
        int total_ones = 0;
        for (int r = 1; r <= w.p; ++r) {
            int qs = 0;
            for (int c = 1; c <= w.q; ++c) {
                const Symbol s = t->at(r, c);
                if (s.kind == SymbolKind::Q) ++qs;
                if (s.kind == SymbolKind::One) ++total_ones;
            }
            CHECK(qs == qneed[std::size_t(r - 1)]);
        }
        for (int c = 1; c <= w.q; ++c) {
            int ps = 0;
            for (int r = 1; r <= w.p; ++r)
                if (t->at(r, c).kind == SymbolKind::P) ++ps;
            CHECK(ps == pneed[std::size_t(c - 1)]);
        }
        CHECK(total_ones == ones);
    }
    CHECK(found > 60);  // the sampler must exercise the satisfiable side too
}

TEST_CASE("smooth reconstruction hand cases") {
    // Saturated scan: the only preimage is the all-ones matrix.
    auto sat = rec_smooth(constant_rows_scan({4, 4}, 3), {2, 2});
    REQUIRE(sat.has_value());
    CHECK(*sat == BinaryGrid(3, 4, 1));

    // Zero scan: the only preimage is the zero matrix.
    auto zero = rec_smooth(constant_rows_scan({0}, 1), {2, 2});
    REQUIRE(zero.has_value());
    CHECK(*zero == BinaryGrid(2, 2, 0));

    // Cell above p*q can never be a window sum.
    CHECK_FALSE(rec_smooth(constant_rows_scan({5}, 1), {2, 2}).has_value());
    // Negative cells likewise.
    CHECK_FALSE(rec_smooth(constant_rows_scan({-1}, 1), {2, 2}).has_value());

    // Smooth but infeasible: windows below the jump would need 3 new columns
    // of a 2-wide window row. No binary matrix has this scan.
    const IntGrid steep = constant_rows_scan({1, 4, 4}, 2);
    REQUIRE(is_smooth_scan(steep));
    CHECK_FALSE(rec_smooth(steep, {2, 2}).has_value());
    CHECK(oracle_preimages(steep, {2, 2}).empty());

    // Non-smooth input is a contract violation, not a failure result.
    CHECK_THROWS_AS(rec_smooth(IntGrid::from_rows({{1, 0}, {0, 1}}), {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(rec_smooth(IntGrid{}, {1, 1}), std::invalid_argument);
}

TEST_CASE("smooth reconstruction round-trips scans of smooth matrices") {
    std::mt19937_64 rng(7321);
    const Family fams[] = {Family::Smooth, Family::RowInvariant, Family::ColInvariant,
                           Family::Homogeneous};
    for (int iter = 0; iter < 200; ++iter) {
        InstanceSpec spec;
        spec.m = 2 + int(rng() % 8);
        spec.n = 2 + int(rng() % 8);
        spec.window = {1 + int(rng() % std::uint64_t(std::min(3, spec.m))),
                       1 + int(rng() % std::uint64_t(std::min(3, spec.n)))};
        spec.density = 0.15 + 0.7 * double(rng() % 100) / 100.0;
        spec.seed = rng();
        spec.family = fams[iter % 4];
        const BinaryGrid m_grid = generate(spec);
        const IntGrid a = rectangular_scan(m_grid, spec.window);
        REQUIRE(is_smooth_scan(a));
        OpCounter ops;
        auto got = rec_smooth(a, spec.window, &ops);
        REQUIRE(got.has_value());
        CHECK(rectangular_scan(*got, spec.window) == a);
        CHECK(is_smooth(*got, spec.window));
        CHECK(ops.ops > 0);
    }
}

TEST_CASE("smooth reconstruction feasibility matches the exhaustive oracle") {
    // Constant-row profiles are always (1,1)-smooth; sweep a mix of feasible
    // and infeasible ones and compare the verdict with brute force.
    std::mt19937_64 rng(5150);
    int feasible = 0, infeasible = 0;
    for (int iter = 0; iter < 250; ++iter) {
        WindowSpec w{1 + int(rng() % 3), 1 + int(rng() % 3)};
        const int rows = 1 + int(rng() % 3);
        const int cols = 1 + int(rng() % 3);
        if ((rows + w.p - 1) * (cols + w.q - 1) > 14) continue;
        std::vector<int> profile(std::size_t(rows), 0);
        for (int& v : profile) v = int(rng() % std::uint64_t(w.p * w.q + 1));
        const IntGrid a = constant_rows_scan(profile, cols);
        auto got = rec_smooth(a, w);
        const bool oracle_says = !oracle_preimages(a, w, 1).empty();
        CHECK(got.has_value() == oracle_says);
        if (got) {
            CHECK(rectangular_scan(*got, w) == a);
            ++feasible;
        } else {
            ++infeasible;
        }
    }
    CHECK(feasible > 40);
    CHECK(infeasible > 20);
}

TEST_CASE("symbolic stream: determinism, distinctness, and early stop") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 60; ++iter) {
        InstanceSpec spec;
        spec.m = 2 + int(rng() % 5);
        spec.n = 2 + int(rng() % 5);
        spec.window = {1 + int(rng() % std::uint64_t(std::min(3, spec.m))),
                       1 + int(rng() % std::uint64_t(std::min(3, spec.n)))};
        spec.density = 0.2 + 0.6 * double(rng() % 100) / 100.0;
        spec.seed = rng();
        spec.family = Family::Smooth;
        const IntGrid a = rectangular_scan(generate(spec), spec.window);

        const auto all1 = rec_smooth_all(a, spec.window);
        const auto all2 = rec_smooth_all(a, spec.window);
        REQUIRE(!all1.empty());
        REQUIRE(all1.size() == all2.size());
        std::set<std::vector<std::uint8_t>> seen;
        for (std::size_t g = 0; g < all1.size(); ++g) {
            CHECK(all1[g] == all2[g]);
            std::vector<std::uint8_t> key;
            for (const Symbol& s : all1[g].cells()) {
                key.push_back(std::uint8_t(s.kind));
                key.push_back(s.index);
            }
            CHECK(seen.insert(key).second);  // no duplicates in the stream
        }

        // A sink that stops immediately aborts the stream after one grid.
        int visited = 0;
        const bool finished = for_each_smooth_symbolic(a, spec.window,
                                                       [&visited](const SymbolicGrid&) {
                                                           ++visited;
                                                           return false;
                                                       });
        CHECK_FALSE(finished);
        CHECK(visited == 1);
    }
}

TEST_CASE("symbolic grids denote preimages") {
    std::mt19937_64 rng(2718);
    int unit_free = 0, with_units = 0;
    for (int iter = 0; iter < 80; ++iter) {
        InstanceSpec spec;
        spec.m = 2 + int(rng() % 4);
        spec.n = 2 + int(rng() % 4);
        spec.window = {1 + int(rng() % std::uint64_t(std::min(2, spec.m))),
                       1 + int(rng() % std::uint64_t(std::min(3, spec.n)))};
        spec.density = 0.2 + 0.6 * double(rng() % 100) / 100.0;
        spec.seed = rng();
        spec.family = Family::Smooth;
        const IntGrid a = rectangular_scan(generate(spec), spec.window);
        const int p = spec.window.p, q = spec.window.q;

        for (const SymbolicGrid& g : rec_smooth_all(a, spec.window)) {
            CHECK(g.rows() == a.rows() + p - 1);
            CHECK(g.cols() == a.cols() + q - 1);
            // Periodic parts really are periodic; unit cells cover whole
            // residue classes, so they are periodic both ways.
            CHECK(is_invariant(kind_mask(g, SymbolKind::P), p, 0));
            CHECK(is_invariant(kind_mask(g, SymbolKind::Q), 0, q));
            for (SymbolKind k : {SymbolKind::One, SymbolKind::UnitP, SymbolKind::UnitQ}) {
                const BinaryGrid mask = kind_mask(g, k);
                CHECK(is_invariant(mask, p, 0));
                CHECK(is_invariant(mask, 0, q));
            }
            auto conc = concretize(g);
            if (has_units(g)) {
                ++with_units;
                CHECK_FALSE(conc.has_value());
            } else {
                ++unit_free;
                REQUIRE(conc.has_value());
                CHECK(rectangular_scan(*conc, spec.window) == a);
            }
        }
    }
    CHECK(unit_free > 30);
    CHECK(with_units > 30);
}

TEST_CASE("one-shot and streaming feasibility verdicts agree") {
    std::mt19937_64 rng(60601);
    int agree_feasible = 0, agree_infeasible = 0;
    for (int iter = 0; iter < 200; ++iter) {
        WindowSpec w{1 + int(rng() % 3), 1 + int(rng() % 3)};
        const int rows = 1 + int(rng() % 3);
        std::vector<int> profile(std::size_t(rows), 0);
        for (int& v : profile) v = int(rng() % std::uint64_t(w.p * w.q + 2));  // may overflow range
        const IntGrid a = constant_rows_scan(profile, 1 + int(rng() % 3));
        const bool one_shot = rec_smooth(a, w).has_value();
        const bool streamed = !rec_smooth_all(a, w).empty();
        CHECK(one_shot == streamed);
        (one_shot ? agree_feasible : agree_infeasible)++;
    }
    CHECK(agree_feasible > 30);
    CHECK(agree_infeasible > 30);
}
