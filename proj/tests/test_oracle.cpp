#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "rscan/oracle.hpp"
#include "rscan/scan.hpp"

using namespace rscan;

namespace {

// Unpruned reference: scan all 2^(m*n) grids. The pruned oracle must agree.
std::vector<BinaryGrid> preimages_bruteforce(const IntGrid& a, const WindowSpec& w) {
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    std::vector<BinaryGrid> out;
    for (unsigned long long bits = 0; bits < (1ull << (m * n)); ++bits) {
        BinaryGrid g(m, n, 0);
        for (int k = 0; k < m * n; ++k)
            if (bits >> k & 1) g.at(k / n + 1, k % n + 1) = 1;
        if (rectangular_scan(g, w) == a) out.push_back(g);
    }
    std::sort(out.begin(), out.end(),
              [](const BinaryGrid& x, const BinaryGrid& y) { return x.cells() < y.cells(); });
    return out;
}

// Unpruned reference for minimal valuations of a target.
std::vector<BinaryGrid> minimal_valuations_bruteforce(const IntGrid& t) {
    const int m = t.rows() + 1;
    const int n = t.cols() + 1;
    std::vector<BinaryGrid> out;
    for (unsigned long long bits = 0; bits < (1ull << (m * n)); ++bits) {
        BinaryGrid g(m, n, 0);
        for (int k = 0; k < m * n; ++k)
            if (bits >> k & 1) g.at(k / n + 1, k % n + 1) = 1;
        if (chi(to_int(g), {1, 1}) != t) continue;
        bool full_line = false;
        for (int i = 1; i <= m && !full_line; ++i) {
            bool all1 = true;
            for (int j = 1; j <= n; ++j) all1 = all1 && g.at(i, j);
            full_line = all1;
        }
        for (int j = 1; j <= n && !full_line; ++j) {
            bool all1 = true;
            for (int i = 1; i <= m; ++i) all1 = all1 && g.at(i, j);
            full_line = all1;
        }
        if (!full_line) out.push_back(g);
    }
    std::sort(out.begin(), out.end(),
              [](const BinaryGrid& x, const BinaryGrid& y) { return x.cells() < y.cells(); });
    return out;
}

}  // namespace

TEST_CASE("preimages of hand examples") {
    CHECK(oracle_preimages(IntGrid::from_rows({{1}}), {1, 1}) ==
          std::vector<BinaryGrid>{BinaryGrid::from_rows({{1}})});
    CHECK(oracle_preimages(IntGrid::from_rows({{0}}), {1, 1}) ==
          std::vector<BinaryGrid>{BinaryGrid::from_rows({{0}})});
    CHECK(oracle_preimages(IntGrid::from_rows({{2}}), {1, 2}) ==
          std::vector<BinaryGrid>{BinaryGrid::from_rows({{1, 1}})});
    CHECK(oracle_preimages(IntGrid::from_rows({{3}}), {1, 2}).empty());   // above window size
    CHECK(oracle_preimages(IntGrid::from_rows({{-1}}), {1, 2}).empty());  // negative cell
    CHECK(oracle_preimages(IntGrid::from_rows({{1}}), {2, 2}).size() == 4);
    CHECK(oracle_preimages(IntGrid::from_rows({{4}}), {2, 2}).size() == 1);
}

TEST_CASE("pruned preimage search agrees with brute force") {
    std::mt19937_64 rng(2024);
    int nonempty_seen = 0;
    for (int iter = 0; iter < 150; ++iter) {
        const int sr = 1 + int(rng() % 3);
        const int sc = 1 + int(rng() % 3);
        WindowSpec w{1 + int(rng() % 2), 1 + int(rng() % 2)};
        if ((sr + w.p - 1) * (sc + w.q - 1) > 12) continue;
        IntGrid a(sr, sc, 0);
        for (int i = 1; i <= sr; ++i)
            for (int j = 1; j <= sc; ++j) a.at(i, j) = int(rng() % (w.p * w.q + 1));
        auto expect = preimages_bruteforce(a, w);
        CHECK(oracle_preimages(a, w) == expect);
        if (!expect.empty()) ++nonempty_seen;
    }
    CHECK(nonempty_seen > 10);  // the comparison exercised real solution sets
}

TEST_CASE("preimage sets are complete for scans of actual matrices") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 60; ++iter) {
        const int m = 2 + int(rng() % 3);
        const int n = 2 + int(rng() % 3);
        WindowSpec w{1 + int(rng() % m), 1 + int(rng() % n)};
        BinaryGrid g(m, n, 0);
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= n; ++j) g.at(i, j) = rng() & 1;
        auto pre = oracle_preimages(rectangular_scan(g, w), w);
        CHECK(std::find(pre.begin(), pre.end(), g) != pre.end());
        for (const auto& cand : pre) CHECK(rectangular_scan(cand, w) == rectangular_scan(g, w));
    }
}

TEST_CASE("preimage guard and cap") {
    IntGrid a(5, 5, 1);
    CHECK_THROWS_AS(oracle_preimages(a, {2, 2}, 0, 24), SizeGuardError);  // 36 cells
    CHECK_NOTHROW(oracle_preimages(IntGrid(3, 3, 1), {2, 2}, 0, 16));

    auto some = oracle_preimages(IntGrid::from_rows({{1}}), {2, 2}, 2);
    CHECK(some.size() == 2);  // cap stops early
}

TEST_CASE("minimal valuations of hand targets") {
    // Zero target: only the zero grid is minimal.
    CHECK(oracle_minimal_valuation_grids(IntGrid::from_rows({{0}})) ==
          std::vector<BinaryGrid>{BinaryGrid(2, 2, 0)});
    // Isolated +1: the two opposite corners.
    auto plus = oracle_minimal_valuation_grids(IntGrid::from_rows({{1}}));
    CHECK(plus == std::vector<BinaryGrid>{BinaryGrid::from_rows({{0, 0}, {0, 1}}),
                                          BinaryGrid::from_rows({{1, 0}, {0, 0}})});
    // Isolated -1: the two anti-corners.
    CHECK(oracle_minimal_valuation_grids(IntGrid::from_rows({{-1}})).size() == 2);
    // +2 forces both corners at once.
    CHECK(oracle_minimal_valuation_grids(IntGrid::from_rows({{2}})) ==
          std::vector<BinaryGrid>{BinaryGrid::from_rows({{1, 0}, {0, 1}})});
    // Cells beyond +-2 are unrealizable.
    CHECK(oracle_minimal_valuation_grids(IntGrid::from_rows({{3}})).empty());
}

TEST_CASE("pruned minimal-valuation search agrees with brute force") {
    std::mt19937_64 rng(909);
    for (int iter = 0; iter < 120; ++iter) {
        const int h = 1 + int(rng() % 2);
        const int w2 = 1 + int(rng() % 3);
        IntGrid t(h, w2, 0);
        for (int i = 1; i <= h; ++i)
            for (int j = 1; j <= w2; ++j) t.at(i, j) = int(rng() % 5) - 2;
        CHECK(oracle_minimal_valuation_grids(t) == minimal_valuations_bruteforce(t));
    }
    CHECK_THROWS_AS(oracle_minimal_valuation_grids(IntGrid(5, 5, 0)), SizeGuardError);
}

TEST_CASE("valuation scattering onto the full grid") {
    IntGrid t = IntGrid::from_rows({{1}});
    SubgridRef ref{1, 2, {2, 2}, 4, 4};  // class rows {1,3}, cols {2,4}
    auto vals = oracle_minimal_valuations(t, ref);
    REQUIRE(vals.size() == 2);
    for (const auto& v : vals) {
        CHECK(v.support.a == 1);
        CHECK(v.grid.rows() == 4);
        // Strict support: zero outside the class.
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (!(i % 2 == 1 && j % 2 == 0)) CHECK(v.grid.at(i, j) == 0);
        CHECK(chi(to_int(extract_subgrid(v.grid, ref)), {1, 1}) == t);
    }
    CHECK_THROWS_AS(oracle_minimal_valuations(t, SubgridRef{1, 1, {2, 2}, 9, 9}),
                    std::invalid_argument);
}

TEST_CASE("generators are deterministic and honor their family") {
    InstanceSpec spec;
    spec.m = 6;
    spec.n = 8;
    spec.window = {2, 3};
    spec.density = 0.5;
    spec.seed = 42;

    spec.family = Family::General;
    CHECK(generate(spec) == generate(spec));
    InstanceSpec other = spec;
    other.seed = 43;
    CHECK(generate(spec) != generate(other));

    spec.family = Family::RowInvariant;
    CHECK(is_invariant(generate(spec), 0, 3));
    spec.family = Family::ColInvariant;
    CHECK(is_invariant(generate(spec), 2, 0));
    spec.family = Family::Homogeneous;
    {
        auto g = generate(spec);
        CHECK(is_invariant(g, 2, 0));
        CHECK(is_invariant(g, 0, 3));
    }
    for (std::uint64_t s = 0; s < 50; ++s) {
        spec.family = Family::Smooth;
        spec.seed = s;
        CHECK(is_smooth(generate(spec), spec.window));
    }

    spec.density = 1.0;
    spec.family = Family::General;
    CHECK(generate(spec) == BinaryGrid(6, 8, 1));
    spec.density = 0.0;
    CHECK(generate(spec) == BinaryGrid(6, 8, 0));

    spec.density = 2.0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    spec.density = 0.5;
    spec.window = {7, 1};
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);  // window taller than grid
}
