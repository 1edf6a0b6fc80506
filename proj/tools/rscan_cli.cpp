// Command-line front end: scan, reconstruct, check, gen, oracle, valuations.
// Exit codes: 0 = success/report, 1 = declared failure (no solution / no
// preimage), 2 = bad input or arguments.

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "rscan/decompose.hpp"
#include "rscan/matrix_io.hpp"
#include "rscan/oracle.hpp"
#include "rscan/reconstruct.hpp"
#include "rscan/scan.hpp"
#include "rscan/valuations.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitDeclaredFailure = 1;
constexpr int kExitInputError = 2;

rscan::BinaryGrid read_binary(const std::string& path) {
    return rscan::to_binary(rscan::read_matrix_file(path));
}

int cmd_scan(const std::string& path, rscan::WindowSpec w) {
    const rscan::BinaryGrid m = read_binary(path);
    rscan::require_window_fits(w, m.rows(), m.cols());
    rscan::write_matrix(std::cout, rscan::rectangular_scan(m, w));
    return kExitSuccess;
}

int cmd_reconstruct(const std::string& path, rscan::WindowSpec w, bool stats) {
    const rscan::IntGrid a = rscan::read_matrix_file(path);
    const rscan::ReconstructionOutcome res = rscan::reconstruct(a, w);
    if (res.ok()) {
        rscan::write_matrix(std::cout, *res.solution);
    } else {
        std::cout << "FAILURE\n";
    }
    if (stats) {
        std::cout << "# candidates_tried " << res.stats.candidates_tried << '\n'
                  << "# symbolic_grids_tried " << res.stats.symbolic_grids_tried << '\n'
                  << "# merge_conflicts " << res.stats.merge_conflicts << '\n'
                  << "# ops " << res.stats.ops.ops << '\n';
    }
    return res.ok() ? kExitSuccess : kExitDeclaredFailure;
}

int cmd_check(const std::string& path) {
    const rscan::IntGrid a = rscan::read_matrix_file(path);
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.at(i, j) < 0) throw rscan::ParseError("scan cell must be nonnegative");
    const rscan::IntGrid x = rscan::chi11_of_scan(a);
    std::cout << "chi11\n";
    rscan::write_matrix(std::cout, x);
    if (!rscan::all_zero(x)) {
        std::cout << "non-smooth\n";
        return kExitSuccess;
    }
    std::cout << (x.empty() ? "smooth (vacuous)" : "smooth") << '\n';
    const auto decos = rscan::decompose(a);
    if (!decos) {
        std::cout << "decompositions 0\n";
        return kExitSuccess;
    }
    std::cout << "decompositions " << decos->size() << '\n';
    for (const rscan::Decomposition& d : *decos) {
        std::cout << "t " << d.t << "\nrow_part\n";
        rscan::write_matrix(std::cout, d.row_part);
        std::cout << "col_part\n";
        rscan::write_matrix(std::cout, d.col_part);
    }
    return kExitSuccess;
}

int cmd_gen(int m, int n, rscan::WindowSpec w, double density, std::uint64_t seed,
            const std::string& family) {
    static const std::map<std::string, rscan::Family> kFamilies{
        {"general", rscan::Family::General},
        {"smooth", rscan::Family::Smooth},
        {"row-invariant", rscan::Family::RowInvariant},
        {"col-invariant", rscan::Family::ColInvariant},
        {"homogeneous", rscan::Family::Homogeneous},
    };
    const auto it = kFamilies.find(family);
    if (it == kFamilies.end()) throw rscan::ParseError("unknown family '" + family + "'");
    rscan::write_matrix(std::cout,
                        rscan::generate({m, n, w, density, seed, it->second}));
    return kExitSuccess;
}

int cmd_oracle(const std::string& path, rscan::WindowSpec w, int max_cells) {
    const rscan::IntGrid a = rscan::read_matrix_file(path);
    const auto pre = rscan::oracle_preimages(a, w, 0, max_cells);
    std::cout << "preimages " << pre.size() << '\n';
    for (const rscan::BinaryGrid& g : pre) rscan::write_matrix(std::cout, g);
    return pre.empty() ? kExitDeclaredFailure : kExitSuccess;
}

int cmd_valuations(const std::string& path, rscan::WindowSpec w) {
    const rscan::IntGrid a = rscan::read_matrix_file(path);
    const rscan::IntGrid x = rscan::chi11_of_scan(a);
    const int m = a.rows() + w.p - 1;
    const int n = a.cols() + w.q - 1;
    for (int a0 = 1; a0 <= w.p; ++a0)
        for (int b0 = 1; b0 <= w.q; ++b0) {
            const rscan::SubgridRef xref{a0, b0, w, x.rows(), x.cols()};
            const auto vals =
                rscan::enumerate_minimal(rscan::extract_subgrid(x, xref),
                                         rscan::SubgridRef{a0, b0, w, m, n});
            std::cout << "subgrid " << a0 << ' ' << b0 << "\ncount " << vals.size() << '\n';
            for (const rscan::Valuation& v : vals) rscan::write_matrix(std::cout, v.grid);
        }
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rectangular window scans of binary matrices: forward transform, "
                 "feasibility checks, and reconstruction"};
    app.require_subcommand(1);

    std::string input;
    rscan::WindowSpec w{1, 1};
    bool stats = false;
    int gm = 4, gn = 4;
    double density = 0.5;
    std::uint64_t seed = 0;
    std::string family = "general";
    int max_cells = 24;

    auto add_window = [&w](CLI::App* cmd) {
        cmd->add_option("-p", w.p, "window height")->check(CLI::PositiveNumber);
        cmd->add_option("-q", w.q, "window width")->check(CLI::PositiveNumber);
    };

    CLI::App* scan = app.add_subcommand("scan", "scan a binary matrix with a p x q window");
    scan->add_option("input", input, "binary matrix file")->required();
    add_window(scan);

    CLI::App* rec = app.add_subcommand("reconstruct", "find a binary matrix with the given scan");
    rec->add_option("input", input, "scan file")->required();
    add_window(rec);
    rec->add_flag("--stats", stats, "append search statistics as comments");

    CLI::App* chk = app.add_subcommand("check", "chi pattern, smoothness verdict, decompositions");
    chk->add_option("input", input, "scan file")->required();
    add_window(chk);  // accepted for interface symmetry; the report ignores p,q

    CLI::App* gen = app.add_subcommand("gen", "generate a seeded test matrix");
    gen->add_option("-m", gm, "rows")->check(CLI::PositiveNumber);
    gen->add_option("-n", gn, "columns")->check(CLI::PositiveNumber);
    add_window(gen);
    gen->add_option("--density", density, "fill probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--family", family,
                    "general | smooth | row-invariant | col-invariant | homogeneous");

    CLI::App* orc = app.add_subcommand("oracle", "exhaustively enumerate all preimages of a scan");
    orc->add_option("input", input, "scan file")->required();
    add_window(orc);
    orc->add_option("--max-cells", max_cells, "preimage cell-count guard")
        ->check(CLI::Range(1, 28));

    CLI::App* val = app.add_subcommand("valuations", "minimal valuations of the scan's chi slices");
    val->add_option("input", input, "scan file")->required();
    add_window(val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints CLI11's message or help text
        return code == 0 ? kExitSuccess : kExitInputError;
    }

    try {
        if (scan->parsed()) return cmd_scan(input, w);
        if (rec->parsed()) return cmd_reconstruct(input, w, stats);
        if (chk->parsed()) return cmd_check(input);
        if (gen->parsed()) return cmd_gen(gm, gn, w, density, seed, family);
        if (orc->parsed()) return cmd_oracle(input, w, max_cells);
        if (val->parsed()) return cmd_valuations(input, w);
    } catch (const rscan::SizeGuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
