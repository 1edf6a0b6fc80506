#include "rscan/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace rscan {

namespace {

std::vector<long long> tokenize(std::istream& in) {
    std::vector<long long> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string word;
        while (ls >> word) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(word, &used);
                if (used != word.size()) throw std::invalid_argument(word);
                tokens.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": not an integer: '" +
                                 word + "'");
            }
        }
    }
    return tokens;
}

}  // namespace

IntGrid read_matrix(std::istream& in) {
    const auto tokens = tokenize(in);
    if (tokens.size() < 2) throw ParseError("missing 'rows cols' header");
    const long long rows = tokens[0];
    const long long cols = tokens[1];
    if (rows < 1 || cols < 1 || rows > 100000 || cols > 100000 || rows * cols > 10000000)
        throw ParseError("unreasonable dimensions " + std::to_string(rows) + " x " +
                         std::to_string(cols));
    if (static_cast<long long>(tokens.size()) - 2 != rows * cols)
        throw ParseError("expected " + std::to_string(rows * cols) + " cells, found " +
                         std::to_string(tokens.size() - 2));
    IntGrid g(static_cast<int>(rows), static_cast<int>(cols));
    for (long long k = 0; k < rows * cols; ++k) {
        const long long v = tokens[static_cast<std::size_t>(k) + 2];
        if (v < -1000000000 || v > 1000000000) throw ParseError("cell out of range: " + std::to_string(v));
        g.at(static_cast<int>(k / cols) + 1, static_cast<int>(k % cols) + 1) = static_cast<int>(v);
    }
    return g;
}

IntGrid read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const IntGrid& g) {
    out << g.rows() << ' ' << g.cols() << '\n';
    for (int i = 1; i <= g.rows(); ++i) {
        for (int j = 1; j <= g.cols(); ++j) {
            if (j > 1) out << ' ';
            out << g.at(i, j);
        }
        out << '\n';
    }
}

void write_matrix(std::ostream& out, const BinaryGrid& g) { write_matrix(out, to_int(g)); }

std::string to_text(const IntGrid& g) {
    std::ostringstream ss;
    write_matrix(ss, g);
    return ss.str();
}

}  // namespace rscan
