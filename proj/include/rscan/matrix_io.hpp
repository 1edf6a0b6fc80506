#pragma once
// Plain-text matrix files: a "rows cols" header line, then rows of
// space-separated integers. '#' starts a comment that runs to end of line.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rscan/grid.hpp"

namespace rscan {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntGrid read_matrix(std::istream& in);                 // throws ParseError
IntGrid read_matrix_file(const std::string& path);     // throws ParseError

void write_matrix(std::ostream& out, const IntGrid& g);
void write_matrix(std::ostream& out, const BinaryGrid& g);
std::string to_text(const IntGrid& g);

}  // namespace rscan
