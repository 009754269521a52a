// Text fixture format for matrices: first line is the dimension d, then d
// lines of d whitespace-separated complex entries written like `a+bi`.
#pragma once

#include <iosfwd>
#include <string>

#include "cohlab/complex_matrix.hpp"

namespace cohlab {

// Accepts `a`, `bi`, `a+bi`, `a-bi` with optional exponents on either part.
Cx parse_complex(const std::string& token, int line, int column);

ComplexMatrix parse_matrix(std::istream& in);
ComplexMatrix parse_matrix_file(const std::string& path);

std::string format_complex(Cx z);
void write_matrix(std::ostream& out, const ComplexMatrix& m);

}  // namespace cohlab
