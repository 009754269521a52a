#include "cohlab/matrix_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cohlab {

namespace {

// Splits off one leading float literal; returns chars consumed, 0 on failure.
size_t scan_float(const std::string& s, size_t pos, double* out) {
    const char* start = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) return 0;
    *out = v;
    return static_cast<size_t>(end - start);
}

}  // namespace

Cx parse_complex(const std::string& token, int line, int column) {
    if (token.empty()) throw ParseError("empty entry", line, column);

    // Pure imaginary with implicit unit coefficient: "i", "+i", "-i".
    if (token == "i" || token == "+i") return Cx(0.0, 1.0);
    if (token == "-i") return Cx(0.0, -1.0);

    double first = 0.0;
    const size_t n1 = scan_float(token, 0, &first);
    if (n1 == 0) throw ParseError("malformed number '" + token + "'", line, column);

    if (n1 == token.size()) return Cx(first, 0.0);  // plain real

    if (token[n1] == 'i' && n1 + 1 == token.size()) return Cx(0.0, first);  // pure imaginary

    // "a+bi" / "a-bi"; the sign belongs to the imaginary literal.
    if (token[n1] != '+' && token[n1] != '-')
        throw ParseError("malformed entry '" + token + "'", line, column);
    double second = 0.0;
    const size_t n2 = scan_float(token, n1, &second);
    if (n2 == 0 || n1 + n2 + 1 != token.size() || token[n1 + n2] != 'i') {
        // Bare sign before i: "a+i", "a-i".
        if (n1 + 2 == token.size() && token[n1 + 1] == 'i')
            return Cx(first, token[n1] == '+' ? 1.0 : -1.0);
        throw ParseError("malformed entry '" + token + "'", line, column);
    }
    return Cx(first, second);
}

ComplexMatrix parse_matrix(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing dimension line", 1, 1);
    int d = 0;
    try {
        size_t consumed = 0;
        d = std::stoi(header, &consumed);
        while (consumed < header.size() && std::isspace(static_cast<unsigned char>(header[consumed])))
            ++consumed;
        if (consumed != header.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw ParseError("dimension line must be a single integer", 1, 1);
    }
    if (d < 1 || d > kMaxDim)
        throw ParseError("dimension " + std::to_string(d) + " out of range [1, " +
                             std::to_string(kMaxDim) + "]",
                         1, 1);

    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        std::string row;
        if (!std::getline(in, row)) throw ParseError("unexpected end of input", i + 2, 1);
        std::istringstream row_in(row);
        for (int j = 0; j < d; ++j) {
            std::string token;
            if (!(row_in >> token))
                throw ParseError("row has fewer than " + std::to_string(d) + " entries", i + 2, j + 1);
            m(i, j) = parse_complex(token, i + 2, j + 1);
        }
        std::string extra;
        if (row_in >> extra)
            throw ParseError("row has more than " + std::to_string(d) + " entries", i + 2, d + 1);
    }
    return m;
}

ComplexMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    return parse_matrix(in);
}

std::string format_complex(Cx z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", z.real());
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
    out << m.dim() << "\n";
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j) out << " ";
            out << format_complex(m(i, j));
        }
        out << "\n";
    }
}

}  // namespace cohlab
