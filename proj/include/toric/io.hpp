#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "toric/integer.hpp"
#include "toric/transport.hpp"

namespace toric {

// Text matrix: a line "R C" followed by R lines of C integers.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);
std::string matrix_to_string(const IntMatrix& m);

// One vector per row.
IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, Index width);
std::vector<IntVector> matrix_rows(const IntMatrix& m);

// "2,2,2" -> (2,2,2)
IntVector parse_vector(const std::string& text);
std::string vector_to_string(const IntVector& v, const char* sep = ",");

// Multiset of tables: a line "N I J" followed by N blocks of I lines of J integers.
TableMultiset read_multiset(std::istream& in);
void write_multiset(std::ostream& out, const TableMultiset& m);

// FNV-1a over the text form; stable across runs and platforms.
std::string matrix_digest(const IntMatrix& m);

}  // namespace toric
