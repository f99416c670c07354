#include "toric/io.hpp"

#include <cstdio>
#include <sstream>

namespace toric {

namespace {

Int read_int(std::istream& in, const char* what) {
  Int v;
  if (!(in >> v)) throw InvalidInput(std::string("expected an integer for ") + what);
  return v;
}

}  // namespace

IntMatrix read_matrix(std::istream& in) {
  Int r = read_int(in, "the row count");
  Int c = read_int(in, "the column count");
  if (r < 0 || c < 0) throw InvalidInput("negative matrix dimensions");
  IntMatrix m(r, c);
  for (Int i = 0; i < r; ++i)
    for (Int j = 0; j < c; ++j) m(i, j) = read_int(in, "a matrix entry");
  return m;
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

std::string matrix_to_string(const IntMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, Index width) {
  IntMatrix m(static_cast<Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

std::vector<IntVector> matrix_rows(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

IntVector parse_vector(const std::string& text) {
  std::vector<Int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse '" + item + "' as an integer in '" + text + "'");
    }
  }
  if (values.empty()) throw InvalidInput("empty vector");
  return to_vector(values);
}

std::string vector_to_string(const IntVector& v, const char* sep) {
  std::ostringstream os;
  for (Index i = 0; i < v.size(); ++i) os << (i ? sep : "") << v(i);
  return os.str();
}

TableMultiset read_multiset(std::istream& in) {
  Int n = read_int(in, "the member count");
  Int rows = read_int(in, "the table row count");
  Int cols = read_int(in, "the table column count");
  if (n < 1 || rows < 1 || cols < 1) throw InvalidInput("multiset dimensions must be positive");
  TableMultiset m;
  for (Int k = 0; k < n; ++k) {
    Table t(rows, cols);
    for (Int i = 0; i < rows; ++i)
      for (Int j = 0; j < cols; ++j) t(i, j) = read_int(in, "a table entry");
    m.members.push_back(std::move(t));
  }
  m.margins = margins_of(m.members.front());
  return m;
}

void write_multiset(std::ostream& out, const TableMultiset& m) {
  const Index rows = m.margins.row.size(), cols = m.margins.col.size();
  out << m.size() << ' ' << rows << ' ' << cols << '\n';
  for (const auto& t : m.members) {
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) out << (j ? " " : "") << t(i, j);
      out << '\n';
    }
  }
}

std::string matrix_digest(const IntMatrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : matrix_to_string(m)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace toric
