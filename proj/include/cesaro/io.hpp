#pragma once

// Matrix serialization. CSV is row-major with each entry flattened to a
// "re,im" pair, so a row of an order-N matrix has 2(N+1) fields; structure
// metadata is not stored and is re-detected on read. JSON carries shape,
// structure, and entries as [re, im] pairs. Round trips are value-exact
// (printed with max_digits10); bit-exactness across platforms is not a goal.

#include <iosfwd>
#include <string>

#include "cesaro/hardy.hpp"

namespace cesaro {

void write_matrix_csv(std::ostream& os, const OperatorMatrix& m);
OperatorMatrix read_matrix_csv(std::istream& is);

void write_matrix_json(std::ostream& os, const OperatorMatrix& m);
OperatorMatrix read_matrix_json(std::istream& is);

void save_matrix(const std::string& path, const OperatorMatrix& m);  // picks format by extension
OperatorMatrix load_matrix(const std::string& path);

}  // namespace cesaro
