// json_io.hpp - the repo-wide JSON matrix encoding and input-file schemas
//
// Matrix encoding: {"rows": n, "cols": m, "data": [[re, im], ...]} row-major,
// one [re, im] pair per entry. Parsers reject wrong-length data and
// non-finite entries.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtlab/matcore.hpp"

namespace gtlab {

ComplexMatrix parse_matrix(const std::string& json_text);

/// Deterministic encoding (fixed key order, 17 significant digits).
std::string matrix_to_json(const ComplexMatrix& m);

/// Parsed `bound`/`sweep` input file: {"L": matrix, "H": [matrix...],
/// "B": [...], "A": [...], "C": [...]}, every key optional. Typed validation
/// (Hermitian/PD/resolution) happens at the consuming command.
struct BoundInput {
  std::optional<ComplexMatrix> l;
  std::vector<ComplexMatrix> h;
  std::vector<ComplexMatrix> b;
  std::vector<ComplexMatrix> a;
  std::vector<ComplexMatrix> c;
};

BoundInput parse_bound_input(const std::string& json_text);
BoundInput load_bound_input(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gtlab
