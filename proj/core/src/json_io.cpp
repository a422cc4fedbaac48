#include "gtlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gtlab/report.hpp"  // format_double
#include "json.hpp"

namespace gtlab {

namespace {

using nlohmann::json;

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ValidationError(where + ": expected {\"rows\", \"cols\", \"data\"}");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ValidationError(where + ": rows/cols must be integers");
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  if (rows < 1 || cols < 1 || rows > 10000 || cols > 10000)
    throw ValidationError(where + ": rows/cols out of range");
  const json& data = j["data"];
  if (!data.is_array() || data.size() != static_cast<size_t>(rows * cols))
    throw ValidationError(where + ": data has " +
                          std::to_string(data.is_array() ? data.size() : 0) +
                          " entries, expected rows*cols = " + std::to_string(rows * cols));
  ComplexMatrix m(rows, cols);
  size_t idx = 0;
  for (long long i = 0; i < rows; ++i) {
    for (long long jcol = 0; jcol < cols; ++jcol, ++idx) {
      const json& pair = data[idx];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        throw ValidationError(where + ": data entry " + std::to_string(idx) +
                              " is not an [re, im] pair");
      const double re = pair[0].get<double>();
      const double im = pair[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ValidationError(where + ": non-finite entry at index " + std::to_string(idx));
      m(i, jcol) = Complex(re, im);
    }
  }
  return m;
}

std::vector<ComplexMatrix> matrix_list_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of matrices");
  std::vector<ComplexMatrix> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(matrix_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_or_throw(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ValidationError(where + ": malformed JSON");
  return j;
}

}  // namespace

ComplexMatrix parse_matrix(const std::string& json_text) {
  return matrix_from_json(parse_or_throw(json_text, "matrix"), "matrix");
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string s = "{\"rows\":" + std::to_string(m.rows()) +
                  ",\"cols\":" + std::to_string(m.cols()) + ",\"data\":[";
  bool first = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!first) s += ',';
      first = false;
      s += '[' + format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag()) + ']';
    }
  }
  s += "]}";
  return s;
}

BoundInput parse_bound_input(const std::string& json_text) {
  json j = parse_or_throw(json_text, "input");
  if (!j.is_object()) throw ValidationError("input: expected a JSON object");
  BoundInput in;
  if (j.contains("L")) in.l = matrix_from_json(j["L"], "L");
  if (j.contains("H")) in.h = matrix_list_from_json(j["H"], "H");
  if (j.contains("B")) in.b = matrix_list_from_json(j["B"], "B");
  if (j.contains("A")) in.a = matrix_list_from_json(j["A"], "A");
  if (j.contains("C")) in.c = matrix_list_from_json(j["C"], "C");
  return in;
}

BoundInput load_bound_input(const std::string& path) {
  return parse_bound_input(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write file: " + path);
  f << contents;
  if (!f.good()) throw Error("short write: " + path);
}

}  // namespace gtlab
