#include "siccalc/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace siccalc {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw SchemaError(field + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) schema(field, "expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) schema(field + "." + key, "missing");
  return *it;
}

int positive_dim(const Json& j, const std::string& field) {
  const Json& d = member(j, "dim", field);
  if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 4096) {
    schema(field + ".dim", "expected a positive integer");
  }
  return d.get<int>();
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) schema(field, "expected a number");
  return j.get<double>();
}

const Json& array(const Json& j, const std::string& field, std::size_t expected) {
  if (!j.is_array()) schema(field, "expected an array");
  if (j.size() != expected) {
    schema(field, "expected " + std::to_string(expected) + " items, got " +
                      std::to_string(j.size()));
  }
  return j;
}

// Re-raise a domain error raised while building a value from `field`.
template <typename F>
auto building(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    schema(field, e.what());
  }
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  array(j, field, 2);
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

ComplexVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "expected an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(k) = complex_from_json(j[k], field + "[" + std::to_string(k) + "]");
  }
  return v;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
  const int d = positive_dim(j, field);
  const std::string ef = field + ".entries";
  const Json& rows = array(member(j, "entries", field), ef, d);
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const std::string rf = ef + "[" + std::to_string(r) + "]";
    const Json& row = array(rows[r], rf, d);
    for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(row[c], rf + "[" + std::to_string(c) + "]");
  }
  return m;
}

HermitianOperator operator_from_json(const Json& j, const std::string& field) {
  ComplexMatrix m = matrix_from_json(j, field);
  return building(field, [&] { return HermitianOperator(std::move(m)); });
}

DensityOperator state_from_json(const Json& j, const std::string& field) {
  HermitianOperator op = operator_from_json(j, field);
  return building(field, [&] { return DensityOperator(std::move(op)); });
}

Json frame_to_json(const SicFrame& frame) {
  if (!frame.fiducial()) throw InvalidArgument("frame_to_json: frame has no fiducial");
  return {{"dim", frame.dim()},
          {"fiducial", vector_to_json(frame.fiducial()->vector())},
          {"quality", frame.quality()}};
}

SicFrame frame_from_json(const Json& j) {
  const int d = positive_dim(j, "frame");
  const Json& fj = array(member(j, "fiducial", "frame"), "frame.fiducial", d);
  ComplexVector v = vector_from_json(fj, "frame.fiducial");
  if (const auto it = j.find("quality"); it != j.end()) number(*it, "frame.quality");
  return building("frame.fiducial", [&] { return SicFrame::from_fiducial(Fiducial(std::move(v))); });
}

Json prob_to_json(const ProbVector& p) {
  return {{"dim", p.dim()}, {"p", std::vector<double>(p.values().begin(), p.values().end())}};
}

ProbVector prob_from_json(const Json& j, const std::string& field) {
  const int d = positive_dim(j, field);
  const std::string pf = field + ".p";
  const Json& arr = array(member(j, "p", field), pf, static_cast<std::size_t>(d) * d);
  std::vector<double> values(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    values[k] = number(arr[k], pf + "[" + std::to_string(k) + "]");
  }
  return building(pf, [&] { return ProbVector(d, std::move(values)); });
}

Json points_to_json(const std::vector<ProbVector>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(prob_to_json(p));
  return out;
}

std::vector<ProbVector> points_from_json(const Json& j) {
  if (!j.is_array()) schema("points", "expected an array of probability vectors");
  std::vector<ProbVector> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(prob_from_json(j[k], "points[" + std::to_string(k) + "]"));
  }
  return out;
}

Json povm_to_json(const Povm& povm) {
  Json elems = Json::array();
  for (const auto& e : povm.elements()) elems.push_back(matrix_to_json(e.matrix()));
  return {{"dim", povm.dim()}, {"elements", std::move(elems)}};
}

Povm povm_from_json(const Json& j) {
  const int d = positive_dim(j, "povm");
  const Json& ej = member(j, "elements", "povm");
  if (!ej.is_array() || ej.empty()) schema("povm.elements", "expected a non-empty array");
  std::vector<HermitianOperator> elems;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const std::string f = "povm.elements[" + std::to_string(k) + "]";
    HermitianOperator op = operator_from_json(ej[k], f);
    if (op.dim() != d) schema(f + ".dim", "does not match povm.dim");
    elems.push_back(std::move(op));
  }
  return building("povm.elements", [&] { return Povm(std::move(elems)); });
}

Json rayset_to_json(const RayBasisSet& set) {
  Json rays = Json::array();
  for (const auto& r : set.rays()) rays.push_back(vector_to_json(r));
  return {{"dim", set.dim()}, {"rays", std::move(rays)}, {"bases", set.bases()}};
}

RayBasisSet rayset_from_json(const Json& j) {
  const int d = positive_dim(j, "set");
  const Json& rj = member(j, "rays", "set");
  if (!rj.is_array()) schema("set.rays", "expected an array");
  std::vector<ComplexVector> rays;
  for (std::size_t k = 0; k < rj.size(); ++k) {
    const std::string f = "set.rays[" + std::to_string(k) + "]";
    rays.push_back(vector_from_json(array(rj[k], f, d), f));
  }
  const Json& bj = member(j, "bases", "set");
  if (!bj.is_array()) schema("set.bases", "expected an array");
  std::vector<std::vector<int>> bases;
  for (std::size_t b = 0; b < bj.size(); ++b) {
    const std::string f = "set.bases[" + std::to_string(b) + "]";
    const Json& row = array(bj[b], f, d);
    std::vector<int> idx;
    for (const auto& x : row) {
      if (!x.is_number_integer()) schema(f, "expected integer ray indices");
      idx.push_back(x.get<int>());
    }
    bases.push_back(std::move(idx));
  }
  return building("set", [&] { return RayBasisSet(d, std::move(rays), std::move(bases)); });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": not valid JSON (" + e.what() + ")");
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace siccalc
