#pragma once

// JSON file formats. Complex numbers are [re, im]; matrices are row-major
// {"dim": d, "entries": [[[re, im], ...], ...]}. Loaders throw SchemaError with
// the offending field in the message.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siccalc/consistency_geometry.hpp"
#include "siccalc/contextuality.hpp"
#include "siccalc/operator_core.hpp"
#include "siccalc/sic_engine.hpp"
#include "siccalc/sic_probability.hpp"

namespace siccalc {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j, const std::string& field);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& field = "matrix");

HermitianOperator operator_from_json(const Json& j, const std::string& field = "matrix");
DensityOperator state_from_json(const Json& j, const std::string& field = "state");

/// {"dim", "fiducial", "quality"}. Throws InvalidArgument for a frame without a fiducial.
Json frame_to_json(const SicFrame& frame);
/// Rebuilds the projectors from the fiducial; the stored quality is not trusted.
SicFrame frame_from_json(const Json& j);

Json prob_to_json(const ProbVector& p);
ProbVector prob_from_json(const Json& j, const std::string& field = "prob");

Json points_to_json(const std::vector<ProbVector>& points);
std::vector<ProbVector> points_from_json(const Json& j);

/// {"dim", "elements": [matrix, ...]}.
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json rayset_to_json(const RayBasisSet& set);
RayBasisSet rayset_from_json(const Json& j);

/// Throws IoError if the file cannot be read, SchemaError if it is not JSON.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indent, trailing newline.
std::string dump_json(const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Bundled data: $SIC_CALC_DATA_DIR if set, else the source tree's data/ when present,
/// else the installed share/siccalc.
std::filesystem::path data_dir();
std::filesystem::path data_file(const std::string& relative);

}  // namespace siccalc
