#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conjfid/antilinear.hpp"
#include "conjfid/matcore.hpp"
#include "conjfid/roofs.hpp"

namespace conjfid {

using Json = nlohmann::ordered_json;

// Complex entries travel as [re, im] pairs, matrices as row-major nested
// arrays. Reports are deterministic for fixed inputs and seed: every numeric
// is rounded to 12 significant digits and keys keep insertion order.

struct StateFile {
  DensityOperator rho;
  std::vector<Index> dims;  // factor dimensions, empty when unspecified
  std::string label;
  std::string digest;       // content hash of the source file
};

struct OperatorFile {
  AntilinearOp op;
  std::string kind;   // declared classification
  std::string digest;
};

StateFile load_state(const std::string& path);
OperatorFile load_operator(const std::string& path);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix json_to_matrix(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector json_to_vector(const Json& j);

void save_ensemble(const std::string& path, const Ensemble& ens);
Ensemble load_ensemble(const std::string& path);

/// Round to 12 significant digits; report payloads pass through this.
double round12(double x);
Json real_list(const RealVector& v);

/// FNV-1a content hash, hex-encoded.
std::string file_digest(const std::string& path);

}  // namespace conjfid
