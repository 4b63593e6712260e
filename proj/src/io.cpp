#include "conjfid/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace conjfid {

namespace {

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ValidationError("malformed JSON in " + path);
  }
  return j;
}

Complex entry_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix json_to_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError("matrix must be a nonempty nested array");
  }
  const Index rows = Index(j.size());
  const Index cols = Index(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (Index(j[size_t(i)].size()) != cols) {
      throw ValidationError("matrix rows have uneven lengths");
    }
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = entry_from_json(j[size_t(i)][size_t(c)]);
    }
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back({round12(v[i].real()), round12(v[i].imag())});
  }
  return out;
}

ComplexVector json_to_vector(const Json& j) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  ComplexVector v(Index(j.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = entry_from_json(j[size_t(i)]);
  return v;
}

StateFile load_state(const std::string& path) {
  const Json j = parse_file(path);
  if (!j.contains("dim") || !j.contains("matrix")) {
    throw ValidationError(path + ": state file needs 'dim' and 'matrix'");
  }
  const Index dim = j["dim"].get<Index>();
  ComplexMatrix m = json_to_matrix(j["matrix"]);
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError(path + ": matrix shape disagrees with 'dim'");
  }
  StateFile out{DensityOperator(std::move(m)), {}, "", file_digest(path)};
  if (j.contains("dims")) {
    Index product = 1;
    for (const auto& d : j["dims"]) {
      out.dims.push_back(d.get<Index>());
      product *= out.dims.back();
    }
    if (product != dim) {
      throw ValidationError(path + ": factor dims do not multiply to 'dim'");
    }
  }
  if (j.contains("label")) out.label = j["label"].get<std::string>();
  if (std::abs(out.rho.trace() - 1.0) > 1e-6) {
    std::cerr << "warning: " << path << " has trace " << out.rho.trace()
              << " (not normalized)\n";
  }
  return out;
}

OperatorFile load_operator(const std::string& path) {
  const Json j = parse_file(path);
  if (!j.contains("dim") || !j.contains("matrix")) {
    throw ValidationError(path + ": operator file needs 'dim' and 'matrix'");
  }
  const Index dim = j["dim"].get<Index>();
  ComplexMatrix m = json_to_matrix(j["matrix"]);
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError(path + ": matrix shape disagrees with 'dim'");
  }
  OperatorFile out{AntilinearOp{std::move(m)}, "general", file_digest(path)};
  if (j.contains("kind")) {
    out.kind = j["kind"].get<std::string>();
    const OperatorKind k = classify(out.op);
    const bool matches = (out.kind == "conjugation" && k.conjugation) ||
                         (out.kind == "skew" && k.skew) ||
                         (out.kind == "hermitian" && k.hermitian) ||
                         (out.kind == "anti_hermitian" && k.anti_hermitian) ||
                         (out.kind == "antiunitary" && k.antiunitary) ||
                         out.kind == "general";
    if (!matches) {
      std::cerr << "warning: " << path << " declares kind '" << out.kind
                << "' but classification disagrees\n";
    }
  }
  return out;
}

void save_ensemble(const std::string& path, const Ensemble& ens) {
  Json j;
  j["length"] = ens.length();
  j["dim"] = ens.vectors.empty() ? 0 : ens.vectors.front().size();
  Json vecs = Json::array();
  for (const auto& v : ens.vectors) vecs.push_back(vector_to_json(v));
  j["vectors"] = std::move(vecs);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

Ensemble load_ensemble(const std::string& path) {
  const Json j = parse_file(path);
  if (!j.contains("vectors")) {
    throw ValidationError(path + ": ensemble file needs 'vectors'");
  }
  Ensemble ens;
  for (const auto& v : j["vectors"]) ens.vectors.push_back(json_to_vector(v));
  return ens;
}

double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json real_list(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(round12(v[i]));
  return out;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace conjfid
