// Command-line front end: JSON states and operators in, deterministic JSON
// reports out. Exit codes: 0 ok, 1 invariant failure, 2 parse/validation,
// 3 dimension mismatch, 4 operator class error, 5 unsupported dims.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <string>

#include "conjfid/entangle.hpp"
#include "conjfid/io.hpp"
#include "conjfid/measures.hpp"
#include "conjfid/roofs.hpp"
#include "conjfid/verify.hpp"

namespace {

using namespace conjfid;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cerr << "wall time: " << double(us) / 1000.0 << " ms\n";
  }
};

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

std::pair<Index, Index> parse_dims2(const std::string& spec, Index dim) {
  Index da = 0, db = 0;
  const auto x = spec.find('x');
  if (x == std::string::npos) {
    throw UnsupportedDimsError("dims must look like AxB");
  }
  try {
    da = std::stol(spec.substr(0, x));
    db = std::stol(spec.substr(x + 1));
  } catch (const std::exception&) {
    throw UnsupportedDimsError("dims must look like AxB");
  }
  if (da < 1 || db < 1) throw UnsupportedDimsError("dims must be positive");
  if (da * db != dim) {
    throw DimensionError("dims " + spec + " do not factor dimension " +
                         std::to_string(dim));
  }
  return {da, db};
}

int cmd_fidelity(const std::string& rho_path, const std::string& omega_path,
                 bool concurrence) {
  const StateFile rho = load_state(rho_path);
  const StateFile omega = load_state(omega_path);
  Json rep;
  rep["command"] = concurrence ? "concurrence" : "fidelity";
  rep["inputs"] = {{"rho", rho.digest}, {"omega", omega.digest}};
  const SingularSpectrum spec = singular_numbers(rho.rho, omega.rho);
  Json results;
  if (concurrence) {
    results["concurrence"] = round12(spec.hinge());
  } else {
    const double f = spec.sum();
    results["fidelity"] = round12(f);
    results["transition_probability"] = round12(f * f);
  }
  results["spectrum"] = real_list(spec.values);
  rep["results"] = std::move(results);
  emit(rep);
  return 0;
}

int cmd_theta(const std::string& rho_path, const std::string& op_path,
              const std::string& quantity) {
  const StateFile rho = load_state(rho_path);
  const OperatorFile op = load_operator(op_path);
  const bool want_c = quantity == "concurrence";
  if (!want_c && quantity != "fidelity") {
    throw ValidationError("quantity must be fidelity or concurrence");
  }
  const MeasureResult m = want_c ? theta_concurrence(rho.rho, op.op)
                                 : theta_fidelity(rho.rho, op.op);
  Json rep;
  rep["command"] = "theta";
  rep["quantity"] = quantity;
  rep["inputs"] = {{"rho", rho.digest}, {"op", op.digest}};
  rep["results"] = {{"value", round12(m.value)},
                    {"spectrum", real_list(m.spectrum.values)}};
  emit(rep);
  return 0;
}

int cmd_decompose(const std::string& rho_path, const std::string& op_path,
                  const std::string& mode_name, const std::string& out_path) {
  const StateFile rho = load_state(rho_path);
  const OperatorFile op = load_operator(op_path);
  if (mode_name != "min" && mode_name != "max") {
    throw ValidationError("mode must be min or max");
  }
  const RoofMode mode = (mode_name == "min") ? RoofMode::min : RoofMode::max;
  const Ensemble ens = optimal_ensemble(rho.rho, op.op, mode);
  save_ensemble(out_path, ens);
  const double achieved = ensemble_value(ens, op.op);
  const double residual = (ens.assemble() - rho.rho.matrix()).norm();
  Json rep;
  rep["command"] = "decompose";
  rep["mode"] = mode_name;
  rep["inputs"] = {{"rho", rho.digest}, {"op", op.digest}};
  rep["results"] = {{"length", ens.length()},
                    {"achieved", round12(achieved)},
                    {"reconstruction_residual", round12(residual)},
                    {"out", out_path}};
  emit(rep);
  return 0;
}

Json witness_values(const WitnessReport& w) {
  Json values = Json::array();
  for (const auto& [label, value] : w.values) {
    values.push_back({{"label", label}, {"value", round12(value)}});
  }
  return values;
}

int cmd_witness(const std::string& state_path, const std::string& dims,
                bool three_qubit, int trials, std::uint64_t seed) {
  const StateFile st = load_state(state_path);
  Json rep;
  rep["command"] = "witness";
  rep["inputs"] = {{"state", st.digest}};
  rep["seed"] = seed;
  rep["trials"] = trials;
  if (three_qubit) {
    if (st.rho.dim() != 8) {
      throw DimensionError("--three-qubit needs an 8-dimensional pure state");
    }
    HermitianEig eig = herm_eig(st.rho.matrix());
    if (eig.values[0] < 1.0 - 1e-6) {
      throw ValidationError("--three-qubit needs a pure state");
    }
    const ComplexVector psi = eig.vectors.col(0);
    const WitnessReport w8 = three_qubit_product_test(psi);
    const WitnessReport w12 = three_qubit_product_test_extended(psi);
    rep["results"] = {
        {"values", witness_values(w8)},
        {"verdict", w8.entangled ? "entangled-witnessed" : "product-consistent"},
        {"extended_verdict",
         w12.entangled ? "entangled-witnessed" : "product-consistent"},
    };
    emit(rep);
    return 0;
  }
  const auto [da, db] = parse_dims2(dims, st.rho.dim());
  const WitnessReport w = bipartite_witness(st.rho, da, db, trials, seed);
  Json results;
  results["values"] = witness_values(w);
  results["verdict"] =
      w.entangled ? "entangled-witnessed" : "separable-consistent";
  // closed form of the pure-state supremum when the input is pure
  HermitianEig eig = herm_eig(st.rho.matrix());
  if (da == 2 && eig.values[0] > 1.0 - 1e-9) {
    results["pure_supremum"] =
        round12(pure_witness_supremum(eig.vectors.col(0), da, db));
  }
  rep["results"] = std::move(results);
  rep["certificate"] = matrix_to_json(w.certificate);
  emit(rep);
  return 0;
}

int cmd_eof(const std::string& rho_path, const std::string& dims, int trials,
            std::uint64_t seed) {
  const StateFile st = load_state(rho_path);
  const auto [da, db] = parse_dims2(dims, st.rho.dim());
  if (da != 2 || db % 2 != 0) {
    throw UnsupportedDimsError("eof needs dims 2xEVEN");
  }
  Json rep;
  rep["command"] = "eof";
  rep["inputs"] = {{"rho", st.digest}};
  rep["seed"] = seed;
  rep["trials"] = trials;
  if (db == 2) {
    rep["results"] = {{"value", round12(eof_2qubit(st.rho))}, {"exact", true}};
  } else {
    rep["results"] = {
        {"value", round12(eof_lower_bound(st.rho, da, db, trials, seed))},
        {"exact", false},
        {"meaning", "lower bound"}};
  }
  emit(rep);
  return 0;
}

int cmd_verify(int dim, int trials, std::uint64_t seed) {
  const VerifyReport v = run_verify(dim, trials, seed);
  Json rep;
  rep["command"] = "verify";
  rep["dim"] = dim;
  rep["trials"] = trials;
  rep["seed"] = seed;
  Json families = Json::array();
  for (const auto& f : v.families) {
    families.push_back({{"name", f.name},
                        {"pass", f.pass},
                        {"worst", round12(f.worst)},
                        {"budget", round12(f.budget)}});
  }
  rep["results"] = {{"families", std::move(families)}};
  rep["pass"] = v.all_pass;
  emit(rep);
  return v.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Timer timer;
  CLI::App app{"theta-fidelity and theta-concurrence toolkit"};
  app.require_subcommand(1);

  std::string rho_path, omega_path, op_path, dims, mode = "min";
  std::string out_path = "ensemble.json", quantity = "fidelity";
  int trials = 200;
  int dim = 4;
  std::uint64_t seed = 0;
  bool three_qubit = false;

  auto* fid = app.add_subcommand("fidelity", "fidelity of two states");
  fid->add_option("--rho", rho_path)->required();
  fid->add_option("--omega", omega_path)->required();

  auto* con = app.add_subcommand("concurrence", "concurrence of two states");
  con->add_option("--rho", rho_path)->required();
  con->add_option("--omega", omega_path)->required();

  auto* th = app.add_subcommand("theta", "theta-fidelity or -concurrence");
  th->add_option("--rho", rho_path)->required();
  th->add_option("--op", op_path)->required();
  th->add_option("--quantity", quantity)->check(CLI::IsMember({"fidelity", "concurrence"}));

  auto* dec = app.add_subcommand("decompose", "optimal pure-state decomposition");
  dec->add_option("--rho", rho_path)->required();
  dec->add_option("--op", op_path)->required();
  dec->add_option("--mode", mode)->check(CLI::IsMember({"min", "max"}));
  dec->add_option("--out", out_path);

  auto* wit = app.add_subcommand("witness", "separability witness report");
  wit->add_option("--rho", rho_path)->required();
  wit->add_option("--dims", dims);
  wit->add_option("--trials", trials);
  wit->add_option("--seed", seed)->required();
  wit->add_flag("--three-qubit", three_qubit);

  auto* eof = app.add_subcommand("eof", "entanglement of formation (or bound)");
  eof->add_option("--rho", rho_path)->required();
  eof->add_option("--dims", dims)->required();
  eof->add_option("--trials", trials);
  eof->add_option("--seed", seed)->required();

  auto* ver = app.add_subcommand("verify", "seeded invariant suite");
  ver->add_option("--dim", dim);
  ver->add_option("--trials", trials);
  ver->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fid) return cmd_fidelity(rho_path, omega_path, false);
    if (*con) return cmd_fidelity(rho_path, omega_path, true);
    if (*th) return cmd_theta(rho_path, op_path, quantity);
    if (*dec) return cmd_decompose(rho_path, op_path, mode, out_path);
    if (*wit) {
      if (!three_qubit && dims.empty()) {
        throw UnsupportedDimsError("witness needs --dims or --three-qubit");
      }
      return cmd_witness(rho_path, dims, three_qubit, trials, seed);
    }
    if (*eof) return cmd_eof(rho_path, dims, trials, seed);
    if (*ver) return cmd_verify(dim, trials, seed);
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const OperatorClassError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const UnsupportedDimsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
