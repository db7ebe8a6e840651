// Command-line front end: thin adapters over the library. No numeric logic
// lives here; every command resolves its configuration, calls the library,
// and writes byte-stable JSON or CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantorqc/bounds.hpp"
#include "cantorqc/cantor.hpp"
#include "cantorqc/classify.hpp"
#include "cantorqc/moduli.hpp"
#include "cantorqc/omega.hpp"
#include "cantorqc/sim.hpp"

namespace {

using cantorqc::OmegaSequence;
using cantorqc::Rational;
using cantorqc::Real;
using json = nlohmann::ordered_json;

OmegaSequence parse_sequence_arg(const std::string& arg) {
  std::string path;
  if (arg.rfind("file:", 0) == 0)
    path = arg.substr(5);
  else if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json")
    path = arg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in)
      cantorqc::raise(cantorqc::ErrorKind::ParseError,
                      "cannot open sequence file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      cantorqc::raise(cantorqc::ErrorKind::ParseError,
                      "bad JSON in '" + path + "': " + ex.what());
    }
    return OmegaSequence::from_json(j);
  }
  return OmegaSequence::parse_literal(arg);
}

void write_output(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    std::ofstream file(*out);
    if (!file)
      cantorqc::raise(cantorqc::ErrorKind::ValidationError,
                      "cannot write '" + *out + "'");
    file << text;
  } else {
    std::cout << text;
  }
}

void write_json(const std::optional<std::string>& out, const json& j) {
  write_output(out, j.dump(2) + "\n");
}

std::string config_comment(const json& config) {
  std::string text;
  for (const auto& [key, value] : config.items()) {
    text += "# " + key + "=";
    text += value.is_string() ? value.get<std::string>() : value.dump();
    text += "\n";
  }
  return text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

int run(int argc, char** argv) {
  CLI::App app{"generalized Cantor sets: construction, length bounds, ring moduli, "
               "equivalence classification, shift-map simulation"};
  app.require_subcommand(1);

  // ---- build ----------------------------------------------------------
  auto* build = app.add_subcommand("build", "construct a depth-k level exactly");
  std::string build_omega;
  int build_depth = 0;
  std::uint64_t budget = std::uint64_t{1} << 20;
  unsigned rationalize_bits = 128;
  std::optional<std::string> build_out, build_csv;
  build->add_option("--omega", build_omega, "sequence literal or JSON file")->required();
  build->add_option("--depth", build_depth, "construction depth k")->required();
  build->add_option("--budget", budget, "interval budget (default 2^20)");
  build->add_option("--rationalize-bits", rationalize_bits,
                    "dyadic bits when q_n is irrational (default 128)");
  build->add_option("--out", build_out, "output JSON path (default stdout)");
  build->add_option("--csv", build_csv, "also write a CSV of lengths");

  // ---- verify ---------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check closed-form lengths against construction");
  std::string verify_omega;
  int verify_kmax = 8;
  std::optional<std::string> verify_out;
  verify->add_option("--omega", verify_omega)->required();
  verify->add_option("--kmax", verify_kmax, "deepest level to check (default 8)");
  verify->add_option("--out", verify_out);

  // ---- bounds ---------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "geodesic length-bound envelope CSV");
  std::string bounds_omega, bounds_delta = "auto";
  int bounds_kmax = 6;
  std::uint64_t bounds_max_rows = std::uint64_t{1} << 16;
  std::optional<std::string> bounds_out;
  bounds->add_option("--omega", bounds_omega)->required();
  bounds->add_option("--kmax", bounds_kmax, "deepest level (default 6)");
  bounds->add_option("--delta", bounds_delta,
                     "lower bound delta as a rational, or 'auto' (default)");
  bounds->add_option("--max-rows", bounds_max_rows);
  bounds->add_option("--out", bounds_out);

  // ---- moduli ---------------------------------------------------------
  auto* moduli = app.add_subcommand("moduli", "Teichmueller modulus oracle and chains");
  std::string t_grid, q_grid;
  int moduli_kmax = 30;
  std::optional<std::string> moduli_out;
  moduli->add_option("--t-grid", t_grid, "lo:hi:points, log-spaced (e.g. 1e-3:1e6:1000)");
  moduli->add_option("--q-grid", q_grid, "comma list of q values for the chain CSV");
  moduli->add_option("--kmax", moduli_kmax, "chain depth range (default 30)");
  moduli->add_option("--out", moduli_out);

  // ---- classify -------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "three-valued equivalence verdict");
  std::string seq_a, seq_b, classify_delta;
  std::uint64_t classify_horizon = 10000;
  std::optional<double> heuristic_threshold;
  std::optional<std::string> classify_out;
  classify_cmd->add_option("--a", seq_a)->required();
  classify_cmd->add_option("--b", seq_b)->required();
  classify_cmd->add_option("--horizon", classify_horizon, "finite scan horizon (default 10000)");
  classify_cmd->add_option("--delta", classify_delta, "override the delta policy (rational)");
  classify_cmd->add_option("--heuristic-threshold", heuristic_threshold,
                           "attach a non-rigorous advisory outcome for Indeterminate verdicts");
  classify_cmd->add_option("--out", classify_out);

  // ---- matrix ---------------------------------------------------------
  auto* matrix_cmd = app.add_subcommand("matrix", "pairwise verdicts for the power family");
  std::string alphas_arg;
  std::uint64_t matrix_horizon = 10000;
  std::optional<std::string> matrix_out;
  matrix_cmd->add_option("--alphas", alphas_arg, "comma list of alpha > 1")->required();
  matrix_cmd->add_option("--horizon", matrix_horizon);
  matrix_cmd->add_option("--out", matrix_out);

  // ---- simulate -------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "shift-map volume experiment");
  std::uint64_t sim_seed = 1;
  std::uint32_t sim_samples = 10000, sim_trunc = 200;
  double sim_threshold = 5.0;
  std::string sim_ref = "power_exp:1:2", sim_checkpoints;
  std::optional<std::string> sim_out;
  simulate->add_option("--seed", sim_seed, "RNG seed (default 1)");
  simulate->add_option("--samples", sim_samples, "sample count M (default 10000)");
  simulate->add_option("--trunc", sim_trunc, "truncation N (default 200)");
  simulate->add_option("--threshold", sim_threshold, "statistic threshold T (default 5)");
  simulate->add_option("--ref", sim_ref, "reference sequence (default power_exp:1:2)");
  simulate->add_option("--checkpoints", sim_checkpoints,
                       "comma list of N checkpoints (default 10,50,100,200 capped at N)");
  simulate->add_option("--out", sim_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json err{
        {"error", {{"kind", "ValidationError"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }

  if (build->parsed()) {
    OmegaSequence omega = parse_sequence_arg(build_omega);
    cantorqc::BuildOptions opts{budget, rationalize_bits};
    cantorqc::CantorLevel level = cantorqc::build_level(omega, build_depth, opts);
    json config{{"command", "build"},
                {"omega", omega.to_json()},
                {"depth", build_depth},
                {"budget", budget},
                {"rationalize_bits", rationalize_bits}};
    json out{{"config", config}, {"level", cantorqc::level_to_json(level)}};
    write_json(build_out, out);
    if (build_csv)
      write_output(build_csv, config_comment(config) + cantorqc::level_to_csv(level));
    return 0;
  }

  if (verify->parsed()) {
    OmegaSequence omega = parse_sequence_arg(verify_omega);
    auto report = cantorqc::verify_formulas(omega, verify_kmax);
    json config{{"command", "verify"},
                {"omega", omega.to_json()},
                {"kmax", verify_kmax}};
    write_json(verify_out, json{{"config", config},
                                {"report", cantorqc::report_to_json(report)}});
    return 0;
  }

  if (bounds->parsed()) {
    OmegaSequence omega = parse_sequence_arg(bounds_omega);
    Real delta;
    if (bounds_delta == "auto") {
      auto d = omega.lower_bound_delta();
      if (!d)
        cantorqc::raise(cantorqc::ErrorKind::ValidationError,
                        "no decidable lower bound; pass --delta explicitly");
      delta = *d;
    } else {
      delta = cantorqc::to_real(cantorqc::parse_rational(bounds_delta));
    }
    json config{{"command", "bounds"},
                {"omega", omega.to_json()},
                {"kmax", bounds_kmax},
                {"delta", cantorqc::real_str(delta)},
                {"max_rows", bounds_max_rows}};
    write_output(bounds_out, config_comment(config) +
                                 cantorqc::bounds_csv(omega, bounds_kmax, delta,
                                                      bounds_max_rows));
    return 0;
  }

  if (moduli->parsed()) {
    if (t_grid.empty() == q_grid.empty())
      cantorqc::raise(cantorqc::ErrorKind::ValidationError,
                      "pass exactly one of --t-grid or --q-grid");
    if (!t_grid.empty()) {
      std::vector<std::string> fields;
      std::stringstream ss(t_grid);
      std::string item;
      while (std::getline(ss, item, ':')) fields.push_back(item);
      if (fields.size() != 3)
        cantorqc::raise(cantorqc::ErrorKind::ParseError,
                        "--t-grid wants lo:hi:points");
      Real lo(fields[0]);
      Real hi(fields[1]);
      std::size_t points = std::stoul(fields[2]);
      json config{{"command", "moduli"},
                  {"t_grid", t_grid},
                  {"points", points}};
      write_output(moduli_out,
                   config_comment(config) + cantorqc::psi_csv(lo, hi, points));
    } else {
      std::vector<Real> qs;
      for (const auto& s : split_list(q_grid))
        qs.push_back(cantorqc::to_real(cantorqc::parse_rational(s)));
      json config{{"command", "moduli"},
                  {"q_grid", q_grid},
                  {"kmax", moduli_kmax}};
      write_output(moduli_out,
                   config_comment(config) + cantorqc::chain_csv(qs, moduli_kmax));
    }
    return 0;
  }

  if (classify_cmd->parsed()) {
    OmegaSequence a = parse_sequence_arg(seq_a);
    OmegaSequence b = parse_sequence_arg(seq_b);
    cantorqc::DeltaPolicy policy;
    if (!classify_delta.empty())
      policy.override_delta = cantorqc::parse_rational(classify_delta);
    cantorqc::Verdict verdict = cantorqc::classify(a, b, classify_horizon, policy);
    json config{{"command", "classify"},
                {"a", a.to_json()},
                {"b", b.to_json()},
                {"horizon", classify_horizon},
                {"delta", classify_delta.empty() ? "auto" : classify_delta}};
    json out{{"config", config}};
    json v = cantorqc::verdict_to_json(verdict);
    if (heuristic_threshold && verdict.outcome == cantorqc::Outcome::Indeterminate) {
      double t = *heuristic_threshold;
      const char* advisory =
          verdict.sufficient.finite_max < Real(t)   ? "Equivalent"
          : verdict.necessary.finite_max > Real(t) ? "NotEquivalent"
                                                   : "Indeterminate";
      v["advisory"] = json{{"outcome", advisory},
                           {"threshold", t},
                           {"rigorous", false},
                           {"note", "finite-horizon heuristic, not a theorem application"}};
    }
    out["verdict"] = v;
    write_json(classify_out, out);
    return 0;
  }

  if (matrix_cmd->parsed()) {
    std::vector<Rational> alphas;
    for (const auto& s : split_list(alphas_arg))
      alphas.push_back(cantorqc::parse_rational(s));
    auto matrix = cantorqc::pairwise_matrix(alphas, matrix_horizon);
    json config{{"command", "matrix"},
                {"alphas", alphas_arg},
                {"horizon", matrix_horizon}};
    write_output(matrix_out,
                 config_comment(config) + cantorqc::matrix_to_csv(alphas, matrix));
    return 0;
  }

  if (simulate->parsed()) {
    OmegaSequence ref = parse_sequence_arg(sim_ref);
    std::vector<std::uint32_t> checkpoints;
    if (sim_checkpoints.empty()) {
      for (std::uint32_t c : {10u, 50u, 100u, 200u})
        if (c <= sim_trunc) checkpoints.push_back(c);
      if (checkpoints.empty() || checkpoints.back() != sim_trunc)
        checkpoints.push_back(sim_trunc);
    } else {
      for (const auto& s : split_list(sim_checkpoints))
        checkpoints.push_back(static_cast<std::uint32_t>(std::stoul(s)));
    }
    cantorqc::SampleBatch batch = cantorqc::sample_batch(sim_seed, sim_trunc, sim_samples);
    auto report = cantorqc::volume_experiment(ref, batch, sim_threshold, checkpoints);
    json config{{"command", "simulate"},
                {"seed", sim_seed},
                {"samples", sim_samples},
                {"trunc", sim_trunc},
                {"threshold", sim_threshold},
                {"ref", ref.to_json()},
                {"checkpoints", checkpoints}};
    write_json(sim_out, json{{"config", config},
                             {"volume", cantorqc::volume_to_json(report)}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cantorqc::Error& ex) {
    nlohmann::ordered_json err{
        {"error", {{"kind", cantorqc::to_string(ex.kind())}, {"message", ex.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& ex) {
    nlohmann::ordered_json err{
        {"error", {{"kind", "Internal"}, {"message", ex.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
}
