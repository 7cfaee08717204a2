// Copyright 2026 The Multirail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "multirail/basis_table.hpp"
#include "multirail/kernels.hpp"
#include "multirail/lon.hpp"
#include "multirail/loss.hpp"
#include "multirail/report.hpp"
#include "multirail/source.hpp"
#include "multirail/state_json.hpp"
#include "multirail/verifier.hpp"

namespace {

using namespace multirail;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": expected a comma-separated integer list");
    }
  }
  if (out.empty())
    throw CLI::ValidationError(std::string(what) + ": empty list");
  return out;
}

SourceSpec parse_source(const std::string& text, double r, double r_db, double x) {
  if (text == "single-photon" || text == "single_photon") return SourceSpec::single_photon();
  if (text.rfind("fock:", 0) == 0) return SourceSpec::fock(std::stoi(text.substr(5)));
  if (text.rfind("coherent:", 0) == 0) {
    const std::string rest = text.substr(9);
    const auto comma = rest.find(',');
    const double re = std::stod(rest.substr(0, comma));
    const double im = comma == std::string::npos ? 0.0 : std::stod(rest.substr(comma + 1));
    return SourceSpec::coherent(cplx{re, im});
  }
  if (text == "squeezed") {
    const double factor = r_db > 0.0 ? squeeze_factor_from_db(r_db) : r;
    if (!(factor > 0.0))
      throw CLI::ValidationError("squeezed source needs --r > 0 or --r-db > 0");
    return SourceSpec::squeezed(factor, x);
  }
  throw CLI::ValidationError(
      "unknown source '" + text + "' (single-photon | fock:n | coherent:re[,im] | squeezed)");
}

std::vector<double> make_grid(double from, double to, double step) {
  if (step <= 0.0) throw CLI::ValidationError("--x-step must be positive");
  if (to < from) throw CLI::ValidationError("--x-to must not be below --x-from");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double x = from + step * i;
    if (x > to + 0.5 * step) break;
    grid.push_back(x);
  }
  return grid;
}

nlohmann::ordered_json report_to_json(const BoundReport& report, const VerifierSpec& spec,
                                      bool all_kappa) {
  nlohmann::ordered_json doc;
  doc["j"] = spec.indices.j;
  doc["L"] = spec.L;
  doc["k"] = spec.label.k;
  doc["kappa"] = report.kappa;
  doc["d_expectation"] = report.d_expectation;
  doc["bound"] = report.bound;
  doc["verifier_value"] = report.verifier_value;
  doc["verdict"] = report.gme_detected ? "GME-detected" : "not-detected";
  if (all_kappa) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.per_kappa) {
      nlohmann::ordered_json r;
      r["kappa"] = row.kappa;
      r["expectation"] = row.expectation;
      r["bound"] = report.bound;
      r["verdict"] = row.expectation > report.bound + kDetectionMargin ? "GME-detected"
                                                                       : "not-detected";
      rows.push_back(std::move(r));
    }
    doc["per_kappa"] = std::move(rows);
  }
  return doc;
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty() || output == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot open output file: " + output);
  out << text << '\n';
}

// ---- subcommand payloads ----

struct GenArgs {
  int parties = 2, modes = 2;
  std::string photons = "1,1";
  std::string source = "single-photon";
  double r = 0.0, r_db = 0.0, x = 0.0;
  std::string output = "state.json";
};

int run_gen(const GenArgs& args) {
  SystemShape shape(args.parties, args.modes, parse_int_list(args.photons, "--photons"));
  const auto spec = parse_source(args.source, args.r, args.r_db, args.x);
  auto result = generate_postselected(shape, spec);
  write_state_json(result.state, args.output);
  std::cout << "postselect_probability " << format_number(result.postselect_probability) << '\n'
            << "normalization " << format_number(result.normalization) << '\n'
            << "basis_entries " << result.state.size() << '\n'
            << "state_file " << args.output << '\n';
  if (result.empty())
    std::cerr << "warning: postselection pattern is impossible for this source; "
                 "the state file holds an empty state\n";
  return 0;
}

struct VerifyArgs {
  std::string state_file;
  std::string j, L = "0";
  int k = 0, kappa = 0;
  bool all_kappa = false;
  std::string output;
};

int run_verify(const VerifyArgs& args) {
  auto state = read_state_json(args.state_file);
  VerifierSpec spec{HWIndices{parse_int_list(args.j, "--j")}, parse_int_list(args.L, "--L"),
                    {args.k, args.kappa}};
  auto report = biproducible_bound(state, spec);
  if (args.all_kappa) {
    // headline value: the best kappa at this k
    for (const auto& row : report.per_kappa) {
      if (row.expectation > report.verifier_value) {
        report.verifier_value = row.expectation;
        report.kappa = row.kappa;
      }
    }
    report.gme_detected = report.verifier_value > report.bound + kDetectionMargin;
  }
  emit(args.output, report_to_json(report, spec, args.all_kappa).dump(1));
  return 0;
}

struct SweepArgs {
  int parties = 3, modes = 5;
  std::string photons = "2,1,1";
  double r = 0.0, r_db = 0.0;
  double x_from = 0.0, x_to = 0.5, x_step = 0.001;
  std::string j, L;
  int k = 0;
  double epsilon = -1.0;
  int cutoff = 3;
  int threads = 0;
  std::string output = "sweep.csv";
};

int run_sweep(const SweepArgs& args) {
  SystemShape shape(args.parties, args.modes, parse_int_list(args.photons, "--photons"));
  const double r = args.r_db > 0.0 ? squeeze_factor_from_db(args.r_db) : args.r;
  if (!(r > 0.0)) throw CLI::ValidationError("sweeps need --r > 0 or --r-db > 0");
  std::vector<int> L = args.L.empty() ? std::vector<int>{} : parse_int_list(args.L, "--L");
  if (L.empty())
    for (int l = 0; l < shape.modes; ++l) L.push_back(l);
  VerifierSpec spec{HWIndices{parse_int_list(args.j, "--j")}, L, {args.k, 0}};
  const auto grid = make_grid(args.x_from, args.x_to, args.x_step);

  if (args.epsilon < 0.0) {
    auto rows = sweep_displacement(shape, r, grid, spec, args.threads);
    CsvWriter csv(args.output, {"x", "kappa", "expectation", "bound"});
    for (const auto& row : rows)
      csv.row({format_number(row.x), std::to_string(row.kappa),
               format_number(row.expectation), format_number(row.bound)});
    return 0;
  }

  LossChannel channel(args.epsilon);
  CsvWriter csv(args.output,
                {"x", "kappa", "epsilon", "expectation", "bound", "retained_probability"});
  bool warned = false;
  for (const double x : grid) {
    auto mixture = lossy_mixture(shape, SourceSpec::squeezed(r, x), channel, args.cutoff);
    auto report = lossy_verifier_expectation(mixture, spec, args.threads);
    if (report.low_retention_warning && !warned) {
      std::cerr << "warning: retained probability below 0.5 at the chosen cutoff\n";
      warned = true;
    }
    for (const auto& row : report.per_kappa)
      csv.row({format_number(x), std::to_string(row.kappa), format_number(args.epsilon),
               format_number(row.renormalized), format_number(report.bound),
               format_number(report.retained_probability)});
  }
  return 0;
}

struct StatsArgs {
  std::string state_file;
  std::string setting = "computational";
  int l = -1;
  std::string j;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string output = "stats.csv";
};

int run_stats(const StatsArgs& args) {
  auto state = read_state_json(args.state_file);
  MeasurementSetting setting = MeasurementSetting::computational();
  if (args.l >= 0) {
    if (args.j.empty()) throw CLI::ValidationError("--l needs --j phase indices");
    setting = MeasurementSetting::hadamard(args.l, HWIndices{parse_int_list(args.j, "--j")});
  } else if (args.setting != "computational") {
    throw CLI::ValidationError("unknown setting '" + args.setting +
                               "' (computational, or --l with --j)");
  }
  auto dist = outcome_distribution(state, setting);

  if (args.samples > 0) {
    auto counts = sample_outcomes(dist, args.samples, args.seed);
    CsvWriter csv(args.output, {"basis", "probability", "count"});
    for (const auto& [key, p] : dist) {
      long c = 0;
      if (auto it = counts.find(key); it != counts.end()) c = it->second;
      csv.row({basis_label(key), format_number(p), std::to_string(c)});
    }
  } else {
    CsvWriter csv(args.output, {"basis", "probability"});
    for (const auto& [key, p] : dist) csv.row({basis_label(key), format_number(p)});
  }
  return 0;
}

struct ClassesArgs {
  int parties = 2, modes = 2;
  std::string photons = "1,1";
  std::string j;
  std::string output;
};

int run_classes(const ClassesArgs& args) {
  SystemShape shape(args.parties, args.modes, parse_int_list(args.photons, "--photons"));
  HWIndices indices{args.j.empty() ? std::vector<int>(static_cast<std::size_t>(shape.parties), 1)
                                   : parse_int_list(args.j, "--j")};
  BasisTable table(shape);
  const int M = shape.modes;

  nlohmann::ordered_json doc;
  doc["parties"] = shape.parties;
  doc["modes"] = shape.modes;
  doc["photons"] = shape.photons;
  doc["j"] = indices.j;
  doc["index_condition_ok"] = indices.valid_for(shape);

  auto states = nlohmann::ordered_json::array();
  std::vector<std::set<int>> cards(static_cast<std::size_t>(shape.parties));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto state = table.basis_state(i);
    auto cc = nlohmann::ordered_json::array();
    auto ll = nlohmann::ordered_json::array();
    int min_card = M + 1;
    for (int p = 0; p < shape.parties; ++p) {
      const auto cls = x_class_of(state.part(p));
      cc.push_back(cls.cardinality());
      ll.push_back(clock_label(state.part(p)));
      cards[static_cast<std::size_t>(p)].insert(cls.cardinality());
      min_card = std::min(min_card, cls.cardinality());
    }
    nlohmann::ordered_json entry;
    entry["basis"] = basis_label(state);
    entry["cardinalities"] = std::move(cc);
    entry["clock_labels"] = std::move(ll);
    entry["min_cardinality"] = min_card;
    entry["joint_class_size"] = table.joint_orbit_size(i);
    if (indices.valid_for(shape))
      entry["weighted_label"] = weighted_clock_label(state, indices);
    states.push_back(std::move(entry));
  }
  doc["states"] = std::move(states);

  // pairwise complementarity of measurement settings over the full subspace
  auto matrix = nlohmann::ordered_json::array();
  for (int l = 0; l < M; ++l) {
    auto row = nlohmann::ordered_json::array();
    for (int lp = 0; lp < M; ++lp)
      row.push_back(l == lp ? true
                            : check_complementary_set(shape, indices, {l, lp}, cards));
    matrix.push_back(std::move(row));
  }
  doc["pair_complementary"] = std::move(matrix);
  emit(args.output, doc.dump(1));
  return 0;
}

// ---- figure reproduction pipelines ----

int run_reproduce(const std::string& figure, const std::string& output, int threads) {
  const SystemShape shape(3, 5, {2, 1, 1});
  const std::vector<int> fullL{0, 1, 2, 3, 4};

  if (figure == "fig2a") {
    const double r = squeeze_factor_from_db(0.5);
    const auto grid = make_grid(0.0, 0.5, 0.001);
    CsvWriter csv(output.empty() ? "fig2a.csv" : output,
                  {"j", "x", "kappa", "expectation", "bound"});
    for (const auto& j : {std::vector<int>{1, 4, 4}, std::vector<int>{1, 1, 2}}) {
      VerifierSpec spec{HWIndices{j}, fullL, {0, 0}};
      auto rows = sweep_displacement(shape, r, grid, spec, threads);
      std::string tag = std::to_string(j[0]) + "-" + std::to_string(j[1]) + "-" + std::to_string(j[2]);
      for (const auto& row : rows)
        csv.row({tag, format_number(row.x), std::to_string(row.kappa),
                 format_number(row.expectation), format_number(row.bound)});
    }
    return 0;
  }
  if (figure == "fig2b") {
    VerifierSpec spec{HWIndices{{1, 4, 4}}, fullL, {0, 0}};
    const auto grid = make_grid(0.0, 1.0, 0.002);
    CsvWriter csv(output.empty() ? "fig2b.csv" : output,
                  {"r_db", "x", "kappa", "expectation", "bound"});
    for (const double db : {0.5, 2.0, 5.0, 10.0}) {
      auto rows = sweep_displacement(shape, squeeze_factor_from_db(db), grid, spec, threads);
      for (const auto& row : rows)
        csv.row({format_number(db), format_number(row.x), std::to_string(row.kappa),
                 format_number(row.expectation), format_number(row.bound)});
    }
    return 0;
  }
  if (figure == "fig4") {
    VerifierSpec spec{HWIndices{{1, 4, 4}}, fullL, {0, 0}};
    const double r = squeeze_factor_from_db(5.0);
    const auto grid = make_grid(0.0, 0.5, 0.005);
    CsvWriter csv(output.empty() ? "fig4.csv" : output,
                  {"x", "kappa", "epsilon", "expectation", "bound", "retained_probability"});
    for (const double eps : {0.0, 0.1, 0.2, 0.25}) {
      for (const double x : grid) {
        auto mixture = lossy_mixture(shape, SourceSpec::squeezed(r, x), LossChannel(eps), 3);
        auto report = lossy_verifier_expectation(mixture, spec, threads);
        for (const auto& row : report.per_kappa)
          csv.row({format_number(x), std::to_string(row.kappa), format_number(eps),
                   format_number(row.renormalized), format_number(report.bound),
                   format_number(report.retained_probability)});
      }
    }
    return 0;
  }
  if (figure == "fig5") {
    auto gen = generate_postselected(shape, SourceSpec::squeezed(squeeze_factor_from_db(10.0), 0.0));
    CsvWriter csv(output.empty() ? "fig5.csv" : output, {"setting", "basis", "probability"});
    const HWIndices j{{1, 4, 4}};
    for (const auto& [tag, setting] : std::vector<std::pair<std::string, MeasurementSetting>>{
             {"computational", MeasurementSetting::computational()},
             {"l0", MeasurementSetting::hadamard(0, j)},
             {"l1", MeasurementSetting::hadamard(1, j)}}) {
      for (const auto& [key, p] : outcome_distribution(gen.state, setting))
        csv.row({tag, basis_label(key), format_number(p)});
    }
    return 0;
  }
  throw CLI::ValidationError("unknown figure '" + figure + "' (fig2a|fig2b|fig4|fig5)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-rail photonic entanglement toolkit"};
  app.set_config("--config", "", "key-value config file; flags override");

  std::string reproduce, global_output;
  int threads = 0;
  std::string kernel = "auto";
  app.add_option("--reproduce", reproduce, "run a built-in pipeline (fig2a|fig2b|fig4|fig5)");
  app.add_option("--output,-o", global_output, "output file (default depends on the command)");
  app.add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
  app.add_option("--kernels", kernel, "force a kernel set (scalar|avx2|auto)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a postselected state");
  gen->fallthrough();
  gen->add_option("--parties", gen_args.parties)->required();
  gen->add_option("--modes", gen_args.modes)->required();
  gen->add_option("--photons", gen_args.photons, "local photon numbers N1,N2,...")->required();
  gen->add_option("--source", gen_args.source,
                  "single-photon | fock:n | coherent:re[,im] | squeezed");
  gen->add_option("--r", gen_args.r, "squeezing factor");
  gen->add_option("--r-db", gen_args.r_db, "squeezing in dB (overrides --r)");
  gen->add_option("--x", gen_args.x, "displacement");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "evaluate the GME verifier and its bound");
  verify->fallthrough();
  verify->add_option("--state", verify_args.state_file, "state JSON file")->required();
  verify->add_option("--j", verify_args.j, "phase indices j1,j2,...")->required();
  verify->add_option("--L", verify_args.L, "measurement configuration set");
  verify->add_option("--k", verify_args.k);
  verify->add_option("--kappa", verify_args.kappa);
  verify->add_flag("--all-kappa", verify_args.all_kappa, "report the whole kappa table");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "verifier expectations across a displacement grid");
  sweep->fallthrough();
  sweep->add_option("--parties", sweep_args.parties)->required();
  sweep->add_option("--modes", sweep_args.modes)->required();
  sweep->add_option("--photons", sweep_args.photons)->required();
  sweep->add_option("--r", sweep_args.r);
  sweep->add_option("--r-db", sweep_args.r_db);
  sweep->add_option("--x-from", sweep_args.x_from);
  sweep->add_option("--x-to", sweep_args.x_to);
  sweep->add_option("--x-step", sweep_args.x_step);
  sweep->add_option("--j", sweep_args.j)->required();
  sweep->add_option("--L", sweep_args.L, "defaults to the full set 0..M-1");
  sweep->add_option("--k", sweep_args.k);
  sweep->add_option("--epsilon", sweep_args.epsilon, "photon loss rate (enables the loss model)");
  sweep->add_option("--cutoff", sweep_args.cutoff, "max total lost photons");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "measurement statistics of a state");
  stats->fallthrough();
  stats->add_option("--state", stats_args.state_file)->required();
  stats->add_option("--setting", stats_args.setting, "computational (default)");
  stats->add_option("--l", stats_args.l, "Hadamard setting index");
  stats->add_option("--j", stats_args.j, "phase indices for the Hadamard setting");
  stats->add_option("--samples", stats_args.samples, "append empirical counts");
  stats->add_option("--seed", stats_args.seed);

  ClassesArgs classes_args;
  auto* classes = app.add_subcommand("classes", "orbit and label report for a subspace");
  classes->fallthrough();
  classes->add_option("--parties", classes_args.parties)->required();
  classes->add_option("--modes", classes_args.modes)->required();
  classes->add_option("--photons", classes_args.photons)->required();
  classes->add_option("--j", classes_args.j, "phase indices (default all ones)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!kernels::set_active(kernel))
      throw CLI::ValidationError("kernel set '" + kernel + "' is unavailable on this machine");

    if (!reproduce.empty()) return run_reproduce(reproduce, global_output, threads);

    if (gen->parsed()) {
      if (!global_output.empty()) gen_args.output = global_output;
      return run_gen(gen_args);
    }
    if (verify->parsed()) {
      verify_args.output = global_output;
      return run_verify(verify_args);
    }
    if (sweep->parsed()) {
      if (!global_output.empty()) sweep_args.output = global_output;
      sweep_args.threads = threads;
      return run_sweep(sweep_args);
    }
    if (stats->parsed()) {
      if (!global_output.empty()) stats_args.output = global_output;
      return run_stats(stats_args);
    }
    if (classes->parsed()) {
      classes_args.output = global_output;
      return run_classes(classes_args);
    }
    std::cerr << app.help();
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
