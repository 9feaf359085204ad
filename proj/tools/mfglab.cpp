#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mfglab/scenario.hpp"

namespace {

void write_json(const std::string& out_dir, const std::string& name,
                const mfglab::json& j) {
  if (out_dir.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream os(out_dir + "/" + name);
  os << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional forward-forward mean-field game laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, problem_tag = "ff-quadratic";
  std::string alpha_str;
  int levels = 4, degree = 6, n_samples = 1000;
  unsigned seed = 1;

  auto* simulate = app.add_subcommand("simulate", "Run one scenario");
  simulate->add_option("--config", config_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_dir, "Output directory");

  auto* derive = app.add_subcommand("derive-entropies",
                                    "Polynomial conservation-law basis");
  derive->add_option("--problem", problem_tag,
                     "bf-quadratic[-anti] | ff-quadratic[-anti] | ff-log | "
                     "system3 | system3-tables");
  derive->add_option("--degree", degree, "Maximum total degree");
  derive->add_option("--alpha", alpha_str, "Rational alpha (system3 tags)");
  derive->add_option("--out", out_dir, "Output directory");

  auto* laxhopf = app.add_subcommand("laxhopf", "Exact-solution oracle run");
  laxhopf->add_option("--config", config_path, "Scenario JSON")->required();
  laxhopf->add_option("--out", out_dir, "Output directory");

  auto* analyze = app.add_subcommand("analyze", "Inequality fuzz report");
  analyze->add_option("--seed", seed, "Fuzz seed");
  analyze->add_option("--samples", n_samples, "Samples per profile");
  analyze->add_option("--out", out_dir, "Output directory");

  auto* refine = app.add_subcommand("refine", "Refinement study");
  refine->add_option("--config", config_path, "Scenario JSON")->required();
  refine->add_option("--levels", levels, "Refinement levels");
  refine->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep");
  sweep->add_option("--config", config_path,
                    "Scenario JSON with a 'sweep' object")
      ->required();
  sweep->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed() || laxhopf->parsed()) {
      mfglab::Scenario sc = mfglab::Scenario::from_file(config_path);
      mfglab::RunArtifacts art = mfglab::run_scenario(sc, out_dir);
      if (out_dir.empty()) std::cout << art.manifest.dump(2) << "\n";
    } else if (derive->parsed()) {
      std::optional<mfglab::Rational> alpha;
      if (!alpha_str.empty()) alpha = mfglab::Rational(alpha_str);
      write_json(out_dir, "basis.json",
                 mfglab::derive_entropies_json(problem_tag, degree, alpha));
    } else if (analyze->parsed()) {
      write_json(out_dir, "analysis.json",
                 mfglab::analyze_profiles(seed, n_samples));
    } else if (refine->parsed()) {
      mfglab::Scenario sc = mfglab::Scenario::from_file(config_path);
      mfglab::json rep = mfglab::refine_study(sc, levels);
      if (out_dir.empty()) {
        std::cout << rep.dump(2) << "\n";
      } else {
        std::filesystem::create_directories(out_dir);
        std::ofstream os(out_dir + "/refine.csv");
        os << "n_cells,dx,l1_self_error,observed_order\n";
        for (const auto& row : rep["levels"]) {
          os << row["n_cells"] << "," << row["dx"] << ",";
          if (row.contains("l1_self_error")) os << row["l1_self_error"];
          os << ",";
          if (row.contains("observed_order")) os << row["observed_order"];
          os << "\n";
        }
        write_json(out_dir, "refine.json", rep);
      }
    } else if (sweep->parsed()) {
      mfglab::Scenario sc = mfglab::Scenario::from_file(config_path);
      write_json(out_dir, "sweep.json",
                 mfglab::sweep_study(sc, sc.raw.value("sweep", mfglab::json())));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
