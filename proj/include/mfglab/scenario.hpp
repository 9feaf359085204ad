#pragma once

#include <json.hpp>
#include <optional>
#include <random>
#include <string>

#include "mfglab/entropy.hpp"
#include "mfglab/hyperbolic.hpp"
#include "mfglab/laxhopf.hpp"
#include "mfglab/parabolic.hpp"

namespace mfglab {

using nlohmann::json;

/// Initial-data profile: constant, sine (base + amplitude sin(2 pi k x)),
/// or smoothed jump (tanh transition, periodic pair of transitions).
/// Optional normalization: "zero_mean" or "unit_mass".
struct ProfileSpec {
  std::string profile = "constant";
  double value = 0.0;                    // constant
  double base = 0.0, amplitude = 0.0;    // sine
  int frequency = 1;
  double left = 0.0, right = 0.0;        // smoothed jump
  double center = 0.5, width = 0.05;
  std::string normalize;                 // "", "zero_mean", "unit_mass"

  static ProfileSpec parse(const json& j);
  double operator()(double x) const;     // pre-normalization value
  GridField realize(PeriodicGrid grid) const;
};

struct Scenario {
  ModelSpec model{HamiltonianSpec::quadratic(), CouplingSpec::log()};
  std::string solver = "vm";  // vm | system3 | psystem | parabolic | laxhopf
  int n_cells = 256;
  ProfileSpec first, second;  // (v,m), (z,v), (v,w); laxhopf uses first as u0
  SolverConfig cfg;           // hyperbolic family
  ParabolicConfig pcfg;       // parabolic
  double alpha = 1.0;         // system3
  double eps_viscous = 0.0;   // psystem
  double horizon = 20.0;      // laxhopf
  unsigned seed = 1;
  json raw;                   // the validated config (for hashing)

  static Scenario parse(const json& j);
  static Scenario from_file(const std::string& path);
};

struct RunArtifacts {
  RunRecord record;           // empty for laxhopf
  json manifest;
};

/// Executes the scenario; if out_dir is nonempty, writes series.csv,
/// final.csv and manifest.json there. Deterministic for a fixed config.
RunArtifacts run_scenario(const Scenario& sc, const std::string& out_dir);

EntropyProblem parse_problem_tag(const std::string& tag);

/// JSON basis report for derive-entropies.
json derive_entropies_json(const std::string& problem_tag, int degree,
                           const std::optional<Rational>& alpha);

/// Fuzz report: per catalog profile, poincare_check and jensen chain over
/// n_samples seeded random trigonometric polynomials, plus sup estimates.
json analyze_profiles(unsigned seed, int n_samples);

/// Refinement study: reruns the scenario at n, 2n, ... (levels entries),
/// reporting L1 self-error against the next-finer level, entropy drifts,
/// and observed orders.
json refine_study(const Scenario& sc, int levels);

/// Cartesian sweep over the "sweep" object in the config (parameter name ->
/// array of values); failures recorded per run, aggregation sorted.
json sweep_study(const Scenario& sc, const json& grid);

/// FNV-1a hash of the canonical (sorted-key) config dump.
std::string config_hash(const json& j);

/// Seeded random trigonometric polynomial with frequencies <= max_freq,
/// values shifted/scaled to land in [lo_target, hi_target].
GridField random_trig_field(PeriodicGrid grid, std::mt19937& rng, int max_freq,
                            double lo_target, double hi_target);

}  // namespace mfglab
