#include "mfglab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mfglab/analysis.hpp"

namespace mfglab {

namespace {

const json& require_field(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

double get_num(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number())
    throw ConfigError(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

HamiltonianSpec parse_hamiltonian(const json& j) {
  const std::string kind = require_field(j, "kind", "hamiltonian");
  if (kind == "quadratic") return HamiltonianSpec::quadratic();
  if (kind == "power_abs")
    return HamiltonianSpec::power_abs(get_num(j, "gamma", 2.0));
  if (kind == "power_sqrt")
    return HamiltonianSpec::power_sqrt(get_num(j, "gamma", 2.0));
  throw ConfigError("hamiltonian: unknown kind '" + kind + "'");
}

CouplingSpec parse_coupling(const json& j) {
  const std::string kind = require_field(j, "kind", "coupling");
  if (kind == "log") return CouplingSpec::log();
  if (kind == "power") return CouplingSpec::power(get_num(j, "alpha", 1.0));
  if (kind == "signed_quadratic")
    return CouplingSpec::signed_quadratic(
        static_cast<int>(get_num(j, "sign", 1.0)));
  throw ConfigError("coupling: unknown kind '" + kind + "'");
}

}  // namespace

ProfileSpec ProfileSpec::parse(const json& j) {
  ProfileSpec p;
  p.profile = require_field(j, "profile", "initial profile").get<std::string>();
  p.value = get_num(j, "value", 0.0);
  p.base = get_num(j, "base", 0.0);
  p.amplitude = get_num(j, "amplitude", 0.0);
  p.frequency = static_cast<int>(get_num(j, "frequency", 1.0));
  p.left = get_num(j, "left", 0.0);
  p.right = get_num(j, "right", 0.0);
  p.center = get_num(j, "center", 0.5);
  p.width = get_num(j, "width", 0.05);
  p.normalize = j.value("normalize", std::string());
  if (p.profile != "constant" && p.profile != "sine" &&
      p.profile != "smoothed_jump")
    throw ConfigError("initial profile: unknown profile '" + p.profile + "'");
  if (!p.normalize.empty() && p.normalize != "zero_mean" &&
      p.normalize != "unit_mass")
    throw ConfigError("initial profile: unknown normalize '" + p.normalize + "'");
  return p;
}

double ProfileSpec::operator()(double x) const {
  if (profile == "constant") return value;
  if (profile == "sine")
    return base + amplitude * std::sin(2.0 * M_PI * frequency * x);
  // Smoothed jump: up-transition a quarter period before center, down a
  // quarter after, so the profile is (nearly) periodic.
  const double x1 = center - 0.25, x2 = center + 0.25;
  return left + 0.5 * (right - left) *
                    (std::tanh((x - x1) / width) - std::tanh((x - x2) / width));
}

GridField ProfileSpec::realize(PeriodicGrid grid) const {
  GridField f = GridField::sample(grid, [this](double x) { return (*this)(x); });
  if (normalize == "zero_mean") {
    const double mean = integrate(f);
    for (double& v : f.values) v -= mean;
  } else if (normalize == "unit_mass") {
    const double mass = integrate(f);
    if (!(mass > 0.0))
      throw ConfigError("initial profile: unit_mass requires positive mass");
    for (double& v : f.values) v /= mass;
  }
  return f;
}

Scenario Scenario::parse(const json& j) {
  Scenario sc;
  const json& mj = require_field(j, "model", "scenario");
  sc.model = ModelSpec(parse_hamiltonian(require_field(mj, "hamiltonian", "model")),
                       parse_coupling(require_field(mj, "coupling", "model")),
                       get_num(mj, "epsilon", 0.0));
  sc.solver = require_field(j, "solver", "scenario").get<std::string>();
  if (sc.solver != "vm" && sc.solver != "system3" && sc.solver != "psystem" &&
      sc.solver != "parabolic" && sc.solver != "laxhopf")
    throw ConfigError("scenario: unknown solver '" + sc.solver + "'");
  sc.n_cells =
      static_cast<int>(get_num(require_field(j, "grid", "scenario"), "n_cells", 256));

  const json& ij = require_field(j, "initial", "scenario");
  sc.first = ProfileSpec::parse(require_field(ij, "first", "initial"));
  if (sc.solver != "laxhopf")
    sc.second = ProfileSpec::parse(require_field(ij, "second", "initial"));

  const json cj = j.value("config", json::object());
  sc.cfg.cfl = get_num(cj, "cfl", 0.45);
  sc.cfg.t_end = get_num(cj, "t_end", 1.0);
  sc.cfg.eps_art = get_num(cj, "eps_art", 0.0);
  sc.cfg.log_stride = static_cast<int>(get_num(cj, "log_stride", 1.0));
  sc.cfg.snapshot_stride =
      static_cast<int>(get_num(cj, "snapshot_stride", 0.0));
  sc.pcfg.cfl = sc.cfg.cfl;
  sc.pcfg.t_end = sc.cfg.t_end;
  sc.pcfg.diff_safety = get_num(cj, "diff_safety", 0.4);
  sc.pcfg.log_stride = sc.cfg.log_stride;
  sc.pcfg.snapshot_stride = sc.cfg.snapshot_stride;
  sc.alpha = get_num(cj, "alpha", sc.model.coupling.kind == CouplingSpec::Kind::Power
                                      ? sc.model.coupling.alpha
                                      : 1.0);
  sc.eps_viscous = get_num(cj, "eps", 0.0);
  sc.horizon = get_num(cj, "horizon", 20.0);
  sc.seed = static_cast<unsigned>(get_num(j, "seed", 1.0));
  sc.raw = j;
  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse(j);
}

std::string config_hash(const json& j) {
  const std::string s = j.dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace {

std::vector<NamedEntropy> default_entropies(const Scenario& sc) {
  if (sc.solver == "vm") {
    const auto H = sc.model.hamiltonian;
    const auto g = sc.model.coupling;
    return {{"HP", [H, g](double v, double m) {
               return H.value(v) + g.potential(m);
             }}};
  }
  if (sc.solver == "system3") {
    const double a = sc.alpha;
    return {{"vz_cubic", [a](double z, double v) {
               return v * z - a / 3.0 * v * v * v;
             }}};
  }
  if (sc.solver == "psystem")
    return {{"energy", [](double v, double w) {
               return 0.5 * w * w + 0.5 * v * v + v * v * v * v / 12.0;
             }}};
  return {};
}

json summarize(const RunRecord& rec) {
  json s;
  s["t_final"] = rec.times.empty() ? 0.0 : rec.times.back();
  for (const auto& name : rec.columns) s["final_" + name] = rec.last(name);
  if (rec.blowup_time) s["blowup_time"] = *rec.blowup_time;
  return s;
}

json laxhopf_run(const Scenario& sc, const std::string& out_dir) {
  auto u0 = [p = sc.first](double x) { return p(x); };
  HjSolution sol = make_hj(u0);
  json s;
  const double tstar = shock_time(sol);
  s["shock_time"] = std::isfinite(tstar) ? json(tstar) : json("inf");
  StationaryReport rep = stationary_limit_check(sol, sc.horizon);
  s["osc_t1"] = rep.osc_t1;
  s["osc_horizon"] = rep.osc_horizon;
  s["gbar_est"] = rep.gbar_est;
  if (!out_dir.empty()) {
    std::ofstream os(out_dir + "/spacetime.csv");
    os << "x,t,u,u_x,m,shock_mask\n" << std::setprecision(17);
    const int nt = 8;
    for (int k = 1; k <= nt; ++k) {
      const double t = sc.cfg.t_end * k / nt;
      for (int i = 0; i < sc.n_cells; ++i) {
        const double x = (i + 0.5) / sc.n_cells;
        const double u = lax_hopf_u(sol, x, t);
        const double ux = hj_ux(sol, x, t);
        const auto m = density_from_u(sol, x, t);
        os << x << "," << t << "," << u << "," << ux << ","
           << (m ? *m : 0.0) << "," << (m ? 0 : 1) << "\n";
      }
    }
  }
  return s;
}

}  // namespace

RunArtifacts run_scenario(const Scenario& sc, const std::string& out_dir) {
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  RunArtifacts art;
  const PeriodicGrid grid(sc.n_cells);
  const auto entropies = default_entropies(sc);
  json summary;
  if (sc.solver == "laxhopf") {
    summary = laxhopf_run(sc, out_dir);
  } else {
    const GridField a = sc.first.realize(grid);
    const GridField b = sc.second.realize(grid);
    if (sc.solver == "vm")
      art.record = solve_ff_vm(a, b, sc.model, sc.cfg, entropies);
    else if (sc.solver == "system3")
      art.record = solve_system3(a, b, sc.alpha, sc.cfg, entropies);
    else if (sc.solver == "psystem")
      art.record = solve_psystem(a, b, sc.eps_viscous, sc.cfg, entropies);
    else
      art.record = solve_parabolic(a, b, sc.model, sc.pcfg);
    summary = summarize(art.record);
    if (!out_dir.empty()) {
      std::ofstream series(out_dir + "/series.csv");
      art.record.write_csv(series);
      if (art.record.final_state) {
        std::ofstream snap(out_dir + "/final.csv");
        const char* c1 = sc.solver == "system3" ? "z" : "v";
        const char* c2 = sc.solver == "psystem" ? "w"
                         : sc.solver == "system3" ? "v"
                                                  : "m";
        write_snapshot_csv(snap, *art.record.final_state, c1, c2);
      }
    }
  }
  art.manifest["version"] = "0.1.0";
  art.manifest["config_hash"] = config_hash(sc.raw);
  art.manifest["solver"] = sc.solver;
  art.manifest["summary"] = summary;
  if (!out_dir.empty()) {
    std::ofstream mf(out_dir + "/manifest.json");
    mf << art.manifest.dump(2) << "\n";
  }
  return art;
}

EntropyProblem parse_problem_tag(const std::string& tag) {
  if (tag == "bf-quadratic") return EntropyProblem::BfMonotone;
  if (tag == "bf-quadratic-anti") return EntropyProblem::BfAnti;
  if (tag == "ff-quadratic") return EntropyProblem::FfMonotone;
  if (tag == "ff-quadratic-anti") return EntropyProblem::FfAnti;
  if (tag == "ff-log") return EntropyProblem::FfLog;
  if (tag == "system3-tables") return EntropyProblem::System3Tables;
  if (tag == "system3") return EntropyProblem::System3Equivalent;
  throw ConfigError("unknown entropy problem tag '" + tag + "'");
}

namespace {

json poly_to_json(const Poly& p, const char* n1, const char* n2) {
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms) {
    json t;
    t["i"] = mono.i;
    t["j"] = mono.j;
    json cs = json::array();
    for (const auto& [pow, r] : coeff) {
      json c;
      c["alpha_power"] = pow;
      c["coeff"] = r.str();
      cs.push_back(c);
    }
    t["coeff"] = cs;
    terms.push_back(t);
  }
  json out;
  out["terms"] = terms;
  out["str"] = p.str(n1, n2);
  return out;
}

}  // namespace

json derive_entropies_json(const std::string& problem_tag, int degree,
                           const std::optional<Rational>& alpha) {
  const EntropyProblem problem = parse_problem_tag(problem_tag);
  const bool zv = problem == EntropyProblem::System3Tables ||
                  problem == EntropyProblem::System3Equivalent;
  const auto basis = polynomial_entropy_basis(problem, degree, alpha);
  json out;
  out["problem"] = problem_tag;
  out["degree"] = degree;
  if (alpha) out["alpha"] = alpha->str();
  json b = json::array();
  for (const auto& p : basis)
    b.push_back(poly_to_json(p, zv ? "v" : "v", zv ? "z" : "m"));
  out["basis"] = b;
  out["dimension"] = basis.size();
  return out;
}

GridField random_trig_field(PeriodicGrid grid, std::mt19937& rng, int max_freq,
                            double lo_target, double hi_target) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> a(max_freq + 1), b(max_freq + 1);
  for (int k = 1; k <= max_freq; ++k) {
    a[k] = unit(rng) / k;
    b[k] = unit(rng) / k;
  }
  GridField f = GridField::sample(grid, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= max_freq; ++k)
      s += a[k] * std::cos(2.0 * M_PI * k * x) +
           b[k] * std::sin(2.0 * M_PI * k * x);
    return s;
  });
  const double lo = f.min(), hi = f.max();
  const double mid = 0.5 * (lo_target + hi_target);
  if (hi - lo < 1e-12) return GridField::constant(grid, mid);
  const double scale = (hi_target - lo_target) / (hi - lo);
  for (double& v : f.values) v = lo_target + (v - lo) * scale;
  return f;
}

json analyze_profiles(unsigned seed, int n_samples) {
  json out;
  out["seed"] = seed;
  out["n_samples"] = n_samples;
  json profiles = json::array();
  const PeriodicGrid grid(256);
  for (const auto& profile : profile_catalog()) {
    std::mt19937 rng(seed);
    int poincare_violations = 0, jensen_violations = 0;
    double worst_margin = 1e300;
    const bool positive = profile.lo == 0.0;
    const double lo = positive ? 0.2 : -2.0, hi = positive ? 5.0 : 2.0;
    for (int s = 0; s < n_samples; ++s) {
      const GridField f = random_trig_field(grid, rng, 4, lo, hi);
      const double margin = poincare_check(f, profile);
      worst_margin = std::min(worst_margin, margin);
      if (margin < -1e-10) ++poincare_violations;
      try {
        jensen_gap(f, profile);
      } catch (const RangeError&) {
        ++jensen_violations;
      }
    }
    const PoincareSup sup = poincare_sup(profile);
    json p;
    p["name"] = profile.name;
    p["poincare_violations"] = poincare_violations;
    p["jensen_violations"] = jensen_violations;
    p["worst_margin"] = worst_margin;
    p["sup_estimate"] = sup.value;
    p["sup_inner_max"] = sup.inner_max;
    p["plateau"] = sup.plateau;
    profiles.push_back(p);
  }
  out["profiles"] = profiles;
  return out;
}

namespace {

double l1_coarse_vs_fine(const GridField& coarse, const GridField& fine) {
  const int nc = coarse.grid.n_cells;
  const int r = fine.grid.n_cells / nc;
  double sum = 0.0;
  for (int i = 0; i < nc; ++i) {
    double avg = 0.0;
    for (int k = 0; k < r; ++k) avg += fine.values[i * r + k];
    sum += std::abs(coarse.values[i] - avg / r);
  }
  return sum / nc;
}

}  // namespace

json refine_study(const Scenario& sc, int levels) {
  if (levels < 2) throw ConfigError("refine: needs at least 2 levels");
  if (sc.solver == "laxhopf")
    throw ConfigError("refine: not applicable to the laxhopf solver");
  std::vector<RunRecord> runs;
  std::vector<int> ns;
  for (int l = 0; l < levels; ++l) {
    Scenario s = sc;
    s.n_cells = sc.n_cells << l;
    runs.push_back(run_scenario(s, "").record);
    ns.push_back(s.n_cells);
  }
  json rows = json::array();
  std::vector<double> errs(levels, 0.0);
  for (int l = 0; l < levels; ++l) {
    json row;
    row["n_cells"] = ns[l];
    row["dx"] = 1.0 / ns[l];
    if (l + 1 < levels && runs[l].final_state && runs[l + 1].final_state) {
      const double e1 = l1_coarse_vs_fine(runs[l].final_state->first,
                                          runs[l + 1].final_state->first);
      const double e2 = l1_coarse_vs_fine(runs[l].final_state->second,
                                          runs[l + 1].final_state->second);
      errs[l] = e1 + e2;
      row["l1_self_error"] = errs[l];
      if (l > 0 && errs[l] > 0.0)
        row["observed_order"] = std::log2(errs[l - 1] / errs[l]);
    }
    for (const auto& name : runs[l].columns)
      if (name.rfind("entropy_", 0) == 0)
        row["drift_" + name.substr(8)] =
            std::abs(runs[l].last(name) - runs[l].at(name).front());
    rows.push_back(row);
  }
  json out;
  out["levels"] = rows;
  return out;
}

json sweep_study(const Scenario& sc, const json& grid) {
  json out;
  json rows = json::array();
  if (!grid.is_object() || grid.empty()) {
    out["runs"] = rows;
    return out;
  }
  std::vector<std::string> keys;
  std::vector<std::vector<double>> values;
  for (auto it = grid.begin(); it != grid.end(); ++it) {
    keys.push_back(it.key());
    values.push_back(it.value().get<std::vector<double>>());
  }
  std::vector<size_t> idx(keys.size(), 0);
  while (true) {
    Scenario s = sc;
    json params;
    for (size_t k = 0; k < keys.size(); ++k) {
      const double val = values[k][idx[k]];
      params[keys[k]] = val;
      if (keys[k] == "epsilon") {
        s.model.epsilon = val;
        s.eps_viscous = val;
      } else if (keys[k] == "n_cells") {
        s.n_cells = static_cast<int>(val);
      } else if (keys[k] == "alpha") {
        s.alpha = val;
        if (s.model.coupling.kind == CouplingSpec::Kind::Power)
          s.model.coupling.alpha = val;
      } else if (keys[k] == "amplitude") {
        if (s.first.profile == "sine") s.first.amplitude = val;
        if (s.second.profile == "sine") s.second.amplitude = val;
      } else {
        throw ConfigError("sweep: unknown parameter '" + keys[k] + "'");
      }
    }
    json row;
    row["params"] = params;
    try {
      RunArtifacts art = run_scenario(s, "");
      row["status"] = "ok";
      row["summary"] = art.manifest["summary"];
    } catch (const std::exception& e) {
      row["status"] = "failed";
      row["error"] = e.what();
    }
    rows.push_back(row);
    size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < values[k].size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  // Deterministic order: sorted by the parameter tuple.
  std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
    return a["params"].dump() < b["params"].dump();
  });
  out["runs"] = rows;
  return out;
}

}  // namespace mfglab
