#include "mfglab/state.hpp"

namespace mfglab {

namespace {

double require_alpha(const ModelSpec& model) {
  if (model.coupling.kind != CouplingSpec::Kind::Power)
    throw DomainError("z-variable requires a power coupling g(m) = m^alpha");
  return model.coupling.alpha;
}

SystemState vm_to_vw(const SystemState& s, const ModelSpec& model) {
  const auto& H = model.hamiltonian;
  const auto& g = model.coupling;
  std::vector<double> w(s.first.grid.n_cells);
  for (int i = 0; i < s.first.grid.n_cells; ++i)
    w[i] = g.value(s.second.values[i]) - H.value(s.first.values[i]);
  return SystemState(Variant::VW, s.first, GridField(s.first.grid, std::move(w)), s.t);
}

SystemState vw_to_vm(const SystemState& s, const ModelSpec& model) {
  const auto& H = model.hamiltonian;
  const auto& g = model.coupling;
  std::vector<double> m(s.first.grid.n_cells);
  for (int i = 0; i < s.first.grid.n_cells; ++i)
    m[i] = g.inverse(s.second.values[i] + H.value(s.first.values[i]));
  return SystemState(Variant::VM, s.first, GridField(s.first.grid, std::move(m)), s.t);
}

SystemState vw_to_zv(const SystemState& s, const ModelSpec& model) {
  double alpha = require_alpha(model);
  std::vector<double> z(s.first.grid.n_cells);
  for (int i = 0; i < s.first.grid.n_cells; ++i) {
    double v = s.first.values[i];
    z[i] = s.second.values[i] + 0.5 * alpha * v * v;
  }
  return SystemState(Variant::ZV, GridField(s.first.grid, std::move(z)), s.first, s.t);
}

SystemState zv_to_vw(const SystemState& s, const ModelSpec& model) {
  double alpha = require_alpha(model);
  std::vector<double> w(s.first.grid.n_cells);
  for (int i = 0; i < s.first.grid.n_cells; ++i) {
    double v = s.second.values[i];
    w[i] = s.first.values[i] - 0.5 * alpha * v * v;
  }
  return SystemState(Variant::VW, s.second, GridField(s.first.grid, std::move(w)), s.t);
}

}  // namespace

SystemState change_variables(const SystemState& s, Variant target,
                             const ModelSpec& model) {
  if (s.variant == target) return s;
  switch (s.variant) {
    case Variant::VM:
      if (target == Variant::VW) return vm_to_vw(s, model);
      return vw_to_zv(vm_to_vw(s, model), model);
    case Variant::VW:
      if (target == Variant::VM) return vw_to_vm(s, model);
      return vw_to_zv(s, model);
    case Variant::ZV:
      if (target == Variant::VW) return zv_to_vw(s, model);
      return vw_to_vm(zv_to_vw(s, model), model);
  }
  throw DomainError("change_variables: unreachable");
}

}  // namespace mfglab
