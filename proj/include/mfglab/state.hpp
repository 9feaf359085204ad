#pragma once

#include "mfglab/grid.hpp"
#include "mfglab/models.hpp"

namespace mfglab {

enum class Variant { VM, ZV, VW };

/// Two coupled fields on one grid at time t. Field meaning by variant:
/// VM: (v, m) with m > 0; ZV: (z, v); VW: (v, w).
struct SystemState {
  Variant variant;
  GridField first;
  GridField second;
  double t = 0.0;

  SystemState(Variant var, GridField a, GridField b, double time = 0.0)
      : variant(var), first(std::move(a)), second(std::move(b)), t(time) {
    if (!(first.grid == second.grid))
      throw DomainError("SystemState: fields on different grids");
    if (t < 0.0) throw DomainError("SystemState: t must be >= 0");
    if (variant == Variant::VM) check_m_positive();
  }

  void check_m_positive() const {
    for (double m : second.values)
      if (m <= 1e-12)
        throw PositivityError("SystemState: m below positivity floor 1e-12");
  }
};

/// Change of variables between the (v,m), (z,v), and (v,w) formulations.
/// Round trips reproduce the source state to machine precision. The ZV
/// variant is defined through z = w + (alpha/2) v^2 and requires a power
/// coupling g(m) = m^alpha.
SystemState change_variables(const SystemState& s, Variant target,
                             const ModelSpec& model);

}  // namespace mfglab
