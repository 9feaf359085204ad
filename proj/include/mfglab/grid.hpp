#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mfglab/errors.hpp"

namespace mfglab {

/// Uniform discretization of the torus [0,1) with cell-centered values.
struct PeriodicGrid {
  int n_cells;

  explicit PeriodicGrid(int n) : n_cells(n) {
    if (n < 8) throw DomainError("PeriodicGrid: n_cells must be >= 8");
  }

  double dx() const { return 1.0 / n_cells; }
  double center(int i) const { return (i + 0.5) * dx(); }

  int wrap(int i) const {
    int r = i % n_cells;
    return r < 0 ? r + n_cells : r;
  }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) {
    return a.n_cells == b.n_cells;
  }
};

/// Real-valued cell data on a PeriodicGrid.
struct GridField {
  PeriodicGrid grid;
  std::vector<double> values;

  GridField(PeriodicGrid g, std::vector<double> v)
      : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n_cells)
      throw DomainError("GridField: length does not match grid");
    for (double x : values)
      if (!std::isfinite(x)) throw DomainError("GridField: non-finite value");
  }

  static GridField constant(PeriodicGrid g, double c) {
    return GridField(g, std::vector<double>(g.n_cells, c));
  }

  static GridField sample(PeriodicGrid g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) v[i] = f(g.center(i));
    return GridField(g, std::move(v));
  }

  double operator[](int i) const { return values[grid.wrap(i)]; }

  double min() const;
  double max() const;
  double linf() const;
};

/// Midpoint-rule integral over the torus, dx * sum(values).
double integrate(const GridField& f);

/// Cyclic central difference (f_{i+1} - f_{i-1}) / (2 dx).
GridField diff_periodic(const GridField& f);

/// L1 norm of the difference of two fields on the same grid.
double l1_distance(const GridField& a, const GridField& b);

}  // namespace mfglab
