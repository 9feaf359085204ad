#include "mfglab/grid.hpp"

#include <algorithm>

namespace mfglab {

double GridField::min() const { return *std::min_element(values.begin(), values.end()); }
double GridField::max() const { return *std::max_element(values.begin(), values.end()); }

double GridField::linf() const {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

double integrate(const GridField& f) {
  double s = 0.0;
  for (double x : f.values) s += x;
  return s * f.grid.dx();
}

GridField diff_periodic(const GridField& f) {
  const int n = f.grid.n_cells;
  const double inv2dx = 0.5 / f.grid.dx();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i)
    d[i] = (f[i + 1] - f[i - 1]) * inv2dx;
  return GridField(f.grid, std::move(d));
}

double l1_distance(const GridField& a, const GridField& b) {
  if (!(a.grid == b.grid)) throw DomainError("l1_distance: grid mismatch");
  double s = 0.0;
  for (int i = 0; i < a.grid.n_cells; ++i) s += std::abs(a.values[i] - b.values[i]);
  return s * a.grid.dx();
}

}  // namespace mfglab
