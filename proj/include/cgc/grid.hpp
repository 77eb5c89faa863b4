#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "cgc/minkowski.hpp"

namespace cgc {

// Uniform rectangular grid in the conformal coordinate z = x + iy.
// Node (i, j) sits at (x_min + i h, y_min + j h); storage is row-major in j.
class Grid {
 public:
  static Grid rectangle(double x_min, double x_max, double y_min, double y_max, int nx, int ny);
  static Grid square(double half_width, int n);
  // Square inscribed in the disk |z| <= radius.
  static Grid inscribed(double radius, int n);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int size() const { return nx_ * ny_; }
  double h() const { return h_; }
  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double x_max() const { return x_min_ + (nx_ - 1) * h_; }
  double y_max() const { return y_min_ + (ny_ - 1) * h_; }
  double x(int i) const { return x_min_ + i * h_; }
  double y(int j) const { return y_min_ + j * h_; }
  Complex z(int i, int j) const { return {x(i), y(j)}; }
  int index(int i, int j) const { return j * nx_ + i; }
  bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1; }

  // Node nearest z* = 0.
  int base_i() const { return base_i_; }
  int base_j() const { return base_j_; }

  // Largest |z| over the closed rectangle.
  double max_modulus() const;
  // Grid with 2N-1 nodes per side on the same rectangle.
  Grid refined() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(double x_min, double y_min, double h, int nx, int ny);

  double x_min_ = 0.0;
  double y_min_ = 0.0;
  double h_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  int base_i_ = 0;
  int base_j_ = 0;
};

template <typename T>
class Field {
 public:
  explicit Field(const Grid& grid, const T& init = T{}) : grid_(grid), data_(grid.size(), init) {}

  const Grid& grid() const { return grid_; }
  T& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[grid_.index(i, j)]; }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

 private:
  Grid grid_;
  std::vector<T> data_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;
using MatrixField = Field<C2x2>;

template <typename T, typename F>
Field<T> sample(const Grid& grid, F&& fn) {
  Field<T> out(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) out(i, j) = fn(grid.x(i), grid.y(j));
  return out;
}

// First derivatives: centered in the interior, second-order one-sided on the
// boundary ring, so every node carries an O(h^2) value.
template <typename T>
Field<T> diff_x(const Field<T>& f) {
  const Grid& g = f.grid();
  const double inv2h = 1.0 / (2.0 * g.h());
  Field<T> out(g);
  const int n = g.nx();
  for (int j = 0; j < g.ny(); ++j) {
    out(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * inv2h;
    for (int i = 1; i < n - 1; ++i) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv2h;
    out(n - 1, j) = (3.0 * f(n - 1, j) - 4.0 * f(n - 2, j) + f(n - 3, j)) * inv2h;
  }
  return out;
}

template <typename T>
Field<T> diff_y(const Field<T>& f) {
  const Grid& g = f.grid();
  const double inv2h = 1.0 / (2.0 * g.h());
  Field<T> out(g);
  const int n = g.ny();
  for (int i = 0; i < g.nx(); ++i) {
    out(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) * inv2h;
    for (int j = 1; j < n - 1; ++j) out(i, j) = (f(i, j + 1) - f(i, j - 1)) * inv2h;
    out(i, n - 1) = (3.0 * f(i, n - 1) - 4.0 * f(i, n - 2) + f(i, n - 3)) * inv2h;
  }
  return out;
}

// Fourth-order first derivatives: 5-point centered stencil, one-sided on the
// two outer rings.
template <typename T>
Field<T> diff4(const Field<T>& f, bool along_x) {
  const Grid& g = f.grid();
  const double inv12h = 1.0 / (12.0 * g.h());
  const int n = along_x ? g.nx() : g.ny();
  const int m = along_x ? g.ny() : g.nx();
  Field<T> out(g);
  for (int line = 0; line < m; ++line) {
    auto at = [&](int k) -> const T& { return along_x ? f(k, line) : f(line, k); };
    auto put = [&](int k, const T& v) { (along_x ? out(k, line) : out(line, k)) = v; };
    put(0, (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * inv12h);
    put(1, (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * inv12h);
    for (int k = 2; k < n - 2; ++k) put(k, (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2)) * inv12h);
    put(n - 2, (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) - at(n - 5)) * inv12h);
    put(n - 1, (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) + 3.0 * at(n - 5)) * inv12h);
  }
  return out;
}

// d = (d_x - i d_y)/2 and dbar = (d_x + i d_y)/2.
ComplexField d_z(const RealField& f);
ComplexField d_zbar(const RealField& f);
// d with the fourth-order stencils.
ComplexField d_z4(const RealField& f);
ComplexField d_z(const ComplexField& f);
ComplexField d_zbar(const ComplexField& f);
MatrixField d_z(const MatrixField& f);
MatrixField d_zbar(const MatrixField& f);

// Five-point Laplacian at interior nodes; boundary nodes are 0.
RealField laplacian(const RealField& f);

// Reductions over nodes at least `ring` steps away from the boundary,
// accumulated in a fixed serial order.
struct FieldStats {
  double max = 0.0;
  double rms = 0.0;
  int count = 0;
};
FieldStats interior_stats(const RealField& f, int ring = 1);
double interior_max(const RealField& f, int ring = 1);
// Ring excluding the outer sixteenth of the grid on each side: a fixed
// physical subdomain across refinements, clear of corner effects.
int core_ring(const Grid& grid);

RealField abs_field(const ComplexField& f);
RealField frobenius_field(const MatrixField& f);

}  // namespace cgc
