#include "cgc/grid.hpp"

#include <algorithm>
#include <sstream>

#include "cgc/error.hpp"

namespace cgc {

namespace {
void check_counts(int nx, int ny) {
  if (nx < 9 || ny < 9 || nx % 2 == 0 || ny % 2 == 0) {
    std::ostringstream os;
    os << "node counts must be odd and >= 9, got " << nx << " x " << ny;
    throw Error(ErrorCode::InvalidGrid, "gauss_solver", os.str());
  }
}
}  // namespace

Grid::Grid(double x_min, double y_min, double h, int nx, int ny)
    : x_min_(x_min), y_min_(y_min), h_(h), nx_(nx), ny_(ny) {
  base_i_ = std::clamp(static_cast<int>(std::lround(-x_min / h)), 0, nx - 1);
  base_j_ = std::clamp(static_cast<int>(std::lround(-y_min / h)), 0, ny - 1);
}

Grid Grid::rectangle(double x_min, double x_max, double y_min, double y_max, int nx, int ny) {
  check_counts(nx, ny);
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw Error(ErrorCode::InvalidGrid, "gauss_solver", "empty rectangle");
  }
  const double hx = (x_max - x_min) / (nx - 1);
  const double hy = (y_max - y_min) / (ny - 1);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) {
    std::ostringstream os;
    os << "spacing must be uniform, hx = " << hx << ", hy = " << hy;
    throw Error(ErrorCode::InvalidGrid, "gauss_solver", os.str());
  }
  return Grid(x_min, y_min, hx, nx, ny);
}

Grid Grid::square(double half_width, int n) {
  return rectangle(-half_width, half_width, -half_width, half_width, n, n);
}

Grid Grid::inscribed(double radius, int n) { return square(radius / std::sqrt(2.0), n); }

double Grid::max_modulus() const {
  const double ax = std::max(std::abs(x_min()), std::abs(x_max()));
  const double ay = std::max(std::abs(y_min()), std::abs(y_max()));
  return std::hypot(ax, ay);
}

Grid Grid::refined() const { return Grid(x_min_, y_min_, 0.5 * h_, 2 * nx_ - 1, 2 * ny_ - 1); }

namespace {
template <typename R, typename T>
Field<R> combine(const Field<T>& f, Complex sign) {
  const Field<T> fx = diff_x(f);
  const Field<T> fy = diff_y(f);
  Field<R> out(f.grid());
  auto o = out.values();
  auto a = fx.values();
  auto b = fy.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = 0.5 * (a[k] * Complex(1.0) + sign * b[k]);
  return out;
}

}  // namespace

ComplexField d_z(const RealField& f) { return combine<Complex>(f, -kI); }
ComplexField d_zbar(const RealField& f) { return combine<Complex>(f, kI); }
ComplexField d_z(const ComplexField& f) { return combine<Complex>(f, -kI); }
ComplexField d_zbar(const ComplexField& f) { return combine<Complex>(f, kI); }
ComplexField d_z4(const RealField& f) {
  const RealField fx = diff4(f, true);
  const RealField fy = diff4(f, false);
  ComplexField out(f.grid());
  for (int k = 0; k < f.grid().size(); ++k) out.values()[k] = 0.5 * Complex(fx.values()[k], -fy.values()[k]);
  return out;
}
MatrixField d_z(const MatrixField& f) { return combine<C2x2>(f, -kI); }
MatrixField d_zbar(const MatrixField& f) { return combine<C2x2>(f, kI); }

RealField laplacian(const RealField& f) {
  const Grid& g = f.grid();
  const double inv = 1.0 / (g.h() * g.h());
  RealField out(g);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i)
      out(i, j) = (f(i + 1, j) + f(i - 1, j) + f(i, j + 1) + f(i, j - 1) - 4.0 * f(i, j)) * inv;
  return out;
}

FieldStats interior_stats(const RealField& f, int ring) {
  const Grid& g = f.grid();
  FieldStats s;
  double sum = 0.0;
  for (int j = ring; j < g.ny() - ring; ++j)
    for (int i = ring; i < g.nx() - ring; ++i) {
      const double v = std::abs(f(i, j));
      s.max = std::max(s.max, v);
      sum += v * v;
      ++s.count;
    }
  s.rms = s.count > 0 ? std::sqrt(sum / s.count) : 0.0;
  return s;
}

double interior_max(const RealField& f, int ring) { return interior_stats(f, ring).max; }

RealField abs_field(const ComplexField& f) {
  RealField out(f.grid());
  auto o = out.values();
  auto a = f.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::abs(a[k]);
  return out;
}

RealField frobenius_field(const MatrixField& f) {
  RealField out(f.grid());
  auto o = out.values();
  auto a = f.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = a[k].norm();
  return out;
}

int core_ring(const Grid& grid) { return std::max(1, (std::min(grid.nx(), grid.ny()) - 1) / 16); }

}  // namespace cgc
