#include "cgc/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <Eigen/Geometry>

#include "cgc/error.hpp"

namespace cgc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IOError, "cli_io", "cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "cli_io", "write failed: " + path);
}

using Vec3 = Eigen::Vector3d;

Vec3 ball_point(const C2x2& f) {
  const auto p = to_poincare_ball(mink_from_herm(HermMatrix::from_matrix(f)), 1e-6);
  return {p[0], p[1], p[2]};
}

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

Mesh build_mesh(const SurfaceData& s) {
  const Grid& g = s.grid();
  Mesh m;
  m.vertices.reserve(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) m.vertices.push_back(ball_point(s.f(i, j)));

  // Orientation from the base node: compare the parameter-space normal with
  // the displacement of f towards n.
  const int bi = std::min(g.base_i(), g.nx() - 2);
  const int bj = std::min(g.base_j(), g.ny() - 2);
  const Vec3& v0 = m.vertices[g.index(bi, bj)];
  const Vec3 face_normal =
      (m.vertices[g.index(bi + 1, bj)] - v0).cross(m.vertices[g.index(bi, bj + 1)] - v0);
  const double eps = 1e-4;
  const C2x2 pushed = std::cosh(eps) * s.f(bi, bj) + std::sinh(eps) * s.n(bi, bj);
  const bool flip = face_normal.dot(ball_point(pushed) - v0) < 0.0;

  for (int j = 0; j + 1 < g.ny(); ++j)
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const int a = g.index(i, j), b = g.index(i + 1, j), c = g.index(i + 1, j + 1), d = g.index(i, j + 1);
      if (flip) {
        m.faces.push_back({a, c, b});
        m.faces.push_back({a, d, c});
      } else {
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
      }
    }
  return m;
}

}  // namespace

void write_u_csv(const std::string& path, const RealField& u) {
  auto out = open_out(path);
  const Grid& g = u.grid();
  out << "i,j,x,y,u\n";
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
          << format_double(u(i, j)) << '\n';
  finish(out, path);
}

BoundaryData read_boundary_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOError, "cli_io", "cannot open " + path);
  RealField values(grid);
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line_no == 1) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5)
      throw Error(ErrorCode::ParseError, "cli_io", path + ":" + std::to_string(line_no) + ": expected 5 columns");
    int i = 0, j = 0;
    double u = 0.0;
    try {
      i = std::stoi(cells[0]);
      j = std::stoi(cells[1]);
      u = std::stod(cells[4]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "cli_io", path + ":" + std::to_string(line_no) + ": bad number");
    }
    if (i < 0 || j < 0 || i >= grid.nx() || j >= grid.ny())
      throw Error(ErrorCode::ValidationError, "cli_io", path + ": node outside grid", {{i, j}});
    values(i, j) = u;
    seen[grid.index(i, j)] = true;
  }
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      if (grid.on_boundary(i, j) && !seen[grid.index(i, j)])
        throw Error(ErrorCode::ValidationError, "cli_io", path + ": missing boundary value", {{i, j}});
  return {std::move(values)};
}

void write_frame_csv(const std::string& path, const FrameField& frame) {
  auto out = open_out(path);
  const Grid& g = frame.psi.grid();
  out << "i,j,re(a11),im(a11),re(a12),im(a12),re(a21),im(a21),re(a22),im(a22)\n";
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const C2x2& m = frame.psi(i, j);
      out << i << ',' << j;
      for (const Complex c : {m(0, 0), m(0, 1), m(1, 0), m(1, 1)})
        out << ',' << format_double(c.real()) << ',' << format_double(c.imag());
      out << '\n';
    }
  finish(out, path);
}

void write_obj(const std::string& path, const SurfaceData& s) {
  const Mesh m = build_mesh(s);
  auto out = open_out(path);
  out << "# Poincare ball model, " << s.grid().nx() << "x" << s.grid().ny() << " grid\n";
  for (const Vec3& v : m.vertices)
    out << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  for (const auto& f : m.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  finish(out, path);
}

void write_ply(const std::string& path, const SurfaceData& s) {
  const Mesh m = build_mesh(s);
  auto out = open_out(path);
  out << "ply\nformat ascii 1.0\nelement vertex " << m.vertices.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nelement face " << m.faces.size()
      << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const Vec3& v : m.vertices)
    out << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  for (const auto& f : m.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  finish(out, path);
}

void write_sidecar_csv(const std::string& path, const RealField& K_num, const RealField& H_num,
                       const ComplexField& q_num) {
  auto out = open_out(path);
  const Grid& g = K_num.grid();
  out << "i,j,K_num,H_num,reQ,imQ\n";
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out << i << ',' << j << ',' << format_double(K_num(i, j)) << ',' << format_double(H_num(i, j)) << ','
          << format_double(q_num(i, j).real()) << ',' << format_double(q_num(i, j).imag()) << '\n';
  finish(out, path);
}

void write_gaussmap_csv(const std::string& path, const LagrangianMapField& map) {
  if (!map.disk && !map.sphere)
    throw Error(ErrorCode::ValidationError, "cli_io", "Gauss map has no H2/S2 projection");
  auto out = open_out(path);
  const Grid& g = map.L.grid();
  out << (map.disk ? "i,j,x,y,re(w),im(w)\n" : "i,j,x,y,s1,s2,s3\n");
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      out << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j));
      if (map.disk) {
        const Complex w = (*map.disk)(i, j);
        out << ',' << format_double(w.real()) << ',' << format_double(w.imag());
      } else {
        const SpherePoint& p = (*map.sphere)(i, j);
        out << ',' << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]);
      }
      out << '\n';
    }
  finish(out, path);
}

}  // namespace cgc
