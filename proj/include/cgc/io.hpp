#pragma once

#include <string>

#include "cgc/gauss_maps.hpp"

namespace cgc {

// %.17g: round-trips every double.
std::string format_double(double v);

// i,j,x,y,u row-major in j.
void write_u_csv(const std::string& path, const RealField& u);
// Reads a file in the u-CSV layout onto `grid`; only boundary nodes need be present.
BoundaryData read_boundary_csv(const std::string& path, const Grid& grid);

// i,j,re(a11),im(a11),re(a12),im(a12),re(a21),im(a21),re(a22),im(a22).
void write_frame_csv(const std::string& path, const FrameField& frame);

// Vertices are f mapped to the Poincare ball; each grid quad gives two
// triangles, wound so that face normals point to the n side.
void write_obj(const std::string& path, const SurfaceData& s);
void write_ply(const std::string& path, const SurfaceData& s);
// i,j,K_num,H_num,reQ,imQ.
void write_sidecar_csv(const std::string& path, const RealField& K_num, const RealField& H_num,
                       const ComplexField& q_num);

// i,j,x,y,re(w),im(w) for H2, i,j,x,y,s1,s2,s3 for S2.
void write_gaussmap_csv(const std::string& path, const LagrangianMapField& map);

}  // namespace cgc
