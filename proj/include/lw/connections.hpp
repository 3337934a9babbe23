#pragma once

#include "lw/omega.hpp"

#include <vector>

namespace lw {

// x -> x + (t a / (u,v)) { (x,u) v / (1 - t a) - (x,v) u }: scales <u> by 1 - t a,
// <v> by 1 / (1 - t a) and fixes the orthogonal complement of both
COrthoMap gamma(const CVec452& u, const CVec452& v, double a, double t);

// connection of the gauge family on the ordered edge (i, j), eigenlines
// sigma-_i + g_j kappa_ij and sigma-_j + g_i kappa_ij
COrthoMap gamma_g(const OmegaPair& pair, const VertexField<double>& g, double t, const Vertex& i, const Vertex& j);

VertexField<double> constant_gauge(const GridDomain& dom, double g);

// A^g(t) = 1 - t g (sigma+ ^ sigma-) at one vertex
COrthoMap gauge_matrix(const OmegaPair& pair, double g, double t, const Vertex& v);

COrthoMap face_holonomy(const OmegaPair& pair, const VertexField<double>& g, double t, const Face& face);

struct Trivialization {
    VertexField<COrthoMap> T;
    Vertex base;
    double t = 0;
    double path_defect = 0;  // row-first against column-first propagation
    double orthogonality = 0;
};

// T_base = id and T_j = T_i Gamma_ij; `fixed` lists vectors the result must leave
// unchanged at every vertex, enforced by a constant post-composition
Trivialization trivialize(const OmegaPair& pair, const VertexField<double>& g, double t, const Vertex& base = {0, 0},
                          const std::vector<Vec452>& fixed = {}, double tol = 1e-8);

// real part of a map or vector whose imaginary part is negligible
OrthoMap real_map(const COrthoMap& M, double tol = 1e-9);

struct CalapsoResult {
    OmegaPair pair;
    LegendreNet net;
    Trivialization triv;
};

// sigma(t) = T sigma, f(t) = T f, same r, labels a / (1 - t a)
CalapsoResult calapso_transform(const OmegaPair& pair, const LegendreNet& net, double t, double g = 0.0);

} // namespace lw
