#pragma once

#include "lw/lawson.hpp"

#include <string>
#include <vector>

namespace lw {

enum class HolomorphicKind { identity, exponential, custom_boundary };

struct HolomorphicParams {
    double scale = 1.0;     // identity: z = scale (m + i n) + offset
    cplx offset = 0.0;
    double h = 0.3, k = 0.3; // exponential: z = exp(h m + i k n)
    // custom_boundary: labels per column / row and the bottom row and left column of z
    std::vector<double> a, b;
    std::vector<cplx> bottom, left;
};

struct HolomorphicLattice {
    VertexField<cplx> z;
    std::vector<double> a; // label of the horizontal edges in column m
    std::vector<double> b; // label of the vertical edges in row n
};

// (z1 - z2)(z3 - z4) / ((z2 - z3)(z4 - z1))
cplx moebius_cross_ratio(cplx z1, cplx z2, cplx z3, cplx z4);
// fourth point z3 of a face with cr(z1, z2, z3, z4) = Q
cplx solve_fourth_point(cplx z1, cplx z2, cplx z4, cplx Q);

HolomorphicLattice gen_holomorphic(HolomorphicKind kind, int m_max, int n_max, const HolomorphicParams& params = {});
double lattice_cross_ratio_defect(const HolomorphicLattice& lat);
EdgeField<double> lattice_labels(const HolomorphicLattice& lat, double scale = 1.0);

// inverse stereographic projection, z = 0 to the south pole
Vec3 inverse_stereographic(cplx z);
VertexField<Vec3> sphere_net(const VertexField<cplx>& z);

// dx = a dn / |dn|^2 integrated from x(0,0) = 0
VertexField<Vec3> christoffel_dual_r3(const VertexField<Vec3>& n, const EdgeField<double>& labels, double tol = 1e-10);

enum class AmbientSpace { euclidean, hyperbolic };

struct RotationalParams {
    AmbientSpace space = AmbientSpace::euclidean;
    WeingartenCoefficients target{1, 0, -1, 0};
    double r0 = 0.5;    // distance of the first profile point from the axis
    double tilt = 0.3;  // hyperbolic: angle of the first tangent against the axis direction
    double h = 0.1;     // profile step
    double theta = 0.25; // rotation step
    int steps = 12, n_max = 12;
};

// discrete rotational linear Weingarten net: each profile step solves the face condition
// alpha K + 2 beta H + gamma = 0 by bracketing and bisection, t propagates by reflection in df
LegendreNet rotational_net(const RotationalParams& params);

LegendreNet minimal_net(int m_max, int n_max);

enum class SeedKind {
    minimal,
    cmc_r3_parallel,
    cmc_hyperbolic_unit,
    constant_gauss,
    flat_front,
    chmc,
    cmc_spherical,
    cmc_hyperbolic
};
std::string to_string(SeedKind k);
SeedKind parse_seed_kind(const std::string& s);
std::vector<SeedKind> all_seed_kinds();

struct PipelineParams {
    int m = 12, n = 12;
    double theta = 0.3;   // chmc: shear of the minimal seed
    double K = -1.0;      // constant_gauss
    double lawson_t = 0.5; // cmc_hyperbolic_unit
    double cmc_K = 1.0;   // Gauss curvature of the rotational seed behind the cmc routes
    double spherical_t = -0.3, hyperbolic_t = 0.3;
};

struct Seed {
    LegendreNet net;
    OmegaPair pair;
    std::string route;
};

Seed pipeline(SeedKind kind, const PipelineParams& params = {});

} // namespace lw
