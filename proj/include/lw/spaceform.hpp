#pragma once

#include "lw/grid.hpp"
#include "lw/lorentz.hpp"

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lw {

using Vec3 = Eigen::Vector3d;

enum class Signature { riemannian, lorentzian };

struct SpaceFormFrame {
    Vec452 p = basis_vector(4);
    Vec452 q = basis_vector(3) + basis_vector(5);

    double epsilon() const { return -inner(p, p); }
    double kappa() const { return -inner(q, q); }
};

// p = e5 (riemannian) or p = e3 (lorentzian), q = e4 + e6
SpaceFormFrame euclidean_frame(Signature sig = Signature::riemannian);
// o = (e6 - e4)/2, the origin of the euclidean chart
Vec452 euclidean_origin();

struct LegendreNet {
    GridDomain dom;
    VertexField<Vec452> f, t;
    SpaceFormFrame frame;
};

struct Violation {
    std::string check;
    std::string where;
    double value = 0;
};

struct Tolerances {
    double structural = 1e-10;
    double fitted = 1e-8;
};

// normalizations, contact, Rodrigues and regularity; stops at the first failure unless `all`
std::vector<Violation> legendre_violations(const LegendreNet& net, double tol = 1e-10, bool all = false);
void require_legendre(const LegendreNet& net, double tol = 1e-10);

LegendreNet lift_euclidean(const VertexField<Vec3>& x, const VertexField<Vec3>& n,
                           Signature sig = Signature::riemannian, double tol = 1e-10);

struct EuclideanChart {
    VertexField<Vec3> x, n;
};
EuclideanChart project_euclidean(const LegendreNet& net);

struct CurvatureSphereData {
    EdgeField<Vec452> kappa_lift;
    EdgeField<double> k;
};

// Rodrigues coefficient of one edge: dt + k df = 0 in least squares, with its relative residual
std::pair<double, double> rodrigues_coefficient(const Vec452& df, const Vec452& dt);

CurvatureSphereData curvature_spheres(const LegendreNet& net, double tol = 1e-10);

template <typename Scalar>
Mat6<Scalar> mixed_area(const VertexField<Vec6<Scalar>>& u, const VertexField<Vec6<Scalar>>& v, const Face& face,
                        bool reversed = false)
{
    const auto q = u.dom.face_quad(face, reversed);
    const Vec6<Scalar> du_ik = u[q[2]] - u[q[0]], du_jl = u[q[3]] - u[q[1]];
    const Vec6<Scalar> dv_ik = v[q[2]] - v[q[0]], dv_jl = v[q[3]] - v[q[1]];
    return Scalar(0.25) * (bivector(du_ik, dv_jl) + bivector(dv_ik, du_jl));
}

struct FaceCurvatures {
    FaceField<double> H, K, residual, K_int;
    FaceField<char> umbilic;
};

struct FaceCurvature {
    double H = 0, K = 0, residual = 0;
};

FaceCurvature face_curvature(const LegendreNet& net, const Face& face, bool reversed = false);
FaceCurvatures face_curvatures(const LegendreNet& net);
// curvatures of the face read from the Euclidean mixed areas of (x, n)
FaceCurvature classical_face_curvature(const VertexField<Vec3>& x, const VertexField<Vec3>& n, const Face& face,
                                       bool reversed = false);

struct WeingartenCoefficients {
    double alpha = 0, beta = 0, gamma = 0;
    double fit_residual = 0;

    double delta_sq() const { return beta * beta - alpha * gamma; }
    Eigen::Matrix2d matrix() const { return (Eigen::Matrix2d() << alpha, beta, beta, gamma).finished(); }
    Eigen::Vector3d vec() const { return {alpha, beta, gamma}; }
};

// unit norm, first entry above 1e-12 in magnitude made positive
WeingartenCoefficients normalized(const WeingartenCoefficients& c);
// projective distance of two triples
double coefficient_distance(const WeingartenCoefficients& a, const WeingartenCoefficients& b);

WeingartenCoefficients fit_weingarten(const std::vector<double>& H, const std::vector<double>& K);
WeingartenCoefficients fit_weingarten(const LegendreNet& net);
WeingartenCoefficients fit_weingarten(const LegendreNet& net, const std::vector<Face>& faces);

bool is_minimal(const LegendreNet& net, double tol);
double minimality_defect(const LegendreNet& net);

// Gram matrix of (q, p)
Eigen::Matrix2d frame_gram(const SpaceFormFrame& frame);

// (q~,p~) = (q,p) B^-1 and (f~,t~) = (f,t) B^T, so that coefficients move by B M B^T
LegendreNet parallel_transform(const LegendreNet& net, const Eigen::Matrix2d& B, double tol = 1e-10);
WeingartenCoefficients coefficient_transform(const WeingartenCoefficients& c, const Eigen::Matrix2d& B);

enum class PlaneType { definite, degenerate, indefinite };
PlaneType plane_type(const SpaceFormFrame& frame, double tol = 1e-12);

// rotation, shear or boost by theta, taken in the orthonormalized frame and
// conjugated back to the scale of the given one
Eigen::Matrix2d parallel_basis_change(const SpaceFormFrame& frame, double theta);
// coefficients relative to the frame rescaled to unit (qq), (pp)
WeingartenCoefficients unit_frame_coefficients(const WeingartenCoefficients& c, const SpaceFormFrame& frame);

struct ParallelMember {
    double theta = 0;
    std::string type;
    bool whole_family = false;
};

std::vector<ParallelMember> classify_parallel_family(const WeingartenCoefficients& c, const SpaceFormFrame& frame,
                                                     double tol = 1e-9);

// the lifts f, t inside span(x_i, y_i) normalized against the frame
LegendreNet project_lines(const VertexField<Vec452>& x, const VertexField<Vec452>& y, const SpaceFormFrame& frame,
                          double tol = 1e-10);

LegendreNet renormalize_frame(const LegendreNet& net, double lambda_q, double lambda_p);
LegendreNet swap_roles(const LegendreNet& net, double tol = 1e-12);

} // namespace lw
