#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/QR>
#include <complex>
#include <stdexcept>
#include <string>

namespace lw {

using cplx = std::complex<double>;

template <typename Scalar> using Vec6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using Mat6 = Eigen::Matrix<Scalar, 6, 6>;

using Vec452 = Vec6<double>;
using CVec452 = Vec6<cplx>;
using OrthoMap = Mat6<double>;
using COrthoMap = Mat6<cplx>;
using MixedArea = Mat6<double>;
using SymTensor2 = Mat6<double>;

// thrown for violated preconditions and failed invariants; `where` names the
// offending vertex, edge or face when there is one
class GeometryError : public std::runtime_error {
public:
    GeometryError(std::string check, const std::string& what, std::string where = {})
        : std::runtime_error(check + ": " + what + (where.empty() ? "" : " at " + where)),
          check_(std::move(check)), where_(std::move(where)) {}
    const std::string& check() const { return check_; }
    const std::string& where() const { return where_; }

private:
    std::string check_;
    std::string where_;
};

inline const Eigen::Matrix<double, 6, 1>& metric_diagonal()
{
    static const Eigen::Matrix<double, 6, 1> g = (Eigen::Matrix<double, 6, 1>() << 1, 1, 1, 1, -1, -1).finished();
    return g;
}

inline Mat6<double> metric() { return metric_diagonal().asDiagonal(); }

inline Vec452 basis_vector(int k)
{
    return Vec452::Unit(k);
}

// lowers the index: x -> Gx
template <typename Derived>
auto lower(const Eigen::MatrixBase<Derived>& x)
{
    return (metric_diagonal().template cast<typename Derived::Scalar>().asDiagonal() * x).eval();
}

// bilinear in both slots, no conjugation for complex scalars
template <typename DerivedU, typename DerivedV>
auto inner(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v)
{
    using S = decltype(typename DerivedU::Scalar() * typename DerivedV::Scalar());
    S s(0);
    const auto& g = metric_diagonal();
    for (int k = 0; k < 6; ++k) s += g(k) * u(k) * v(k);
    return s;
}

// matrix of x -> (u,x)v - (v,x)u
template <typename Scalar>
Mat6<Scalar> wedge_matrix(const Vec6<Scalar>& u, const Vec6<Scalar>& v)
{
    return v * lower(u).transpose() - u * lower(v).transpose();
}

template <typename Scalar>
Vec6<Scalar> wedge_action(const Vec6<Scalar>& u, const Vec6<Scalar>& v, const Vec6<Scalar>& x)
{
    return inner(u, x) * v - inner(v, x) * u;
}

// bivector u^v as an antisymmetric coordinate matrix
template <typename Scalar>
Mat6<Scalar> bivector(const Vec6<Scalar>& u, const Vec6<Scalar>& v)
{
    return u * v.transpose() - v * u.transpose();
}

// W(x,y) = (Gx)^T W (Gy) evaluates to ((u,x)(v,y) + (v,x)(u,y))/2
template <typename Scalar>
Mat6<Scalar> sym_outer(const Vec6<Scalar>& u, const Vec6<Scalar>& v)
{
    return Scalar(0.5) * (u * v.transpose() + v * u.transpose());
}

template <typename Scalar>
Scalar evaluate_form(const Mat6<Scalar>& W, const Vec6<Scalar>& x, const Vec6<Scalar>& y)
{
    return lower(x).transpose() * W * lower(y);
}

template <typename Scalar>
double orthogonality_defect(const Mat6<Scalar>& M)
{
    const Mat6<Scalar> G = metric().template cast<Scalar>();
    return (M.transpose() * G * M - G).cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool is_orthogonal(const Mat6<Scalar>& M, double tol)
{
    if (!(tol > 0)) throw std::invalid_argument("is_orthogonal: tolerance must be positive");
    return orthogonality_defect(M) <= tol;
}

template <typename Scalar>
Mat6<Scalar> ortho_inverse(const Mat6<Scalar>& M)
{
    const Mat6<Scalar> G = metric().template cast<Scalar>();
    return G * M.transpose() * G;
}

// Cayley transform of a G-skew generator, exactly orthogonal
template <typename Scalar>
Mat6<Scalar> cayley(const Mat6<Scalar>& X)
{
    const Mat6<Scalar> I = Mat6<Scalar>::Identity();
    return (I - Scalar(0.5) * X).partialPivLu().solve(I + Scalar(0.5) * X);
}

inline CVec452 complexify(const Vec452& v) { return v.cast<cplx>(); }

inline double max_imag(const CVec452& v) { return v.imag().cwiseAbs().maxCoeff(); }

// sine of the angle between the complex lines spanned by u and v
template <typename Scalar>
double projective_distance(const Vec6<Scalar>& u, const Vec6<Scalar>& v)
{
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0 || nv == 0) return 1.0;
    const Scalar c = v.dot(u) / (nv * nv);
    return (u - c * v).norm() / nu;
}

// distance of x from the linear span of a and b, relative to |x|
template <typename Scalar>
double span_distance(const Vec6<Scalar>& x, const Vec6<Scalar>& a, const Vec6<Scalar>& b)
{
    Eigen::Matrix<Scalar, 6, 2> B;
    B << a, b;
    const Eigen::Matrix<Scalar, 2, 1> c = B.colPivHouseholderQr().solve(x);
    const double nx = x.norm();
    return nx == 0 ? 0.0 : (x - B * c).norm() / nx;
}

} // namespace lw
