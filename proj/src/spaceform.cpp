#include "lw/spaceform.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lw {

namespace {

constexpr double kTiny = 1e-300;

double rel_defect(double value, double target, double scale)
{
    return std::abs(value - target) / std::max(1.0, scale);
}

void push(std::vector<Violation>& out, std::string check, std::string where, double value)
{
    out.push_back({std::move(check), std::move(where), value});
}

// embedding of chart coordinates into R^{4,2}
Vec452 embed(const Vec3& x, Signature sig)
{
    Vec452 v = Vec452::Zero();
    v(0) = x(0);
    v(1) = x(1);
    v(sig == Signature::riemannian ? 2 : 4) = x(2);
    return v;
}

Vec3 chart_coords(const Vec452& v, Signature sig)
{
    return {v(0), v(1), v(sig == Signature::riemannian ? 2 : 4)};
}

double chart_dot(const Vec3& a, const Vec3& b, Signature sig)
{
    return sig == Signature::riemannian ? a.dot(b) : a(0) * b(0) + a(1) * b(1) - a(2) * b(2);
}

double wrap_angle(double x)
{
    const double two_pi = 2 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    if (x < 0) x += two_pi;
    if (x >= two_pi) x -= two_pi;
    return x;
}

} // namespace

SpaceFormFrame euclidean_frame(Signature sig)
{
    SpaceFormFrame fr;
    fr.p = sig == Signature::riemannian ? basis_vector(4) : basis_vector(2);
    fr.q = basis_vector(3) + basis_vector(5);
    return fr;
}

Vec452 euclidean_origin()
{
    return 0.5 * (basis_vector(5) - basis_vector(3));
}

std::vector<Violation> legendre_violations(const LegendreNet& net, double tol, bool all)
{
    std::vector<Violation> out;
    auto done = [&] { return !all && !out.empty(); };
    const auto& fr = net.frame;
    const auto& dom = net.dom;

    const double pq = inner(fr.p, fr.q);
    if (rel_defect(pq, 0, fr.p.norm() * fr.q.norm()) > tol) push(out, "frame-orthogonality", "frame", pq);
    if (std::abs(inner(fr.p, fr.p)) <= tol * fr.p.squaredNorm()) push(out, "frame-point-complex", "frame", inner(fr.p, fr.p));
    if (done()) return out;

    for (int idx = 0; idx < dom.vertex_count() && !done(); ++idx) {
        const Vertex v = dom.vertex(idx);
        const Vec452& f = net.f[v];
        const Vec452& t = net.t[v];
        const double nf = f.norm(), nt = t.norm(), np = fr.p.norm(), nq = fr.q.norm();
        const struct {
            const char* name;
            double value, target, scale;
        } checks[] = {
            {"f-null", inner(f, f), 0, nf * nf},
            {"f-q-normalization", inner(f, fr.q), -1, nf * nq},
            {"f-p-orthogonality", inner(f, fr.p), 0, nf * np},
            {"t-null", inner(t, t), 0, nt * nt},
            {"t-q-orthogonality", inner(t, fr.q), 0, nt * nq},
            {"t-p-normalization", inner(t, fr.p), -1, nt * np},
            {"contact", inner(f, t), 0, nf * nt},
        };
        for (const auto& c : checks)
            if (rel_defect(c.value, c.target, c.scale) > tol) push(out, c.name, to_string(v), c.value - c.target);
    }
    if (done()) return out;

    for (const Edge& e : dom.edges()) {
        const Vec452 df = net.f[e.to()] - net.f[e.from()];
        const Vec452 dt = net.t[e.to()] - net.t[e.from()];
        const double dff = inner(df, df);
        if (std::abs(dff) <= 1e-12 * df.squaredNorm() || df.norm() == 0) {
            push(out, "regularity-isotropic-edge", to_string(e), dff);
        } else {
            const auto [k, res] = rodrigues_coefficient(df, dt);
            if (res > tol) push(out, "rodrigues", to_string(e), res);
        }
        if (done()) return out;
    }

    for (const Face& fc : dom.faces()) {
        const auto q = dom.face_quad(fc);
        const Vec452 dik = net.f[q[2]] - net.f[q[0]], djl = net.f[q[3]] - net.f[q[1]];
        if (std::abs(inner(dik, dik)) <= 1e-12 * dik.squaredNorm() ||
            std::abs(inner(djl, djl)) <= 1e-12 * djl.squaredNorm())
            push(out, "regularity-isotropic-diagonal", to_string(fc), 0);
        else if (bivector(dik, djl).norm() <= 1e-12 * dik.norm() * djl.norm())
            push(out, "regularity-parallel-diagonals", to_string(fc), bivector(dik, djl).norm());
        if (done()) return out;
    }
    return out;
}

void require_legendre(const LegendreNet& net, double tol)
{
    const auto v = legendre_violations(net, tol, false);
    if (!v.empty()) throw GeometryError(v.front().check, "net invariant violated (" + std::to_string(v.front().value) + ")", v.front().where);
}

LegendreNet lift_euclidean(const VertexField<Vec3>& x, const VertexField<Vec3>& n, Signature sig, double tol)
{
    if (!(x.dom == n.dom)) throw std::invalid_argument("lift_euclidean: fields live on different grids");
    LegendreNet net;
    net.dom = x.dom;
    net.frame = euclidean_frame(sig);
    net.f = VertexField<Vec452>(x.dom);
    net.t = VertexField<Vec452>(x.dom);
    const Vec452 o = euclidean_origin();
    const double nn_target = sig == Signature::riemannian ? 1.0 : -1.0;
    const double tsign = sig == Signature::riemannian ? 1.0 : -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Vec3& xi = x.data[i];
        const Vec3& ni = n.data[i];
        if (std::abs(chart_dot(ni, ni, sig) - nn_target) > 1e-12)
            throw GeometryError("unit-normal", "normal has the wrong length", to_string(x.dom.vertex(int(i))));
        net.f.data[i] = o + embed(xi, sig) + 0.5 * chart_dot(xi, xi, sig) * net.frame.q;
        net.t.data[i] = tsign * net.frame.p + embed(ni, sig) + chart_dot(xi, ni, sig) * net.frame.q;
    }
    require_legendre(net, tol);
    return net;
}

EuclideanChart project_euclidean(const LegendreNet& net)
{
    const auto& fr = net.frame;
    const double qq = inner(fr.q, fr.q), pp = inner(fr.p, fr.p);
    if (std::abs(qq) > 1e-12 * fr.q.squaredNorm()) throw GeometryError("flat-frame", "space form is not flat");
    if (std::abs(std::abs(pp) - 1) > 1e-12)
        throw GeometryError("frame-normalization", "point sphere complex must satisfy |(pp)| = 1");
    const Signature sig = pp < 0 ? Signature::riemannian : Signature::lorentzian;
    const SpaceFormFrame canon = euclidean_frame(sig);

    Mat6<double> R = Mat6<double>::Identity();
    if ((fr.p - canon.p).norm() > 1e-12 || (fr.q - canon.q).norm() > 1e-12) {
        // orthogonal map carrying (p, q, f_0) to the canonical (p, q, o)
        const Vec452 o1 = net.f.data.front();
        Eigen::Matrix<double, 6, 3> span;
        span << fr.p, fr.q, o1;
        const Eigen::Matrix3d gram = span.transpose() * metric() * span;
        Eigen::Matrix<double, 6, 6> cand;
        for (int k = 0; k < 6; ++k) {
            const Vec452 e = basis_vector(k);
            const Eigen::Vector3d c = gram.fullPivLu().solve(span.transpose() * lower(e));
            cand.col(k) = e - span * c;
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(cand, Eigen::ComputeFullU);
        const Eigen::Matrix<double, 6, 3> W = svd.matrixU().leftCols<3>();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(W.transpose() * metric() * W);
        Eigen::Matrix<double, 6, 3> U;
        std::vector<int> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
        for (int k = 0; k < 3; ++k) {
            const double lam = es.eigenvalues()(order[k]);
            if (std::abs(lam) < 1e-12) throw GeometryError("frame-alignment", "degenerate complement of the frame");
            U.col(k) = W * es.eigenvectors().col(order[k]) / std::sqrt(std::abs(lam));
        }
        Mat6<double> S, T;
        S << U, fr.p, fr.q, o1;
        T << basis_vector(0), basis_vector(1), basis_vector(sig == Signature::riemannian ? 2 : 4), canon.p, canon.q,
            euclidean_origin();
        R = T * S.inverse();
    }

    EuclideanChart out{VertexField<Vec3>(net.dom), VertexField<Vec3>(net.dom)};
    const double tsign = sig == Signature::riemannian ? 1.0 : -1.0;
    for (std::size_t i = 0; i < net.f.size(); ++i) {
        const Vec452 f = R * net.f.data[i];
        const Vec452 t = R * net.t.data[i];
        if (!f.allFinite()) throw GeometryError("point-at-infinity", "vertex maps to infinity", to_string(net.dom.vertex(int(i))));
        out.x.data[i] = chart_coords(f, sig);
        // t = ±p + n + (x,n) q
        out.n.data[i] = chart_coords(t - tsign * canon.p, sig);
    }
    return out;
}

std::pair<double, double> rodrigues_coefficient(const Vec452& df, const Vec452& dt)
{
    const double dd = df.squaredNorm();
    if (dd == 0) return {0.0, dt.norm() == 0 ? 0.0 : 1.0};
    const double k = -dt.dot(df) / dd;
    const double scale = std::max({dt.norm(), std::abs(k) * df.norm(), kTiny});
    return {k, (dt + k * df).norm() / scale};
}

CurvatureSphereData curvature_spheres(const LegendreNet& net, double tol)
{
    CurvatureSphereData out{EdgeField<Vec452>(net.dom), EdgeField<double>(net.dom)};
    for (const Edge& e : net.dom.edges()) {
        const Vertex i = e.from(), j = e.to();
        const auto [k, res] = rodrigues_coefficient(net.f[j] - net.f[i], net.t[j] - net.t[i]);
        const Vec452 ki = net.t[i] + k * net.f[i];
        const Vec452 kj = net.t[j] + k * net.f[j];
        if ((ki - kj).norm() > tol * std::max(1.0, ki.norm()))
            throw GeometryError("curvature-sphere", "adjacent contact lines do not intersect", to_string(e));
        out.k[e] = k;
        out.kappa_lift[e] = ki;
    }
    return out;
}

FaceCurvature face_curvature(const LegendreNet& net, const Face& face, bool reversed)
{
    const MixedArea Aff = mixed_area(net.f, net.f, face, reversed);
    const MixedArea Aft = mixed_area(net.f, net.t, face, reversed);
    const MixedArea Att = mixed_area(net.t, net.t, face, reversed);
    const auto q = net.dom.face_quad(face);
    const double scale = (net.f[q[2]] - net.f[q[0]]).norm() * (net.f[q[3]] - net.f[q[1]]).norm();
    const double n2 = Aff.squaredNorm();
    if (!(std::sqrt(n2) > 1e-14 * scale)) throw GeometryError("regularity-face-area", "A(f,f) vanishes", to_string(face));
    FaceCurvature c;
    c.H = -(Aft.cwiseProduct(Aff)).sum() / n2;
    c.K = (Att.cwiseProduct(Aff)).sum() / n2;
    const double nff = std::sqrt(n2);
    const double r1 = (Aft + c.H * Aff).norm() / std::max(Aft.norm(), nff);
    const double r2 = (Att - c.K * Aff).norm() / std::max(Att.norm(), nff);
    c.residual = std::max(r1, r2);
    return c;
}

FaceCurvatures face_curvatures(const LegendreNet& net)
{
    FaceCurvatures out{FaceField<double>(net.dom), FaceField<double>(net.dom), FaceField<double>(net.dom),
                       FaceField<double>(net.dom), FaceField<char>(net.dom, 0)};
    const double eps = net.frame.epsilon(), kap = net.frame.kappa();
    EdgeField<double> k(net.dom);
    for (const Edge& e : net.dom.edges())
        k[e] = rodrigues_coefficient(net.f[e.to()] - net.f[e.from()], net.t[e.to()] - net.t[e.from()]).first;
    for (const Face& fc : net.dom.faces()) {
        const FaceCurvature c = face_curvature(net, fc);
        out.H[fc] = c.H;
        out.K[fc] = c.K;
        out.residual[fc] = c.residual;
        out.K_int[fc] = eps * c.K + kap;
        const auto es = net.dom.face_edges(fc);
        bool umb = true;
        for (int a = 0; a < 4; ++a) {
            const double ka = k[es[a]], kb = k[es[(a + 1) % 4]];
            if (std::abs(ka - kb) > 1e-8 * std::max({1.0, std::abs(ka), std::abs(kb)})) umb = false;
        }
        out.umbilic[fc] = umb;
    }
    return out;
}

FaceCurvature classical_face_curvature(const VertexField<Vec3>& x, const VertexField<Vec3>& n, const Face& face,
                                       bool reversed)
{
    const auto q = x.dom.face_quad(face, reversed);
    const Vec3 xik = x[q[2]] - x[q[0]], xjl = x[q[3]] - x[q[1]];
    const Vec3 nik = n[q[2]] - n[q[0]], njl = n[q[3]] - n[q[1]];
    const Vec3 Axx = 0.5 * xik.cross(xjl);
    const Vec3 Axn = 0.25 * (xik.cross(njl) + nik.cross(xjl));
    const Vec3 Ann = 0.5 * nik.cross(njl);
    const double a2 = Axx.squaredNorm();
    if (a2 == 0) throw GeometryError("regularity-face-area", "vanishing area", to_string(face));
    FaceCurvature c;
    c.H = -Axn.dot(Axx) / a2;
    c.K = Ann.dot(Axx) / a2;
    c.residual = std::max((Axn + c.H * Axx).norm(), (Ann - c.K * Axx).norm()) / std::sqrt(a2);
    return c;
}

WeingartenCoefficients normalized(const WeingartenCoefficients& c)
{
    Eigen::Vector3d v = c.vec();
    const double nv = v.norm();
    if (nv == 0) throw std::invalid_argument("trivial Weingarten triple");
    v /= nv;
    for (int k = 0; k < 3; ++k)
        if (std::abs(v(k)) > 1e-12) {
            if (v(k) < 0) v = -v;
            break;
        }
    return {v(0), v(1), v(2), c.fit_residual};
}

double coefficient_distance(const WeingartenCoefficients& a, const WeingartenCoefficients& b)
{
    const Eigen::Vector3d u = a.vec().normalized(), v = b.vec().normalized();
    return std::min((u - v).norm(), (u + v).norm());
}

WeingartenCoefficients fit_weingarten(const std::vector<double>& H, const std::vector<double>& K)
{
    if (H.size() != K.size() || H.empty()) throw std::invalid_argument("fit_weingarten: need matching nonempty samples");
    Eigen::MatrixXd rows(H.size(), 3);
    for (std::size_t i = 0; i < H.size(); ++i) rows.row(i) << K[i], 2 * H[i], 1.0;
    if (rows.rows() < 3) rows.conservativeResize(3, Eigen::NoChange), rows.bottomRows(3 - H.size()).setZero();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const Eigen::Vector3d v = svd.matrixV().col(2);
    const auto& s = svd.singularValues();
    WeingartenCoefficients c{v(0), v(1), v(2), s(0) > 0 ? s(2) / s(0) : 0.0};
    return normalized(c);
}

WeingartenCoefficients fit_weingarten(const LegendreNet& net, const std::vector<Face>& faces)
{
    std::vector<double> H, K;
    for (const Face& fc : faces) {
        const FaceCurvature c = face_curvature(net, fc);
        H.push_back(c.H);
        K.push_back(c.K);
    }
    return fit_weingarten(H, K);
}

WeingartenCoefficients fit_weingarten(const LegendreNet& net)
{
    return fit_weingarten(net, net.dom.faces());
}

double minimality_defect(const LegendreNet& net)
{
    double worst = 0;
    for (const Face& fc : net.dom.faces()) {
        const double a = mixed_area(net.f, net.t, fc).norm();
        const double b = mixed_area(net.f, net.f, fc).norm();
        worst = std::max(worst, a / std::max(b, kTiny));
    }
    return worst;
}

bool is_minimal(const LegendreNet& net, double tol)
{
    return minimality_defect(net) <= tol;
}

Eigen::Matrix2d frame_gram(const SpaceFormFrame& fr)
{
    Eigen::Matrix2d Q;
    Q << inner(fr.q, fr.q), inner(fr.q, fr.p), inner(fr.p, fr.q), inner(fr.p, fr.p);
    return Q;
}

LegendreNet parallel_transform(const LegendreNet& net, const Eigen::Matrix2d& B, double tol)
{
    const Eigen::Matrix2d Q = frame_gram(net.frame);
    if ((B.transpose() * Q * B - Q).cwiseAbs().maxCoeff() > tol * std::max(1.0, Q.cwiseAbs().maxCoeff()))
        throw GeometryError("parallel-transform", "basis change does not preserve the frame Gram matrix");
    const Eigen::Matrix2d C = B.inverse();
    LegendreNet out = net;
    out.frame.q = C(0, 0) * net.frame.q + C(1, 0) * net.frame.p;
    out.frame.p = C(0, 1) * net.frame.q + C(1, 1) * net.frame.p;
    for (std::size_t i = 0; i < net.f.size(); ++i) {
        out.f.data[i] = B(0, 0) * net.f.data[i] + B(0, 1) * net.t.data[i];
        out.t.data[i] = B(1, 0) * net.f.data[i] + B(1, 1) * net.t.data[i];
    }
    return out;
}

WeingartenCoefficients coefficient_transform(const WeingartenCoefficients& c, const Eigen::Matrix2d& B)
{
    const Eigen::Matrix2d M = B * c.matrix() * B.transpose();
    return normalized({M(0, 0), M(0, 1), M(1, 1), c.fit_residual});
}

PlaneType plane_type(const SpaceFormFrame& fr, double tol)
{
    const double qq = inner(fr.q, fr.q), pp = inner(fr.p, fr.p);
    if (std::abs(qq) <= tol * std::max(std::abs(pp), fr.q.squaredNorm())) return PlaneType::degenerate;
    return qq * pp > 0 ? PlaneType::definite : PlaneType::indefinite;
}

namespace {

Eigen::Matrix2d frame_scale(const SpaceFormFrame& fr)
{
    const PlaneType pt = plane_type(fr);
    const double sq = pt == PlaneType::degenerate ? 1.0 : std::sqrt(std::abs(inner(fr.q, fr.q)));
    const double sp = std::sqrt(std::abs(inner(fr.p, fr.p)));
    return Eigen::Vector2d(sq, sp).asDiagonal();
}

} // namespace

Eigen::Matrix2d parallel_basis_change(const SpaceFormFrame& fr, double theta)
{
    Eigen::Matrix2d Bh;
    switch (plane_type(fr)) {
    case PlaneType::definite:
        Bh << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        break;
    case PlaneType::degenerate:
        Bh << 1, theta, 0, 1;
        break;
    case PlaneType::indefinite:
        Bh << std::cosh(theta), std::sinh(theta), std::sinh(theta), std::cosh(theta);
        break;
    }
    const Eigen::Matrix2d D = frame_scale(fr);
    return D.inverse() * Bh * D;
}

WeingartenCoefficients unit_frame_coefficients(const WeingartenCoefficients& c, const SpaceFormFrame& fr)
{
    const Eigen::Matrix2d D = frame_scale(fr);
    const Eigen::Matrix2d M = D * c.matrix() * D;
    return normalized({M(0, 0), M(0, 1), M(1, 1), c.fit_residual});
}

std::vector<ParallelMember> classify_parallel_family(const WeingartenCoefficients& coeffs, const SpaceFormFrame& fr,
                                                     double tol)
{
    const WeingartenCoefficients c = unit_frame_coefficients(coeffs, fr);
    const double a = c.alpha, b = c.beta, g = c.gamma;
    if (std::abs(b * b - a * g) <= tol) throw GeometryError("tubular", "tubular linear Weingarten family");

    std::vector<ParallelMember> out;
    auto add = [&](double th, const char* type) { out.push_back({th, type, false}); };
    auto family = [&](const char* type) { out.push_back({std::numeric_limits<double>::quiet_NaN(), type, true}); };

    switch (plane_type(fr)) {
    case PlaneType::definite: {
        const double mu = 0.5 * (a + g);
        const double rho = std::hypot(0.5 * (a - g), b);
        if (rho <= tol) {
            family("intrinsically-flat-family");
            break;
        }
        const double omega = 0.5 * std::atan2(b, 0.5 * (a - g));
        const double half_pi = 0.5 * std::numbers::pi;
        for (int k = 0; k < 4; ++k) add(wrap_angle(-omega + k * half_pi), "constant-Gauss");
        if (rho * rho > mu * mu) {
            const bool minimal = std::abs(mu) <= tol;
            // cos 2(theta+omega) = -mu/rho gives alpha = 0, +mu/rho gives gamma = 0
            for (int sgn : {-1, 1}) {
                if (minimal && sgn == 1) break;
                const double ac = std::acos(std::clamp(sgn * mu / rho, -1.0, 1.0));
                const char* type = minimal ? "minimal" : (sgn < 0 ? "CMC" : "constant-harmonic-mean");
                for (int k = 0; k < 2; ++k) {
                    add(wrap_angle(-omega + 0.5 * ac + k * std::numbers::pi), type);
                    add(wrap_angle(-omega - 0.5 * ac + k * std::numbers::pi), type);
                }
            }
        }
        break;
    }
    case PlaneType::degenerate: {
        if (std::abs(g) <= tol) {
            add(-a / (2 * b), "minimal");
            family("constant-harmonic-mean");
            break;
        }
        add(-b / g, "constant-Gauss");
        const double d2 = b * b - a * g;
        if (d2 > 0) {
            add((-b + std::sqrt(d2)) / g, "CMC");
            add((-b - std::sqrt(d2)) / g, "CMC");
        }
        break;
    }
    case PlaneType::indefinite: {
        const double mu = 0.5 * (a - g);
        const double s = 0.5 * (a + g);
        if (std::abs(std::abs(s) - std::abs(b)) <= tol) {
            if (std::abs(b) <= tol) {
                family("flat-front-family");
                break;
            }
            family("Bryant-type");
            const double sg = (s * b > 0) ? 1.0 : -1.0;
            // alpha(theta) = mu + sg*b*exp(2 sg theta), gamma(theta) = -mu + sg*b*exp(2 sg theta)
            if (-mu / (sg * b) > 0) add(sg * 0.5 * std::log(-mu / (sg * b)), "CMC");
            if (mu / (sg * b) > 0) add(sg * 0.5 * std::log(mu / (sg * b)), "constant-harmonic-mean");
        } else if (std::abs(s) > std::abs(b)) {
            const double omega = 0.5 * std::atanh(b / s);
            const double rho = s / std::cosh(2 * omega);
            add(-omega, "constant-Gauss");
            if (rho * rho < mu * mu) {
                if (-mu / rho >= 1) {
                    const double ac = std::acosh(-mu / rho);
                    add(-omega + 0.5 * ac, "CMC");
                    add(-omega - 0.5 * ac, "CMC");
                } else {
                    const double ac = std::acosh(mu / rho);
                    add(-omega + 0.5 * ac, "constant-harmonic-mean");
                    add(-omega - 0.5 * ac, "constant-harmonic-mean");
                }
            }
        } else {
            const double omega = 0.5 * std::atanh(s / b);
            const double rho = b / std::cosh(2 * omega);
            if (std::abs(mu) <= tol) {
                add(-omega, "minimal");
            } else {
                add(-omega + 0.5 * std::asinh(-mu / rho), "CMC");
                add(-omega + 0.5 * std::asinh(mu / rho), "constant-harmonic-mean");
            }
        }
        break;
    }
    }
    return out;
}

LegendreNet project_lines(const VertexField<Vec452>& x, const VertexField<Vec452>& y, const SpaceFormFrame& fr,
                          double tol)
{
    LegendreNet out{x.dom, VertexField<Vec452>(x.dom), VertexField<Vec452>(x.dom), fr};
    for (std::size_t i = 0; i < x.size(); ++i) {
        Eigen::Matrix2d M;
        M << inner(x.data[i], fr.q), inner(y.data[i], fr.q), inner(x.data[i], fr.p), inner(y.data[i], fr.p);
        const double scale = x.data[i].norm() * y.data[i].norm() * fr.p.norm() * fr.q.norm();
        if (std::abs(M.determinant()) <= 1e-12 * scale)
            throw GeometryError("projection", "contact element contains a point sphere of the frame or is tangent to infinity",
                                to_string(x.dom.vertex(int(i))));
        const Eigen::Vector2d cf = M.partialPivLu().solve(Eigen::Vector2d(-1, 0));
        const Eigen::Vector2d ct = M.partialPivLu().solve(Eigen::Vector2d(0, -1));
        out.f.data[i] = cf(0) * x.data[i] + cf(1) * y.data[i];
        out.t.data[i] = ct(0) * x.data[i] + ct(1) * y.data[i];
    }
    require_legendre(out, tol);
    return out;
}

LegendreNet renormalize_frame(const LegendreNet& net, double lambda_q, double lambda_p)
{
    if (lambda_q == 0 || lambda_p == 0) throw std::invalid_argument("renormalize_frame: zero scale");
    LegendreNet out = net;
    out.frame.q = lambda_q * net.frame.q;
    out.frame.p = lambda_p * net.frame.p;
    for (auto& f : out.f.data) f /= lambda_q;
    for (auto& t : out.t.data) t /= lambda_p;
    return out;
}

LegendreNet swap_roles(const LegendreNet& net, double tol)
{
    if (std::abs(inner(net.frame.q, net.frame.q)) <= tol * net.frame.q.squaredNorm())
        throw GeometryError("swap-roles", "space form vector is isotropic, cannot serve as point sphere complex");
    for (const Face& fc : net.dom.faces())
        if (std::abs(face_curvature(net, fc).K) <= tol)
            throw GeometryError("swap-roles", "vanishing Gauss curvature", to_string(fc));
    LegendreNet out = net;
    std::swap(out.frame.p, out.frame.q);
    std::swap(out.f, out.t);
    return out;
}

} // namespace lw
