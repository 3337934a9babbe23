#include "lw/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace lw {

cplx moebius_cross_ratio(cplx z1, cplx z2, cplx z3, cplx z4)
{
    return (z1 - z2) * (z3 - z4) / ((z2 - z3) * (z4 - z1));
}

cplx solve_fourth_point(cplx z1, cplx z2, cplx z4, cplx Q)
{
    const cplx den = (z1 - z2) + Q * (z4 - z1);
    if (std::abs(den) <= 1e-14 * (std::abs(z1) + std::abs(z2) + std::abs(z4) + 1.0))
        throw GeometryError("cross-ratio-evolution", "fourth point at infinity");
    return (Q * (z4 - z1) * z2 + (z1 - z2) * z4) / den;
}

HolomorphicLattice gen_holomorphic(HolomorphicKind kind, int m_max, int n_max, const HolomorphicParams& p)
{
    GridDomain dom(m_max, n_max);
    HolomorphicLattice lat{VertexField<cplx>(dom), {}, {}};
    switch (kind) {
    case HolomorphicKind::identity:
        lat.a.assign(m_max, 1.0);
        lat.b.assign(n_max, -1.0);
        for (int n = 0; n <= n_max; ++n)
            for (int m = 0; m <= m_max; ++m) lat.z(m, n) = p.scale * cplx(m, n) + p.offset;
        break;
    case HolomorphicKind::exponential: {
        const double a = std::pow(std::sinh(p.h / 2), 2), b = -std::pow(std::sin(p.k / 2), 2);
        lat.a.assign(m_max, a);
        lat.b.assign(n_max, b);
        for (int n = 0; n <= n_max; ++n)
            for (int m = 0; m <= m_max; ++m) lat.z(m, n) = std::exp(cplx(p.h * m, p.k * n));
        break;
    }
    case HolomorphicKind::custom_boundary:
        if (int(p.a.size()) != m_max || int(p.b.size()) != n_max || int(p.bottom.size()) != m_max + 1 ||
            int(p.left.size()) != n_max + 1)
            throw std::invalid_argument("gen_holomorphic: boundary data does not match the grid size");
        if (std::abs(p.bottom[0] - p.left[0]) > 1e-14)
            throw std::invalid_argument("gen_holomorphic: bottom row and left column disagree at the corner");
        lat.a = p.a;
        lat.b = p.b;
        for (int m = 0; m <= m_max; ++m) lat.z(m, 0) = p.bottom[m];
        for (int n = 0; n <= n_max; ++n) lat.z(0, n) = p.left[n];
        for (int n = 0; n < n_max; ++n)
            for (int m = 0; m < m_max; ++m) {
                if (p.b[n] == 0) throw std::invalid_argument("gen_holomorphic: zero row label");
                lat.z(m + 1, n + 1) = solve_fourth_point(lat.z(m, n), lat.z(m + 1, n), lat.z(m, n + 1), p.a[m] / p.b[n]);
            }
        break;
    }
    return lat;
}

double lattice_cross_ratio_defect(const HolomorphicLattice& lat)
{
    double worst = 0;
    for (const Face& f : lat.z.dom.faces()) {
        const auto q = lat.z.dom.face_quad(f);
        const cplx cr = moebius_cross_ratio(lat.z[q[0]], lat.z[q[1]], lat.z[q[2]], lat.z[q[3]]);
        const double target = lat.a[f.m] / lat.b[f.n];
        worst = std::max(worst, std::abs(cr - target) / std::max(1.0, std::abs(target)));
    }
    return worst;
}

EdgeField<double> lattice_labels(const HolomorphicLattice& lat, double scale)
{
    EdgeField<double> out(lat.z.dom);
    for (const Edge& e : lat.z.dom.edges()) out[e] = scale * (e.dir == Dir::horizontal ? lat.a[e.m] : lat.b[e.n]);
    return out;
}

Vec3 inverse_stereographic(cplx z)
{
    const double r2 = std::norm(z);
    return Vec3(2 * z.real(), 2 * z.imag(), r2 - 1) / (r2 + 1);
}

VertexField<Vec3> sphere_net(const VertexField<cplx>& z)
{
    VertexField<Vec3> n(z.dom);
    for (std::size_t i = 0; i < z.size(); ++i) n.data[i] = inverse_stereographic(z.data[i]);
    return n;
}

VertexField<Vec3> christoffel_dual_r3(const VertexField<Vec3>& n, const EdgeField<double>& labels, double tol)
{
    const GridDomain& dom = n.dom;
    auto step = [&](const Vertex& a, const Vertex& b) -> Vec3 {
        const Vec3 dn = n[b] - n[a];
        const double dd = dn.squaredNorm();
        if (dd <= 1e-28) throw GeometryError("regularity", "Gauss map has a repeated vertex", to_string(dom.edge_between(a, b)));
        return labels(a, b) * dn / dd;
    };
    VertexField<Vec3> x(dom, Vec3::Zero());
    for (int m = 1; m <= dom.m_max; ++m) x(m, 0) = x(m - 1, 0) + step({m - 1, 0}, {m, 0});
    for (int m = 0; m <= dom.m_max; ++m)
        for (int n = 1; n <= dom.n_max; ++n) x(m, n) = x(m, n - 1) + step({m, n - 1}, {m, n});
    double scale = 1.0;
    for (const auto& v : x.data) scale = std::max(scale, v.norm());
    for (int n = 0; n <= dom.n_max; ++n)
        for (int m = 1; m <= dom.m_max; ++m) {
            const Vec3 alt = x(m - 1, n) + step({m - 1, n}, {m, n});
            if ((alt - x(m, n)).norm() > tol * scale)
                throw GeometryError("christoffel-closure", "dual net does not close", to_string(Vertex{m, n}));
        }
    return x;
}

namespace {

OrthoMap rotation(double th)
{
    OrthoMap R = OrthoMap::Identity();
    const double c = std::cos(th), s = std::sin(th);
    R(0, 0) = c;
    R(0, 1) = -s;
    R(1, 0) = s;
    R(1, 1) = c;
    return R;
}

Vec452 reflect(const Vec452& x, const Vec452& w)
{
    return x - 2 * inner(x, w) / inner(w, w) * w;
}

double face_condition(const WeingartenCoefficients& c, const SpaceFormFrame& frame, const OrthoMap& R,
                      const Vec452& f0, const Vec452& t0, const Vec452& f1, const Vec452& t1)
{
    LegendreNet face{GridDomain(1, 1), VertexField<Vec452>(GridDomain(1, 1)), VertexField<Vec452>(GridDomain(1, 1)), frame};
    face.f(0, 0) = f0;
    face.f(1, 0) = f1;
    face.f(1, 1) = R * f1;
    face.f(0, 1) = R * f0;
    face.t(0, 0) = t0;
    face.t(1, 0) = t1;
    face.t(1, 1) = R * t1;
    face.t(0, 1) = R * t0;
    const FaceCurvature k = face_curvature(face, {0, 0});
    return c.alpha * k.K + 2 * c.beta * k.H + c.gamma;
}

double bisect(const std::function<double(double)>& F, double lo, double hi, double flo)
{
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// root of F in [center - 0.5, center + 0.5] closest to center
double nearest_root(const std::function<double(double)>& F, double center, int step)
{
    constexpr int cells = 40;
    const double lo = center - 0.5, hi = center + 0.5;
    std::vector<double> xs(cells + 1), fs(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        xs[i] = lo + (hi - lo) * i / cells;
        fs[i] = F(xs[i]);
    }
    bool found = false;
    double best = 0;
    for (int i = 0; i < cells; ++i) {
        if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
        double r;
        if (fs[i] == 0)
            r = xs[i];
        else if (fs[i] * fs[i + 1] < 0)
            r = bisect(F, xs[i], xs[i + 1], fs[i]);
        else
            continue;
        if (!found || std::abs(r - center) < std::abs(best - center)) best = r;
        found = true;
    }
    if (!found)
        throw GeometryError("rotational-step", "no profile direction satisfies the face condition",
                            "step " + std::to_string(step));
    return best;
}

LegendreNet sweep(const std::vector<Vec452>& F, const std::vector<Vec452>& T, const SpaceFormFrame& frame, double theta,
                  int n_max)
{
    GridDomain dom(int(F.size()) - 1, n_max);
    LegendreNet net{dom, VertexField<Vec452>(dom), VertexField<Vec452>(dom), frame};
    for (int n = 0; n <= n_max; ++n) {
        const OrthoMap R = rotation(n * theta);
        for (int m = 0; m <= dom.m_max; ++m) {
            net.f(m, n) = R * F[m];
            net.t(m, n) = R * T[m];
        }
    }
    return net;
}

LegendreNet rotational_euclidean(const RotationalParams& prm)
{
    const SpaceFormFrame frame = euclidean_frame();
    const Vec452 o = euclidean_origin();
    const OrthoMap R = rotation(prm.theta);
    auto lift = [&](const Eigen::Vector2d& P, const Eigen::Vector2d& nu) -> std::pair<Vec452, Vec452> {
        const Vec3 x(P(0), 0, P(1)), n(nu(0), 0, nu(1));
        Vec452 f = o + 0.5 * x.squaredNorm() * frame.q, t = frame.p + x.dot(n) * frame.q;
        f.head<3>() += x;
        t.head<3>() += n;
        return {f, t};
    };
    Eigen::Vector2d P(prm.r0, 0.0), nu(1.0, 0.0);
    double phi = std::numbers::pi / 2;
    auto [f, t] = lift(P, nu);
    std::vector<Vec452> F{f}, T{t};
    for (int s = 0; s < prm.steps; ++s) {
        auto candidate = [&](double ph) {
            const Eigen::Vector2d d = prm.h * Eigen::Vector2d(std::cos(ph), std::sin(ph));
            const Eigen::Vector2d nu1 = nu - 2 * nu.dot(d) / d.squaredNorm() * d;
            return std::make_tuple(Eigen::Vector2d(P + d), nu1);
        };
        auto G = [&](double ph) {
            auto [P1, nu1] = candidate(ph);
            auto [f1, t1] = lift(P1, nu1);
            return face_condition(prm.target, frame, R, F.back(), T.back(), f1, t1);
        };
        phi = nearest_root(G, phi, s);
        auto [P1, nu1] = candidate(phi);
        P = P1;
        nu = nu1;
        auto [f1, t1] = lift(P, nu);
        F.push_back(f1);
        T.push_back(t1);
    }
    return sweep(F, T, frame, prm.theta, prm.n_max);
}

// hyperbolic space as the hyperboloid in span(e1, e2, e3, e6); p = e5, q = e4
LegendreNet rotational_hyperbolic(const RotationalParams& prm)
{
    const SpaceFormFrame frame{basis_vector(4), basis_vector(3)};
    const OrthoMap R = rotation(prm.theta);
    const Vec452 e1 = basis_vector(0), e3 = basis_vector(2), e6 = basis_vector(5);
    Vec452 x = std::sinh(prm.r0) * e1 + std::cosh(prm.r0) * e6;
    const Vec452 rad = std::cosh(prm.r0) * e1 + std::sinh(prm.r0) * e6;
    Vec452 V = std::cos(prm.tilt) * e3 + std::sin(prm.tilt) * rad;
    const Vec452 nu0 = -std::sin(prm.tilt) * e3 + std::cos(prm.tilt) * rad;
    std::vector<Vec452> F{x - frame.q}, T{frame.p + nu0};
    for (int s = 0; s < prm.steps; ++s) {
        const Vec452 nu = T.back() - frame.p;
        Vec452 u = V - inner(V, nu) * nu;
        u /= std::sqrt(inner(u, u));
        auto candidate = [&](double psi) {
            const Vec452 w = std::cos(psi) * u + std::sin(psi) * nu;
            const Vec452 x1 = x * std::cosh(prm.h) + w * std::sinh(prm.h);
            const Vec452 f1 = x1 - frame.q;
            return std::make_tuple(w, x1, f1, reflect(T.back(), f1 - F.back()));
        };
        auto G = [&](double psi) {
            auto [w, x1, f1, t1] = candidate(psi);
            return face_condition(prm.target, frame, R, F.back(), T.back(), f1, t1);
        };
        const double psi = nearest_root(G, 0.0, s);
        auto [w, x1, f1, t1] = candidate(psi);
        V = x * std::sinh(prm.h) + w * std::cosh(prm.h);
        x = x1;
        F.push_back(f1);
        T.push_back(t1);
    }
    return sweep(F, T, frame, prm.theta, prm.n_max);
}

double mean_of(const FaceField<double>& v)
{
    double s = 0;
    for (double x : v.data) s += x;
    return s / double(v.data.size());
}

} // namespace

LegendreNet rotational_net(const RotationalParams& prm)
{
    if (prm.steps < 1 || prm.n_max < 1) throw std::invalid_argument("rotational_net: grid needs at least one face");
    if (prm.h <= 0) throw std::invalid_argument("rotational_net: profile step must be positive");
    LegendreNet net = prm.space == AmbientSpace::euclidean ? rotational_euclidean(prm) : rotational_hyperbolic(prm);
    require_legendre(net, 1e-9);
    return net;
}

LegendreNet minimal_net(int m_max, int n_max)
{
    HolomorphicParams hp;
    const double s = 0.15;
    hp.scale = s;
    hp.offset = cplx(0.1, 0.2) - s * cplx(m_max / 2.0, n_max / 2.0);
    const HolomorphicLattice lat = gen_holomorphic(HolomorphicKind::identity, m_max, n_max, hp);
    const VertexField<Vec3> n = sphere_net(lat.z);
    // |dn| is about 2s, so labels of size 2s^2 keep the steps of x near s
    const VertexField<Vec3> x = christoffel_dual_r3(n, lattice_labels(lat, 2 * s * s), 1e-9);
    return lift_euclidean(x, n, Signature::riemannian, 1e-9);
}

std::string to_string(SeedKind k)
{
    switch (k) {
    case SeedKind::minimal: return "minimal";
    case SeedKind::cmc_r3_parallel: return "cmc_r3_parallel";
    case SeedKind::cmc_hyperbolic_unit: return "cmc_hyperbolic_unit";
    case SeedKind::constant_gauss: return "constant_gauss";
    case SeedKind::flat_front: return "flat_front";
    case SeedKind::chmc: return "chmc";
    case SeedKind::cmc_spherical: return "cmc_spherical";
    case SeedKind::cmc_hyperbolic: return "cmc_hyperbolic";
    }
    return "?";
}

std::vector<SeedKind> all_seed_kinds()
{
    return {SeedKind::minimal, SeedKind::cmc_r3_parallel, SeedKind::cmc_hyperbolic_unit, SeedKind::constant_gauss,
            SeedKind::flat_front, SeedKind::chmc, SeedKind::cmc_spherical, SeedKind::cmc_hyperbolic};
}

SeedKind parse_seed_kind(const std::string& s)
{
    for (SeedKind k : all_seed_kinds())
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown seed kind: " + s);
}

namespace {

LegendreNet cmc_r3(const PipelineParams& p)
{
    if (p.cmc_K <= 0) throw std::invalid_argument("pipeline: the cmc routes need a positive Gauss curvature seed");
    RotationalParams rp;
    rp.target = {1, 0, -p.cmc_K, 0};
    rp.steps = p.m;
    rp.n_max = p.n;
    const LegendreNet cgc = rotational_net(rp);
    const double th = 1 / std::sqrt(p.cmc_K);
    return parallel_transform(cgc, (Eigen::Matrix2d() << 1, th, 0, 1).finished());
}

Seed cmc_seed(LegendreNet net, std::string route)
{
    const double H = mean_of(face_curvatures(net).H);
    OmegaPair pr = cmc_pair(net, H);
    return {std::move(net), std::move(pr), std::move(route)};
}

} // namespace

Seed pipeline(SeedKind kind, const PipelineParams& p)
{
    switch (kind) {
    case SeedKind::minimal:
        return cmc_seed(minimal_net(p.m, p.n), "holomorphic(identity) -> sphere_net -> christoffel_dual -> lift");
    case SeedKind::chmc: {
        LegendreNet net = parallel_transform(minimal_net(p.m, p.n), (Eigen::Matrix2d() << 1, p.theta, 0, 1).finished());
        const FaceCurvatures fc = face_curvatures(net);
        FaceField<double> h(fc.H.dom);
        for (std::size_t i = 0; i < h.data.size(); ++i) h.data[i] = fc.H.data[i] / fc.K.data[i];
        OmegaPair pr = constant_harmonic_pair(net, mean_of(h));
        return {std::move(net), std::move(pr), "minimal -> parallel shear"};
    }
    case SeedKind::cmc_hyperbolic_unit: {
        if (p.lawson_t == 0) throw std::invalid_argument("pipeline: cmc_hyperbolic_unit needs lawson_t != 0");
        LegendreNet net = lawson_cmc(minimal_net(p.m, p.n), p.lawson_t).net;
        net = renormalize_frame(net, 1 / std::abs(p.lawson_t), 1.0);
        return cmc_seed(std::move(net), "minimal -> lawson_cmc -> renormalize_frame");
    }
    case SeedKind::constant_gauss: {
        RotationalParams rp;
        rp.target = {1, 0, -p.K, 0};
        rp.steps = p.m;
        rp.n_max = p.n;
        LegendreNet net = rotational_net(rp);
        OmegaPair pr = constant_gauss_pair(net, mean_of(face_curvatures(net).K));
        return {std::move(net), std::move(pr), "rotational(euclidean)"};
    }
    case SeedKind::flat_front: {
        RotationalParams rp;
        rp.space = AmbientSpace::hyperbolic;
        rp.target = {1, 0, -1, 0};
        rp.r0 = 0.6;
        rp.tilt = 0.3;
        rp.steps = p.m;
        rp.n_max = p.n;
        LegendreNet net = rotational_net(rp);
        OmegaPair pr = flat_front_pair(net);
        return {std::move(net), std::move(pr), "rotational(hyperbolic)"};
    }
    case SeedKind::cmc_r3_parallel:
        return cmc_seed(cmc_r3(p), "rotational(euclidean, constant Gauss) -> parallel shear");
    case SeedKind::cmc_spherical:
        return cmc_seed(lawson_cmc(cmc_r3(p), p.spherical_t).net, "cmc_r3_parallel -> lawson_cmc");
    case SeedKind::cmc_hyperbolic:
        return cmc_seed(lawson_cmc(cmc_r3(p), p.hyperbolic_t).net, "cmc_r3_parallel -> lawson_cmc");
    }
    throw std::invalid_argument("pipeline: unknown seed kind");
}

} // namespace lw
