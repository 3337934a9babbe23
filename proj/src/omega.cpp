#include "lw/omega.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace lw {

namespace {

using CField = VertexField<CVec452>;

CField complexified(const VertexField<Vec452>& x)
{
    CField out(x.dom);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = x.data[i].cast<cplx>();
    return out;
}

CField combine(const VertexField<Vec452>& f, const VertexField<Vec452>& t, cplx a, cplx b)
{
    CField out(f.dom);
    for (std::size_t i = 0; i < f.size(); ++i) out.data[i] = a * f.data[i].cast<cplx>() + b * t.data[i].cast<cplx>();
    return out;
}

double rel(double num, double den)
{
    return num / std::max(den, 1e-300);
}

cplx power(cplx r, int s)
{
    return s > 0 ? r : 1.0 / r;
}

} // namespace

VertexField<cplx> recover_christoffel_ratio(const CField& sp, const CField& sm, cplx r0, double tol)
{
    if (r0 == 0.0) throw std::invalid_argument("recover_christoffel_ratio: zero seed");
    const GridDomain& dom = sp.dom;
    EdgeField<cplx> rho(dom);
    for (const Edge& e : dom.edges()) {
        const CVec452 dp = sp[e.to()] - sp[e.from()];
        const CVec452 dm = sm[e.to()] - sm[e.from()];
        const double np = dp.squaredNorm();
        if (np == 0 || dm.norm() == 0) throw GeometryError("christoffel-zero-edge", "vanishing edge vector", to_string(e));
        const cplx ratio = dp.dot(dm) / np; // dot conjugates its first argument
        if (rel((dm - ratio * dp).norm(), dm.norm()) > tol)
            throw GeometryError("christoffel-edge-parallel", "lifts are not edge-parallel", to_string(e));
        rho[e] = ratio;
    }
    VertexField<cplx> r(dom);
    r(0, 0) = r0;
    for (int m = 0; m < dom.m_max; ++m) r(m + 1, 0) = rho[Edge{Dir::horizontal, m, 0}] / r(m, 0);
    for (int m = 0; m <= dom.m_max; ++m)
        for (int n = 0; n < dom.n_max; ++n) r(m, n + 1) = rho[Edge{Dir::vertical, m, n}] / r(m, n);
    for (const Edge& e : dom.edges()) {
        const cplx prod = r[e.from()] * r[e.to()];
        if (std::abs(prod - rho[e]) > tol * std::abs(rho[e]))
            throw GeometryError("christoffel-consistency", "edge ratios do not factor through a vertex function",
                                to_string(e));
    }
    return r;
}

EdgeField<double> edge_labelling(const CField& sp, const CField& sm, double tol)
{
    const GridDomain& dom = sp.dom;
    EdgeField<double> a(dom);
    for (const Edge& e : dom.edges()) {
        const Vertex i = e.from(), j = e.to();
        const cplx aij = inner(sm[i], sp[j]);
        const cplx aji = inner(sp[i], sm[j]);
        const double scale = std::max(std::abs(aij), std::abs(aji));
        if (std::abs(aij - aji) > tol * scale)
            throw GeometryError("labelling-symmetry", "(s-_i, s+_j) differs from (s+_i, s-_j)", to_string(e));
        if (std::abs(aij.imag()) > tol * scale)
            throw GeometryError("labelling-real", "edge labelling is not real", to_string(e));
        a[e] = aij.real();
    }
    for (const Face& fc : dom.faces()) {
        const auto es = dom.face_edges(fc);
        for (int k = 0; k < 2; ++k) {
            const double u = a[es[k]], v = a[es[k + 2]];
            if (std::abs(u - v) > tol * std::max(std::abs(u), std::abs(v)))
                throw GeometryError("labelling-opposite-edges", "labels differ across the face", to_string(fc));
        }
    }
    return a;
}

OmegaPair make_omega_pair(CField sp, CField sm, std::optional<CVec452> kp, std::optional<CVec452> km, cplx r0,
                          bool conjugate)
{
    OmegaPair pr;
    pr.dom = sp.dom;
    pr.r = recover_christoffel_ratio(sp, sm, r0);
    pr.a = edge_labelling(sp, sm);
    pr.sigma_plus = std::move(sp);
    pr.sigma_minus = std::move(sm);
    pr.k_plus = kp;
    pr.k_minus = km;
    pr.conjugate = conjugate;
    for (const Face& fc : pr.dom.faces()) {
        const auto q = pr.dom.face_quad(fc);
        const cplx d = (pr.r[q[2]] - pr.r[q[0]]) * (pr.r[q[3]] - pr.r[q[1]]);
        if (std::abs(d) <= 1e-12 * std::max(1.0, std::norm(pr.r[q[0]])))
            throw GeometryError("umbilic-face", "Christoffel ratio degenerates on the face", to_string(fc));
    }
    return pr;
}

OmegaPair split_weingarten(const LegendreNet& net, const WeingartenCoefficients& coeffs, double tol)
{
    const double a = coeffs.alpha, b = coeffs.beta, g = coeffs.gamma;
    const double d2 = b * b - a * g;
    const double scale = coeffs.vec().squaredNorm();
    if (std::abs(d2) <= tol * scale) throw GeometryError("tubular", "coefficients are tubular, no splitting exists");
    const CVec452 p = complexify(net.frame.p), q = complexify(net.frame.q);

    if (std::abs(a) <= 1e-8 * std::sqrt(scale)) {
        const double H = -g / (2 * b);
        return make_omega_pair(combine(net.f, net.t, H, 1.0), complexified(net.f), CVec452(q - H * p), p);
    }
    const cplx delta = std::sqrt(cplx(d2));
    const CVec452 kp = (1.0 / (2 * a)) * ((a * q + b * p) + delta * p);
    const CVec452 km = (1.0 / (2 * a)) * ((a * q + b * p) - delta * p);
    const CField sp = combine(net.f, net.t, 1.0 + b / delta, -a / delta);
    const CField sm = combine(net.f, net.t, 1.0 - b / delta, a / delta);
    return make_omega_pair(sp, sm, kp, km, 1.0, d2 < 0);
}

OmegaPair cmc_pair(const LegendreNet& net, double H)
{
    const CVec452 p = complexify(net.frame.p), q = complexify(net.frame.q);
    return make_omega_pair(combine(net.f, net.t, H, 1.0), complexified(net.f), CVec452(q - H * p), p);
}

OmegaPair flat_front_pair(const LegendreNet& net)
{
    const CVec452 p = complexify(net.frame.p), q = complexify(net.frame.q);
    return make_omega_pair(combine(net.f, net.t, 1.0, 1.0), combine(net.f, net.t, 1.0, -1.0), CVec452(0.5 * (q - p)),
                           CVec452(0.5 * (q + p)));
}

OmegaPair constant_gauss_pair(const LegendreNet& net, double K)
{
    if (K == 0) throw GeometryError("constant-gauss", "vanishing Gauss curvature");
    const CVec452 p = complexify(net.frame.p), q = complexify(net.frame.q);
    const cplx sk = std::sqrt(cplx(K));
    return make_omega_pair(combine(net.f, net.t, sk, 1.0), combine(net.f, net.t, -sk, 1.0),
                           CVec452(0.5 * (p - q / sk)), CVec452(0.5 * (p + q / sk)), 1.0, K < 0);
}

OmegaPair constant_harmonic_pair(const LegendreNet& net, double h)
{
    const CVec452 p = complexify(net.frame.p), q = complexify(net.frame.q);
    return make_omega_pair(combine(net.f, net.t, 1.0, h), complexified(net.t), CVec452(p - h * q), q);
}

MoutardLifts moutard_lifts(const OmegaPair& pr, double tol)
{
    MoutardLifts ml{CField(pr.dom), CField(pr.dom)};
    for (std::size_t i = 0; i < pr.r.size(); ++i) {
        if (pr.r.data[i] == 0.0) throw GeometryError("moutard", "Christoffel ratio vanishes", to_string(pr.dom.vertex(int(i))));
        ml.mu_plus.data[i] = pr.r.data[i] * pr.sigma_plus.data[i];
        ml.mu_minus.data[i] = pr.sigma_minus.data[i] / pr.r.data[i];
    }
    for (const Face& fc : pr.dom.faces()) {
        const auto v = pr.dom.face_quad(fc);
        for (int s : {1, -1}) {
            const CField& mu = s > 0 ? ml.mu_plus : ml.mu_minus;
            const CVec452 lhs = (mu[v[2]] - mu[v[0]]) / (power(pr.r[v[2]], s) - power(pr.r[v[0]], s));
            const CVec452 rhs = (mu[v[3]] - mu[v[1]]) / (power(pr.r[v[3]], s) - power(pr.r[v[1]], s));
            if (rel((lhs - rhs).norm(), std::max(lhs.norm(), rhs.norm())) > tol)
                throw GeometryError("moutard", "Moutard equation violated", to_string(fc));
        }
    }
    return ml;
}

CVec452 curvature_sphere_lift(const OmegaPair& pr, const Vertex& i, const Vertex& j)
{
    return pr.r[i] * pr.r[j] * pr.sigma_plus[i] - pr.sigma_minus[i];
}

CrossRatio cross_ratio(const CVec452& si, const CVec452& sj, const CVec452& sk, const CVec452& sl, double tol)
{
    Eigen::Matrix<cplx, 6, 3> B;
    B << si, sj, sl;
    const Eigen::Matrix<cplx, 3, 1> c = B.colPivHouseholderQr().solve(sk);
    CrossRatio out;
    out.coplanarity = rel((sk - B * c).norm(), sk.norm());
    if (out.coplanarity > tol) throw GeometryError("cross-ratio", "the four spheres are not concircular");
    if (std::abs(c(0)) <= 1e-14 * c.norm()) throw GeometryError("cross-ratio", "degenerate conic coordinates");
    out.q = 1.0 + (c(1) / c(0)) * inner(sj, sl) / inner(si, sl);
    const cplx q_inv = 1.0 + (c(2) / c(0)) * inner(sj, sl) / inner(si, sj);
    out.consistency = std::abs(out.q * q_inv - 1.0);
    return out;
}

CrossRatio face_cross_ratio(const CField& sigma, const Face& face, double tol)
{
    const auto v = sigma.dom.face_quad(face);
    return cross_ratio(sigma[v[0]], sigma[v[1]], sigma[v[2]], sigma[v[3]], tol);
}

cplx squared_cross_ratio(const CVec452& si, const CVec452& sj, const CVec452& sk, const CVec452& sl)
{
    return inner(si, sj) * inner(sk, sl) / (inner(sj, sk) * inner(sl, si));
}

OmegaPair respan(const OmegaPair& pr, cplx cp, cplx cm)
{
    if (std::abs(cp - cm) <= 1e-14 * std::max(std::abs(cp), std::abs(cm)))
        throw GeometryError("respan", "constants must differ");
    CField sp(pr.dom), sm(pr.dom);
    VertexField<cplx> rt(pr.dom);
    for (std::size_t i = 0; i < pr.r.size(); ++i) {
        const cplx r = pr.r.data[i];
        const double pole_tol = 1e-12 * std::max(1.0, std::abs(r));
        if (std::abs(r + cm) <= pole_tol || std::abs(r + cp) <= pole_tol)
            throw GeometryError("respan-pole", "Christoffel ratio hits a pole of the constants",
                                to_string(pr.dom.vertex(int(i))));
        sp.data[i] = (pr.sigma_minus.data[i] + cp * r * pr.sigma_plus.data[i]) / (r + cm);
        sm.data[i] = (pr.sigma_minus.data[i] + cm * r * pr.sigma_plus.data[i]) / (r + cp);
        rt.data[i] = (r + cm) / (r + cp);
    }
    bool conj = true;
    for (std::size_t i = 0; i < sp.size() && conj; ++i)
        conj = (sm.data[i] - sp.data[i].conjugate()).norm() <= 1e-12 * sp.data[i].norm();
    return make_omega_pair(std::move(sp), std::move(sm), {}, {}, rt.data[0], conj);
}

std::pair<cplx, cplx> respan_constants(const OmegaPair& pr, const CVec452& yp, const CVec452& ym)
{
    const Vertex base{0, 0};
    Eigen::Matrix<cplx, 6, 2> B;
    B << pr.sigma_plus[base], pr.sigma_minus[base];
    auto solve = [&](const CVec452& y) {
        const Eigen::Matrix<cplx, 2, 1> c = B.colPivHouseholderQr().solve(y);
        if (rel((y - B * c).norm(), y.norm()) > 1e-9)
            throw GeometryError("respan", "prescribed sphere is not in the contact element at the base vertex");
        if (std::abs(c(1)) <= 1e-12 * std::abs(c(0)))
            throw GeometryError("respan-pole", "prescribed sphere coincides with s+ at the base vertex");
        return c(0) / (c(1) * pr.r[base]);
    };
    return {solve(yp), solve(ym)};
}

OmegaPair complexify(const OmegaPair& pr)
{
    if (pr.conjugate) throw GeometryError("complexify", "pair is already complex conjugate");
    const cplx I(0, 1);
    CField sp(pr.dom), sm(pr.dom);
    VertexField<cplx> rt(pr.dom);
    for (std::size_t i = 0; i < pr.r.size(); ++i) {
        const cplx r = pr.r.data[i];
        sp.data[i] = (pr.sigma_minus.data[i] + I * r * pr.sigma_plus.data[i]) / (r - I);
        sm.data[i] = sp.data[i].conjugate();
        rt.data[i] = (r - I) / (r + I);
    }
    return make_omega_pair(std::move(sp), std::move(sm), {}, {}, rt.data[0], true);
}

OmegaPair realify(const OmegaPair& pr)
{
    if (!pr.conjugate) throw GeometryError("realify", "pair is not complex conjugate");
    for (const Edge& e : pr.dom.edges())
        if (std::abs(std::abs(pr.r[e.from()] * pr.r[e.to()]) - 1.0) > 1e-9)
            throw GeometryError("realify", "|r_i r_j| differs from 1", to_string(e));
    const cplx I(0, 1);
    // rescale r to unit modulus at the base vertex
    const double s = std::abs(pr.r.data[0]);
    // r -> e^{i phi} r with sigma+ -> e^{-i phi} sigma+ keeps the pair conjugate; choose the
    // phase that keeps r away from the poles +-i of the real lifts
    double phi = 0, best = -1;
    for (int k = 0; k < 720; ++k) {
        const cplx rot = std::polar(1.0, k * std::numbers::pi / 720);
        double worst = INFINITY;
        for (cplx r : pr.r.data) worst = std::min({worst, std::abs(rot * r / s - I), std::abs(rot * r / s + I)});
        if (worst > best) best = worst, phi = k * std::numbers::pi / 720;
    }
    const cplx rot = std::polar(1.0, phi);
    CField sp(pr.dom), sm(pr.dom);
    for (std::size_t i = 0; i < pr.r.size(); ++i) {
        const cplx r = rot * pr.r.data[i] / s;
        const CVec452 sg = pr.sigma_plus.data[i] / rot;
        const Vec452 re = sg.real();
        const Vec452 im_r = (r * sg).imag();
        sp.data[i] = ((2 * re - 2 * im_r) / std::norm(r - I)).cast<cplx>();
        sm.data[i] = ((2 * re + 2 * im_r) / std::norm(r + I)).cast<cplx>();
    }
    return make_omega_pair(std::move(sp), std::move(sm));
}

double OmegaResiduals::max() const
{
    return std::max({null_and_contact, normalization, christoffel, koenigs, moutard, labelling_opposite,
                     labelling_symmetry, labelling_imag, cross_ratio, square_identity, moutard_propagation,
                     minus_inner, conjugacy});
}

OmegaResiduals omega_residuals(const OmegaPair& pr)
{
    OmegaResiduals res;
    const GridDomain& dom = pr.dom;
    const auto& sp = pr.sigma_plus;
    const auto& sm = pr.sigma_minus;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const CVec452& a = sp.data[i];
        const CVec452& b = sm.data[i];
        const double s = std::max(a.squaredNorm(), b.squaredNorm());
        res.null_and_contact = std::max(
            {res.null_and_contact, rel(std::abs(inner(a, a)), s), rel(std::abs(inner(b, b)), s), rel(std::abs(inner(a, b)), s)});
        if (pr.k_plus && pr.k_minus) {
            const CVec452 &kp = *pr.k_plus, &km = *pr.k_minus;
            res.normalization = std::max({res.normalization, std::abs(inner(a, kp)) / std::max(1.0, a.norm() * kp.norm()),
                                          std::abs(inner(b, km)) / std::max(1.0, b.norm() * km.norm()),
                                          std::abs(inner(a, km) + 1.0), std::abs(inner(b, kp) + 1.0)});
        }
        if (pr.conjugate) res.conjugacy = std::max(res.conjugacy, rel((b - a.conjugate()).norm(), a.norm()));
    }
    for (const Edge& e : dom.edges()) {
        const Vertex i = e.from(), j = e.to();
        const CVec452 dm = sm[j] - sm[i];
        const CVec452 dp = sp[j] - sp[i];
        res.christoffel = std::max(res.christoffel, rel((dm - pr.r[i] * pr.r[j] * dp).norm(), dm.norm()));
        const cplx aij = inner(sm[i], sp[j]), aji = inner(sp[i], sm[j]);
        const double sc = std::max(std::abs(aij), std::abs(aji));
        res.labelling_symmetry = std::max(res.labelling_symmetry, rel(std::abs(aij - aji), sc));
        res.labelling_imag = std::max(res.labelling_imag, rel(std::abs(aij.imag()), sc));
        const cplx mm = inner(sm[i], sm[j]);
        res.minus_inner = std::max(res.minus_inner, rel(std::abs(mm - pr.r[i] * pr.r[j] * pr.a[e]), std::abs(mm)));
    }
    for (const Face& fc : dom.faces()) {
        const auto v = dom.face_quad(fc);
        const auto es = dom.face_edges(fc);
        for (int k = 0; k < 2; ++k)
            res.labelling_opposite = std::max(res.labelling_opposite,
                                              rel(std::abs(pr.a[es[k]] - pr.a[es[k + 2]]),
                                                  std::max(std::abs(pr.a[es[k]]), std::abs(pr.a[es[k + 2]]))));
        const CVec452 dik_p = sp[v[2]] - sp[v[0]], djl_m = sm[v[3]] - sm[v[1]];
        const Mat6<cplx> Akoenigs = mixed_area(sp, sm, fc);
        res.koenigs = std::max(res.koenigs, rel(Akoenigs.norm(), dik_p.norm() * djl_m.norm()));

        for (int s : {1, -1}) {
            auto mu = [&](int idx) -> CVec452 {
                const cplx rr = power(pr.r[v[idx]], s);
                return rr * (s > 0 ? sp[v[idx]] : sm[v[idx]]);
            };
            auto rp = [&](int idx) { return power(pr.r[v[idx]], s); };
            const CVec452 lhs = (mu(2) - mu(0)) / (rp(2) - rp(0));
            const CVec452 rhs = (mu(3) - mu(1)) / (rp(3) - rp(1));
            res.moutard = std::max(res.moutard, rel((lhs - rhs).norm(), std::max(lhs.norm(), rhs.norm())));
            const double aij = pr.a[es[0]], ajk = pr.a[es[1]];
            const CVec452 pred = mu(0) - ((aij - ajk) / inner(mu(1), mu(3))) * (mu(3) - mu(1));
            res.moutard_propagation = std::max(res.moutard_propagation, rel((pred - mu(2)).norm(), mu(2).norm()));

            const CField& sg = s > 0 ? sp : sm;
            const CrossRatio cr = face_cross_ratio(sg, fc, 1e-6);
            const cplx expect = aij / ajk;
            res.cross_ratio = std::max({res.cross_ratio, rel(std::abs(cr.q - expect), std::abs(expect)), cr.consistency});
            const cplx q2 = squared_cross_ratio(sg[v[0]], sg[v[1]], sg[v[2]], sg[v[3]]);
            res.square_identity = std::max(res.square_identity, rel(std::abs(q2 - cr.q * cr.q), std::abs(q2)));
        }
    }
    return res;
}

double pair_line_distance(const OmegaPair& pr, const LegendreNet& net)
{
    double worst = 0;
    for (std::size_t i = 0; i < pr.sigma_plus.size(); ++i) {
        const CVec452 f = complexify(net.f.data[i]), t = complexify(net.t.data[i]);
        worst = std::max({worst, span_distance(pr.sigma_plus.data[i], f, t), span_distance(pr.sigma_minus.data[i], f, t)});
    }
    return worst;
}

} // namespace lw
