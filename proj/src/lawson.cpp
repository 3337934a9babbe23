#include "lw/lawson.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <functional>
#include <cmath>

namespace lw {

namespace {

double spread_mean(const FaceField<double>& v, const char* what, double tol = 1e-7)
{
    double mean = 0;
    for (double x : v.data) mean += x;
    mean /= double(v.data.size());
    for (std::size_t i = 0; i < v.data.size(); ++i)
        if (std::abs(v.data[i] - mean) > tol * std::max(1.0, std::abs(mean)))
            throw GeometryError("lawson-precondition", std::string("net does not have constant ") + what);
    return mean;
}

FaceField<double> ratio(const FaceField<double>& a, const FaceField<double>& b)
{
    FaceField<double> out(a.dom);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] / b.data[i];
    return out;
}

// the same vector transported from every vertex; returns its value at the base
CVec452 constant_transport(const Trivialization& tr, const std::function<CVec452(std::size_t)>& at, double tol,
                           double* spread = nullptr)
{
    const std::size_t b = tr.T.dom.index(tr.base);
    const CVec452 ref = tr.T.data[b] * at(b);
    double worst = 0;
    for (std::size_t i = 0; i < tr.T.size(); ++i)
        worst = std::max(worst, (tr.T.data[i] * at(i) - ref).norm() / std::max(1.0, ref.norm()));
    if (spread) *spread = worst;
    if (worst > tol) throw GeometryError("transport-constancy", "transported complex varies over the grid");
    return ref;
}

Vec452 real_vector(const CVec452& v, double tol = 1e-9)
{
    if (max_imag(v) > tol * std::max(1.0, v.norm()))
        throw GeometryError("complex-vector", "vector has a non-negligible imaginary part");
    return v.real();
}

OmegaPair transported_pair(const OmegaPair& pr, const Trivialization& tr, std::optional<CVec452> kp,
                           std::optional<CVec452> km)
{
    VertexField<CVec452> sp(pr.dom), sm(pr.dom);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        sp.data[i] = tr.T.data[i] * pr.sigma_plus.data[i];
        sm.data[i] = tr.T.data[i] * pr.sigma_minus.data[i];
    }
    return make_omega_pair(std::move(sp), std::move(sm), kp, km, pr.r.data[0], pr.conjugate);
}

} // namespace

std::string to_string(LawsonMode m)
{
    switch (m) {
    case LawsonMode::generic: return "generic";
    case LawsonMode::cmc: return "cmc";
    case LawsonMode::flat_front: return "flatfront";
    case LawsonMode::constant_gauss: return "cgc";
    case LawsonMode::constant_harmonic: return "chmc";
    }
    return "?";
}

LawsonMode parse_lawson_mode(const std::string& s)
{
    for (LawsonMode m : {LawsonMode::generic, LawsonMode::cmc, LawsonMode::flat_front, LawsonMode::constant_gauss,
                         LawsonMode::constant_harmonic})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown Lawson mode '" + s + "'");
}

TransformedComplexes transport_complexes(const OmegaPair& pr, double t, double tol)
{
    if (!pr.k_plus || !pr.k_minus) throw GeometryError("complexes-missing", "pair carries no linear sphere complexes");
    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.5), t);
    TransformedComplexes tc;
    tc.t = t;
    double s1 = 0, s2 = 0;
    tc.k_plus = constant_transport(tr, [&](std::size_t i) -> CVec452 { return *pr.k_plus + (t / 2) * pr.sigma_plus.data[i]; }, tol, &s1);
    tc.k_minus = constant_transport(tr, [&](std::size_t i) -> CVec452 { return *pr.k_minus + (t / 2) * pr.sigma_minus.data[i]; }, tol, &s2);
    tc.constancy = std::max(s1, s2);
    const cplx pp = inner(tc.k_plus, tc.k_plus), mm = inner(tc.k_minus, tc.k_minus), pm = inner(tc.k_plus, tc.k_minus);
    tc.gram_det = pp * mm - pm * pm;
    const double scale = std::max({std::abs(pp * mm), std::abs(pm * pm), 1e-300});
    tc.generic = std::abs(tc.gram_det) > 1e-10 * std::max(scale, 1.0);
    return tc;
}

WeingartenCoefficients complex_coefficients(const CVec452& kp, const CVec452& km, const SpaceFormFrame& fr)
{
    Eigen::Matrix<cplx, 6, 2> B;
    B << complexify(fr.q), complexify(fr.p);
    const Eigen::Matrix<cplx, 2, 1> cp = B.colPivHouseholderQr().solve(kp);
    const Eigen::Matrix<cplx, 2, 1> cm = B.colPivHouseholderQr().solve(km);
    const cplx a = cm(0) * cp(0), b = 0.5 * (cm(0) * cp(1) + cm(1) * cp(0)), g = cm(1) * cp(1);
    const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(g));
    // a common complex phase is irrelevant; rotate it away before reading the real triple
    const cplx lead = std::abs(a) > 1e-12 * n ? a : (std::abs(b) > 1e-12 * n ? b : g);
    const cplx ph = std::abs(lead) / lead;
    return normalized({(a * ph).real(), (b * ph).real(), (g * ph).real(), 0.0});
}

LawsonResult lawson_generic(const LegendreNet& net, const OmegaPair& pr, double t)
{
    TransformedComplexes tc = transport_complexes(pr, t);
    if (!tc.generic)
        throw GeometryError("lawson-genericity", "transported complexes span a contact element (they are the two "
                                                 "orientations of one sphere); no space form projection");
    Eigen::Matrix<double, 6, 2> basis;
    if (pr.conjugate)
        basis << tc.k_plus.real(), tc.k_plus.imag();
    else
        basis << real_vector(tc.k_plus), real_vector(tc.k_minus);
    const Eigen::Matrix2d gram = basis.transpose() * metric() * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
    std::array<Vec452, 2> b;
    std::array<double, 2> sgn;
    for (int k = 0; k < 2; ++k) {
        const double lam = es.eigenvalues()(k);
        if (std::abs(lam) <= 1e-12 * gram.norm()) throw GeometryError("lawson-genericity", "degenerate complex plane");
        b[k] = basis * es.eigenvectors().col(k) / std::sqrt(std::abs(lam));
        sgn[k] = lam > 0 ? 1.0 : -1.0;
    }
    const Vec452& p_in = net.frame.p;
    const double s_in = inner(p_in, p_in) > 0 ? 1.0 : -1.0;
    auto align = [&](int k) { return std::abs(inner(b[k], p_in)); };
    int ip;
    if (sgn[0] == s_in && sgn[1] != s_in)
        ip = 0;
    else if (sgn[1] == s_in && sgn[0] != s_in)
        ip = 1;
    else
        ip = align(0) >= align(1) ? 0 : 1;
    SpaceFormFrame fr;
    fr.p = b[ip];
    fr.q = b[1 - ip];
    if (fr.p.dot(p_in) < 0) fr.p = -fr.p;
    if (fr.q.dot(net.frame.q) < 0) fr.q = -fr.q;

    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.5), t);
    VertexField<Vec452> x(net.dom), y(net.dom);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const OrthoMap R = real_map(tr.T.data[i]);
        x.data[i] = R * net.f.data[i];
        y.data[i] = R * net.t.data[i];
    }
    LegendreNet out = project_lines(x, y, fr);
    OmegaPair pair_t = transported_pair(pr, tr, tc.k_plus, tc.k_minus);
    return {std::move(out), std::move(pair_t), tc};
}

LawsonResult lawson_cmc(const LegendreNet& net, double t)
{
    const FaceCurvatures fc = face_curvatures(net);
    const double H = spread_mean(fc.H, "mean curvature");
    const OmegaPair pr = cmc_pair(net, H);
    const Vec452& p = net.frame.p;
    const double pp = inner(p, p);
    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.0), t, {0, 0}, {p});
    const CVec452 qt = constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return complexify(net.frame.q) + t * (pr.sigma_plus.data[i] + complexify(p) / pp);
    }, 1e-8);
    LegendreNet out{net.dom, VertexField<Vec452>(net.dom), VertexField<Vec452>(net.dom), {p, real_vector(qt)}};
    for (std::size_t i = 0; i < out.f.size(); ++i) {
        const OrthoMap R = real_map(tr.T.data[i]);
        out.f.data[i] = R * net.f.data[i];
        out.t.data[i] = R * (net.t.data[i] - (t / pp) * net.f.data[i]);
    }
    require_legendre(out);
    TransformedComplexes tc = transport_complexes(pr, t);
    OmegaPair pair_t = cmc_pair(out, H + t / pp);
    return {std::move(out), std::move(pair_t), tc};
}

LawsonResult lawson_flat_front(const LegendreNet& net, double t)
{
    const FaceCurvatures fc = face_curvatures(net);
    const double K = spread_mean(fc.K, "Gauss curvature");
    if (std::abs(K - 1) > 1e-7) throw GeometryError("lawson-precondition", "net is not a flat front (A(t,t) != A(f,f))");
    if (std::abs(1 - 2 * t) <= 1e-12)
        throw GeometryError("lawson-degenerate-plane", "the plane of the complexes is isotropic at t = 1/2");
    const OmegaPair pr = flat_front_pair(net);
    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.5), t);
    const CVec452 pt = constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return complexify(net.frame.p - t * net.t.data[i]);
    }, 1e-8);
    const CVec452 qt = constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return complexify(net.frame.q + t * net.f.data[i]);
    }, 1e-8);
    LegendreNet out{net.dom, VertexField<Vec452>(net.dom), VertexField<Vec452>(net.dom),
                    {real_vector(pt), real_vector(qt)}};
    for (std::size_t i = 0; i < out.f.size(); ++i) {
        const OrthoMap R = real_map(tr.T.data[i]);
        out.f.data[i] = R * net.f.data[i];
        out.t.data[i] = R * net.t.data[i];
    }
    require_legendre(out);
    TransformedComplexes tc = transport_complexes(pr, t);
    OmegaPair pair_t = flat_front_pair(out);
    return {std::move(out), std::move(pair_t), tc};
}

LawsonResult lawson_constant_gauss(const LegendreNet& net, double t)
{
    const FaceCurvatures fc = face_curvatures(net);
    const double K = spread_mean(fc.K, "Gauss curvature");
    const double eps = net.frame.epsilon(), kap = net.frame.kappa();
    const OmegaPair pr = constant_gauss_pair(net, K);
    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.5), t);
    const Vec452 P = real_vector(constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return complexify(net.frame.p + t * net.t.data[i]);
    }, 1e-8));
    const Vec452 Q = real_vector(constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return complexify(net.frame.q - t * K * net.f.data[i]);
    }, 1e-8));
    const double lam2 = std::abs(eps + 2 * t);
    LegendreNet out{net.dom, VertexField<Vec452>(net.dom), VertexField<Vec452>(net.dom), {}};
    if (lam2 > 1e-12) {
        const double lam = std::sqrt(lam2);
        out.frame = {P / lam, Q};
        for (std::size_t i = 0; i < out.f.size(); ++i) {
            const OrthoMap R = real_map(tr.T.data[i]);
            out.f.data[i] = R * net.f.data[i];
            out.t.data[i] = lam * (R * net.t.data[i]);
        }
    } else {
        const double kt = kap - 2 * t * K;
        if (std::abs(kt) <= 1e-12)
            throw GeometryError("lawson-cgc-singular",
                                "t = -eps/2 with vanishing intrinsic Gauss curvature: the point sphere complex is null");
        const double mu = std::sqrt(std::abs(kt));
        out.frame = {Q / mu, P / mu};
        for (std::size_t i = 0; i < out.f.size(); ++i) {
            const OrthoMap R = real_map(tr.T.data[i]);
            out.f.data[i] = mu * (R * net.t.data[i]);
            out.t.data[i] = mu * (R * net.f.data[i]);
        }
    }
    require_legendre(out);
    TransformedComplexes tc = transport_complexes(pr, t);
    const double Kt = spread_mean(face_curvatures(out).K, "Gauss curvature after the transform");
    OmegaPair pair_t = constant_gauss_pair(out, Kt);
    return {std::move(out), std::move(pair_t), tc};
}

LawsonResult lawson_constant_harmonic(const LegendreNet& net, double t)
{
    const FaceCurvatures fc = face_curvatures(net);
    const double h = spread_mean(ratio(fc.H, fc.K), "harmonic mean curvature");
    const double kap = net.frame.kappa();
    if (std::abs(kap) > 1e-12) {
        const double s = 1 / std::sqrt(std::abs(kap));
        const LegendreNet dual = renormalize_frame(swap_roles(net), s, s);
        LawsonResult cmc = lawson_cmc(dual, t / std::abs(kap));
        const double kt = cmc.net.frame.kappa();
        if (std::abs(kt) <= 1e-12)
            throw GeometryError("lawson-chmc-normalization",
                                "transformed space form vector is null, the swapped frame cannot be normalized");
        const double s2 = 1 / std::sqrt(std::abs(kt));
        LegendreNet out = renormalize_frame(swap_roles(cmc.net), s2, s2);
        require_legendre(out);
        const FaceCurvatures fo = face_curvatures(out);
        const double ho = spread_mean(ratio(fo.H, fo.K), "harmonic mean curvature after the transform");
        OmegaPair pair_t = constant_harmonic_pair(out, ho);
        return {std::move(out), std::move(pair_t), cmc.complexes};
    }

    const OmegaPair pr = constant_harmonic_pair(net, h);
    const double eps = net.frame.epsilon();
    const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.0), t, {0, 0}, {net.frame.q});
    const Vec452 kp = real_vector(constant_transport(tr, [&](std::size_t i) -> CVec452 {
        return *pr.k_plus + t * pr.sigma_plus.data[i];
    }, 1e-8));
    const Vec452 pt = kp;
    const Vec452 qt = net.frame.q - eps * t * kp;
    LegendreNet out{net.dom, VertexField<Vec452>(net.dom), VertexField<Vec452>(net.dom), {}};
    const bool at_zero = std::abs(t) <= 1e-15;
    out.frame = at_zero ? SpaceFormFrame{pt, qt} : SpaceFormFrame{qt / t, pt};
    for (std::size_t i = 0; i < out.f.size(); ++i) {
        const OrthoMap R = real_map(tr.T.data[i]);
        const Vec452 sp = R * real_vector(pr.sigma_plus.data[i]);
        const Vec452 sm = R * real_vector(pr.sigma_minus.data[i]);
        const Vec452 ft = sp, tt = sm + eps * t * sp;
        out.f.data[i] = at_zero ? ft : tt;
        out.t.data[i] = at_zero ? tt : Vec452(t * ft);
    }
    require_legendre(out);
    TransformedComplexes tc = transport_complexes(pr, t);
    const FaceCurvatures fo = face_curvatures(out);
    const double ho = spread_mean(ratio(fo.H, fo.K), "harmonic mean curvature after the transform");
    OmegaPair pair_t = constant_harmonic_pair(out, ho);
    return {std::move(out), std::move(pair_t), tc};
}

LawsonResult lawson(const LegendreNet& net, LawsonMode mode, double t)
{
    switch (mode) {
    case LawsonMode::generic: return lawson_generic(net, split_weingarten(net, fit_weingarten(net)), t);
    case LawsonMode::cmc: return lawson_cmc(net, t);
    case LawsonMode::flat_front: return lawson_flat_front(net, t);
    case LawsonMode::constant_gauss: return lawson_constant_gauss(net, t);
    case LawsonMode::constant_harmonic: return lawson_constant_harmonic(net, t);
    }
    throw std::invalid_argument("lawson: unknown mode");
}

LawsonInvariantReport lawson_invariants(const OmegaPair& pr, const std::vector<double>& ts)
{
    LawsonInvariantReport rep;
    for (double t : ts) {
        const TransformedComplexes tc = transport_complexes(pr, t);
        rep.rows.push_back({t, inner(tc.k_plus, tc.k_plus), inner(tc.k_minus, tc.k_minus), inner(tc.k_plus, tc.k_minus)});
    }
    const cplx pp0 = inner(*pr.k_plus, *pr.k_plus), mm0 = inner(*pr.k_minus, *pr.k_minus),
               pm0 = inner(*pr.k_plus, *pr.k_minus);
    for (const auto& row : rep.rows) {
        rep.self_drift = std::max({rep.self_drift, std::abs(row.kpkp - pp0), std::abs(row.kmkm - mm0)});
        rep.slope_defect = std::max(rep.slope_defect, std::abs(row.kpkm - (pm0 - row.t)));
    }
    return rep;
}

} // namespace lw
