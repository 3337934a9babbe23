#include "lw/connections.hpp"

#include <algorithm>
#include <cmath>

namespace lw {

namespace {

double pole_distance(double a, double t)
{
    return std::abs(1.0 - t * a);
}

COrthoMap walk(const OmegaPair& pr, const VertexField<double>& g, double t, Vertex from, const std::vector<Step>& path)
{
    COrthoMap T = COrthoMap::Identity();
    for (Step s : path) {
        Vertex to = from;
        switch (s) {
        case Step::R: ++to.m; break;
        case Step::L: --to.m; break;
        case Step::U: ++to.n; break;
        case Step::D: --to.n; break;
        }
        T = T * gamma_g(pr, g, t, from, to);
        from = to;
    }
    return T;
}

// G-reflection in w, carrying y to v whenever (y,y) = (v,v)
COrthoMap reflection(const CVec452& w)
{
    const cplx ww = inner(w, w);
    return COrthoMap::Identity() - (2.0 / ww) * w * lower(w).transpose();
}

} // namespace

COrthoMap gamma(const CVec452& u, const CVec452& v, double a, double t)
{
    const double d = pole_distance(a, t);
    if (d <= 1e-12) throw GeometryError("connection-pole", "t sits on the pole 1/a");
    const cplx uv = inner(u, v);
    if (std::abs(uv) <= 1e-14 * u.norm() * v.norm()) throw GeometryError("connection-degenerate", "eigenlines are orthogonal");
    const cplx c = t * a / uv;
    return COrthoMap::Identity() + c * ((1.0 / (1.0 - t * a)) * v * lower(u).transpose() - u * lower(v).transpose());
}

COrthoMap gamma_g(const OmegaPair& pr, const VertexField<double>& g, double t, const Vertex& i, const Vertex& j)
{
    const Edge e = pr.dom.edge_between(i, j);
    const Vertex lo = e.from(), hi = e.to();
    const CVec452 kappa = curvature_sphere_lift(pr, lo, hi);
    const CVec452 u = pr.sigma_minus[i] + g[j] * kappa;
    const CVec452 v = pr.sigma_minus[j] + g[i] * kappa;
    try {
        return gamma(u, v, pr.a[e], t);
    } catch (const GeometryError& err) {
        throw GeometryError(err.check(), "connection undefined", to_string(e));
    }
}

VertexField<double> constant_gauge(const GridDomain& dom, double g)
{
    return VertexField<double>(dom, g);
}

COrthoMap gauge_matrix(const OmegaPair& pr, double g, double t, const Vertex& v)
{
    return COrthoMap::Identity() - (t * g) * wedge_matrix(pr.sigma_plus[v], pr.sigma_minus[v]);
}

COrthoMap face_holonomy(const OmegaPair& pr, const VertexField<double>& g, double t, const Face& face)
{
    const auto q = pr.dom.face_quad(face);
    return gamma_g(pr, g, t, q[0], q[1]) * gamma_g(pr, g, t, q[1], q[2]) * gamma_g(pr, g, t, q[2], q[3]) *
           gamma_g(pr, g, t, q[3], q[0]);
}

Trivialization trivialize(const OmegaPair& pr, const VertexField<double>& g, double t, const Vertex& base,
                          const std::vector<Vec452>& fixed, double tol)
{
    const GridDomain& dom = pr.dom;
    if (!dom.contains(base)) throw std::out_of_range("trivialize: base vertex outside the grid");
    for (const Face& fc : dom.faces()) {
        const double dev = (face_holonomy(pr, g, t, fc) - COrthoMap::Identity()).cwiseAbs().maxCoeff();
        if (dev > tol) throw GeometryError("flatness", "face holonomy differs from the identity", to_string(fc));
    }
    Trivialization tr{VertexField<COrthoMap>(dom, COrthoMap::Identity()), base, t, 0, 0};
    // row-first sweep
    for (int m = base.m + 1; m <= dom.m_max; ++m)
        tr.T(m, base.n) = tr.T(m - 1, base.n) * gamma_g(pr, g, t, {m - 1, base.n}, {m, base.n});
    for (int m = base.m - 1; m >= 0; --m)
        tr.T(m, base.n) = tr.T(m + 1, base.n) * gamma_g(pr, g, t, {m + 1, base.n}, {m, base.n});
    for (int m = 0; m <= dom.m_max; ++m) {
        for (int n = base.n + 1; n <= dom.n_max; ++n)
            tr.T(m, n) = tr.T(m, n - 1) * gamma_g(pr, g, t, {m, n - 1}, {m, n});
        for (int n = base.n - 1; n >= 0; --n)
            tr.T(m, n) = tr.T(m, n + 1) * gamma_g(pr, g, t, {m, n + 1}, {m, n});
    }

    for (int idx = 0; idx < dom.vertex_count(); ++idx) {
        const Vertex v = dom.vertex(idx);
        const COrthoMap alt = walk(pr, g, t, base, lattice_paths(base, v)[1]);
        const double sc = std::max(1.0, tr.T[v].cwiseAbs().maxCoeff());
        tr.path_defect = std::max(tr.path_defect, (alt - tr.T[v]).cwiseAbs().maxCoeff() / sc);
    }
    if (tr.path_defect > tol) throw GeometryError("trivialization-path", "staircase paths disagree");

    if (!fixed.empty()) {
        COrthoMap C = COrthoMap::Identity();
        for (const Vec452& x : fixed) {
            const CVec452 xv = complexify(x);
            const CVec452 y = C * tr.T[base] * xv;
            const CVec452 w = y - xv;
            if (w.norm() <= 1e-14 * xv.norm()) continue;
            if (std::abs(inner(w, w)) <= 1e-12 * w.squaredNorm())
                throw GeometryError("frame-condition", "cannot fix the vector by a reflection");
            C = reflection(w) * C;
        }
        for (auto& T : tr.T.data) T = C * T;
        for (int idx = 0; idx < dom.vertex_count(); ++idx)
            for (const Vec452& x : fixed)
                if ((tr.T.data[idx] * complexify(x) - complexify(x)).norm() > tol * std::max(1.0, x.norm()))
                    throw GeometryError("frame-condition", "trivialization does not fix the vector",
                                        to_string(dom.vertex(idx)));
    }
    for (const auto& T : tr.T.data) tr.orthogonality = std::max(tr.orthogonality, orthogonality_defect(T));
    return tr;
}

OrthoMap real_map(const COrthoMap& M, double tol)
{
    const double im = M.imag().cwiseAbs().maxCoeff();
    if (im > tol * std::max(1.0, M.cwiseAbs().maxCoeff()))
        throw GeometryError("complex-map", "map has a non-negligible imaginary part");
    return M.real();
}

CalapsoResult calapso_transform(const OmegaPair& pr, const LegendreNet& net, double t, double g)
{
    const auto gauge = constant_gauge(pr.dom, g);
    Trivialization tr = trivialize(pr, gauge, t);
    VertexField<CVec452> sp(pr.dom), sm(pr.dom);
    VertexField<Vec452> x(pr.dom), y(pr.dom);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const COrthoMap& T = tr.T.data[i];
        sp.data[i] = T * pr.sigma_plus.data[i];
        sm.data[i] = T * pr.sigma_minus.data[i];
        const OrthoMap R = real_map(T);
        x.data[i] = R * net.f.data[i];
        y.data[i] = R * net.t.data[i];
    }
    OmegaPair out = make_omega_pair(std::move(sp), std::move(sm), {}, {}, pr.r.data[0], pr.conjugate);
    for (std::size_t i = 0; i < out.r.size(); ++i) {
        if (std::abs(out.r.data[i] - pr.r.data[i]) > 1e-8 * std::abs(pr.r.data[i]))
            throw GeometryError("calapso-ratio", "Christoffel ratio not preserved", to_string(pr.dom.vertex(int(i))));
        out.r.data[i] = pr.r.data[i];
    }
    for (const Edge& e : pr.dom.edges()) {
        const double expect = pr.a[e] / (1 - t * pr.a[e]);
        if (std::abs(out.a[e] - expect) > 1e-8 * std::abs(expect))
            throw GeometryError("calapso-labelling", "labelling does not follow a/(1 - t a)", to_string(e));
    }
    LegendreNet lines = project_lines(x, y, net.frame);
    return {std::move(out), std::move(lines), std::move(tr)};
}

} // namespace lw
