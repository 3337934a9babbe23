#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <Eigen/SVD>

using namespace lw;
using lwtest::seed;

namespace {

VertexField<CVec452> cfield(const VertexField<Vec452>& x)
{
    VertexField<CVec452> out(x.dom);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = x.data[i].cast<cplx>();
    return out;
}

double lines_gap(const OmegaPair& a, const OmegaPair& b)
{
    double worst = 0;
    for (std::size_t i = 0; i < a.sigma_plus.size(); ++i)
        for (const CVec452* x : {&b.sigma_plus.data[i], &b.sigma_minus.data[i]})
            worst = std::max(worst, span_distance(*x, a.sigma_plus.data[i], a.sigma_minus.data[i]));
    return worst;
}

double max_face_cr_gap(const OmegaPair& a, const OmegaPair& b)
{
    double worst = 0;
    for (const Face& f : a.dom.faces())
        for (int s = 0; s < 2; ++s) {
            const auto& sa = s ? a.sigma_minus : a.sigma_plus;
            const auto& sb = s ? b.sigma_minus : b.sigma_plus;
            worst = std::max(worst, std::abs(face_cross_ratio(sa, f).q - face_cross_ratio(sb, f).q));
        }
    return worst;
}

} // namespace

TEST_CASE("minimal nets split into the lifts themselves")
{
    const LegendreNet& net = seed(SeedKind::minimal).net;
    const OmegaPair pr = split_weingarten(net, {0, 1, 0});
    double gap = 0;
    for (std::size_t i = 0; i < net.f.size(); ++i)
        gap = std::max({gap, (pr.sigma_minus.data[i] - net.f.data[i].cast<cplx>()).norm(),
                        (pr.sigma_plus.data[i] - net.t.data[i].cast<cplx>()).norm()});
    CHECK(gap == 0.0);
    CHECK((*pr.k_minus - net.frame.p.cast<cplx>()).norm() == 0.0);
    CHECK((*pr.k_plus - net.frame.q.cast<cplx>()).norm() == 0.0);
    CHECK(omega_residuals(pr).max() < 1e-9);
}

TEST_CASE("constant Gauss splitting")
{
    const LegendreNet& net = seed(SeedKind::cmc_r3_parallel).net;
    const double K = face_curvature(net, Face{3, 3}).K;
    REQUIRE(K > 0);
    // a constant-Gauss parallel member of the CMC seed
    Eigen::Matrix2d B;
    const auto members = classify_parallel_family(fit_weingarten(net), net.frame);
    const auto cg = std::find_if(members.begin(), members.end(), [](auto& m) { return m.type == "constant-Gauss"; });
    REQUIRE(cg != members.end());
    const LegendreNet par = parallel_transform(net, parallel_basis_change(net.frame, cg->theta));
    const double Kp = face_curvature(par, Face{2, 5}).K;
    REQUIRE(Kp > 0);
    const OmegaPair pr = split_weingarten(par, {1, 0, -Kp});
    const double sk = std::sqrt(Kp);
    // the branch choice may exchange the two lifts and rescale each
    double gap = 0;
    for (std::size_t i = 0; i < par.f.size(); ++i) {
        const CVec452 a = (par.t.data[i] + sk * par.f.data[i]).cast<cplx>();
        const CVec452 b = (par.t.data[i] - sk * par.f.data[i]).cast<cplx>();
        gap = std::max(gap, std::min(projective_distance(pr.sigma_plus.data[i], a) +
                                         projective_distance(pr.sigma_minus.data[i], b),
                                     projective_distance(pr.sigma_plus.data[i], b) +
                                         projective_distance(pr.sigma_minus.data[i], a)));
    }
    CHECK(gap < 1e-9);
    const CVec452 kp = (0.5 * (par.frame.p - par.frame.q / sk)).cast<cplx>();
    const CVec452 km = (0.5 * (par.frame.p + par.frame.q / sk)).cast<cplx>();
    CHECK(std::min(projective_distance(*pr.k_plus, kp), projective_distance(*pr.k_plus, km)) < 1e-9);
    CHECK(omega_residuals(pr).max() < 1e-9);
    (void)B;
}

TEST_CASE("every seed pair satisfies the pair identities")
{
    for (SeedKind k : all_seed_kinds()) {
        const Seed& s = seed(k);
        const OmegaResiduals res = omega_residuals(s.pair);
        CAPTURE(to_string(k));
        CHECK(res.null_and_contact < 1e-9);
        CHECK(res.normalization < 1e-10);
        CHECK(res.christoffel < 1e-9);
        CHECK(res.koenigs < 1e-9);
        CHECK(res.moutard < 1e-9);
        CHECK(res.labelling_opposite < 1e-9);
        CHECK(res.labelling_symmetry < 1e-10);
        CHECK(res.labelling_imag < 1e-10);
        CHECK(res.cross_ratio < 1e-9);
        CHECK(res.square_identity < 1e-9);
        CHECK(res.moutard_propagation < 1e-9);
        CHECK(res.minus_inner < 1e-10);
        CHECK(res.conjugacy == 0.0);
        CHECK(pair_line_distance(s.pair, s.net) < 1e-10);
    }
}

TEST_CASE("fitted splittings of every seed")
{
    for (SeedKind k : all_seed_kinds()) {
        const LegendreNet& net = seed(k).net;
        const WeingartenCoefficients c = fit_weingarten(net);
        if (std::abs(c.delta_sq()) < 1e-6) continue;
        const OmegaPair pr = split_weingarten(net, c);
        CAPTURE(to_string(k));
        CHECK(omega_residuals(pr).max() < 1e-8);
        CHECK(pr.conjugate == (c.delta_sq() < 0));
        for (std::size_t i = 0; i < pr.sigma_plus.size(); i += 7) {
            CHECK(std::abs(inner(pr.sigma_plus.data[i], *pr.k_minus) + 1.0) < 1e-10);
            CHECK(std::abs(inner(pr.sigma_minus.data[i], *pr.k_plus) + 1.0) < 1e-10);
        }
    }
}

TEST_CASE("tubular coefficients cannot be split")
{
    CHECK_THROWS_AS(split_weingarten(seed(SeedKind::minimal).net, {1, 1, 1}), GeometryError);
}

TEST_CASE("Christoffel ratio recovery")
{
    const Seed& s = seed(SeedKind::minimal, 4);
    const auto& sp = s.pair.sigma_plus;
    const VertexField<cplx> one = recover_christoffel_ratio(sp, sp);
    for (cplx r : one.data) CHECK(std::abs(r - 1.0) < 1e-12);

    VertexField<CVec452> four(sp.dom);
    for (std::size_t i = 0; i < sp.size(); ++i) four.data[i] = 4.0 * sp.data[i];
    const VertexField<cplx> two = recover_christoffel_ratio(sp, four, 2.0);
    for (cplx r : two.data) CHECK(std::abs(r - 2.0) < 1e-12);

    // a field that is not edge-parallel to the other
    VertexField<CVec452> bad = four;
    bad(2, 2)(0) += 0.3;
    CHECK_THROWS_AS(recover_christoffel_ratio(sp, bad), GeometryError);
}

TEST_CASE("conjugate pairs have unit modulus ratios")
{
    for (SeedKind k : {SeedKind::constant_gauss}) {
        const OmegaPair& pr = seed(k).pair;
        REQUIRE(pr.conjugate);
        for (cplx r : pr.r.data) CHECK(std::abs(std::abs(r) - 1) < 1e-10);
    }
    const OmegaPair c = complexify(seed(SeedKind::minimal).pair);
    for (const Edge& e : c.dom.edges()) CHECK(std::abs(std::abs(c.r[e.from()] * c.r[e.to()]) - 1) < 1e-10);
}

TEST_CASE("Moutard lifts")
{
    const OmegaPair& pr = seed(SeedKind::minimal).pair;
    const MoutardLifts ml = moutard_lifts(pr);
    for (const Edge& e : pr.dom.edges()) {
        const Vertex i = e.from(), j = e.to();
        const double a = pr.a[e];
        CHECK(std::abs(inner(ml.mu_plus[i], ml.mu_plus[j]) - a) < 1e-10 * (1 + std::abs(a)));
        CHECK(std::abs(inner(ml.mu_minus[i], ml.mu_minus[j]) - a) < 1e-10 * (1 + std::abs(a)));
    }

    OmegaPair broken = pr;
    broken.sigma_plus(4, 4)(1) += 1e-3;
    CHECK_THROWS_AS(moutard_lifts(broken), GeometryError);
}

TEST_CASE("edge labelling")
{
    const OmegaPair& pr = seed(SeedKind::minimal).pair;
    const EdgeField<double> a = edge_labelling(pr.sigma_plus, pr.sigma_minus);
    for (const Edge& e : pr.dom.edges()) {
        const cplx other = inner(pr.sigma_plus[e.from()], pr.sigma_minus[e.to()]);
        CHECK(std::abs(other - a[e]) < 1e-10 * (1 + std::abs(a[e])));
    }
    for (const Face& f : pr.dom.faces()) {
        const auto e = pr.dom.face_edges(f);
        CHECK(std::abs(a[e[0]] - a[e[2]]) < 1e-9);
        CHECK(std::abs(a[e[1]] - a[e[3]]) < 1e-9);
    }
    // the identity lattice: horizontal and vertical labels opposite and constant
    const double c = a[Edge{Dir::horizontal, 0, 0}];
    CHECK(c != 0.0);
    for (const Edge& e : pr.dom.edges())
        CHECK(a[e] == doctest::Approx(e.dir == Dir::horizontal ? c : -c).epsilon(1e-9));
}

TEST_CASE("cross ratios")
{
    const OmegaPair& pr = seed(SeedKind::minimal).pair;
    for (const Face& f : pr.dom.faces()) {
        const CrossRatio cr = face_cross_ratio(pr.sigma_plus, f);
        CHECK(cr.consistency < 1e-9);
        CHECK(std::abs(cr.q + 1.0) < 1e-9);
    }

    // lift independence and the squared identity under random rescalings
    const OmegaPair& cg = seed(SeedKind::cmc_spherical).pair;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.3, 3);
    for (const Face& f : cg.dom.faces()) {
        const auto v = cg.dom.face_quad(f);
        const auto& s = cg.sigma_minus;
        const CrossRatio a = cross_ratio(s[v[0]], s[v[1]], s[v[2]], s[v[3]]);
        const CrossRatio b = cross_ratio(u(rng) * s[v[0]], -u(rng) * s[v[1]], u(rng) * s[v[2]], u(rng) * s[v[3]]);
        CHECK(std::abs(a.q - b.q) < 1e-9 * std::abs(a.q));
        const cplx sq = squared_cross_ratio(s[v[0]], s[v[1]], s[v[2]], s[v[3]]);
        CHECK(std::abs(sq - a.q * a.q) < 1e-9 * std::abs(sq));
        const auto e = cg.dom.face_edges(f);
        CHECK(std::abs(a.q - cg.a[e[0]] / cg.a[e[1]]) < 1e-9 * std::abs(a.q));
    }

    // four spheres that are not concircular
    std::mt19937_64 r2(3);
    Vec452 x[4];
    for (auto& y : x) {
        y = lwtest::random_vec(r2);
        y(5) = std::sqrt(y.head<5>().dot(metric_diagonal().head<5>().cwiseProduct(y.head<5>())) + 4);
    }
    CHECK_THROWS_AS(cross_ratio(complexify(x[0]), complexify(x[1]), complexify(x[2]), complexify(x[3])), GeometryError);
}

TEST_CASE("lifts of the same sphere nets have planar faces")
{
    const OmegaPair& pr = seed(SeedKind::cmc_hyperbolic).pair;
    for (const Face& f : pr.dom.faces()) {
        const auto v = pr.dom.face_quad(f);
        Eigen::Matrix<cplx, 6, 4> M;
        for (int k = 0; k < 4; ++k) M.col(k) = pr.sigma_plus[v[k]] / pr.sigma_plus[v[k]].norm();
        Eigen::JacobiSVD<Eigen::Matrix<cplx, 6, 4>> svd(M);
        CHECK(svd.singularValues()(3) < 1e-9);
    }
}

TEST_CASE("edge-parallel wedge identity")
{
    const OmegaPair& pr = seed(SeedKind::chmc).pair;
    for (const Face& f : pr.dom.faces()) {
        const auto v = pr.dom.face_quad(f);
        const CVec452 dp_ik = pr.sigma_plus[v[2]] - pr.sigma_plus[v[0]], dp_jl = pr.sigma_plus[v[3]] - pr.sigma_plus[v[1]];
        const CVec452 dm_ik = pr.sigma_minus[v[2]] - pr.sigma_minus[v[0]], dm_jl = pr.sigma_minus[v[3]] - pr.sigma_minus[v[1]];
        const Mat6<cplx> lhs = bivector(dp_ik, dm_jl), rhs = bivector(dm_ik, dp_jl);
        CHECK((lhs - rhs).norm() < 1e-10 * (1 + lhs.norm()));
    }
}

TEST_CASE("respanning through prescribed spheres")
{
    const OmegaPair& pr = seed(SeedKind::cmc_r3_parallel).pair;
    const CVec452 yp = 2.0 * pr.sigma_minus(0, 0) + 0.8 * pr.sigma_plus(0, 0);
    const CVec452 ym = pr.sigma_minus(0, 0) - 1.3 * pr.sigma_plus(0, 0);
    const auto [cp, cm] = respan_constants(pr, yp, ym);
    const OmegaPair rs = respan(pr, cp, cm);
    CHECK(projective_distance(rs.sigma_plus(0, 0), yp) < 1e-10);
    CHECK(projective_distance(rs.sigma_minus(0, 0), ym) < 1e-10);
    CHECK(omega_residuals(rs).max() < 1e-9);
    CHECK(lines_gap(pr, rs) < 1e-10);
    for (std::size_t i = 0; i < pr.r.size(); ++i)
        CHECK(std::abs(rs.r.data[i] - (pr.r.data[i] + cm) / (pr.r.data[i] + cp)) < 1e-12 * std::abs(rs.r.data[i]));
    // respanned nets are Ribaucour transforms sharing the face cross ratios
    for (const Face& f : pr.dom.faces())
        CHECK(std::abs(face_cross_ratio(rs.sigma_plus, f).q - face_cross_ratio(pr.sigma_plus, f).q) < 1e-9);

    CHECK_THROWS_AS(respan(pr, 0.4, 0.4), GeometryError);
    CHECK_THROWS_AS(respan(pr, 0.4, -pr.r(2, 3)), GeometryError);
}

TEST_CASE("complexify and realify")
{
    const OmegaPair& pr = seed(SeedKind::minimal).pair;
    const OmegaPair c = complexify(pr);
    CHECK(c.conjugate);
    for (std::size_t i = 0; i < c.sigma_plus.size(); ++i)
        CHECK((c.sigma_minus.data[i] - c.sigma_plus.data[i].conjugate()).norm() == 0.0);
    CHECK(lines_gap(pr, c) < 1e-10);
    CHECK(omega_residuals(c).max() < 1e-9);
    const OmegaPair back = realify(c);
    CHECK_FALSE(back.conjugate);
    double imag = 0;
    for (const auto& s : back.sigma_plus.data) imag = std::max(imag, max_imag(s));
    CHECK(imag < 1e-12);
    CHECK(lines_gap(pr, back) < 1e-10);
    CHECK(omega_residuals(back).max() < 1e-9);
    // labels agree up to one global constant
    const double ratio = back.a.data[0] / pr.a.data[0];
    for (std::size_t i = 0; i < pr.a.data.size(); ++i) CHECK(back.a.data[i] == doctest::Approx(ratio * pr.a.data[i]));

    CHECK_THROWS(realify(pr));

    // realify on a pair that is conjugate from the start
    const OmegaPair& cg = seed(SeedKind::constant_gauss).pair;
    for (std::size_t i = 0; i < cg.sigma_plus.size(); i += 5)
        CHECK(std::abs(inner(cg.sigma_plus.data[i], *cg.k_minus) - std::conj(inner(cg.sigma_minus.data[i], *cg.k_plus))) <
              1e-12);
    const OmegaPair real = realify(cg);
    CHECK(omega_residuals(real).max() < 1e-9);
    CHECK(lines_gap(cg, real) < 1e-10);
}

TEST_CASE("respan with imaginary constants gives a conjugate pair")
{
    const OmegaPair& pr = seed(SeedKind::minimal).pair;
    const OmegaPair c = respan(pr, cplx(0, 1), cplx(0, -1));
    for (std::size_t i = 0; i < c.sigma_plus.size(); ++i)
        CHECK((c.sigma_minus.data[i] - c.sigma_plus.data[i].conjugate()).norm() < 1e-12 * c.sigma_plus.data[i].norm());
    CHECK(max_face_cr_gap(pr, respan(pr, 0.7, -1.9)) < 1e-9);
}

TEST_CASE("explicit pair assembly checks its input")
{
    const LegendreNet& net = seed(SeedKind::minimal, 4).net;
    CHECK_NOTHROW(make_omega_pair(cfield(net.t), cfield(net.f)));
    CHECK_THROWS_AS(make_omega_pair(cfield(net.f), cfield(net.f)), GeometryError);
}
