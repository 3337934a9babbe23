#pragma once

#include "lw/generators.hpp"
#include "lw/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace lwtest {

using namespace lw;

inline const Seed& seed(SeedKind kind, int size = 12)
{
    static std::map<std::pair<int, int>, Seed> cache;
    const auto key = std::make_pair(int(kind), size);
    auto it = cache.find(key);
    if (it == cache.end()) {
        PipelineParams p;
        p.m = p.n = size;
        it = cache.emplace(key, pipeline(kind, p)).first;
    }
    return it->second;
}

inline double max_abs(const std::vector<double>& v)
{
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline Vec452 random_vec(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Vec452 v;
    for (int k = 0; k < 6; ++k) v(k) = g(rng);
    return v;
}

// random element of the orthogonal group of the metric
inline OrthoMap random_ortho(std::mt19937_64& rng, double size = 0.5)
{
    Mat6<double> X = Mat6<double>::Zero();
    for (int k = 0; k < 3; ++k) X += wedge_matrix(random_vec(rng), random_vec(rng));
    return cayley(Mat6<double>(size * X / X.cwiseAbs().maxCoeff()));
}

// planar net: x in the plane z = 0 on a perturbed rectangular lattice, n = e3
inline LegendreNet planar_net(int m_max, int n_max)
{
    GridDomain dom(m_max, n_max);
    VertexField<Vec3> x(dom), n(dom, Vec3(0, 0, 1));
    for (int j = 0; j <= n_max; ++j)
        for (int i = 0; i <= m_max; ++i) x(i, j) = Vec3(i + 0.1 * i * i, j + 0.05 * j * j, 0);
    return lift_euclidean(x, n);
}

// ---------------------------------------------------------------------------
// brute-force scan of a parallel family: unit-frame coefficients at sampled theta,
// members located at sign changes and refined by bisection

struct ScannedMember {
    double theta;
    std::string type;
};

inline Eigen::Vector3d unit_triple(const WeingartenCoefficients& c, const SpaceFormFrame& fr, double theta)
{
    // congruence by hand, without the sign normalization of coefficient_transform
    const Eigen::Matrix2d B = parallel_basis_change(fr, theta);
    const Eigen::Matrix2d M = B * c.matrix() * B.transpose();
    const Eigen::Matrix2d g = frame_gram(fr);
    const double sq = std::sqrt(std::abs(g(0, 0))), sp = std::sqrt(std::abs(g(1, 1)));
    const double qs = sq > 1e-12 ? sq : 1.0; // degenerate plane: q keeps its scale
    Eigen::Vector3d v(M(0, 0) * qs * qs, M(0, 1) * qs * sp, M(1, 1) * sp * sp);
    return v / v.norm();
}

inline std::vector<ScannedMember> scan_parallel_family(const WeingartenCoefficients& c, const SpaceFormFrame& fr,
                                                       int samples = 1000)
{
    const PlaneType type = plane_type(fr);
    const double lo = type == PlaneType::definite ? 0.0 : -8.0;
    const double hi = type == PlaneType::definite ? 2 * std::numbers::pi : 8.0;
    std::vector<ScannedMember> out;
    std::vector<double> roots[3];
    for (int comp = 0; comp < 3; ++comp) {
        auto F = [&](double th) { return unit_triple(c, fr, th)(comp); };
        // identically vanishing components mark whole families, not members
        double peak = 0;
        for (int s = 0; s <= samples; ++s) peak = std::max(peak, std::abs(F(lo + (hi - lo) * s / samples)));
        if (peak < 1e-9) continue;
        double x0 = lo, f0 = F(lo);
        for (int s = 1; s <= samples; ++s) {
            const double x1 = lo + (hi - lo) * s / samples, f1 = F(x1);
            if (f0 == 0) roots[comp].push_back(x0);
            else if (f0 * f1 < 0) {
                double a = x0, b = x1, fa = f0;
                for (int it = 0; it < 100; ++it) {
                    const double m = 0.5 * (a + b), fm = F(m);
                    if ((fm < 0) == (fa < 0)) a = m, fa = fm;
                    else b = m;
                }
                roots[comp].push_back(0.5 * (a + b));
            }
            x0 = x1;
            f0 = f1;
        }
    }
    auto contains = [](const std::vector<double>& v, double x) {
        return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(x - y) < 1e-7; });
    };
    for (double th : roots[1]) out.push_back({th, "constant-Gauss"});
    for (double th : roots[0]) out.push_back({th, contains(roots[2], th) ? "minimal" : "CMC"});
    for (double th : roots[2])
        if (!contains(roots[0], th)) out.push_back({th, "constant-harmonic-mean"});
    return out;
}

// largest theta mismatch between classified members and scanned members of the same type,
// restricted to the scanned window; infinity when the sets do not correspond
inline double member_mismatch(const std::vector<ParallelMember>& got, const std::vector<ScannedMember>& scan,
                              const SpaceFormFrame& fr)
{
    const bool periodic = plane_type(fr) == PlaneType::definite;
    auto dist = [&](double a, double b) {
        double d = std::abs(a - b);
        if (periodic) d = std::min(d, 2 * std::numbers::pi - d);
        return d;
    };
    std::vector<ParallelMember> members;
    for (const auto& m : got)
        if (!m.whole_family && (periodic || std::abs(m.theta) < 7.9)) members.push_back(m);
    if (members.size() != scan.size()) return INFINITY;
    double worst = 0;
    for (const auto& s : scan) {
        double best = INFINITY;
        for (const auto& m : members)
            if (m.type == s.type) best = std::min(best, dist(m.theta, s.theta));
        worst = std::max(worst, best);
    }
    return worst;
}

inline bool has_family_marker(const std::vector<ParallelMember>& got, const std::string& type)
{
    return std::any_of(got.begin(), got.end(), [&](const ParallelMember& m) { return m.whole_family && m.type == type; });
}

// independent test for the Bryant configuration: along the whole sampled family
// (alpha + gamma)/2 = +-beta holds for one fixed sign
inline bool scanned_bryant(const WeingartenCoefficients& c, const SpaceFormFrame& fr)
{
    for (int sg : {-1, 1}) {
        bool all = true;
        for (int s = 0; s <= 200 && all; ++s) {
            const Eigen::Vector3d v = unit_triple(c, fr, -4.0 + 8.0 * s / 200);
            all = std::abs(0.5 * (v(0) + v(2)) - sg * v(1)) < 1e-9;
        }
        if (all) return true;
    }
    return false;
}

} // namespace lwtest
