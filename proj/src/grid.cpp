#include "lw/grid.hpp"

#include <cstdlib>

namespace lw {

std::string to_string(const Vertex& v)
{
    return "vertex (" + std::to_string(v.m) + "," + std::to_string(v.n) + ")";
}

std::string to_string(const Edge& e)
{
    const Vertex a = e.from(), b = e.to();
    return "edge (" + std::to_string(a.m) + "," + std::to_string(a.n) + ")-(" + std::to_string(b.m) + "," +
           std::to_string(b.n) + ")";
}

std::string to_string(const Face& f)
{
    return "face (" + std::to_string(f.m) + "," + std::to_string(f.n) + ")";
}

Edge GridDomain::edge_between(const Vertex& a, const Vertex& b) const
{
    const int dm = b.m - a.m, dn = b.n - a.n;
    Edge e;
    if (std::abs(dm) == 1 && dn == 0)
        e = {Dir::horizontal, std::min(a.m, b.m), a.n};
    else if (std::abs(dn) == 1 && dm == 0)
        e = {Dir::vertical, a.m, std::min(a.n, b.n)};
    else
        throw std::invalid_argument("vertices " + to_string(a) + " and " + to_string(b) + " are not adjacent");
    if (!contains(e)) throw std::out_of_range(to_string(e) + " outside the grid");
    return e;
}

std::array<Vertex, 4> GridDomain::face_quad(const Face& f, bool reversed) const
{
    if (!contains(f)) throw std::out_of_range(to_string(f) + " outside the grid");
    const Vertex i{f.m, f.n}, j{f.m + 1, f.n}, k{f.m + 1, f.n + 1}, l{f.m, f.n + 1};
    if (reversed) return {i, l, k, j};
    return {i, j, k, l};
}

std::array<Edge, 4> GridDomain::face_edges(const Face& f) const
{
    if (!contains(f)) throw std::out_of_range(to_string(f) + " outside the grid");
    return {Edge{Dir::horizontal, f.m, f.n}, Edge{Dir::vertical, f.m + 1, f.n}, Edge{Dir::horizontal, f.m, f.n + 1},
            Edge{Dir::vertical, f.m, f.n}};
}

std::vector<Face> GridDomain::faces() const
{
    return interior_faces(0);
}

std::vector<Face> GridDomain::interior_faces(int trim) const
{
    std::vector<Face> out;
    for (int n = trim; n < n_max - trim; ++n)
        for (int m = trim; m < m_max - trim; ++m) out.push_back({m, n});
    return out;
}

std::vector<Edge> GridDomain::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m < m_max; ++m) out.push_back({Dir::horizontal, m, n});
    for (int n = 0; n < n_max; ++n)
        for (int m = 0; m <= m_max; ++m) out.push_back({Dir::vertical, m, n});
    return out;
}

std::array<std::vector<Step>, 2> lattice_paths(const Vertex& from, const Vertex& to)
{
    const int dm = to.m - from.m, dn = to.n - from.n;
    std::vector<Step> across(std::abs(dm), dm >= 0 ? Step::R : Step::L);
    std::vector<Step> up(std::abs(dn), dn >= 0 ? Step::U : Step::D);
    std::vector<Step> row_first = across, column_first = up;
    row_first.insert(row_first.end(), up.begin(), up.end());
    column_first.insert(column_first.end(), across.begin(), across.end());
    return {row_first, column_first};
}

} // namespace lw
