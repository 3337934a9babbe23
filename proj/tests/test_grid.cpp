#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lw/grid.hpp"

#include <map>
#include <set>

using namespace lw;

namespace {

bool same(const std::array<Vertex, 4>& q, std::array<Vertex, 4> expect)
{
    return q == expect;
}

} // namespace

TEST_CASE("domain needs a face")
{
    CHECK_THROWS_AS(GridDomain(0, 3), std::invalid_argument);
    CHECK_NOTHROW(GridDomain(1, 1));
}

TEST_CASE("face quad order")
{
    GridDomain one(1, 1);
    CHECK(same(one.face_quad({0, 0}), {Vertex{0, 0}, Vertex{1, 0}, Vertex{1, 1}, Vertex{0, 1}}));
    CHECK(same(one.face_quad({0, 0}, true), {Vertex{0, 0}, Vertex{0, 1}, Vertex{1, 1}, Vertex{1, 0}}));
    GridDomain big(5, 5);
    CHECK(same(big.face_quad({2, 3}), {Vertex{2, 3}, Vertex{3, 3}, Vertex{3, 4}, Vertex{2, 4}}));
    CHECK_THROWS(big.face_quad({5, 0}));
}

TEST_CASE("staircase paths")
{
    using S = Step;
    auto p = lattice_paths({0, 0}, {1, 1});
    CHECK(p[0] == std::vector<S>{S::R, S::U});
    CHECK(p[1] == std::vector<S>{S::U, S::R});
    p = lattice_paths({0, 0}, {0, 0});
    CHECK(p[0].empty());
    CHECK(p[1].empty());
    p = lattice_paths({0, 0}, {2, 1});
    CHECK(p[0] == std::vector<S>{S::R, S::R, S::U});
    CHECK(p[1] == std::vector<S>{S::U, S::R, S::R});
}

TEST_CASE("vertex index layout")
{
    GridDomain d(4, 3);
    CHECK(d.index(2, 1) == 2 + 1 * 5);
    for (int i = 0; i < d.vertex_count(); ++i) CHECK(d.index(d.vertex(i)) == i);
}

TEST_CASE("edge fields are orientation independent")
{
    GridDomain d(3, 2);
    EdgeField<double> a(d);
    int k = 0;
    for (const Edge& e : d.edges()) a[e] = ++k;
    for (const Edge& e : d.edges()) {
        CHECK(a(e.from(), e.to()) == a(e.to(), e.from()));
        CHECK(a(e.to(), e.from()) == a[e]);
    }
}

TEST_CASE("iteration visits each edge and face once; interior edges bound two faces")
{
    GridDomain d(4, 3);
    std::set<int> seen;
    for (const Edge& e : d.edges()) CHECK(seen.insert(d.edge_index(e)).second);
    CHECK(int(seen.size()) == d.edge_count());
    CHECK(int(d.faces().size()) == d.face_count());

    std::map<int, int> count;
    for (const Face& f : d.faces())
        for (const Edge& e : d.face_edges(f)) ++count[d.edge_index(e)];
    for (const Edge& e : d.edges()) {
        const bool boundary = e.dir == Dir::horizontal ? (e.n == 0 || e.n == d.n_max) : (e.m == 0 || e.m == d.m_max);
        CHECK(count[d.edge_index(e)] == (boundary ? 1 : 2));
    }
}

TEST_CASE("face edges follow the quad")
{
    GridDomain d(3, 3);
    const Face f{1, 2};
    const auto q = d.face_quad(f);
    const auto e = d.face_edges(f);
    for (int k = 0; k < 4; ++k) CHECK(e[k] == d.edge_between(q[k], q[(k + 1) % 4]));
}

TEST_CASE("interior faces drop a ring")
{
    GridDomain d(6, 5);
    CHECK(d.interior_faces(0).size() == 30u);
    CHECK(d.interior_faces(1).size() == 12u);
}
