#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <json.hpp>

#include <sstream>

using namespace lw;
using lwtest::seed;

namespace {

NetFile seed_file(SeedKind k, bool with_pair = true)
{
    const Seed& s = seed(k);
    NetFile f{s.net, {}, {"generate kind=" + to_string(k)}};
    if (with_pair) f.omega = s.pair;
    return f;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::string join(const std::vector<std::string>& lines)
{
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

} // namespace

TEST_CASE("text round trip is exact")
{
    for (SeedKind k : {SeedKind::minimal, SeedKind::constant_gauss, SeedKind::flat_front}) {
        const NetFile file = seed_file(k);
        const std::string text = format_net(file);
        const NetFile back = parse_net(text);
        CHECK(format_net(back) == text);
        for (std::size_t i = 0; i < file.net.f.size(); ++i) {
            CHECK(back.net.f.data[i] == file.net.f.data[i]);
            CHECK(back.net.t.data[i] == file.net.t.data[i]);
        }
        REQUIRE(back.omega);
        CHECK(back.omega->conjugate == file.omega->conjugate);
        CHECK(back.omega->sigma_plus.data[7] == file.omega->sigma_plus.data[7]);
        CHECK(back.omega->a.data == file.omega->a.data);
        CHECK(back.provenance == file.provenance);
    }
}

TEST_CASE("files on disk")
{
    const NetFile file = seed_file(SeedKind::minimal, false);
    const std::string path = "io_roundtrip.lwnet";
    save_net(path, file);
    const NetFile back = load_net(path);
    CHECK(format_net(back) == format_net(file));
    CHECK_FALSE(back.omega);
    std::remove(path.c_str());
    CHECK_THROWS(load_net("no/such/file.lwnet"));
}

TEST_CASE("header and length errors")
{
    const std::string text = format_net(seed_file(SeedKind::minimal, false));
    auto lines = lines_of(text);

    auto wrong_version = lines;
    wrong_version[0] = "lwnet 2";
    CHECK_THROWS_WITH_AS(parse_net(join(wrong_version)), doctest::Contains("version mismatch"), FormatError);

    // drop one vertex line of the f block
    auto shorter = lines;
    const auto it = std::find(shorter.begin(), shorter.end(), "f");
    REQUIRE(it != shorter.end());
    shorter.erase(it + 3);
    CHECK_THROWS_WITH_AS(parse_net(join(shorter)), doctest::Contains("length mismatch"), FormatError);

    auto grid = lines;
    grid[1] = "grid 12 13";
    CHECK_THROWS_AS(parse_net(join(grid)), FormatError);

    CHECK_THROWS_AS(parse_net("garbage\n"), FormatError);
}

TEST_CASE("strict loading validates the net")
{
    NetFile file = seed_file(SeedKind::minimal, false);
    file.net.f(3, 3)(0) += 0.01; // no longer null
    const std::string text = format_net(file);
    CHECK_THROWS_AS(parse_net(text), GeometryError);
    const NetFile loose = parse_net(text, false);
    CHECK(loose.net.f(3, 3) == file.net.f(3, 3));
}

TEST_CASE("euclidean export")
{
    const LegendreNet& net = seed(SeedKind::minimal).net;
    const MeshExport mesh = export_mesh(net, Chart::euclidean);
    const EuclideanChart ch = project_euclidean(net);
    REQUIRE(mesh.vertices.size() == net.f.size());
    for (std::size_t i = 0; i < ch.x.size(); ++i) CHECK((mesh.vertices[i] - ch.x.data[i]).norm() < 1e-12);
    REQUIRE(int(mesh.quads.size()) == net.dom.face_count());
    const auto q = net.dom.face_quad(Face{2, 1});
    const auto& mq = mesh.quads[2 + 1 * net.dom.m_max];
    for (int k = 0; k < 4; ++k) CHECK(mq[k] == net.dom.index(q[k]));

    std::ostringstream os;
    write_obj(os, mesh);
    int v = 0, f = 0;
    for (const auto& l : lines_of(os.str())) {
        if (l.rfind("v ", 0) == 0) ++v;
        if (l.rfind("f ", 0) == 0) {
            ++f;
            std::istringstream ls(l.substr(2));
            for (int idx; ls >> idx;) CHECK(idx >= 1);
        }
    }
    CHECK(v == int(mesh.vertices.size()));
    CHECK(f == int(mesh.quads.size()));
}

TEST_CASE("hyperbolic charts")
{
    const LegendreNet& net = seed(SeedKind::flat_front).net;
    const MeshExport ball = export_mesh(net, Chart::poincare_ball);
    for (const Vec3& v : ball.vertices) {
        CHECK(v.allFinite());
        CHECK(v.norm() < 1.0);
    }
    const MeshExport central = export_mesh(net, Chart::central);
    for (std::size_t i = 0; i < central.vertices.size(); ++i) {
        CHECK(central.vertices[i].norm() < 1.0);
        // both models share the radial direction; |c| = 2|b|/(1+|b|^2)
        const Vec3 b = ball.vertices[i];
        CHECK((central.vertices[i] - 2 * b / (1 + b.squaredNorm())).norm() < 1e-12);
    }

    CHECK_THROWS_AS(export_mesh(net, Chart::euclidean), GeometryError);
    CHECK_THROWS_AS(export_mesh(seed(SeedKind::minimal).net, Chart::poincare_ball), GeometryError);
    CHECK(parse_chart(to_string(Chart::central)) == Chart::central);
    CHECK_THROWS(parse_chart("mercator"));
}

TEST_CASE("verify passes on seeds")
{
    for (SeedKind k : all_seed_kinds()) {
        const NetFile file = seed_file(k);
        CAPTURE(to_string(k));
        const VerifyReport shallow = verify(file);
        CHECK(shallow.passed());
        CHECK(shallow.first_failure() == nullptr);
        VerifyOptions deep;
        deep.deep = true;
        const VerifyReport rep = verify(file, deep);
        if (const CheckResult* c = rep.first_failure()) FAIL_CHECK(c->name << " " << c->value << " at " << c->where);
        CHECK(rep.checks.size() > shallow.checks.size());
    }
}

TEST_CASE("verify report as json")
{
    const VerifyReport rep = verify(seed_file(SeedKind::minimal));
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("passed").get<bool>());
    CHECK(j.at("checks").size() == rep.checks.size());
}

TEST_CASE("fuzzed nets are rejected at the perturbed vertex")
{
    const NetFile file = seed_file(SeedKind::minimal, false);
    for (bool keep : {true, false})
        for (std::uint64_t s = 1; s <= 12; ++s) {
            const FuzzResult fz = fuzz_net(file, s, 1e-3, keep);
            CHECK(fz.keeps_frame == keep);
            const VerifyReport rep = verify(fz.file);
            const CheckResult* c = rep.first_failure();
            REQUIRE(c != nullptr);
            const auto near = vertex_neighbourhood(file.net.dom, fz.vertex);
            CAPTURE(c->where);
            CHECK(std::find(near.begin(), near.end(), c->where) != near.end());
        }
}

TEST_CASE("fuzzing is deterministic in its seed")
{
    const NetFile file = seed_file(SeedKind::cmc_r3_parallel, false);
    const FuzzResult a = fuzz_net(file, 42), b = fuzz_net(file, 42);
    CHECK(a.vertex == b.vertex);
    CHECK(format_net(a.file) == format_net(b.file));
}

TEST_CASE("neighbourhood strings")
{
    GridDomain dom(3, 3);
    const auto corner = vertex_neighbourhood(dom, {0, 0});
    CHECK(std::find(corner.begin(), corner.end(), to_string(Vertex{0, 0})) != corner.end());
    CHECK(std::find(corner.begin(), corner.end(), to_string(Face{0, 0})) != corner.end());
    // a vertex, two edges and one face
    CHECK(corner.size() == 4u);
    CHECK(vertex_neighbourhood(dom, {1, 1}).size() == 9u);
}
