#pragma once

#include "lw/lawson.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lw {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetFile {
    LegendreNet net;
    std::optional<OmegaPair> omega;
    std::vector<std::string> provenance;
};

inline constexpr int net_file_version = 1;

void write_net(std::ostream& os, const NetFile& file);
std::string format_net(const NetFile& file);
// strict: the net must pass the Legendre validator on load
NetFile read_net(std::istream& is, bool strict = true);
NetFile parse_net(const std::string& text, bool strict = true);

void save_net(const std::string& path, const NetFile& file);
NetFile load_net(const std::string& path, bool strict = true);

enum class Chart { euclidean, poincare_ball, central };
std::string to_string(Chart c);
Chart parse_chart(const std::string& s);

struct MeshExport {
    Chart chart = Chart::euclidean;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> quads; // zero-based, in face_quad order
};

// euclidean: inverse of the lift; poincare_ball and central: the hyperboloid x = f + q/(qq)
// of a hyperbolic frame, projected from its vertex to y/(1 + y0) and y/y0
MeshExport export_mesh(const LegendreNet& net, Chart chart);
void write_obj(std::ostream& os, const MeshExport& mesh);

struct CheckResult {
    std::string name;
    bool passed = true;
    double value = 0, tolerance = 0;
    std::string where;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* first_failure() const;
    std::string to_json() const;
};

struct VerifyOptions {
    bool deep = false;
    double structural = 1e-10;
    double fitted = 1e-7;
    int trim = 1; // boundary ring excluded from the face checks
};

VerifyReport verify(const NetFile& file, const VerifyOptions& opt = {});

struct FuzzResult {
    NetFile file;
    Vertex vertex;
    bool keeps_frame = false; // the perturbation fixes p and q
};

// Cayley perturbation of size `magnitude` applied to f and t at one random vertex; when
// keep_frame the generator is orthogonal to p and q so that only the Rodrigues relations break
FuzzResult fuzz_net(const NetFile& file, std::uint64_t seed, double magnitude = 1e-3, bool keep_frame = true);

// vertex and its incident edges and faces, as location strings
std::vector<std::string> vertex_neighbourhood(const GridDomain& dom, const Vertex& v);

} // namespace lw
