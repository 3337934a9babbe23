#include "lw/io.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace lw {

namespace {

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_real(std::ostream& os, const Vec452& v)
{
    for (int k = 0; k < 6; ++k) os << (k ? " " : "") << num(v(k));
}

void write_complex(std::ostream& os, const CVec452& v)
{
    for (int k = 0; k < 6; ++k) os << (k ? " " : "") << num(v(k).real()) << ' ' << num(v(k).imag());
}

struct Reader {
    std::istream& is;
    int line_no = 0;

    bool next(std::vector<std::string>& tok)
    {
        std::string line;
        while (std::getline(is, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            tok.clear();
            std::istringstream ss(line);
            for (std::string w; ss >> w;) tok.push_back(w);
            if (!tok.empty() && tok[0] == "provenance") {
                const auto pos = line.find("provenance");
                tok = {"provenance", pos + 11 <= line.size() ? line.substr(pos + 11) : std::string()};
            }
            return true;
        }
        return false;
    }

    std::vector<std::string> expect(const std::string& what)
    {
        std::vector<std::string> tok;
        if (!next(tok)) throw FormatError("length mismatch: file ends before " + what);
        return tok;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw FormatError(msg + " (line " + std::to_string(line_no) + ")");
    }

    double number(const std::string& s) const
    {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            fail("not a number: " + s);
        }
        if (used != s.size()) fail("not a number: " + s);
        return x;
    }

    std::vector<double> numbers(const std::vector<std::string>& tok, std::size_t from, std::size_t count,
                                const std::string& what) const
    {
        if (tok.size() != from + count) fail("length mismatch in " + what);
        std::vector<double> out;
        for (std::size_t k = from; k < tok.size(); ++k) out.push_back(number(tok[k]));
        return out;
    }

    Vec452 real_row(const std::vector<std::string>& tok, std::size_t from, const std::string& what) const
    {
        const auto v = numbers(tok, from, 6, what);
        return Eigen::Map<const Vec452>(v.data());
    }

    CVec452 complex_row(const std::vector<std::string>& tok, std::size_t from, const std::string& what) const
    {
        const auto v = numbers(tok, from, 12, what);
        CVec452 out;
        for (int k = 0; k < 6; ++k) out(k) = cplx(v[2 * k], v[2 * k + 1]);
        return out;
    }

    void header(const std::string& name)
    {
        const auto tok = expect(name);
        if (tok.size() != 1 || tok[0] != name) fail("length mismatch: expected block '" + name + "'");
    }
};

} // namespace

void write_net(std::ostream& os, const NetFile& file)
{
    const LegendreNet& net = file.net;
    os << "lwnet " << net_file_version << '\n';
    os << "grid " << net.dom.m_max << ' ' << net.dom.n_max << '\n';
    os << "signature 1 1 1 1 -1 -1\n";
    os << "p ";
    write_real(os, net.frame.p);
    os << "\nq ";
    write_real(os, net.frame.q);
    os << "\nf\n";
    for (const auto& v : net.f.data) write_real(os, v), os << '\n';
    os << "t\n";
    for (const auto& v : net.t.data) write_real(os, v), os << '\n';
    if (file.omega) {
        const OmegaPair& pr = *file.omega;
        os << "omega\n";
        os << "conjugate " << (pr.conjugate ? 1 : 0) << '\n';
        os << "sigma_plus\n";
        for (const auto& v : pr.sigma_plus.data) write_complex(os, v), os << '\n';
        os << "sigma_minus\n";
        for (const auto& v : pr.sigma_minus.data) write_complex(os, v), os << '\n';
        for (const auto& [name, k] : {std::pair{"k_plus", &pr.k_plus}, std::pair{"k_minus", &pr.k_minus}}) {
            os << name;
            if (*k) {
                os << ' ';
                write_complex(os, **k);
            } else {
                os << " none";
            }
            os << '\n';
        }
        os << "r\n";
        for (const auto& v : pr.r.data) os << num(v.real()) << ' ' << num(v.imag()) << '\n';
        os << "a_h\n";
        for (int i = 0; i < pr.dom.horizontal_count(); ++i) os << num(pr.a.data[i]) << '\n';
        os << "a_v\n";
        for (int i = pr.dom.horizontal_count(); i < pr.dom.edge_count(); ++i) os << num(pr.a.data[i]) << '\n';
    }
    for (const auto& line : file.provenance) os << "provenance " << line << '\n';
    os << "end\n";
}

std::string format_net(const NetFile& file)
{
    std::ostringstream os;
    write_net(os, file);
    return os.str();
}

NetFile read_net(std::istream& is, bool strict)
{
    Reader rd{is};
    auto tok = rd.expect("version tag");
    if (tok.size() != 2 || tok[0] != "lwnet") rd.fail("not a net file");
    if (tok[1] != std::to_string(net_file_version)) rd.fail("version mismatch: " + tok[1]);

    tok = rd.expect("grid");
    if (tok.size() != 3 || tok[0] != "grid") rd.fail("length mismatch in grid line");
    const int mm = int(rd.number(tok[1])), nn = int(rd.number(tok[2]));
    if (mm < 1 || nn < 1) rd.fail("grid needs at least one face");
    GridDomain dom(mm, nn);

    tok = rd.expect("signature");
    if (tok.empty() || tok[0] != "signature") rd.fail("missing signature");
    const auto sig = rd.numbers(tok, 1, 6, "signature");
    for (int k = 0; k < 6; ++k)
        if (sig[k] != metric_diagonal()(k)) rd.fail("unsupported signature array");

    NetFile file;
    file.net.dom = dom;
    tok = rd.expect("p");
    if (tok.empty() || tok[0] != "p") rd.fail("missing p");
    file.net.frame.p = rd.real_row(tok, 1, "p");
    tok = rd.expect("q");
    if (tok.empty() || tok[0] != "q") rd.fail("missing q");
    file.net.frame.q = rd.real_row(tok, 1, "q");

    auto real_block = [&](const std::string& name) {
        rd.header(name);
        VertexField<Vec452> out(dom);
        for (auto& v : out.data) v = rd.real_row(rd.expect(name + " rows"), 0, name);
        return out;
    };
    auto complex_block = [&](const std::string& name) {
        rd.header(name);
        VertexField<CVec452> out(dom);
        for (auto& v : out.data) v = rd.complex_row(rd.expect(name + " rows"), 0, name);
        return out;
    };
    file.net.f = real_block("f");
    file.net.t = real_block("t");

    tok = rd.expect("end");
    if (tok.size() == 1 && tok[0] == "omega") {
        OmegaPair pr;
        pr.dom = dom;
        tok = rd.expect("conjugate");
        if (tok.size() != 2 || tok[0] != "conjugate" || (tok[1] != "0" && tok[1] != "1")) rd.fail("bad conjugate flag");
        pr.conjugate = tok[1] == "1";
        pr.sigma_plus = complex_block("sigma_plus");
        pr.sigma_minus = complex_block("sigma_minus");
        for (auto [name, k] : {std::pair{"k_plus", &pr.k_plus}, std::pair{"k_minus", &pr.k_minus}}) {
            tok = rd.expect(name);
            if (tok.empty() || tok[0] != name) rd.fail(std::string("missing ") + name);
            if (tok.size() == 2 && tok[1] == "none")
                k->reset();
            else
                *k = rd.complex_row(tok, 1, name);
        }
        rd.header("r");
        pr.r = VertexField<cplx>(dom);
        for (auto& v : pr.r.data) {
            const auto x = rd.numbers(rd.expect("r rows"), 0, 2, "r");
            v = cplx(x[0], x[1]);
        }
        pr.a = EdgeField<double>(dom);
        rd.header("a_h");
        for (int i = 0; i < dom.horizontal_count(); ++i) pr.a.data[i] = rd.numbers(rd.expect("a_h rows"), 0, 1, "a_h")[0];
        rd.header("a_v");
        for (int i = dom.horizontal_count(); i < dom.edge_count(); ++i)
            pr.a.data[i] = rd.numbers(rd.expect("a_v rows"), 0, 1, "a_v")[0];
        file.omega = std::move(pr);
        tok = rd.expect("end");
    }
    while (!tok.empty() && tok[0] == "provenance") {
        file.provenance.push_back(tok.size() > 1 ? tok[1] : std::string());
        tok = rd.expect("end");
    }
    if (tok.size() != 1 || tok[0] != "end") rd.fail("length mismatch: unexpected '" + tok[0] + "'");
    std::vector<std::string> extra;
    if (rd.next(extra)) rd.fail("length mismatch: data after end");
    if (strict) require_legendre(file.net, 1e-9);
    return file;
}

NetFile parse_net(const std::string& text, bool strict)
{
    std::istringstream is(text);
    return read_net(is, strict);
}

void save_net(const std::string& path, const NetFile& file)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_net(os, file);
}

NetFile load_net(const std::string& path, bool strict)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    return read_net(is, strict);
}

std::string to_string(Chart c)
{
    switch (c) {
    case Chart::euclidean: return "euclidean";
    case Chart::poincare_ball: return "poincare_ball";
    case Chart::central: return "central";
    }
    return "?";
}

Chart parse_chart(const std::string& s)
{
    for (Chart c : {Chart::euclidean, Chart::poincare_ball, Chart::central})
        if (to_string(c) == s) return c;
    throw std::invalid_argument("unknown chart: " + s);
}

namespace {

// G-orthonormal basis of {p, q}^perp with the timelike vector first
Eigen::Matrix<double, 6, 4> hyperboloid_basis(const SpaceFormFrame& fr)
{
    const double pp = inner(fr.p, fr.p), qq = inner(fr.q, fr.q);
    Eigen::Matrix<double, 6, 6> cand;
    for (int k = 0; k < 6; ++k) {
        const Vec452 e = basis_vector(k);
        cand.col(k) = e - inner(e, fr.p) / pp * fr.p - inner(e, fr.q) / qq * fr.q;
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(cand, Eigen::ComputeFullU);
    const Eigen::Matrix<double, 6, 4> W = svd.matrixU().leftCols<4>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(W.transpose() * metric() * W);
    Eigen::Matrix<double, 6, 4> B;
    for (int k = 0; k < 4; ++k) {
        const double lam = es.eigenvalues()(k);
        B.col(k) = W * es.eigenvectors().col(k) / std::sqrt(std::abs(lam));
    }
    if (!(es.eigenvalues()(0) < 0 && es.eigenvalues()(1) > 0))
        throw GeometryError("chart-frame", "complement of the frame is not Lorentzian");
    return B;
}

} // namespace

MeshExport export_mesh(const LegendreNet& net, Chart chart)
{
    MeshExport mesh;
    mesh.chart = chart;
    const GridDomain& dom = net.dom;
    for (const Face& f : dom.faces()) {
        const auto q = dom.face_quad(f);
        mesh.quads.push_back({dom.index(q[0]), dom.index(q[1]), dom.index(q[2]), dom.index(q[3])});
    }
    if (chart == Chart::euclidean) {
        const EuclideanChart ec = project_euclidean(net);
        mesh.vertices = ec.x.data;
    } else {
        const double kappa = net.frame.kappa();
        if (!(kappa < 0) || net.frame.epsilon() <= 0)
            throw GeometryError("chart-frame", to_string(chart) + " needs a hyperbolic frame");
        const double qq = inner(net.frame.q, net.frame.q);
        const auto B = hyperboloid_basis(net.frame);
        const double s = std::sqrt(-kappa);
        double sign = 0;
        for (const Vec452& f : net.f.data) {
            const Vec452 x = s * (f + net.frame.q / qq);
            double y0 = -inner(x, Vec452(B.col(0)));
            if (sign == 0) sign = y0 < 0 ? -1 : 1;
            y0 *= sign;
            const Vec3 y(inner(x, Vec452(B.col(1))), inner(x, Vec452(B.col(2))), inner(x, Vec452(B.col(3))));
            const double den = chart == Chart::poincare_ball ? 1 + y0 : y0;
            if (!(y0 > 0) || !std::isfinite(den) || den <= 1e-300)
                throw GeometryError("infinity-boundary", "vertex leaves the hyperboloid sheet");
            mesh.vertices.push_back(y / den);
        }
    }
    for (const Vec3& v : mesh.vertices)
        if (!v.allFinite()) throw GeometryError("infinity-boundary", "vertex at infinity in the chart");
    return mesh;
}

void write_obj(std::ostream& os, const MeshExport& mesh)
{
    os << "# chart " << to_string(mesh.chart) << '\n';
    for (const Vec3& v : mesh.vertices) os << "v " << num(v(0)) << ' ' << num(v(1)) << ' ' << num(v(2)) << '\n';
    for (const auto& q : mesh.quads) os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

std::string VerifyReport::to_json() const
{
    nlohmann::json j;
    j["passed"] = passed();
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e{{"check", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}};
        if (!c.where.empty()) e["where"] = c.where;
        arr.push_back(e);
    }
    j["checks"] = arr;
    if (const CheckResult* f = first_failure()) j["first_failure"] = {{"check", f->name}, {"where", f->where}};
    return j.dump(2);
}

namespace {

std::map<std::string, std::string> key_values(const std::string& line)
{
    std::map<std::string, std::string> out;
    std::istringstream ss(line);
    for (std::string w; ss >> w;) {
        const auto eq = w.find('=');
        if (eq != std::string::npos) out[w.substr(0, eq)] = w.substr(eq + 1);
    }
    return out;
}

void add(VerifyReport& rep, std::string name, double value, double tol, std::string where = {})
{
    const bool ok = std::isfinite(value) && value <= tol;
    rep.checks.push_back({std::move(name), ok, value, tol, ok ? std::string() : std::move(where)});
}

void add_failure(VerifyReport& rep, std::string name, std::string where, double value = 1.0, double tol = 0)
{
    rep.checks.push_back({std::move(name), false, value, tol, std::move(where)});
}

std::vector<Face> checked_faces(const GridDomain& dom, int trim)
{
    const int t = std::min(trim, std::min((dom.m_max - 1) / 2, (dom.n_max - 1) / 2));
    return dom.interior_faces(std::max(0, t));
}

void provenance_checks(VerifyReport& rep, const NetFile& file, const std::vector<Face>& faces)
{
    const LegendreNet& net = file.net;
    std::vector<double> H, K, Kint;
    for (const Face& f : faces) {
        const FaceCurvature c = face_curvature(net, f);
        H.push_back(c.H);
        K.push_back(c.K);
        Kint.push_back(net.frame.epsilon() * c.K + net.frame.kappa());
    }
    const double pp = inner(net.frame.p, net.frame.p), qq = inner(net.frame.q, net.frame.q);
    // only the entries from the last transformation of the geometry onwards describe the current net
    std::size_t first = 0;
    for (std::size_t i = 0; i < file.provenance.size(); ++i)
        for (const char* op : {"generate", "lawson", "calapso", "parallel"})
            if (file.provenance[i].rfind(op, 0) == 0) first = i;
    for (std::size_t i = first; i < file.provenance.size(); ++i) {
        const auto kv = key_values(file.provenance[i]);
        const std::string tag = "provenance[" + std::to_string(i) + "]";
        auto expect_const = [&](const char* key, const std::vector<double>& vals) {
            auto it = kv.find(key);
            if (it == kv.end()) return;
            const double target = std::stod(it->second);
            double worst = 0;
            for (double v : vals) worst = std::max(worst, std::abs(v - target));
            add(rep, std::string("law-") + key, worst / std::max(1.0, std::abs(target)), 1e-8, tag);
        };
        expect_const("H", H);
        expect_const("K", K);
        expect_const("K_int", Kint);
        if (auto it = kv.find("kappa"); it != kv.end())
            add(rep, "law-kappa", std::abs(net.frame.kappa() - std::stod(it->second)), 1e-8, tag);
        if (auto it = kv.find("epsilon"); it != kv.end())
            add(rep, "law-epsilon", std::abs(net.frame.epsilon() - std::stod(it->second)), 1e-8, tag);
        if (auto it = kv.find("lawson_invariant"); it != kv.end()) {
            const double target = std::stod(it->second);
            double worst = 0;
            for (double h : H) worst = std::max(worst, std::abs(pp * h * h + qq - target));
            add(rep, "law-lawson-invariant", worst, 1e-8, tag);
        }
        if (file.provenance[i].rfind("calapso", 0) == 0 && file.omega) {
            auto it = kv.find("t");
            if (it != kv.end()) {
                const double t = std::stod(it->second);
                double worst = 0;
                // the labels before the deformation, a = a(t)/(1 + t a(t)), stay finite
                for (double a : file.omega->a.data) worst = std::max(worst, 1e-12 / std::max(1e-300, std::abs(1 + t * a)));
                add(rep, "law-calapso-labelling", worst, 1e-6, tag);
            }
        }
    }
}

} // namespace

VerifyReport verify(const NetFile& file, const VerifyOptions& opt)
{
    VerifyReport rep;
    const LegendreNet& net = file.net;
    const auto viol = legendre_violations(net, opt.structural, false);
    if (!viol.empty()) {
        add_failure(rep, "legendre:" + viol.front().check, viol.front().where, std::abs(viol.front().value),
                    opt.structural);
        return rep;
    }
    rep.checks.push_back({"legendre", true, 0, opt.structural, {}});

    const auto faces = checked_faces(net.dom, opt.trim);
    double curv_res = 0;
    std::string worst_face;
    for (const Face& f : faces) {
        try {
            const FaceCurvature c = face_curvature(net, f);
            if (c.residual > curv_res) {
                curv_res = c.residual;
                worst_face = to_string(f);
            }
        } catch (const GeometryError& e) {
            add_failure(rep, "curvature:" + e.check(), to_string(f));
            return rep;
        }
    }
    add(rep, "mixed-area-proportionality", curv_res, 1e-8, worst_face);
    if (!opt.deep) return rep;

    // a Calapso deformation leaves the class of linear Weingarten nets of the frame
    bool deformed = false;
    for (const auto& line : file.provenance) {
        if (line.rfind("calapso", 0) == 0) deformed = true;
        if (line.rfind("generate", 0) == 0 || line.rfind("lawson", 0) == 0) deformed = false;
    }
    const WeingartenCoefficients fit = fit_weingarten(net, faces);
    if (!deformed) add(rep, "weingarten-fit", fit.fit_residual, opt.fitted);
    if (!rep.passed() && !file.omega) return rep;

    OmegaPair pr;
    try {
        pr = file.omega ? *file.omega : split_weingarten(net, fit);
    } catch (const GeometryError& e) {
        add_failure(rep, "omega:" + e.check(), e.where());
        return rep;
    }
    const OmegaResiduals res = omega_residuals(pr);
    add(rep, "omega-null-and-contact", res.null_and_contact, 1e-9);
    add(rep, "omega-normalization", res.normalization, 1e-9);
    add(rep, "omega-christoffel", res.christoffel, 1e-9);
    add(rep, "omega-koenigs", res.koenigs, 1e-9);
    add(rep, "omega-moutard", res.moutard, 1e-9);
    add(rep, "labelling-opposite-edges", res.labelling_opposite, 1e-9);
    add(rep, "labelling-symmetry", res.labelling_symmetry, 1e-9);
    add(rep, "labelling-real", res.labelling_imag, 1e-9);
    add(rep, "cross-ratio-factorization", res.cross_ratio, 1e-9);
    add(rep, "cross-ratio-square", res.square_identity, 1e-9);
    add(rep, "moutard-propagation", res.moutard_propagation, 1e-9);
    add(rep, "omega-conjugacy", res.conjugacy, 1e-9);
    add(rep, "omega-spans-lines", pair_line_distance(pr, net), 1e-9);

    double amax = 0;
    for (double a : pr.a.data) amax = std::max(amax, std::abs(a));
    double flat = 0;
    for (double g : {0.0, 0.5, 1.0})
        for (double ts : {-0.5, -0.1, 0.1, 0.4}) {
            const double t = ts / std::max(1.0, amax);
            bool pole = false;
            for (double a : pr.a.data) pole = pole || std::abs(1 - t * a) < 1e-6;
            if (pole) continue;
            for (const Face& f : pr.dom.faces())
                flat = std::max(flat, (face_holonomy(pr, constant_gauge(pr.dom, g), t, f) - COrthoMap::Identity())
                                          .cwiseAbs()
                                          .maxCoeff());
        }
    add(rep, "flatness", flat, 1e-9);
    try {
        const Trivialization tr = trivialize(pr, constant_gauge(pr.dom, 0.5), 0.1 / std::max(1.0, amax));
        add(rep, "trivialization-paths", tr.path_defect, 1e-8);
        add(rep, "trivialization-orthogonality", tr.orthogonality, 1e-10);
    } catch (const GeometryError& e) {
        add_failure(rep, "trivialization:" + e.check(), e.where());
    }
    provenance_checks(rep, file, faces);
    return rep;
}

std::vector<std::string> vertex_neighbourhood(const GridDomain& dom, const Vertex& v)
{
    std::vector<std::string> out{to_string(v)};
    const Vertex nb[] = {{v.m + 1, v.n}, {v.m - 1, v.n}, {v.m, v.n + 1}, {v.m, v.n - 1}};
    for (const Vertex& w : nb)
        if (dom.contains(w)) out.push_back(to_string(dom.edge_between(v, w)));
    for (int dm = -1; dm <= 0; ++dm)
        for (int dn = -1; dn <= 0; ++dn) {
            const Face f{v.m + dm, v.n + dn};
            if (dom.contains(f)) out.push_back(to_string(f));
        }
    return out;
}

FuzzResult fuzz_net(const NetFile& file, std::uint64_t seed, double magnitude, bool keep_frame)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const GridDomain& dom = file.net.dom;
    const Vertex v = dom.vertex(std::uniform_int_distribution<int>(0, dom.vertex_count() - 1)(rng));
    auto random_vec = [&] {
        Vec452 x;
        for (int k = 0; k < 6; ++k) x(k) = gauss(rng);
        return x;
    };
    Mat6<double> X = Mat6<double>::Zero();
    const SpaceFormFrame& fr = file.net.frame;
    const double pp = inner(fr.p, fr.p), qq = inner(fr.q, fr.q);
    for (int k = 0; k < 3; ++k) {
        Vec452 a = random_vec(), b = random_vec();
        if (keep_frame) {
            // project into {p, q}^perp; a null q needs a partner o with (o, q) != 0
            for (Vec452* w : {&a, &b}) {
                *w -= inner(*w, fr.p) / pp * fr.p;
                if (std::abs(qq) > 1e-12) {
                    *w -= inner(*w, fr.q) / qq * fr.q;
                } else {
                    Vec452 o = basis_vector(0);
                    for (int j = 1; j < 6; ++j)
                        if (std::abs(inner(basis_vector(j), fr.q)) > std::abs(inner(o, fr.q))) o = basis_vector(j);
                    o -= inner(o, fr.p) / pp * fr.p;
                    *w -= inner(*w, fr.q) / inner(o, fr.q) * o;
                    *w -= inner(*w, o) / inner(fr.q, o) * fr.q;
                }
            }
        }
        X += wedge_matrix(a, b);
    }
    X *= magnitude / X.cwiseAbs().maxCoeff();
    const OrthoMap C = cayley(X);
    FuzzResult out{file, v, keep_frame};
    out.file.net.f[v] = C * file.net.f[v];
    out.file.net.t[v] = C * file.net.t[v];
    out.file.omega.reset();
    return out;
}

} // namespace lw
