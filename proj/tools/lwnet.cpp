#include "lw/generators.hpp"
#include "lw/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lw;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double mean_H(const LegendreNet& net)
{
    const FaceCurvatures fc = face_curvatures(net);
    double s = 0;
    for (double h : fc.H.data) s += h;
    return s / double(fc.H.data.size());
}

double mean_K(const LegendreNet& net)
{
    const FaceCurvatures fc = face_curvatures(net);
    double s = 0;
    for (double k : fc.K.data) s += k;
    return s / double(fc.K.data.size());
}

json coeffs_json(const WeingartenCoefficients& c)
{
    return {{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}, {"residual", c.fit_residual}, {"delta_sq", c.delta_sq()}};
}

int cmd_generate(const std::string& kind, int m, int n, double theta, double K, double t, const std::string& out)
{
    PipelineParams pp;
    pp.m = m;
    pp.n = n;
    pp.theta = theta;
    pp.K = K;
    pp.lawson_t = t;
    const SeedKind sk = parse_seed_kind(kind);
    Seed seed = pipeline(sk, pp);
    NetFile file{seed.net, seed.pair, {"generate kind=" + kind + " m=" + std::to_string(m) + " n=" + std::to_string(n)}};
    file.provenance.push_back("route " + seed.route);
    if (sk == SeedKind::cmc_hyperbolic_unit) file.provenance.push_back("seed H=-1 kappa=-1");
    if (sk == SeedKind::minimal) file.provenance.push_back("seed H=0");
    save_net(out, file);
    return 0;
}

int cmd_analyze(const std::string& in)
{
    const NetFile file = load_net(in, false);
    const LegendreNet& net = file.net;
    json j;
    j["grid"] = {net.dom.m_max, net.dom.n_max};
    j["frame"] = {{"epsilon", net.frame.epsilon()}, {"kappa", net.frame.kappa()}};
    auto viol = json::array();
    for (const Violation& v : legendre_violations(net, 1e-10, true))
        viol.push_back({{"check", v.check}, {"where", v.where}, {"value", v.value}});
    j["regularity"] = viol;
    if (viol.empty()) {
        const FaceCurvatures fc = face_curvatures(net);
        auto faces = json::array();
        for (const Face& f : net.dom.faces())
            faces.push_back({{"m", f.m}, {"n", f.n}, {"H", fc.H[f]}, {"K", fc.K[f]}, {"K_int", fc.K_int[f]},
                             {"residual", fc.residual[f]}, {"umbilic", bool(fc.umbilic[f])}});
        j["faces"] = faces;
        j["fit"] = coeffs_json(fit_weingarten(net));
        j["minimality_defect"] = minimality_defect(net);
    }
    std::cout << j.dump(2) << '\n';
    return viol.empty() ? 0 : 1;
}

int cmd_omega_split(const std::string& in, const std::string& out, std::optional<double> a, std::optional<double> b,
                    std::optional<double> c)
{
    NetFile file = load_net(in);
    WeingartenCoefficients w = fit_weingarten(file.net);
    if (a || b || c) {
        if (!(a && b && c)) throw UsageError("--alpha, --beta and --gamma go together");
        w = {*a, *b, *c, 0};
    }
    file.omega = split_weingarten(file.net, w);
    file.provenance.push_back("omega-split alpha=" + num(w.alpha) + " beta=" + num(w.beta) + " gamma=" + num(w.gamma));
    save_net(out, file);
    return 0;
}

int cmd_calapso(const std::string& in, double t, double g, const std::string& out)
{
    if (g != 0 && g != 0.5 && g != 1) throw UsageError("--g must be 0, 0.5 or 1");
    NetFile file = load_net(in);
    const OmegaPair pr = file.omega ? *file.omega : split_weingarten(file.net, fit_weingarten(file.net));
    CalapsoResult res = calapso_transform(pr, file.net, t, g);
    file.net = std::move(res.net);
    file.omega = std::move(res.pair);
    file.provenance.push_back("calapso t=" + num(t) + " g=" + num(g));
    save_net(out, file);
    return 0;
}

int cmd_lawson(const std::string& in, double t, const std::string& mode_name, const std::string& out)
{
    NetFile file = load_net(in);
    const LegendreNet& net = file.net;
    const LawsonMode mode = parse_lawson_mode(mode_name);
    std::string law = "lawson mode=" + mode_name + " t=" + num(t);
    const double pp = inner(net.frame.p, net.frame.p), qq = inner(net.frame.q, net.frame.q);
    switch (mode) {
    case LawsonMode::cmc: {
        const double H = mean_H(net);
        law += " H=" + num(H + t / pp) + " lawson_invariant=" + num(pp * H * H + qq);
        break;
    }
    case LawsonMode::flat_front:
        law += " epsilon=" + num(-(pp + 2 * t)) + " kappa=" + num(-(qq - 2 * t));
        break;
    case LawsonMode::constant_gauss: {
        const double K = mean_K(net), eps = net.frame.epsilon(), kap = net.frame.kappa();
        // at t = -eps/2 the output lives in the swapped chart, where these laws do not apply
        if (std::abs(eps + 2 * t) > 1e-12)
            law += " K_int=" + num(eps * K + kap) + " K=" + num(K * std::abs(eps + 2 * t)) + " kappa=" + num(kap - 2 * t * K);
        break;
    }
    default: break;
    }
    LawsonResult res = lawson(net, mode, t);
    file.net = std::move(res.net);
    file.omega = std::move(res.pair);
    file.provenance.push_back(law);
    save_net(out, file);
    return 0;
}

int cmd_parallel(const std::string& in, std::optional<double> theta, bool classify, const std::string& out)
{
    NetFile file = load_net(in);
    if (classify) {
        const WeingartenCoefficients c = fit_weingarten(file.net);
        auto arr = json::array();
        for (const ParallelMember& m : classify_parallel_family(c, file.net.frame)) {
            json e{{"type", m.type}, {"whole_family", m.whole_family}};
            e["theta"] = std::isfinite(m.theta) ? json(m.theta) : json(nullptr);
            arr.push_back(e);
        }
        const char* plane[] = {"definite", "degenerate", "indefinite"};
        std::cout << json{{"fit", coeffs_json(c)}, {"plane", plane[int(plane_type(file.net.frame))]}, {"members", arr}}.dump(2)
                  << '\n';
        return 0;
    }
    if (!theta) throw UsageError("parallel needs --theta or --classify");
    if (out.empty()) throw UsageError("parallel --theta needs --out");
    file.net = parallel_transform(file.net, parallel_basis_change(file.net.frame, *theta));
    file.omega.reset();
    file.provenance.push_back("parallel theta=" + num(*theta));
    save_net(out, file);
    return 0;
}

int cmd_export(const std::string& in, const std::string& chart, const std::string& out)
{
    const NetFile file = load_net(in);
    const MeshExport mesh = export_mesh(file.net, parse_chart(chart));
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    write_obj(os, mesh);
    return 0;
}

int cmd_verify(const std::string& in, bool deep, std::optional<std::uint64_t> fuzz_seed)
{
    NetFile file = load_net(in, false);
    VerifyOptions opt;
    opt.deep = deep;
    if (fuzz_seed) {
        const FuzzResult fz = fuzz_net(file, *fuzz_seed);
        const VerifyReport rep = verify(fz.file, opt);
        json j = json::parse(rep.to_json());
        j["fuzz"] = {{"seed", *fuzz_seed}, {"vertex", to_string(fz.vertex)}};
        if (const CheckResult* f = rep.first_failure()) {
            const auto nb = vertex_neighbourhood(fz.file.net.dom, fz.vertex);
            j["fuzz"]["localized"] = std::find(nb.begin(), nb.end(), f->where) != nb.end();
        }
        std::cout << j.dump(2) << '\n';
        return rep.passed() ? 0 : 1;
    }
    const VerifyReport rep = verify(file, opt);
    std::cout << rep.to_json() << '\n';
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete linear Weingarten nets in Lie sphere geometry"};
    app.require_subcommand(1);

    std::string in, out, kind = "minimal", mode = "generic", chart = "euclidean";
    int m = 12, n = 12;
    double t = 0.1, g = 0, theta = 0.3, K = -1, seed_t = 0.5;
    std::optional<double> alpha, beta, gamma, ptheta;
    std::optional<std::uint64_t> fuzz;
    bool deep = false, classify = false;

    auto* gen = app.add_subcommand("generate", "build a seed net");
    gen->add_option("--kind", kind, "minimal, cmc_r3_parallel, cmc_hyperbolic_unit, constant_gauss, flat_front, chmc, "
                                    "cmc_spherical, cmc_hyperbolic")
        ->required();
    gen->add_option("--m", m)->check(CLI::PositiveNumber);
    gen->add_option("--n", n)->check(CLI::PositiveNumber);
    gen->add_option("--theta", theta, "shear of the chmc route");
    gen->add_option("--K", K, "Gauss curvature of the constant_gauss route");
    gen->add_option("--t", seed_t, "Lawson parameter of the cmc_hyperbolic_unit route");
    gen->add_option("--out", out)->required();

    auto* ana = app.add_subcommand("analyze", "curvatures, fit and regularity report");
    ana->add_option("IN", in)->required();

    auto* spl = app.add_subcommand("omega-split", "attach the Koenigs dual splitting");
    spl->add_option("IN", in)->required();
    spl->add_option("--out", out)->required();
    spl->add_option("--alpha", alpha);
    spl->add_option("--beta", beta);
    spl->add_option("--gamma", gamma);

    auto* cal = app.add_subcommand("calapso", "Calapso deformation");
    cal->add_option("IN", in)->required();
    cal->add_option("--t", t)->required();
    cal->add_option("--g", g);
    cal->add_option("--out", out)->required();

    auto* law = app.add_subcommand("lawson", "Lawson transform");
    law->add_option("IN", in)->required();
    law->add_option("--t", t)->required();
    law->add_option("--mode", mode)->check(CLI::IsMember({"generic", "cmc", "flatfront", "cgc", "chmc"}));
    law->add_option("--out", out)->required();

    auto* par = app.add_subcommand("parallel", "parallel net or classification of the parallel family");
    par->add_option("IN", in)->required();
    par->add_option("--theta", ptheta);
    par->add_flag("--classify", classify);
    par->add_option("--out", out);

    auto* exp = app.add_subcommand("export", "OBJ mesh in a chart");
    exp->add_option("IN", in)->required();
    exp->add_option("--chart", chart)->check(CLI::IsMember({"euclidean", "poincare_ball", "central"}));
    exp->add_option("--out", out)->required();

    auto* ver = app.add_subcommand("verify", "invariant suite");
    ver->add_option("IN", in)->required();
    ver->add_flag("--deep", deep);
    ver->add_option("--fuzz", fuzz, "perturb one vertex with this seed before verifying");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(kind, m, n, theta, K, seed_t, out);
        if (ana->parsed()) return cmd_analyze(in);
        if (spl->parsed()) return cmd_omega_split(in, out, alpha, beta, gamma);
        if (cal->parsed()) return cmd_calapso(in, t, g, out);
        if (law->parsed()) return cmd_lawson(in, t, mode, out);
        if (par->parsed()) return cmd_parallel(in, ptheta, classify, out);
        if (exp->parsed()) return cmd_export(in, chart, out);
        if (ver->parsed()) return cmd_verify(in, deep, fuzz);
    } catch (const GeometryError& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "bad net file: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
