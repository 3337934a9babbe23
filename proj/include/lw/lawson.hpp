#pragma once

#include "lw/connections.hpp"

#include <string>
#include <vector>

namespace lw {

struct TransformedComplexes {
    CVec452 k_plus, k_minus;
    double t = 0;
    double constancy = 0; // spread of the transported complexes over the vertices
    cplx gram_det = 0;    // (k+k+)(k-k-) - (k+k-)^2
    bool generic = true;
};

// k(t) = T^g(t) { k + (t/2) sigma } with g = 1/2, checked to be constant over the grid
TransformedComplexes transport_complexes(const OmegaPair& pair, double t, double tol = 1e-8);

enum class LawsonMode { generic, cmc, flat_front, constant_gauss, constant_harmonic };
std::string to_string(LawsonMode m);
LawsonMode parse_lawson_mode(const std::string& s);

struct LawsonResult {
    LegendreNet net;
    OmegaPair pair;
    TransformedComplexes complexes;
};

LawsonResult lawson_generic(const LegendreNet& net, const OmegaPair& pair, double t);
// the cmc, constant Gauss and constant harmonic mean modes read their curvature from the net
LawsonResult lawson_cmc(const LegendreNet& net, double t);
LawsonResult lawson_flat_front(const LegendreNet& net, double t);
LawsonResult lawson_constant_gauss(const LegendreNet& net, double t);
LawsonResult lawson_constant_harmonic(const LegendreNet& net, double t);

// dispatch by mode; the generic mode splits the net by its fitted coefficients
LawsonResult lawson(const LegendreNet& net, LawsonMode mode, double t);

// coefficients of k = x q + y p in a frame, and the Weingarten triple 2 k+ . k- expands to
WeingartenCoefficients complex_coefficients(const CVec452& k_plus, const CVec452& k_minus, const SpaceFormFrame& frame);

struct LawsonInvariantRow {
    double t;
    cplx kpkp, kmkm, kpkm;
};

struct LawsonInvariantReport {
    std::vector<LawsonInvariantRow> rows;
    double self_drift = 0;   // drift of (k+k+) and (k-k-)
    double slope_defect = 0; // deviation of (k+k-)(t) from (k+k-)(0) - t
};

LawsonInvariantReport lawson_invariants(const OmegaPair& pair, const std::vector<double>& t_samples);

} // namespace lw
