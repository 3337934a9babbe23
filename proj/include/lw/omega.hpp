#pragma once

#include "lw/spaceform.hpp"

#include <optional>

namespace lw {

struct OmegaPair {
    GridDomain dom;
    VertexField<CVec452> sigma_plus, sigma_minus;
    std::optional<CVec452> k_plus, k_minus;
    VertexField<cplx> r;
    EdgeField<double> a;
    bool conjugate = false;
};

struct MoutardLifts {
    VertexField<CVec452> mu_plus, mu_minus;
};

// per-edge least-squares ratio d(sigma-) = rho d(sigma+) propagated as r_j = rho_ij / r_i,
// first along the bottom row, then up each column
VertexField<cplx> recover_christoffel_ratio(const VertexField<CVec452>& sigma_plus,
                                            const VertexField<CVec452>& sigma_minus, cplx r0 = 1.0,
                                            double tol = 1e-9);

// a_ij = (sigma-_i, sigma+_j), checked for symmetry, reality and the labelling property
EdgeField<double> edge_labelling(const VertexField<CVec452>& sigma_plus, const VertexField<CVec452>& sigma_minus,
                                 double tol = 1e-9);

// assemble a pair from given dual lifts: recovers r and a, and checks the pair identities
OmegaPair make_omega_pair(VertexField<CVec452> sigma_plus, VertexField<CVec452> sigma_minus,
                          std::optional<CVec452> k_plus = {}, std::optional<CVec452> k_minus = {},
                          cplx r0 = 1.0, bool conjugate = false);

OmegaPair split_weingarten(const LegendreNet& net, const WeingartenCoefficients& coeffs, double tol = 1e-10);

// explicit splittings used by the special Lawson modes
OmegaPair cmc_pair(const LegendreNet& net, double H);
OmegaPair flat_front_pair(const LegendreNet& net);
OmegaPair constant_gauss_pair(const LegendreNet& net, double K);
OmegaPair constant_harmonic_pair(const LegendreNet& net, double H_over_K);

MoutardLifts moutard_lifts(const OmegaPair& pair, double tol = 1e-9);

// curvature sphere of an edge, r_i r_j sigma+_i - sigma-_i
CVec452 curvature_sphere_lift(const OmegaPair& pair, const Vertex& i, const Vertex& j);

struct CrossRatio {
    cplx q;
    double consistency = 0; // mismatch of the two coefficient equations
    double coplanarity = 0; // least-squares residual of sigma_k in span(sigma_i, sigma_j, sigma_l)
};

// cross ratio [s_i, s_j, s_k, s_l] of four concircular spheres from any lifts
CrossRatio cross_ratio(const CVec452& si, const CVec452& sj, const CVec452& sk, const CVec452& sl,
                       double tol = 1e-9);
CrossRatio face_cross_ratio(const VertexField<CVec452>& sigma, const Face& face, double tol = 1e-9);
// q^2 from inner products alone
cplx squared_cross_ratio(const CVec452& si, const CVec452& sj, const CVec452& sk, const CVec452& sl);

OmegaPair respan(const OmegaPair& pair, cplx c_plus, cplx c_minus);
// constants placing the new lifts at the base vertex on y+ and y-, both in the contact line there
std::pair<cplx, cplx> respan_constants(const OmegaPair& pair, const CVec452& y_plus, const CVec452& y_minus);
OmegaPair complexify(const OmegaPair& pair);
OmegaPair realify(const OmegaPair& pair);

struct OmegaResiduals {
    double null_and_contact = 0;
    double normalization = 0; // NaN-free zero when the complexes are absent
    double christoffel = 0;
    double koenigs = 0;
    double moutard = 0;
    double labelling_opposite = 0;
    double labelling_symmetry = 0;
    double labelling_imag = 0;
    double cross_ratio = 0;
    double square_identity = 0;
    double moutard_propagation = 0;
    double minus_inner = 0; // (sigma-_i, sigma-_j) = r_i r_j a_ij
    double conjugacy = 0;

    double max() const;
};

OmegaResiduals omega_residuals(const OmegaPair& pair);
// how far the contact lines spanned by the pair are from those of the net
double pair_line_distance(const OmegaPair& pair, const LegendreNet& net);

} // namespace lw
