#pragma once

#include "g2flow/flow.hpp"
#include "g2flow/forms.hpp"

#include <utility>
#include <vector>

namespace g2flow {

/// Pair (omega, psi) over the generator basis. Both have vanishing fiber
/// restriction by construction: omega carries no a^a monomials and psi no
/// a^a^a monomial.
struct SU3Structure {
    InvariantForm omega;
    InvariantForm psi;
};

/// omega = (det S)^{-1/2} adj(S)_{ij} a^i ^ e^j,
/// psi   = -det(S) e1^e2^e3 + e1^a2^a3 + e2^a3^a1 + e3^a1^a2.
/// The generator-basis coefficients depend on S alone; the frame and connection
/// enter later through the differential. Throws std::invalid_argument unless
/// det S > 0.
SU3Structure su3_structure(const Mat3& s);

struct G2Form {
    InvariantForm phi;      // f omega ^ dt + psi
    double f = 0.0;         // (det S)^{1/2}
    InvariantForm star_phi; // Hodge dual for the recovered metric
    MetricFromPhi metric;
    Definiteness flag = Definiteness::singular; // sign class of S
    bool star_valid = false;
};

/// Assembles phi at the Levi-Civita connection, recovers the 7-metric from phi
/// and computes star_phi from it. When det S <= 0 (or the recovered metric is
/// not positive-definite) the result carries only the flag; no forms are built.
G2Form g2_form(const FlowState& st, const StructureConstants& c);

/// (max |coeff| of d(omega^omega), max |coeff| of d psi) for the spatial
/// differential sd. Both vanish exactly when A is Levi-Civita and the divergence
/// constraint of S is zero.
std::pair<double, double> half_flat_residual(const SU3Structure& su3,
                                             const StructuralDifferential& sd);

struct TorsionResidual {
    double ndphi;
    double ndstarphi;
};

/// Coefficient-max-norms of d phi and d star_phi on the product with the time
/// interval, with time data taken from the flow: P = b adj S, Q from the
/// connection variation, and coefficient rates by the chain rule through S(t).
/// The star_phi rates use a fourth-order difference in S along dS/dt (the
/// star coefficients are a function of S alone). Throws unless det S > 0.
TorsionResidual torsion_residual(const FlowState& st, const StructureConstants& c,
                                 const HamiltonianCoeffs& coeffs);

/// Same residuals with explicit time data; used for off-orbit controls
/// (e.g. freezing dS/dt = 0 while keeping the flow's P and Q).
TorsionResidual torsion_residual_with(const FlowState& st, const StructureConstants& c,
                                      const Mat3& p, const Mat3& q, const Mat3& sdot);

struct DefinitenessTimeline {
    std::vector<std::pair<double, Definiteness>> samples;
    std::vector<double> transitions; // t of the first sample after each flag change
};

DefinitenessTimeline definiteness_classify(const Trajectory& traj);

} // namespace g2flow
