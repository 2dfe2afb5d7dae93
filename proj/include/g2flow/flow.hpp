#pragma once

#include "g2flow/frame.hpp"
#include "g2flow/liealg.hpp"
#include "g2flow/mat3.hpp"

#include <string>
#include <vector>

namespace g2flow {

/// Point of the constrained phase space. S is the momentum in the moving frame;
/// positive-definiteness of S is tracked as a flag downstream, never enforced.
struct FlowState {
    Mat3 E;
    Mat3 S;
    double t = 0.0;
};

/// Coefficients of the Hamiltonian family -a H1 + b H2. The reference dynamics
/// uses (1/2, 1).
struct HamiltonianCoeffs {
    double a = 0.5;
    double b = 1.0;
};

struct Densities {
    double h1;
    double h2;
    double h3;
    double h;
};

/// h1 = R(E) det E, h2 = det S det E, h3 = det E, h = -1/2 h1 + h2, with the
/// scalar curvature taken at the Levi-Civita connection (as everywhere in the
/// flow). Densities are relative to the fixed reference volume; the constant
/// total volume of the group drops out of the dynamics.
Densities hamiltonian_densities(const FlowState& st, const StructureConstants& c);

/// Tangent vector in (T, V) coordinates: dE = T E and dS = V - tr(T) S.
struct TangentTV {
    Mat3 T;
    Mat3 V;
};

/// The Hamiltonian vector field in (T, V) coordinates: T = b adj(S),
/// V = -2a G + 2b det(S) I.
TangentTV flow_tangent(const FlowState& st, const StructureConstants& c,
                       const HamiltonianCoeffs& coeffs);

struct FlowField {
    Mat3 dE;
    Mat3 dS;
};

/// dE/dt = T E, dS/dt = V - tr(T) S with (T, V) from flow_tangent.
FlowField flow_field(const FlowState& st, const StructureConstants& c,
                     const HamiltonianCoeffs& coeffs);

/// Symplectic pairing density tr(T1 V2 - T2 V1) det E.
double omega_pairing(const TangentTV& z1, const TangentTV& z2, const FlowState& st);

/// Spectrum class of a symmetric matrix; tol is relative to the largest
/// eigenvalue magnitude.
Definiteness classify_definiteness(const Mat3& s, double tol = 1e-10);

enum class StopReason { completed, det_floor, norm_ceiling, non_finite };

const char* to_string(StopReason r);

struct IntegrationConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double det_floor = 1e-9;
    double norm_ceiling = 1e9;
    HamiltonianCoeffs coeffs{};
};

struct MonitorRecord {
    Densities dens;
    Vec3 constraint;
    double constraint_norm;
    double det_S;
    double det_E;
    Definiteness flag;
};

MonitorRecord monitor(const FlowState& st, const StructureConstants& c);

struct Trajectory {
    std::vector<FlowState> samples;
    std::vector<MonitorRecord> monitors;
    StopReason stop = StopReason::completed;
    std::string diagnostic;
};

/// Classical fixed-step RK4 on (E, S). Records state and monitors at t0 and after
/// every step; halts early (stop + diagnostic) when det E drops below the floor,
/// a matrix norm exceeds the ceiling, or a step produces non-finite values.
/// Horizontality (symmetry of dE/dt E^-1 = b adj S) is asserted each step.
Trajectory integrate(const FlowState& initial, const StructureConstants& c,
                     const IntegrationConfig& cfg);

/// One RK4 step of length dt (exposed for step-size studies).
FlowState rk4_step(const FlowState& st, const StructureConstants& c,
                   const HamiltonianCoeffs& coeffs, double dt);

/// Propagation law of the divergence constraint along the reference flow:
/// dv/dt = -tr(adj S) v - (adj S) v.
Vec3 constraint_ode_rhs(const Vec3& v, const Mat3& stilde);

/// Scaling that carries reference-flow solutions to (-a H1 + b H2)-flow solutions:
/// beta = b^{-1/2} kappa^{1/2} and alpha = 2^{1/2} a^{1/2} b^{1/4} kappa^{-3/4},
/// i.e. the identities kappa beta^-2 = b and kappa alpha^2 beta = 2a hold exactly.
struct ScaleFactors {
    double alpha;
    double beta;
    double kappa;
};

/// Throws std::invalid_argument unless kappa, a, b > 0.
ScaleFactors scale_factors(double kappa, const HamiltonianCoeffs& coeffs);

/// E -> alpha E, S -> beta S, t -> t / kappa.
FlowState scale_state(const FlowState& ref, const ScaleFactors& f);

/// Samplewise scale_state with monitors recomputed for the scaled states.
Trajectory scale_map(const Trajectory& ref, double kappa, const HamiltonianCoeffs& coeffs,
                     const StructureConstants& c);

struct VariationRates {
    double dH1;
    double dH2;
    double dH3;
};

/// Rates of H1, H2, H3 along the reference flow (densities):
/// dH1 = -2 tr(G adj S) det E, dH2 = dH1 / 2 (exact), dH3 = tr(adj S) det E.
VariationRates variation_rates(const FlowState& st, const StructureConstants& c);

} // namespace g2flow
