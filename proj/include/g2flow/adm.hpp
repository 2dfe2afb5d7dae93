#pragma once

#include "g2flow/flow.hpp"

namespace g2flow {

/// Metric/momentum pair in the fixed background coframe. pi carries its volume
/// density as an explicit det-E factor, so both fields are plain matrices.
struct ADMState {
    Mat3 gamma;
    Mat3 pi;
};

/// gamma = E^t E, pi = 1/2 E^-1 S (E^t)^-1 det E. Throws for det E <= 0.
ADMState to_adm(const FlowState& st);

/// Inverse of to_adm through the symmetric positive-definite square root of
/// gamma (a fixed gauge section, making round trips deterministic):
/// E = sqrt(gamma), S = 2 E pi E^t / det E. Throws unless gamma is
/// positive-definite.
FlowState from_adm(const ADMState& adm);

struct ADMHamiltonians {
    double H;   // -1/2 R det E + det S det E
    double HG2; // -R det E + 1/8 det S det E
    double HGR; // -R det E + (tr(p^2) - 1/2 tr(p)^2) / det E, p = gamma pi
};

/// Hamiltonian densities in ADM variables. The det S det E term is evaluated
/// through the mixed-index determinant identity 8 det(gamma pi) / det(E)^2 =
/// det S det E, and traces of pi are index-raised (traces of gamma pi).
ADMHamiltonians adm_hamiltonians(const ADMState& adm, const StructureConstants& c);

struct ADMConstraints {
    double scalar; // R det(E)^2 + 1/2 tr(p)^2 - tr(p^2), p = gamma pi
    Vec3 momentum; // divergence of the momentum, evaluated in the frame picture
};

ADMConstraints adm_constraints(const ADMState& adm, const StructureConstants& c);

} // namespace g2flow
