#pragma once

#include "g2flow/liealg.hpp"
#include "g2flow/mat3.hpp"

#include <array>

namespace g2flow {

// Index conventions used throughout:
//   frame        e^i = E_{ij} lambda^j            (det E > 0)
//   connection   a^i = A_{ij} lambda^j            (section gauge)
//   torsion      d_H e^i = 1/2 T^i_{jk} e^j ^ e^k, stored as T(i,j,k)
//   curvature    d_H a^i = G_{ib} ehat^b,  ehat^b = 1/2 eps_{bjk} e^j ^ e^k
//   scalar curvature  R = -2 tr G
//   covariant derivative of an equivariant matrix S:
//       S_{ij;k} = A_{ml} (E^{-1})_{lk} [L_m, S]_{ij}, stored as D(k)(i,j)

struct Frame {
    Mat3 E;
};

struct Connection {
    Mat3 A;
};

struct CurvatureData {
    Mat3 G;
    double R;
    Ten3 T;
};

/// Coefficient matrix in d_H e^i = 1/2 W^i_{mn} lambda^m ^ lambda^n (lambda gauge).
Ten3 torsion_lambda(const Frame& e, const Connection& a, const StructureConstants& c);

/// Torsion in the e-frame. Throws for det E <= 0.
Ten3 torsion(const Frame& e, const Connection& a, const StructureConstants& c);

/// Unique connection with d e^i + eps_{ijk} a^j ^ e^k = 0, from a 9x9 linear solve.
/// Throws std::invalid_argument for det E <= 0 and std::runtime_error when the
/// solve residual is not at roundoff (cannot happen for det E != 0).
Connection levi_civita(const Frame& e, const StructureConstants& c);

/// Curvature of (e, a); G is symmetric whenever a is metric-compatible torsion-free.
CurvatureData einstein_tensor(const Frame& e, const Connection& a, const StructureConstants& c);

using CovDeriv = std::array<Mat3, 3>; // [k](i,j) = S_{ij;k}

CovDeriv covariant_derivative(const Mat3& s, const Frame& e, const Connection& a);

/// v_i = sum_a S_{ia;a}; the momentum constraint in the frame picture.
Vec3 divergence_constraint(const Mat3& s, const Frame& e, const Connection& a);

/// Velocity of the Levi-Civita connection under d/dt e = P e (P symmetric):
/// d/dt a^i = Q_{ig} e^g with Q_{ij} = -eps_{iab} P_{ja;b}.
/// Preconditions: P symmetric; torsion of (e, a) at roundoff. Throws otherwise.
Mat3 connection_variation(const Frame& e, const Connection& a, const Mat3& p,
                          const StructureConstants& c);

/// Rate of S_{ij;k} along a curve with frame velocity P, connection velocity Q
/// (e-frame components) and dS/dt = B:
///   d/dt S_{ij;k} = B_{ij;k} - S_{ij;a} P_{ak} + eps_{iag} S_{gj} Q_{ak}
///                 + eps_{jag} S_{ig} Q_{ak}
CovDeriv covariant_derivative_rate(const Frame& e, const Connection& a, const Mat3& s,
                                   const Mat3& p, const Mat3& q, const Mat3& b);

} // namespace g2flow
