#pragma once

#include "g2flow/frame.hpp"
#include "g2flow/liealg.hpp"
#include "g2flow/mat3.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>

namespace g2flow {

// Exterior algebra of invariant forms on M x SO(3) x (t1,t2), spanned by the
// anticommuting generators below. Basis monomials are products of generators in
// ascending index order, keyed by bitmask; only those canonical coefficients are
// stored, so antisymmetry is structural.
namespace gen {
enum : int { e1 = 0, e2 = 1, e3 = 2, a1 = 3, a2 = 4, a3 = 5, dt = 6 };
constexpr int count = 7;
}

using Matrix7 = Eigen::Matrix<double, 7, 7>;

class InvariantForm {
public:
    static constexpr unsigned kBasis = 1u << gen::count;

    InvariantForm() : c_{} {}

    static InvariantForm generator(int g);
    static InvariantForm monomial(unsigned mask, double coeff);

    double coeff(unsigned mask) const { return c_[mask]; }
    double& coeff(unsigned mask) { return c_[mask]; }

    InvariantForm operator+(const InvariantForm& o) const;
    InvariantForm operator-(const InvariantForm& o) const;
    InvariantForm& operator+=(const InvariantForm& o);
    InvariantForm& operator-=(const InvariantForm& o);

    double max_abs_coeff() const;
    bool all_finite() const;

    /// Zero outside a single exterior degree? Returns that degree, or -1 when the
    /// form is mixed or identically zero.
    int pure_degree() const;

private:
    std::array<double, kBasis> c_;
};

InvariantForm operator*(double s, const InvariantForm& x);

/// Reordering sign of e_A ^ e_B into the canonical monomial; 0 when A and B overlap.
int wedge_sign(unsigned a, unsigned b);

InvariantForm wedge(const InvariantForm& x, const InvariantForm& y);

/// Interior product with the frame vector dual to generator g.
InvariantForm contract(int g, const InvariantForm& x);

/// mu0 = e1^e2^e3^a1^a2^a3^dt, the reference orientation.
InvariantForm reference_volume();

/// Differential data for the invariant sector at one instant.
///
/// Spatial structure equations:
///   d e^i = -eps_{ijk} a^j ^ e^k + 1/2 T^i_{jk} e^j ^ e^k
///   d a^i = -1/2 eps_{ijk} a^j ^ a^k + G_{ib} ehat^b,      d dt = 0
/// plus the equivariance compensation -theta^k ^ rho_k(.), where
/// theta^k = a^k - Theta_{ka} e^a re-expresses the fiber Maurer-Cartan form in the
/// generators (Theta = A E^{-1}) and rho_k rotates generator indices infinitesimally.
/// Without that term d would not square to zero on anisotropic curvature data.
///
/// Time part: dt ^ (coefficient rates + generator rotations e -> P e, a -> Q e).
struct StructuralDifferential {
    Ten3 T;
    Mat3 G;
    Mat3 Theta;
    Mat3 P;
    Mat3 Q;
    InvariantForm coefficient_rates;
    bool has_time = false;

    static StructuralDifferential spatial(const Frame& e, const Connection& a,
                                          const StructureConstants& c);
    StructuralDifferential with_time(const Mat3& p, const Mat3& q,
                                     const InvariantForm& rates) const;
};

InvariantForm d(const InvariantForm& x, const StructuralDifferential& sd);

struct MetricFromPhi {
    Matrix7 g;
    double det_B;
    Definiteness flag;
};

/// Metric of a nondegenerate 3-form phi:
///   B_{ij} mu0 = (i_i phi) ^ (i_j phi) ^ phi,  g = 6^{-2/9} B (det B)^{-1/9}
/// with the real (sign-carrying) ninth root. Throws for non-3-forms and det B = 0;
/// indefinite results are flagged, not errors.
MetricFromPhi metric_from_phi(const InvariantForm& phi);

/// Hodge star for a positive-definite metric in the generator coframe, orientation
/// mu0. Throws std::invalid_argument when g is not symmetric positive-definite.
InvariantForm hodge_star(const InvariantForm& x, const Matrix7& g);

} // namespace g2flow
