#pragma once

#include "g2flow/flow.hpp"

#include <utility>
#include <vector>

namespace g2flow {

/// Isotropic two-parameter reduction: frame scale a, momentum scale b, on a
/// background of constant curvature sigma (G = -sigma I).
struct ReducedState {
    double a;
    double b;
    double sigma;
};

struct XYState {
    double x; // a^2
    double y; // a b
};

/// da/dt = a b^2, db/dt = sigma a^-2 - b^3. Throws unless a > 0.
std::pair<double, double> reduced_field_ab(const ReducedState& s);

/// dx/dt = 2 y^2, dy/dt = sigma x^-1/2. Throws unless x > 0.
std::pair<double, double> reduced_field_xy(const XYState& s, double sigma);

/// Reads sigma off the frame: requires the curvature of (e0, Levi-Civita) to be
/// isotropic, G = -sigma I, to within 1e-10 relative. Throws otherwise.
double sigma_from_frame(const Frame& e0, const StructureConstants& c);

/// i: (a, b) -> (a E0, b I). Checks that the frame's curvature parameter agrees
/// with s.sigma; throws on mismatch or anisotropy.
FlowState embed(const ReducedState& s, const Frame& e0, const StructureConstants& c);

/// Exact sigma = 0 solution: a(t) = a0 sqrt(1 + 2 b0^2 t), b(t) = b0 / that
/// (so a b = a0 b0 for all admissible t). Throws outside the domain
/// a0 > 0, 1 + 2 b0^2 t > 0.
std::pair<double, double> closed_form_sigma0(double a0, double b0, double t);

struct ReducedSample {
    double t;
    double a;
    double b;
};

/// Fixed-step RK4 on (a, b) at the state's sigma; stops early if a leaves
/// (0, inf) or values turn non-finite.
std::vector<ReducedSample> integrate_reduced(const ReducedState& s0, double dt, double t_end);

} // namespace g2flow
