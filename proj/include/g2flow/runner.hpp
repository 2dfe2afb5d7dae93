#pragma once

#include "g2flow/config.hpp"

#include <iosfwd>
#include <string>

namespace g2flow {

/// Number serialization used everywhere in CSV output: 17 significant digits,
/// locale-independent.
std::string format_g17(double v);

/// Integrates cfg and streams the trajectory as CSV. Fixed column order:
///   t, E11..E33 (row-major), S11..S33, detE, detS, h, h1, h2, h3,
///   constr1..constr3, constr_norm, dphi_norm, dstarphi_norm, definiteness
/// plus adm_scalar, adm_mom1..adm_mom3, adm_H, adm_HG2, adm_HGR when the adm
/// monitor is enabled. Torsion columns are nan when the torsion monitor is off
/// or det S <= 0. Returns 0 on completion, 2 on early stop (reason on err).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct BsOptions {
    double sigma = 0.25;
    double a0 = 1.0;
    double b0 = 1.0;
    double t_end = 1.0;
    double dt = 1e-3;
    bool compare_full = false;
};

/// Reduced-system trajectory as CSV (t, a, b, x, y, regime). With compare_full,
/// also integrates the embedded full flow on a frame realizing the requested
/// curvature parameter and appends full_a, full_b, dev_a, dev_b columns.
/// Throws ConfigError for a0 <= 0.
int bs_command(const BsOptions& opt, std::ostream& out, std::ostream& err);

/// Integrates cfg under the reference coefficients, applies the scaling map for
/// (kappa, a, b) and reports alpha, beta and the maximum central-difference
/// residual of the scaled samples against the (-aH1+bH2) flow field.
int scale_check_command(const RunConfig& cfg, double kappa, double a, double b,
                        std::ostream& out, std::ostream& err);

struct SweepOptions {
    double sigma = 0.0;
    double a0_min = 0.5, a0_max = 2.0;
    int a0_steps = 4;
    double b0_min = -1.0, b0_max = 1.0;
    int b0_steps = 5;
    double t_end = 1.0;
    double dt = 1e-3;
};

/// Grid of reduced trajectories; one CSV row per grid point with the endpoint
/// and its regime flag.
int sweep_command(const SweepOptions& opt, std::ostream& out, std::ostream& err);

/// Runs the built-in invariant suites (structure-equation d^2 = 0, symplectic
/// gradient identity, constraint preservation, torsion-free orbit, round trips,
/// Hodge involution) and prints one line per suite. Returns 0 only if all pass.
/// corrupt_epsilon flips one sign in the expected-value table of the first
/// suite; used to demonstrate that failures are detected and named.
int selftest_command(bool corrupt_epsilon, unsigned seed, std::ostream& out,
                     std::ostream& err);

} // namespace g2flow
