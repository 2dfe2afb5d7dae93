#pragma once

#include "g2flow/flow.hpp"
#include "g2flow/liealg.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace g2flow {

/// Raised for malformed or inconsistent run configuration; the message names the
/// offending field. Maps to exit code 1 at the command line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MonitorKind { state, hamiltonian, constraint, torsion, adm };

struct RunConfig {
    StructureConstants group = preset(Preset::su2);
    Mat3 E0 = Mat3::identity();
    Mat3 S0 = Mat3::identity();
    HamiltonianCoeffs coeffs{};
    double dt = 1e-3;
    double t_end = 1.0;
    std::set<MonitorKind> monitors = {MonitorKind::state, MonitorKind::hamiltonian,
                                      MonitorKind::constraint, MonitorKind::torsion};
    double min_detE = 1e-9;
    double max_norm = 1e9;
    unsigned seed = 0;
};

/// Parses and validates a JSON document:
///   group: preset name, or {"name": ..., "c": 3x3x3 array} (Jacobi-checked)
///   E0, S0: 3x3 arrays (S0 must be symmetric)
///   coeffs: {a, b}; dt, t_end: positive reals
///   monitors: subset of ["state","hamiltonian","constraint","torsion","adm"]
///   stop: {min_detE, max_norm}; seed: integer
/// Missing fields keep their defaults. Throws ConfigError on any violation.
RunConfig parse_run_config(const std::string& json_text);

/// parse_run_config on the contents of a file.
RunConfig load_run_config(const std::string& path);

} // namespace g2flow
