#include "g2flow/flow.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace g2flow {

namespace {

CurvatureData curvature_at(const FlowState& st, const StructureConstants& c) {
    Frame e{st.E};
    Connection a = levi_civita(e, c);
    return einstein_tensor(e, a, c);
}

} // namespace

Densities hamiltonian_densities(const FlowState& st, const StructureConstants& c) {
    double det_e = st.E.det();
    double r = curvature_at(st, c).R;
    Densities d;
    d.h1 = r * det_e;
    d.h2 = st.S.det() * det_e;
    d.h3 = det_e;
    d.h = -0.5 * d.h1 + d.h2;
    return d;
}

TangentTV flow_tangent(const FlowState& st, const StructureConstants& c,
                       const HamiltonianCoeffs& coeffs) {
    Mat3 stilde = adjugate(st.S);
    Mat3 g = curvature_at(st, c).G;
    TangentTV z;
    z.T = coeffs.b * stilde;
    z.V = -2.0 * coeffs.a * g + (2.0 * coeffs.b * st.S.det()) * Mat3::identity();
    return z;
}

FlowField flow_field(const FlowState& st, const StructureConstants& c,
                     const HamiltonianCoeffs& coeffs) {
    TangentTV z = flow_tangent(st, c, coeffs);
    FlowField f;
    f.dE = z.T * st.E;
    f.dS = z.V - z.T.trace() * st.S;
    return f;
}

double omega_pairing(const TangentTV& z1, const TangentTV& z2, const FlowState& st) {
    return (z1.T * z2.V - z2.T * z1.V).trace() * st.E.det();
}

Definiteness classify_definiteness(const Mat3& s, double tol) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = s(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    Eigen::Vector3d ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0 || ev.cwiseAbs().minCoeff() <= tol * scale) return Definiteness::singular;
    if (ev.minCoeff() > 0.0) return Definiteness::pos_def;
    if (ev.maxCoeff() < 0.0) return Definiteness::neg_def;
    return Definiteness::indef;
}

const char* to_string(StopReason r) {
    switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::det_floor: return "det_floor";
    case StopReason::norm_ceiling: return "norm_ceiling";
    case StopReason::non_finite: return "non_finite";
    }
    return "?";
}

MonitorRecord monitor(const FlowState& st, const StructureConstants& c) {
    MonitorRecord m;
    m.dens = hamiltonian_densities(st, c);
    Frame e{st.E};
    Connection a = levi_civita(e, c);
    m.constraint = divergence_constraint(st.S, e, a);
    m.constraint_norm = norm(m.constraint);
    m.det_S = st.S.det();
    m.det_E = st.E.det();
    m.flag = classify_definiteness(st.S);
    return m;
}

FlowState rk4_step(const FlowState& st, const StructureConstants& c,
                   const HamiltonianCoeffs& coeffs, double dt) {
    auto eval = [&](const Mat3& e, const Mat3& s) {
        return flow_field(FlowState{e, s, 0.0}, c, coeffs);
    };
    FlowField k1 = eval(st.E, st.S);
    FlowField k2 = eval(st.E + 0.5 * dt * k1.dE, st.S + 0.5 * dt * k1.dS);
    FlowField k3 = eval(st.E + 0.5 * dt * k2.dE, st.S + 0.5 * dt * k2.dS);
    FlowField k4 = eval(st.E + dt * k3.dE, st.S + dt * k3.dS);

    FlowState next;
    next.E = st.E + (dt / 6.0) * (k1.dE + 2.0 * k2.dE + 2.0 * k3.dE + k4.dE);
    next.S = st.S + (dt / 6.0) * (k1.dS + 2.0 * k2.dS + 2.0 * k3.dS + k4.dS);
    next.t = st.t + dt;
    return next;
}

Trajectory integrate(const FlowState& initial, const StructureConstants& c,
                     const IntegrationConfig& cfg) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("integrate: dt must be positive");
    if (cfg.t_end <= initial.t) throw std::invalid_argument("integrate: t_end must exceed t0");

    Trajectory traj;
    traj.samples.push_back(initial);
    traj.monitors.push_back(monitor(initial, c));

    const long nsteps = std::lround((cfg.t_end - initial.t) / cfg.dt);
    FlowState cur = initial;
    for (long k = 1; k <= nsteps; ++k) {
        if (cur.E.det() < cfg.det_floor) {
            traj.stop = StopReason::det_floor;
            traj.diagnostic = "det E fell below floor at t = " + std::to_string(cur.t);
            return traj;
        }
        if (std::max(cur.E.max_abs(), cur.S.max_abs()) > cfg.norm_ceiling) {
            traj.stop = StopReason::norm_ceiling;
            traj.diagnostic = "state norm exceeded ceiling at t = " + std::to_string(cur.t);
            return traj;
        }

        FlowState next;
        try {
            next = rk4_step(cur, c, cfg.coeffs, cfg.dt);
        } catch (const std::exception& ex) {
            traj.stop = StopReason::non_finite;
            traj.diagnostic = std::string("step failed at t = ") + std::to_string(cur.t) +
                              ": " + ex.what();
            return traj;
        }
        next.t = initial.t + static_cast<double>(k) * cfg.dt;
        if (!next.E.all_finite() || !next.S.all_finite()) {
            traj.stop = StopReason::non_finite;
            traj.diagnostic = "non-finite value produced at t = " + std::to_string(next.t);
            return traj;
        }

        Mat3 horiz = cfg.coeffs.b * adjugate(next.S);
        double tol = 1e-12 * std::max(1.0, horiz.max_abs());
        if (!is_symmetric(horiz, tol) || !is_symmetric(next.S, tol))
            throw std::runtime_error("integrate: horizontality lost (asymmetric momentum)");

        traj.samples.push_back(next);
        traj.monitors.push_back(monitor(next, c));
        cur = next;
    }
    return traj;
}

Vec3 constraint_ode_rhs(const Vec3& v, const Mat3& stilde) {
    return (-stilde.trace()) * v - stilde * v;
}

ScaleFactors scale_factors(double kappa, const HamiltonianCoeffs& coeffs) {
    if (kappa <= 0.0 || coeffs.a <= 0.0 || coeffs.b <= 0.0)
        throw std::invalid_argument("scale_factors: kappa, a, b must be positive");
    ScaleFactors f;
    f.kappa = kappa;
    f.beta = std::sqrt(kappa / coeffs.b);
    f.alpha = std::sqrt(2.0 * coeffs.a) * std::pow(coeffs.b, 0.25) * std::pow(kappa, -0.75);
    return f;
}

FlowState scale_state(const FlowState& ref, const ScaleFactors& f) {
    FlowState out;
    out.E = f.alpha * ref.E;
    out.S = f.beta * ref.S;
    out.t = ref.t / f.kappa;
    return out;
}

Trajectory scale_map(const Trajectory& ref, double kappa, const HamiltonianCoeffs& coeffs,
                     const StructureConstants& c) {
    ScaleFactors f = scale_factors(kappa, coeffs);
    Trajectory out;
    out.stop = ref.stop;
    out.diagnostic = ref.diagnostic;
    out.samples.reserve(ref.samples.size());
    out.monitors.reserve(ref.samples.size());
    for (const FlowState& st : ref.samples) {
        FlowState scaled = scale_state(st, f);
        out.samples.push_back(scaled);
        out.monitors.push_back(monitor(scaled, c));
    }
    return out;
}

VariationRates variation_rates(const FlowState& st, const StructureConstants& c) {
    Mat3 stilde = adjugate(st.S);
    Mat3 g = curvature_at(st, c).G;
    double det_e = st.E.det();
    VariationRates r;
    r.dH1 = -2.0 * (g * stilde).trace() * det_e;
    r.dH2 = 0.5 * r.dH1;
    r.dH3 = stilde.trace() * det_e;
    return r;
}

} // namespace g2flow
