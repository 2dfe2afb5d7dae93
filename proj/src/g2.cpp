#include "g2flow/g2.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

namespace {

InvariantForm gen_wedge3(int g1, int g2, int g3) {
    return wedge(wedge(InvariantForm::generator(g1), InvariantForm::generator(g2)),
                 InvariantForm::generator(g3));
}

InvariantForm a_wedge_e(const Mat3& coeff) {
    InvariantForm r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r += coeff(i, j) * wedge(InvariantForm::generator(gen::a1 + i),
                                     InvariantForm::generator(j));
    return r;
}

InvariantForm assemble_phi(const SU3Structure& su3, double f) {
    return wedge(f * su3.omega, InvariantForm::generator(gen::dt)) + su3.psi;
}

} // namespace

SU3Structure su3_structure(const Mat3& s) {
    double det_s = s.det();
    if (det_s <= 0.0) throw std::invalid_argument("su3_structure: det S must be positive");

    SU3Structure r;
    r.omega = a_wedge_e((1.0 / std::sqrt(det_s)) * adjugate(s));
    r.psi = -det_s * gen_wedge3(gen::e1, gen::e2, gen::e3) +
            gen_wedge3(gen::e1, gen::a2, gen::a3) + gen_wedge3(gen::e2, gen::a3, gen::a1) +
            gen_wedge3(gen::e3, gen::a1, gen::a2);
    return r;
}

G2Form g2_form(const FlowState& st, const StructureConstants&) {
    G2Form r;
    r.flag = classify_definiteness(st.S);
    double det_s = st.S.det();
    if (det_s <= 0.0) return r;

    SU3Structure su3 = su3_structure(st.S);
    r.f = std::sqrt(det_s);
    r.phi = assemble_phi(su3, r.f);
    r.metric = metric_from_phi(r.phi);
    if (r.metric.flag == Definiteness::pos_def) {
        r.star_phi = hodge_star(r.phi, r.metric.g);
        r.star_valid = true;
    }
    return r;
}

std::pair<double, double> half_flat_residual(const SU3Structure& su3,
                                             const StructuralDifferential& sd) {
    double r1 = d(wedge(su3.omega, su3.omega), sd).max_abs_coeff();
    double r2 = d(su3.psi, sd).max_abs_coeff();
    return {r1, r2};
}

TorsionResidual torsion_residual(const FlowState& st, const StructureConstants& c,
                                 const HamiltonianCoeffs& coeffs) {
    TangentTV z = flow_tangent(st, c, coeffs);
    FlowField f = flow_field(st, c, coeffs);
    Frame e{st.E};
    Connection a = levi_civita(e, c);
    Mat3 q = connection_variation(e, a, z.T, c);
    return torsion_residual_with(st, c, z.T, q, f.dS);
}

TorsionResidual torsion_residual_with(const FlowState& st, const StructureConstants& c,
                                      const Mat3& p, const Mat3& q, const Mat3& sdot) {
    double det_s = st.S.det();
    if (det_s <= 0.0)
        throw std::invalid_argument("torsion_residual: det S must be positive");

    Frame e{st.E};
    Connection a = levi_civita(e, c);
    StructuralDifferential sd0 = StructuralDifferential::spatial(e, a, c);

    SU3Structure su3 = su3_structure(st.S);
    double f = std::sqrt(det_s);
    Mat3 stilde = adjugate(st.S);
    double ddet = (stilde * sdot).trace();
    double fdot = 0.5 * ddet / f;

    InvariantForm omega_dot =
        a_wedge_e((1.0 / f) * adjugate_rate(st.S, sdot) - (0.5 * ddet / (f * det_s)) * stilde);
    InvariantForm psi_dot = -ddet * gen_wedge3(gen::e1, gen::e2, gen::e3);

    InvariantForm phi = assemble_phi(su3, f);
    InvariantForm phi_rate =
        wedge(fdot * su3.omega + f * omega_dot, InvariantForm::generator(gen::dt)) + psi_dot;

    TorsionResidual r;
    r.ndphi = d(phi, sd0.with_time(p, q, phi_rate)).max_abs_coeff();

    auto star_of = [](const Mat3& smat) {
        SU3Structure s3 = su3_structure(smat);
        InvariantForm ph = assemble_phi(s3, std::sqrt(smat.det()));
        return hodge_star(ph, metric_from_phi(ph).g);
    };
    InvariantForm star = star_of(st.S);

    double h = 1e-3 * (1.0 + st.S.max_abs()) / (1.0 + sdot.max_abs());
    InvariantForm star_rate =
        (1.0 / (12.0 * h)) *
        (-1.0 * star_of(st.S + 2.0 * h * sdot) + 8.0 * star_of(st.S + h * sdot) -
         8.0 * star_of(st.S - h * sdot) + 1.0 * star_of(st.S - 2.0 * h * sdot));

    r.ndstarphi = d(star, sd0.with_time(p, q, star_rate)).max_abs_coeff();
    return r;
}

DefinitenessTimeline definiteness_classify(const Trajectory& traj) {
    DefinitenessTimeline tl;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        double t = traj.samples[i].t;
        Definiteness flag = i < traj.monitors.size() ? traj.monitors[i].flag
                                                     : classify_definiteness(traj.samples[i].S);
        if (!tl.samples.empty() && tl.samples.back().second != flag)
            tl.transitions.push_back(t);
        tl.samples.emplace_back(t, flag);
    }
    return tl;
}

} // namespace g2flow
