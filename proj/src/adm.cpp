#include "g2flow/adm.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace g2flow {

namespace {

Mat3 symmetric_sqrt(const Mat3& gamma) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = gamma(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("from_adm: gamma is not positive-definite");
    Eigen::Matrix3d r = es.operatorSqrt();
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = r(i, j);
    return out;
}

double scalar_curvature(const Mat3& e_mat, const StructureConstants& c) {
    Frame e{e_mat};
    return einstein_tensor(e, levi_civita(e, c), c).R;
}

} // namespace

ADMState to_adm(const FlowState& st) {
    double det_e = st.E.det();
    if (det_e <= 0.0) throw std::invalid_argument("to_adm: det E must be positive");
    Mat3 einv = inverse(st.E);
    ADMState adm;
    adm.gamma = st.E.transpose() * st.E;
    adm.pi = 0.5 * det_e * (einv * st.S * einv.transpose());
    return adm;
}

FlowState from_adm(const ADMState& adm) {
    FlowState st;
    st.E = symmetric_sqrt(adm.gamma);
    st.S = (2.0 / st.E.det()) * (st.E * adm.pi * st.E.transpose());
    st.t = 0.0;
    return st;
}

ADMHamiltonians adm_hamiltonians(const ADMState& adm, const StructureConstants& c) {
    FlowState st = from_adm(adm);
    double det_e = st.E.det();
    double r = scalar_curvature(st.E, c);

    Mat3 p = adm.gamma * adm.pi;
    double h2 = 8.0 * p.det() / (det_e * det_e);
    double trp = p.trace();
    double trp2 = (p * p).trace();

    ADMHamiltonians h;
    h.H = -0.5 * r * det_e + h2;
    h.HG2 = -r * det_e + 0.125 * h2;
    h.HGR = -r * det_e + (trp2 - 0.5 * trp * trp) / det_e;
    return h;
}

ADMConstraints adm_constraints(const ADMState& adm, const StructureConstants& c) {
    FlowState st = from_adm(adm);
    double det_e = st.E.det();
    double r = scalar_curvature(st.E, c);

    Mat3 p = adm.gamma * adm.pi;
    double trp = p.trace();
    double trp2 = (p * p).trace();

    ADMConstraints out;
    out.scalar = r * det_e * det_e + 0.5 * trp * trp - trp2;
    Frame e{st.E};
    out.momentum = divergence_constraint(st.S, e, levi_civita(e, c));
    return out;
}

} // namespace g2flow
