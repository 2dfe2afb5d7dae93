#include "g2flow/reduced.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

std::pair<double, double> reduced_field_ab(const ReducedState& s) {
    if (s.a <= 0.0) throw std::invalid_argument("reduced_field_ab: a must be positive");
    return {s.a * s.b * s.b, s.sigma / (s.a * s.a) - s.b * s.b * s.b};
}

std::pair<double, double> reduced_field_xy(const XYState& s, double sigma) {
    if (s.x <= 0.0) throw std::invalid_argument("reduced_field_xy: x must be positive");
    return {2.0 * s.y * s.y, sigma / std::sqrt(s.x)};
}

double sigma_from_frame(const Frame& e0, const StructureConstants& c) {
    Mat3 g = einstein_tensor(e0, levi_civita(e0, c), c).G;
    double sigma = -g.trace() / 3.0;
    Mat3 defect = g + sigma * Mat3::identity();
    if (defect.max_abs() > 1e-10 * std::max(1.0, g.max_abs()))
        throw std::invalid_argument("sigma_from_frame: curvature is not isotropic");
    return sigma;
}

FlowState embed(const ReducedState& s, const Frame& e0, const StructureConstants& c) {
    if (s.a <= 0.0) throw std::invalid_argument("embed: a must be positive");
    double sigma = sigma_from_frame(e0, c);
    if (std::abs(sigma - s.sigma) > 1e-10 * std::max(1.0, std::abs(s.sigma)))
        throw std::invalid_argument("embed: frame curvature parameter does not match sigma");
    FlowState st;
    st.E = s.a * e0.E;
    st.S = s.b * Mat3::identity();
    st.t = 0.0;
    return st;
}

std::pair<double, double> closed_form_sigma0(double a0, double b0, double t) {
    if (a0 <= 0.0) throw std::invalid_argument("closed_form_sigma0: a0 must be positive");
    double u = 1.0 + 2.0 * b0 * b0 * t;
    if (u <= 0.0) throw std::invalid_argument("closed_form_sigma0: outside solution domain");
    double root = std::sqrt(u);
    return {a0 * root, b0 / root};
}

std::vector<ReducedSample> integrate_reduced(const ReducedState& s0, double dt, double t_end) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_reduced: dt must be positive");
    if (s0.a <= 0.0) throw std::invalid_argument("integrate_reduced: a must be positive");

    std::vector<ReducedSample> out;
    out.push_back({0.0, s0.a, s0.b});

    auto field = [&](double a, double b) {
        return reduced_field_ab(ReducedState{a, b, s0.sigma});
    };

    const long nsteps = std::lround(t_end / dt);
    double a = s0.a, b = s0.b;
    for (long k = 1; k <= nsteps; ++k) {
        auto [k1a, k1b] = field(a, b);
        auto [k2a, k2b] = field(a + 0.5 * dt * k1a, b + 0.5 * dt * k1b);
        auto [k3a, k3b] = field(a + 0.5 * dt * k2a, b + 0.5 * dt * k2b);
        auto [k4a, k4b] = field(a + dt * k3a, b + dt * k3b);
        a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) break;
        out.push_back({static_cast<double>(k) * dt, a, b});
    }
    return out;
}

} // namespace g2flow
