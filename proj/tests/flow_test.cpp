#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"
#include "g2flow/liealg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace g2flow;

namespace {

Mat3 random_sym(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
}

Mat3 random_near_identity(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat3 m = Mat3::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += u(rng);
    return m;
}

} // namespace

TEST_CASE("hamiltonian densities on reference states") {
    Densities d0 = hamiltonian_densities({Mat3::identity(), Mat3::identity(), 0.0},
                                         preset(Preset::abelian));
    CHECK(d0.h1 == doctest::Approx(0.0));
    CHECK(d0.h2 == doctest::Approx(1.0));
    CHECK(d0.h3 == doctest::Approx(1.0));
    CHECK(d0.h == doctest::Approx(1.0));

    double a = 2.0, b = 0.5;
    Densities d1 = hamiltonian_densities(
        {a * Mat3::identity(), b * Mat3::identity(), 0.0}, preset(Preset::su2));
    CHECK(d1.h1 == doctest::Approx(1.5 * a).epsilon(1e-12));
    CHECK(d1.h2 == doctest::Approx(a * a * a * b * b * b).epsilon(1e-12));
    CHECK(d1.h3 == doctest::Approx(a * a * a).epsilon(1e-12));
    CHECK(d1.h == doctest::Approx(-0.75 * a + a * a * a * b * b * b).epsilon(1e-12));

    Densities d2 =
        hamiltonian_densities({Mat3::identity(), Mat3{}, 0.0}, preset(Preset::su2));
    CHECK(d2.h1 == doctest::Approx(1.5));
    CHECK(d2.h2 == doctest::Approx(0.0));
    CHECK(d2.h == doctest::Approx(-0.75));
}

TEST_CASE("flow field on reference states") {
    HamiltonianCoeffs ref{};
    double a = 2.0, b = 3.0;
    FlowField f = flow_field({a * Mat3::identity(), b * Mat3::identity(), 0.0},
                             preset(Preset::su2), ref);
    CHECK((f.dE - (a * b * b) * Mat3::identity()).max_abs() <= 1e-12 * a * b * b);
    double ds = 0.25 / (a * a) - b * b * b;
    CHECK((f.dS - ds * Mat3::identity()).max_abs() <= 1e-10);

    FlowField g = flow_field({Mat3::identity(), Mat3::identity(), 0.0},
                             preset(Preset::abelian), ref);
    CHECK((g.dE - Mat3::identity()).max_abs() <= 1e-13);
    CHECK((g.dS + Mat3::identity()).max_abs() <= 1e-13);

    // S = 0 freezes the frame and pushes S by minus the Einstein tensor.
    Frame e{Mat3::diagonal(1.0, 2.0, 0.5)};
    FlowField h = flow_field({e.E, Mat3{}, 0.0}, preset(Preset::su2), ref);
    Mat3 gE = einstein_tensor(e, levi_civita(e, preset(Preset::su2)),
                              preset(Preset::su2)).G;
    CHECK(h.dE.max_abs() == 0.0);
    CHECK((h.dS + gE).max_abs() <= 1e-12);
}

TEST_CASE("symplectic pairing examples and gradient identity") {
    FlowState st{Mat3::identity(), Mat3::identity(), 0.0};
    TangentTV z1{Mat3::identity(), Mat3{}};
    TangentTV z2{Mat3{}, Mat3::identity()};
    CHECK(omega_pairing(z1, z1, st) == doctest::Approx(0.0));
    CHECK(omega_pairing(z1, z2, st) == doctest::Approx(3.0));
    CHECK(omega_pairing(z2, z1, st) == doctest::Approx(-3.0));

    // Omega(X_H, Z) equals the directional derivative of h along Z.
    std::mt19937 rng(43u);
    const StructureConstants& su2 = preset(Preset::su2);
    for (int rep = 0; rep < 10; ++rep) {
        FlowState base{random_near_identity(rng, 0.2), random_sym(rng), 0.0};
        if (base.E.det() <= 0.3) continue;
        TangentTV x = flow_tangent(base, su2, HamiltonianCoeffs{});
        TangentTV z{random_sym(rng), random_sym(rng)};
        double s = 1e-5;
        auto shifted = [&](double sign) {
            FlowState st2 = base;
            st2.E = (Mat3::identity() + (sign * s) * z.T) * base.E;
            st2.S = base.S + (sign * s) * (z.V - z.T.trace() * base.S);
            return hamiltonian_densities(st2, su2).h;
        };
        double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * s);
        double lhs = omega_pairing(x, z, base);
        CHECK(lhs == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("abelian closed form is reproduced by the integrator") {
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    Trajectory tr = integrate({Mat3::identity(), Mat3::identity(), 0.0},
                              preset(Preset::abelian), cfg);
    REQUIRE(tr.stop == StopReason::completed);
    const FlowState& last = tr.samples.back();
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(last.E(0, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    CHECK(last.S(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));
    CHECK(last.E(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("energy density is conserved along the round orbit") {
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    Trajectory tr = integrate({Mat3::identity(), Mat3::identity(), 0.0},
                              preset(Preset::su2), cfg);
    REQUIRE(tr.stop == StopReason::completed);
    double h0 = tr.monitors.front().dens.h;
    CHECK(h0 == doctest::Approx(0.25));
    double drift = 0.0;
    for (const MonitorRecord& m : tr.monitors)
        drift = std::max(drift, std::abs(m.dens.h - h0));
    CHECK(drift <= 1e-9);
}

TEST_CASE("integrator drift shrinks at fourth order in the step") {
    auto drift_at = [](double dt) {
        IntegrationConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        Trajectory tr = integrate({Mat3::identity(), Mat3::identity(), 0.0},
                                  preset(Preset::su2), cfg);
        double h0 = tr.monitors.front().dens.h;
        double worst = 0.0;
        for (const MonitorRecord& m : tr.monitors)
            worst = std::max(worst, std::abs(m.dens.h - h0));
        return worst;
    };
    double coarse = drift_at(0.05);
    double fine = drift_at(0.025);
    REQUIRE(fine > 1e-14);
    double ratio = coarse / fine;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("stationary point of the flat flow") {
    IntegrationConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.2;
    FlowState init{Mat3::diagonal(1.0, 2.0, 3.0), Mat3{}, 0.0};
    Trajectory tr = integrate(init, preset(Preset::abelian), cfg);
    for (const FlowState& s : tr.samples) {
        CHECK((s.E - init.E).max_abs() == 0.0);
        CHECK(s.S.max_abs() == 0.0);
    }
}

TEST_CASE("constraint stays zero when it starts zero") {
    std::mt19937 rng(47u);
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    // Isotropic frames annihilate the divergence of every symmetric momentum.
    // A positive-definite S keeps the orbit clear of the cubic blow-up regime
    // (indefinite momenta of this size can degenerate before t = 1).
    FlowState init{1.3 * Mat3::identity(), random_sym(rng, 0.4) + 0.5 * Mat3::identity(), 0.0};
    Trajectory tr = integrate(init, preset(Preset::su2), cfg);
    REQUIRE(tr.stop == StopReason::completed);
    CHECK(tr.monitors.front().constraint_norm <= 1e-12);
    double worst = 0.0;
    for (const MonitorRecord& m : tr.monitors)
        worst = std::max(worst, m.constraint_norm);
    CHECK(worst <= 1e-8);
}

TEST_CASE("a violated constraint follows the linear propagation law") {
    const StructureConstants& su2 = preset(Preset::su2);
    FlowState st{Mat3::diagonal(1.0, 1.4, 0.7), Mat3{}, 0.0};
    std::mt19937 rng(53u);
    st.S = random_sym(rng, 0.4);
    Vec3 v0 = divergence_constraint(st.S, Frame{st.E}, levi_civita(Frame{st.E}, su2));
    REQUIRE(norm(v0) > 1e-3);

    double dt = 1e-3;
    double t_end = 0.5;
    HamiltonianCoeffs ref{};
    Vec3 v = v0;
    FlowState cur = st;
    auto stilde_at = [&](const FlowState& s) { return adjugate(s.S); };
    int steps = static_cast<int>(t_end / dt + 0.5);
    for (int k = 0; k < steps; ++k) {
        FlowState half = rk4_step(cur, su2, ref, 0.5 * dt);
        FlowState full = rk4_step(cur, su2, ref, dt);
        Vec3 k1 = constraint_ode_rhs(v, stilde_at(cur));
        Vec3 k2 = constraint_ode_rhs(v + (0.5 * dt) * k1, stilde_at(half));
        Vec3 k3 = constraint_ode_rhs(v + (0.5 * dt) * k2, stilde_at(half));
        Vec3 k4 = constraint_ode_rhs(v + dt * k3, stilde_at(full));
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        cur = full;
    }
    Vec3 measured = divergence_constraint(cur.S, Frame{cur.E}, levi_civita(Frame{cur.E}, su2));
    CHECK(norm(measured - v) <= 10.0 * dt * (1.0 + norm(measured)));
}

TEST_CASE("constraint propagation right-hand side") {
    Vec3 zero{0.0, 0.0, 0.0};
    CHECK(norm(constraint_ode_rhs(zero, Mat3::diagonal(2.0, -1.0, 5.0))) == 0.0);

    Vec3 v{0.3, -0.7, 1.1};
    Vec3 r = constraint_ode_rhs(v, Mat3::identity());
    CHECK(norm(r - (-4.0) * v) <= 1e-14);

    Vec3 e1{1.0, 0.0, 0.0};
    Vec3 r2 = constraint_ode_rhs(e1, Mat3::diagonal(1.0, 2.0, 3.0));
    CHECK(r2[0] == doctest::Approx(-7.0));
    CHECK(r2[1] == doctest::Approx(0.0));
    CHECK(r2[2] == doctest::Approx(0.0));
}

TEST_CASE("variation rates on reference states") {
    const StructureConstants& su2 = preset(Preset::su2);
    VariationRates r0 = variation_rates({Mat3::identity(), Mat3{}, 0.0}, su2);
    CHECK(r0.dH1 == doctest::Approx(0.0));
    CHECK(r0.dH2 == doctest::Approx(0.0));
    CHECK(r0.dH3 == doctest::Approx(0.0));

    VariationRates r1 = variation_rates({Mat3::identity(), Mat3::identity(), 0.0}, su2);
    CHECK(r1.dH1 == doctest::Approx(1.5));
    CHECK(r1.dH2 == doctest::Approx(0.75));
    CHECK(r1.dH3 == doctest::Approx(3.0));

    std::mt19937 rng(59u);
    Mat3 s = random_sym(rng);
    VariationRates r2 =
        variation_rates({Mat3::diagonal(2.0, 1.0, 1.5), s, 0.0}, preset(Preset::abelian));
    CHECK(r2.dH1 == doctest::Approx(0.0));
    CHECK(r2.dH2 == doctest::Approx(0.0));
    CHECK(r2.dH3 == doctest::Approx(adjugate(s).trace() * 3.0).epsilon(1e-12));
}

TEST_CASE("variation rates match finite differences along the flow") {
    std::mt19937 rng(61u);
    const StructureConstants* groups[] = {&preset(Preset::su2),
                                          &preset(Preset::heisenberg)};
    HamiltonianCoeffs ref{};
    for (const StructureConstants* c : groups)
        for (int rep = 0; rep < 5; ++rep) {
            FlowState st{random_near_identity(rng, 0.2), random_sym(rng), 0.0};
            if (st.E.det() <= 0.3) continue;
            VariationRates r = variation_rates(st, *c);
            double h = 1e-4;
            Densities plus = hamiltonian_densities(rk4_step(st, *c, ref, h), *c);
            Densities minus = hamiltonian_densities(rk4_step(st, *c, ref, -h), *c);
            CHECK(r.dH1 ==
                  doctest::Approx((plus.h1 - minus.h1) / (2 * h)).epsilon(1e-6));
            CHECK(r.dH2 ==
                  doctest::Approx((plus.h2 - minus.h2) / (2 * h)).epsilon(1e-6));
            CHECK(r.dH3 ==
                  doctest::Approx((plus.h3 - minus.h3) / (2 * h)).epsilon(1e-6));
            // The halving identity is algebraic, not approximate.
            CHECK(r.dH2 == 0.5 * r.dH1);
        }
}

TEST_CASE("volume rate is positive for definite momenta") {
    const StructureConstants& su2 = preset(Preset::su2);
    Mat3 e = Mat3::diagonal(1.0, 2.0, 1.5);
    VariationRates pos = variation_rates({e, Mat3::diagonal(1.0, 2.0, 3.0), 0.0}, su2);
    CHECK(pos.dH3 > 0.0);
    VariationRates neg = variation_rates({e, Mat3::diagonal(-1.0, -2.0, -3.0), 0.0}, su2);
    CHECK(neg.dH3 > 0.0);
}

TEST_CASE("scale factors and their defining identities") {
    ScaleFactors id = scale_factors(1.0, HamiltonianCoeffs{0.5, 1.0});
    CHECK(id.alpha == doctest::Approx(1.0));
    CHECK(id.beta == doctest::Approx(1.0));

    ScaleFactors f = scale_factors(1.0, HamiltonianCoeffs{1.0, 0.125});
    CHECK(f.beta == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
    CHECK(f.alpha == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));

    for (double kappa : {0.5, 1.0, 2.0, 3.0})
        for (HamiltonianCoeffs c : {HamiltonianCoeffs{0.5, 1.0}, HamiltonianCoeffs{1.0, 0.125},
                                    HamiltonianCoeffs{2.0, 1.0}}) {
            ScaleFactors g = scale_factors(kappa, c);
            CHECK(kappa / (g.beta * g.beta) == doctest::Approx(c.b).epsilon(1e-14));
            CHECK(kappa * g.alpha * g.alpha * g.beta ==
                  doctest::Approx(2.0 * c.a).epsilon(1e-14));
        }

    CHECK_THROWS_AS(scale_factors(0.0, HamiltonianCoeffs{}), std::invalid_argument);
    CHECK_THROWS_AS(scale_factors(1.0, HamiltonianCoeffs{-1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scale_factors(1.0, HamiltonianCoeffs{1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("scaled trajectories solve the rescaled flow") {
    const StructureConstants& ab = preset(Preset::abelian);
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    Trajectory ref = integrate({Mat3::identity(), Mat3::identity(), 0.0}, ab, cfg);
    REQUIRE(ref.stop == StopReason::completed);

    // kappa = 1 with reference coefficients is the identity map.
    Trajectory same = scale_map(ref, 1.0, HamiltonianCoeffs{0.5, 1.0}, ab);
    CHECK((same.samples.back().E - ref.samples.back().E).max_abs() == 0.0);
    CHECK((same.samples.back().S - ref.samples.back().S).max_abs() == 0.0);

    double kappa = 2.0;
    HamiltonianCoeffs target{1.0, 0.125};
    Trajectory scaled = scale_map(ref, kappa, target, ab);
    REQUIRE(scaled.samples.size() == ref.samples.size());
    double dtp = cfg.dt / kappa;
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < scaled.samples.size(); ++k) {
        auto stencil = [&](auto get) {
            return (-get(k + 2) + 8.0 * get(k + 1) - 8.0 * get(k - 1) + get(k - 2)) /
                   (12.0 * dtp);
        };
        FlowField want = flow_field(scaled.samples[k], ab, target);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double de = stencil([&](std::size_t m) { return scaled.samples[m].E(i, j); });
                double ds = stencil([&](std::size_t m) { return scaled.samples[m].S(i, j); });
                worst = std::max(worst, std::abs(de - want.dE(i, j)));
                worst = std::max(worst, std::abs(ds - want.dS(i, j)));
            }
    }
    CHECK(worst <= 1e-8);
    CHECK(scaled.samples[1].t == doctest::Approx(cfg.dt / kappa));
}

TEST_CASE("definiteness classification") {
    CHECK(classify_definiteness(Mat3::diagonal(1.0, 2.0, 3.0)) == Definiteness::pos_def);
    CHECK(classify_definiteness(Mat3::diagonal(-1.0, -2.0, -3.0)) ==
          Definiteness::neg_def);
    CHECK(classify_definiteness(Mat3::diagonal(1.0, -1.0, 2.0)) == Definiteness::indef);
    CHECK(classify_definiteness(Mat3::diagonal(1.0, 0.0, 2.0)) == Definiteness::singular);
    CHECK(classify_definiteness(Mat3::diagonal(1.0, 1e-14, 2.0)) ==
          Definiteness::singular);
    CHECK(classify_definiteness(Mat3{}) == Definiteness::singular);
}

TEST_CASE("early stop on the determinant floor") {
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.det_floor = 0.5;
    Trajectory tr = integrate({Mat3::identity(), Mat3::diagonal(-1.0, 1.0, 1.0), 0.0},
                              preset(Preset::abelian), cfg);
    CHECK(tr.stop == StopReason::det_floor);
    CHECK(!tr.diagnostic.empty());
    CHECK(tr.samples.back().t < cfg.t_end);
    CHECK(tr.samples.back().t > 0.05);
}

TEST_CASE("early stop on the norm ceiling") {
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;
    cfg.norm_ceiling = 5.0;
    Trajectory tr = integrate({Mat3::identity(), 2.0 * Mat3::identity(), 0.0},
                              preset(Preset::abelian), cfg);
    CHECK(tr.stop == StopReason::norm_ceiling);
    CHECK(tr.samples.back().t < cfg.t_end);
}

TEST_CASE("asymmetric momentum breaks horizontality immediately") {
    Mat3 s = Mat3::identity();
    s(0, 1) = 0.5;
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    CHECK_THROWS_AS(integrate({Mat3::identity(), s, 0.0}, preset(Preset::su2), cfg),
                    std::runtime_error);
}

TEST_CASE("stop reasons have stable names") {
    CHECK(std::string(to_string(StopReason::completed)) == "completed");
    CHECK(std::string(to_string(StopReason::det_floor)) == "det_floor");
    CHECK(std::string(to_string(StopReason::norm_ceiling)) == "norm_ceiling");
    CHECK(std::string(to_string(StopReason::non_finite)) == "non_finite");
}

TEST_CASE("monitor snapshot of the round state") {
    MonitorRecord m = monitor({Mat3::identity(), Mat3::identity(), 0.0},
                              preset(Preset::su2));
    CHECK(m.dens.h == doctest::Approx(0.25));
    CHECK(m.constraint_norm <= 1e-13);
    CHECK(m.det_S == doctest::Approx(1.0));
    CHECK(m.det_E == doctest::Approx(1.0));
    CHECK(m.flag == Definiteness::pos_def);
}
