#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "g2flow/reduced.hpp"
#include "g2flow/frame.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace g2flow;

TEST_CASE("reduced vector field in (a, b)") {
    auto [da0, db0] = reduced_field_ab({1.0, 1.0, 0.0});
    CHECK(da0 == doctest::Approx(1.0));
    CHECK(db0 == doctest::Approx(-1.0));

    auto [da1, db1] = reduced_field_ab({1.0, 0.0, 0.25});
    CHECK(da1 == doctest::Approx(0.0));
    CHECK(db1 == doctest::Approx(0.25));

    auto [da2, db2] = reduced_field_ab({2.0, 1.0, 0.25});
    CHECK(da2 == doctest::Approx(2.0));
    CHECK(db2 == doctest::Approx(-15.0 / 16.0));

    CHECK_THROWS_AS(reduced_field_ab({0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_field_ab({-1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("reduced vector field in (x, y)") {
    auto [dx0, dy0] = reduced_field_xy({1.0, 1.0}, 0.0);
    CHECK(dx0 == doctest::Approx(2.0));
    CHECK(dy0 == doctest::Approx(0.0));

    auto [dx1, dy1] = reduced_field_xy({4.0, 0.0}, 1.0);
    CHECK(dx1 == doctest::Approx(0.0));
    CHECK(dy1 == doctest::Approx(0.5));

    CHECK_THROWS_AS(reduced_field_xy({0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("the substitution x = a^2, y = a b intertwines the two fields") {
    std::mt19937 rng(127u);
    std::uniform_real_distribution<double> ua(0.3, 2.0);
    std::uniform_real_distribution<double> ub(-1.5, 1.5);
    for (int rep = 0; rep < 12; ++rep) {
        ReducedState s{ua(rng), ub(rng), ub(rng)};
        auto [da, db] = reduced_field_ab(s);
        auto [dx, dy] = reduced_field_xy({s.a * s.a, s.a * s.b}, s.sigma);
        CHECK(dx == doctest::Approx(2.0 * s.a * da).epsilon(1e-12));
        CHECK(dy == doctest::Approx(da * s.b + s.a * db).epsilon(1e-12));
    }
}

TEST_CASE("curvature parameter is read off the frame, not trusted") {
    CHECK(sigma_from_frame(Frame{Mat3::identity()}, preset(Preset::su2)) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sigma_from_frame(Frame{2.0 * Mat3::identity()}, preset(Preset::su2)) ==
          doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(sigma_from_frame(Frame{Mat3::identity()}, preset(Preset::abelian)) ==
          doctest::Approx(0.0));
    CHECK(sigma_from_frame(Frame{Mat3::identity()}, bianchi_v()) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sigma_from_frame(Frame{2.0 * Mat3::identity()}, bianchi_v()) ==
          doctest::Approx(-0.25).epsilon(1e-12));

    // Anisotropic curvature has no single sigma.
    CHECK_THROWS_AS(
        sigma_from_frame(Frame{Mat3::diagonal(1.0, 1.4, 0.7)}, preset(Preset::su2)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        sigma_from_frame(Frame{Mat3::identity()}, preset(Preset::heisenberg)),
        std::invalid_argument);
}

TEST_CASE("embedding builds isotropic flow states") {
    FlowState st = embed({1.0, 1.0, 0.25}, Frame{Mat3::identity()}, preset(Preset::su2));
    CHECK((st.E - Mat3::identity()).max_abs() <= 1e-14);
    CHECK((st.S - Mat3::identity()).max_abs() <= 1e-14);

    FlowState ab = embed({2.0, -0.5, 0.0}, Frame{Mat3::identity()},
                         preset(Preset::abelian));
    CHECK((ab.E - 2.0 * Mat3::identity()).max_abs() <= 1e-14);
    CHECK((ab.S + 0.5 * Mat3::identity()).max_abs() <= 1e-14);

    // sigma mismatch and anisotropic frames are both rejected.
    CHECK_THROWS_AS(embed({1.0, 1.0, 0.3}, Frame{Mat3::identity()}, preset(Preset::su2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(embed({1.0, 1.0, 0.25}, Frame{Mat3::diagonal(1.0, 1.4, 0.7)},
                          preset(Preset::su2)),
                    std::invalid_argument);
}

TEST_CASE("closed form for the flat background") {
    auto [a0, b0] = closed_form_sigma0(1.0, 1.0, 0.0);
    CHECK(a0 == doctest::Approx(1.0));
    CHECK(b0 == doctest::Approx(1.0));

    auto [a1, b1] = closed_form_sigma0(1.0, 1.0, 1.0);
    CHECK(a1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(b1 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    std::mt19937 rng(131u);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int rep = 0; rep < 8; ++rep) {
        double a_init = u(rng), b_init = u(rng) - 1.0, t = u(rng);
        auto [a, b] = closed_form_sigma0(a_init, b_init, t);
        CHECK(a * b == doctest::Approx(a_init * b_init).epsilon(1e-13));
    }

    CHECK_THROWS_AS(closed_form_sigma0(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_sigma0(1.0, 1.0, -0.6), std::invalid_argument);
}

TEST_CASE("reduced integrator against the closed form") {
    std::vector<ReducedSample> tr = integrate_reduced({1.0, 1.0, 0.0}, 1e-3, 1.0);
    REQUIRE(!tr.empty());
    const ReducedSample& last = tr.back();
    CHECK(last.t == doctest::Approx(1.0));
    auto [a, b] = closed_form_sigma0(1.0, 1.0, last.t);
    CHECK(std::abs(last.a - a) <= 1e-10);
    CHECK(std::abs(last.b - b) <= 1e-10);

    // y = a b is exactly conserved at sigma = 0, up to integrator roundoff.
    for (const ReducedSample& s : tr)
        CHECK(s.a * s.b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regime monotonicity of y") {
    auto y_values = [](double sigma, double b0) {
        std::vector<ReducedSample> tr = integrate_reduced({1.0, b0, sigma}, 1e-3, 1.0);
        std::vector<double> y;
        y.reserve(tr.size());
        for (const ReducedSample& s : tr) y.push_back(s.a * s.b);
        return y;
    };

    std::vector<double> up = y_values(0.25, 1.0);
    for (std::size_t k = 1; k < up.size(); ++k) CHECK(up[k] > up[k - 1]);

    std::vector<double> down = y_values(-0.25, 1.0);
    for (std::size_t k = 1; k < down.size(); ++k) CHECK(down[k] < down[k - 1]);

    // sigma < 0 with positive start must eventually cross zero.
    std::vector<ReducedSample> tr = integrate_reduced({1.0, 0.05, -0.25}, 1e-3, 2.0);
    bool crossed = false;
    for (const ReducedSample& s : tr) crossed = crossed || (s.b < 0.0);
    CHECK(crossed);
}

TEST_CASE("full flow restricted to the isotropic slice matches the reduction") {
    const StructureConstants& su2 = preset(Preset::su2);
    FlowState init = embed({1.0, 0.6, 0.25}, Frame{Mat3::identity()}, su2);
    IntegrationConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    Trajectory full = integrate(init, su2, cfg);
    REQUIRE(full.stop == StopReason::completed);
    std::vector<ReducedSample> red = integrate_reduced({1.0, 0.6, 0.25}, 1e-3, 0.5);
    REQUIRE(red.size() == full.samples.size());

    double worst_iso = 0.0, worst_match = 0.0;
    for (std::size_t k = 0; k < red.size(); ++k) {
        const FlowState& st = full.samples[k];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                worst_iso = std::max(worst_iso, std::abs(st.E(i, j)));
                worst_iso = std::max(worst_iso, std::abs(st.S(i, j)));
            }
        worst_iso = std::max(worst_iso, std::abs(st.E(0, 0) - st.E(1, 1)));
        worst_iso = std::max(worst_iso, std::abs(st.S(0, 0) - st.S(2, 2)));
        worst_match = std::max(worst_match, std::abs(st.E(0, 0) - red[k].a));
        worst_match = std::max(worst_match, std::abs(st.S(0, 0) - red[k].b));
    }
    CHECK(worst_iso <= 1e-10);
    CHECK(worst_match <= 1e-8);
}
