#include "g2flow/runner.hpp"

#include "g2flow/adm.hpp"
#include "g2flow/forms.hpp"
#include "g2flow/g2.hpp"
#include "g2flow/reduced.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

namespace g2flow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* regime_of(double b) {
    if (b > 0.0) return "pos_def";
    if (b < 0.0) return "neg_def";
    return "singular";
}

void put_row(std::ostream& out, const std::vector<double>& vals, const char* tail) {
    for (double v : vals) out << format_g17(v) << ',';
    out << tail << '\n';
}

} // namespace

std::string format_g17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    IntegrationConfig icfg;
    icfg.dt = cfg.dt;
    icfg.t_end = cfg.t_end;
    icfg.det_floor = cfg.min_detE;
    icfg.norm_ceiling = cfg.max_norm;
    icfg.coeffs = cfg.coeffs;

    FlowState initial{cfg.E0, cfg.S0, 0.0};
    Trajectory traj = integrate(initial, cfg.group, icfg);

    const bool want_torsion = cfg.monitors.count(MonitorKind::torsion) > 0;
    const bool want_adm = cfg.monitors.count(MonitorKind::adm) > 0;

    out << "t,E11,E12,E13,E21,E22,E23,E31,E32,E33,"
           "S11,S12,S13,S21,S22,S23,S31,S32,S33,"
           "detE,detS,h,h1,h2,h3,constr1,constr2,constr3,constr_norm,"
           "dphi_norm,dstarphi_norm,definiteness";
    if (want_adm) out << ",adm_scalar,adm_mom1,adm_mom2,adm_mom3,adm_H,adm_HG2,adm_HGR";
    out << '\n';

    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const FlowState& st = traj.samples[k];
        const MonitorRecord& m = traj.monitors[k];

        std::vector<double> vals;
        vals.reserve(38);
        vals.push_back(st.t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) vals.push_back(st.E(i, j));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) vals.push_back(st.S(i, j));
        vals.push_back(m.det_E);
        vals.push_back(m.det_S);
        vals.push_back(m.dens.h);
        vals.push_back(m.dens.h1);
        vals.push_back(m.dens.h2);
        vals.push_back(m.dens.h3);
        for (int i = 0; i < 3; ++i) vals.push_back(m.constraint[i]);
        vals.push_back(m.constraint_norm);

        double ndphi = kNaN, ndstar = kNaN;
        if (want_torsion && m.det_S > 0.0) {
            try {
                TorsionResidual tr = torsion_residual(st, cfg.group, cfg.coeffs);
                ndphi = tr.ndphi;
                ndstar = tr.ndstarphi;
            } catch (const std::exception&) {
                // leave nan: metric degenerated mid-computation
            }
        }
        vals.push_back(ndphi);
        vals.push_back(ndstar);

        if (want_adm) {
            ADMState adm = to_adm(st);
            ADMConstraints ac = adm_constraints(adm, cfg.group);
            ADMHamiltonians ah = adm_hamiltonians(adm, cfg.group);
            std::vector<double> extra = {ac.scalar, ac.momentum[0], ac.momentum[1],
                                         ac.momentum[2], ah.H,       ah.HG2,
                                         ah.HGR};
            for (double v : vals) out << format_g17(v) << ',';
            out << to_string(m.flag);
            for (double v : extra) out << ',' << format_g17(v);
            out << '\n';
            continue;
        }
        put_row(out, vals, to_string(m.flag));
    }

    if (traj.stop != StopReason::completed) {
        err << "early stop (" << to_string(traj.stop) << "): " << traj.diagnostic << '\n';
        return 2;
    }
    return 0;
}

namespace {

struct EmbeddingFrame {
    const StructureConstants* group;
    double scale; // E0 = scale * I
};

EmbeddingFrame frame_for_sigma(double sigma) {
    if (sigma > 0.0) return {&preset(Preset::su2), 1.0 / (2.0 * std::sqrt(sigma))};
    if (sigma < 0.0) return {&bianchi_v(), 1.0 / std::sqrt(-sigma)};
    return {&preset(Preset::abelian), 1.0};
}

} // namespace

int bs_command(const BsOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.a0 <= 0.0) throw ConfigError("a0: must be positive");
    if (opt.dt <= 0.0) throw ConfigError("dt: must be positive");

    std::vector<ReducedSample> red =
        integrate_reduced(ReducedState{opt.a0, opt.b0, opt.sigma}, opt.dt, opt.t_end);

    Trajectory full;
    EmbeddingFrame ef{nullptr, 1.0};
    if (opt.compare_full) {
        ef = frame_for_sigma(opt.sigma);
        Frame e0{ef.scale * Mat3::identity()};
        FlowState st0 = embed(ReducedState{opt.a0, opt.b0, opt.sigma}, e0, *ef.group);
        IntegrationConfig icfg;
        icfg.dt = opt.dt;
        icfg.t_end = opt.t_end;
        full = integrate(st0, *ef.group, icfg);
    }

    out << "t,a,b,x,y,regime";
    if (opt.compare_full) out << ",full_a,full_b,dev_a,dev_b";
    out << '\n';

    double max_dev_a = 0.0, max_dev_b = 0.0;
    for (std::size_t k = 0; k < red.size(); ++k) {
        const ReducedSample& s = red[k];
        std::vector<double> vals = {s.t, s.a, s.b, s.a * s.a, s.a * s.b};
        if (!opt.compare_full) {
            put_row(out, vals, regime_of(s.b));
            continue;
        }
        double fa = kNaN, fb = kNaN, da = kNaN, db = kNaN;
        if (k < full.samples.size()) {
            fa = full.samples[k].E(0, 0) / ef.scale;
            fb = full.samples[k].S(0, 0);
            da = std::abs(fa - s.a);
            db = std::abs(fb - s.b);
            max_dev_a = std::max(max_dev_a, da);
            max_dev_b = std::max(max_dev_b, db);
        }
        for (double v : vals) out << format_g17(v) << ',';
        out << regime_of(s.b) << ',' << format_g17(fa) << ',' << format_g17(fb) << ','
            << format_g17(da) << ',' << format_g17(db) << '\n';
    }

    if (opt.compare_full) {
        err << "compare-full: max_dev_a=" << format_g17(max_dev_a)
            << " max_dev_b=" << format_g17(max_dev_b) << '\n';
        if (full.stop != StopReason::completed) {
            err << "full flow stopped early (" << to_string(full.stop)
                << "): " << full.diagnostic << '\n';
            return 2;
        }
    }
    return 0;
}

int scale_check_command(const RunConfig& cfg, double kappa, double a, double b,
                        std::ostream& out, std::ostream& err) {
    HamiltonianCoeffs target{a, b};
    ScaleFactors f = scale_factors(kappa, target); // validates kappa, a, b

    IntegrationConfig icfg;
    icfg.dt = cfg.dt;
    icfg.t_end = cfg.t_end;
    icfg.det_floor = cfg.min_detE;
    icfg.norm_ceiling = cfg.max_norm;
    icfg.coeffs = HamiltonianCoeffs{0.5, 1.0};

    Trajectory ref = integrate(FlowState{cfg.E0, cfg.S0, 0.0}, cfg.group, icfg);
    if (ref.stop != StopReason::completed) {
        err << "base run stopped early (" << to_string(ref.stop) << "): " << ref.diagnostic
            << '\n';
        return 2;
    }
    Trajectory scaled = scale_map(ref, kappa, target, cfg.group);

    double dt_scaled = cfg.dt / kappa;
    double max_residual = 0.0;
    auto stencil = [&](auto get, std::size_t k) {
        return (1.0 / (12.0 * dt_scaled)) *
               (-get(k + 2) + 8.0 * get(k + 1) - 8.0 * get(k - 1) + get(k - 2));
    };
    for (std::size_t k = 2; k + 2 < scaled.samples.size(); ++k) {
        Mat3 fd_e = stencil([&](std::size_t m) { return scaled.samples[m].E; }, k);
        Mat3 fd_s = stencil([&](std::size_t m) { return scaled.samples[m].S; }, k);
        FlowField ff = flow_field(scaled.samples[k], cfg.group, target);
        max_residual = std::max(max_residual, (fd_e - ff.dE).max_abs());
        max_residual = std::max(max_residual, (fd_s - ff.dS).max_abs());
    }

    out << "kappa=" << format_g17(kappa) << " a=" << format_g17(a) << " b=" << format_g17(b)
        << '\n';
    out << "alpha=" << format_g17(f.alpha) << " beta=" << format_g17(f.beta) << '\n';
    out << "max_flow_residual=" << format_g17(max_residual) << '\n';
    return 0;
}

int sweep_command(const SweepOptions& opt, std::ostream& out, std::ostream&) {
    if (opt.a0_steps < 1 || opt.b0_steps < 1)
        throw ConfigError("sweep: step counts must be at least 1");
    if (opt.a0_min <= 0.0) throw ConfigError("a0: must be positive");
    if (opt.dt <= 0.0) throw ConfigError("dt: must be positive");

    auto grid_value = [](double lo, double hi, int steps, int i) {
        return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    };

    out << "sigma,a0,b0,t_final,a_final,b_final,y_final,regime\n";
    for (int i = 0; i < opt.a0_steps; ++i)
        for (int j = 0; j < opt.b0_steps; ++j) {
            double a0 = grid_value(opt.a0_min, opt.a0_max, opt.a0_steps, i);
            double b0 = grid_value(opt.b0_min, opt.b0_max, opt.b0_steps, j);
            std::vector<ReducedSample> red =
                integrate_reduced(ReducedState{a0, b0, opt.sigma}, opt.dt, opt.t_end);
            const ReducedSample& last = red.back();
            std::vector<double> vals = {opt.sigma, a0,     b0,
                                        last.t,    last.a, last.b,
                                        last.a * last.b};
            put_row(out, vals, regime_of(last.b));
        }
    return 0;
}

namespace {

Mat3 random_mat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
    return m;
}

Mat3 random_sym(std::mt19937& rng) {
    return sym_antisym_split(random_mat(rng)).first;
}

Mat3 random_spd(std::mt19937& rng) {
    Mat3 m = random_mat(rng);
    return m.transpose() * m + 0.5 * Mat3::identity();
}

InvariantForm random_form(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    InvariantForm x;
    for (unsigned m = 0; m < InvariantForm::kBasis; ++m) x.coeff(m) = u(rng);
    return x;
}

struct Suite {
    std::string name;
    int checks = 0;
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

void report(const Suite& s, std::ostream& out, int& failures) {
    if (s.pass) {
        out << s.name << ": pass (" << s.checks << " checks)\n";
    } else {
        out << s.name << ": FAIL (" << s.detail << ")\n";
        ++failures;
    }
}

} // namespace

int selftest_command(bool corrupt_epsilon, unsigned seed, std::ostream& out,
                     std::ostream& err) {
    int failures = 0;
    std::mt19937 rng(seed);

    {
        Suite s{"epsilon_table"};
        double expected_012 = corrupt_epsilon ? -1.0 : 1.0;
        s.expect(epsilon(0, 1, 2) == expected_012, "epsilon(0,1,2) sign");
        s.expect(epsilon(1, 2, 0) == 1.0 && epsilon(2, 0, 1) == 1.0, "even permutations");
        s.expect(epsilon(0, 2, 1) == -1.0 && epsilon(1, 0, 2) == -1.0 &&
                     epsilon(2, 1, 0) == -1.0,
                 "odd permutations");
        s.expect(epsilon(0, 0, 1) == 0.0 && epsilon(1, 2, 2) == 0.0, "repeated indices");
        report(s, out, failures);
    }

    {
        Suite s{"exterior_d_squared"};
        std::vector<const StructureConstants*> groups = {
            &preset(Preset::su2), &preset(Preset::heisenberg), &preset(Preset::abelian),
            &bianchi_v()};
        for (const StructureConstants* c : groups) {
            for (int variant = 0; variant < 2; ++variant) {
                Mat3 e_mat = variant == 0 ? Mat3::identity()
                                          : Mat3::identity() + 0.3 * random_mat(rng);
                if (e_mat.det() <= 0.1) e_mat = Mat3::identity();
                Frame e{e_mat};
                for (int conn = 0; conn < 2; ++conn) {
                    Connection a = conn == 0 ? levi_civita(e, *c)
                                             : Connection{random_mat(rng)};
                    StructuralDifferential sd = StructuralDifferential::spatial(e, a, *c);
                    InvariantForm x = random_form(rng);
                    double r = d(d(x, sd), sd).max_abs_coeff();
                    s.expect(r <= 1e-8, c->name() + ": max |d(d(x))| = " + format_g17(r));
                }
            }
        }
        report(s, out, failures);
    }

    {
        Suite s{"symplectic_gradient"};
        std::vector<const StructureConstants*> groups = {&preset(Preset::su2),
                                                         &preset(Preset::heisenberg)};
        std::vector<HamiltonianCoeffs> coeff_sets = {{0.5, 1.0}, {1.0, 0.125}};
        for (const StructureConstants* c : groups)
            for (const HamiltonianCoeffs& coeffs : coeff_sets)
                for (int rep = 0; rep < 4; ++rep) {
                    Mat3 e_mat = Mat3::identity() + 0.2 * random_mat(rng);
                    if (e_mat.det() <= 0.1) e_mat = Mat3::identity();
                    FlowState st{e_mat, random_sym(rng), 0.0};
                    TangentTV z{random_sym(rng), random_sym(rng)};
                    TangentTV x = flow_tangent(st, *c, coeffs);

                    double h = 1e-5;
                    auto density = [&](double sgn) {
                        FlowState v;
                        v.E = (Mat3::identity() + sgn * h * z.T) * st.E;
                        v.S = st.S + sgn * h * (z.V - z.T.trace() * st.S);
                        Densities dens = hamiltonian_densities(v, *c);
                        return -coeffs.a * dens.h1 + coeffs.b * dens.h2;
                    };
                    double fd = (density(1.0) - density(-1.0)) / (2.0 * h);
                    double pairing = omega_pairing(x, z, st);
                    s.expect(std::abs(fd - pairing) <= 1e-6 * (1.0 + std::abs(fd)),
                             c->name() + ": gradient mismatch " + format_g17(fd - pairing));
                }
        report(s, out, failures);
    }

    {
        Suite s{"constraint_preservation"};
        for (int rep = 0; rep < 2; ++rep) {
            FlowState st{Mat3::identity(), random_sym(rng), 0.0};
            IntegrationConfig icfg;
            icfg.t_end = 0.5;
            Trajectory traj = integrate(st, preset(Preset::su2), icfg);
            double worst = 0.0;
            for (const MonitorRecord& m : traj.monitors)
                worst = std::max(worst, m.constraint_norm);
            s.expect(traj.stop == StopReason::completed && worst <= 1e-8,
                     "max constraint norm " + format_g17(worst));
        }
        report(s, out, failures);
    }

    {
        Suite s{"torsion_free_orbit"};
        FlowState st{Mat3::identity(), Mat3::identity(), 0.0};
        TorsionResidual tr = torsion_residual(st, preset(Preset::su2), {0.5, 1.0});
        s.expect(tr.ndphi <= 1e-8, "dphi residual " + format_g17(tr.ndphi));
        s.expect(tr.ndstarphi <= 1e-8, "dstarphi residual " + format_g17(tr.ndstarphi));
        report(s, out, failures);
    }

    {
        Suite s{"adm_round_trip"};
        for (int rep = 0; rep < 4; ++rep) {
            ADMState adm{random_spd(rng), random_sym(rng)};
            ADMState back = to_adm(from_adm(adm));
            double r = std::max((back.gamma - adm.gamma).max_abs(),
                                (back.pi - adm.pi).max_abs());
            s.expect(r <= 1e-12 * (1.0 + adm.gamma.max_abs() + adm.pi.max_abs()),
                     "round-trip residual " + format_g17(r));
        }
        report(s, out, failures);
    }

    {
        Suite s{"hodge_involution"};
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int rep = 0; rep < 4; ++rep) {
            Matrix7 m;
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) m(i, j) = u(rng);
            Matrix7 g = m.transpose() * m + 0.5 * Matrix7::Identity();
            InvariantForm x = random_form(rng);
            InvariantForm back = hodge_star(hodge_star(x, g), g);
            double r = (back - x).max_abs_coeff();
            s.expect(r <= 1e-8 * (1.0 + x.max_abs_coeff()),
                     "star-star residual " + format_g17(r));
        }
        report(s, out, failures);
    }

    if (failures > 0) {
        err << failures << " suite(s) failed\n";
        return 1;
    }
    return 0;
}

} // namespace g2flow
