#include "g2flow/frame.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace g2flow {

namespace {

void require_orientation(const Frame& e) {
    if (!(e.E.det() > 0.0))
        throw std::invalid_argument("frame: det E must be positive");
}

// lambda-gauge 2-form coefficients -> e-frame, X^i_{jk} = W^i_{mn} Einv_{mj} Einv_{nk}.
Ten3 to_e_frame(const Ten3& w, const Mat3& einv) {
    Ten3 x;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0;
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) s += w(i, m, n) * einv(m, j) * einv(n, k);
                x(i, j, k) = s;
            }
    return x;
}

} // namespace

Ten3 torsion_lambda(const Frame& e, const Connection& a, const StructureConstants& c) {
    Ten3 w;
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
                double s = 0;
                for (int l = 0; l < 3; ++l) s -= e.E(i, l) * c(l, m, n);
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        s += epsilon(i, j, k) * (a.A(j, m) * e.E(k, n) - a.A(j, n) * e.E(k, m));
                w(i, m, n) = s;
            }
    return w;
}

Ten3 torsion(const Frame& e, const Connection& a, const StructureConstants& c) {
    require_orientation(e);
    return to_e_frame(torsion_lambda(e, a, c), inverse(e.E));
}

Connection levi_civita(const Frame& e, const StructureConstants& c) {
    require_orientation(e);

    // Unknowns A_{jq} flattened as 3*j+q; equations indexed by (i, pair (m,n)).
    static const int pair_m[3] = {0, 0, 1};
    static const int pair_n[3] = {1, 2, 2};

    Eigen::Matrix<double, 9, 9> M = Eigen::Matrix<double, 9, 9>::Zero();
    Eigen::Matrix<double, 9, 1> rhs = Eigen::Matrix<double, 9, 1>::Zero();

    for (int i = 0; i < 3; ++i)
        for (int p = 0; p < 3; ++p) {
            const int m = pair_m[p], n = pair_n[p];
            const int row = 3 * i + p;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double eps = epsilon(i, j, k);
                    if (eps == 0.0) continue;
                    M(row, 3 * j + m) += eps * e.E(k, n);
                    M(row, 3 * j + n) -= eps * e.E(k, m);
                }
            double s = 0;
            for (int l = 0; l < 3; ++l) s += e.E(i, l) * c(l, m, n);
            rhs(row) = s;
        }

    Eigen::Matrix<double, 9, 1> sol = M.partialPivLu().solve(rhs);

    Connection a;
    for (int j = 0; j < 3; ++j)
        for (int q = 0; q < 3; ++q) a.A(j, q) = sol(3 * j + q);

    const double scale = 1.0 + e.E.max_abs() + a.A.max_abs();
    if (torsion_lambda(e, a, c).max_abs() > 1e-10 * scale * scale)
        throw std::runtime_error("levi_civita: torsion-free solve failed");
    return a;
}

CurvatureData einstein_tensor(const Frame& e, const Connection& a, const StructureConstants& c) {
    require_orientation(e);

    // d_H a^i = 1/2 F^i_{mn} lambda^m ^ lambda^n
    Ten3 f;
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
                double s = 0;
                for (int l = 0; l < 3; ++l) s -= a.A(i, l) * c(l, m, n);
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) s += epsilon(i, j, k) * a.A(j, m) * a.A(k, n);
                f(i, m, n) = s;
            }

    const Ten3 fhat = to_e_frame(f, inverse(e.E));

    CurvatureData out;
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b) {
            double s = 0;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) s += epsilon(b, j, k) * fhat(i, j, k);
            out.G(i, b) = 0.5 * s;
        }
    out.R = -2.0 * out.G.trace();
    out.T = torsion(e, a, c);
    return out;
}

CovDeriv covariant_derivative(const Mat3& s, const Frame& e, const Connection& a) {
    require_orientation(e);
    const Mat3 einv = inverse(e.E);

    CovDeriv d{};
    for (int m = 0; m < 3; ++m) {
        const Mat3 br = so3_bracket(m, s);
        for (int k = 0; k < 3; ++k) {
            double w = 0;
            for (int l = 0; l < 3; ++l) w += a.A(m, l) * einv(l, k);
            d[k] += w * br;
        }
    }
    return d;
}

Vec3 divergence_constraint(const Mat3& s, const Frame& e, const Connection& a) {
    const CovDeriv d = covariant_derivative(s, e, a);
    Vec3 v{};
    for (int i = 0; i < 3; ++i)
        for (int al = 0; al < 3; ++al) v[i] += d[al](i, al);
    return v;
}

Mat3 connection_variation(const Frame& e, const Connection& a, const Mat3& p,
                          const StructureConstants& c) {
    if (!is_symmetric(p, 1e-12 * (1.0 + p.max_abs())))
        throw std::invalid_argument("connection_variation: P must be symmetric");
    const double scale = 1.0 + e.E.max_abs() + a.A.max_abs();
    if (torsion(e, a, c).max_abs() > 1e-10 * scale * scale)
        throw std::invalid_argument("connection_variation: connection must be torsion-free");

    const CovDeriv pd = covariant_derivative(p, e, a);
    Mat3 q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int al = 0; al < 3; ++al)
                for (int be = 0; be < 3; ++be) s -= epsilon(i, al, be) * pd[be](j, al);
            q(i, j) = s;
        }
    return q;
}

CovDeriv covariant_derivative_rate(const Frame& e, const Connection& a, const Mat3& s,
                                   const Mat3& p, const Mat3& q, const Mat3& b) {
    const CovDeriv sd = covariant_derivative(s, e, a);
    const CovDeriv bd = covariant_derivative(b, e, a);

    CovDeriv r{};
    for (int k = 0; k < 3; ++k) {
        Mat3 m = bd[k];
        for (int al = 0; al < 3; ++al) m -= p(al, k) * sd[al];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double extra = 0;
                for (int al = 0; al < 3; ++al)
                    for (int g = 0; g < 3; ++g)
                        extra += epsilon(i, al, g) * s(g, j) * q(al, k) +
                                 epsilon(j, al, g) * s(i, g) * q(al, k);
                m(i, j) += extra;
            }
        r[k] = m;
    }
    return r;
}

} // namespace g2flow
