#include "g2flow/forms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace g2flow {

InvariantForm InvariantForm::generator(int g) {
    return monomial(1u << g, 1.0);
}

InvariantForm InvariantForm::monomial(unsigned mask, double coeff) {
    InvariantForm x;
    x.c_[mask & (kBasis - 1)] = coeff;
    return x;
}

InvariantForm InvariantForm::operator+(const InvariantForm& o) const {
    InvariantForm r(*this);
    r += o;
    return r;
}

InvariantForm InvariantForm::operator-(const InvariantForm& o) const {
    InvariantForm r(*this);
    r -= o;
    return r;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
    for (unsigned m = 0; m < kBasis; ++m) c_[m] += o.c_[m];
    return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) {
    for (unsigned m = 0; m < kBasis; ++m) c_[m] -= o.c_[m];
    return *this;
}

double InvariantForm::max_abs_coeff() const {
    double r = 0.0;
    for (double v : c_) r = std::max(r, std::abs(v));
    return r;
}

bool InvariantForm::all_finite() const {
    for (double v : c_)
        if (!std::isfinite(v)) return false;
    return true;
}

int InvariantForm::pure_degree() const {
    int deg = -1;
    for (unsigned m = 0; m < kBasis; ++m) {
        if (c_[m] == 0.0) continue;
        int p = std::popcount(m);
        if (deg == -1) deg = p;
        else if (deg != p) return -1;
    }
    return deg;
}

InvariantForm operator*(double s, const InvariantForm& x) {
    InvariantForm r;
    for (unsigned m = 0; m < InvariantForm::kBasis; ++m) r.coeff(m) = s * x.coeff(m);
    return r;
}

int wedge_sign(unsigned a, unsigned b) {
    if (a & b) return 0;
    int parity = 0;
    for (unsigned rest = b; rest != 0; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        parity += std::popcount(a >> (j + 1));
    }
    return (parity & 1) ? -1 : 1;
}

InvariantForm wedge(const InvariantForm& x, const InvariantForm& y) {
    InvariantForm r;
    for (unsigned ma = 0; ma < InvariantForm::kBasis; ++ma) {
        double ca = x.coeff(ma);
        if (ca == 0.0) continue;
        for (unsigned mb = 0; mb < InvariantForm::kBasis; ++mb) {
            double cb = y.coeff(mb);
            if (cb == 0.0) continue;
            int s = wedge_sign(ma, mb);
            if (s != 0) r.coeff(ma | mb) += s * ca * cb;
        }
    }
    return r;
}

InvariantForm contract(int g, const InvariantForm& x) {
    InvariantForm r;
    const unsigned bit = 1u << g;
    for (unsigned m = 0; m < InvariantForm::kBasis; ++m) {
        double c = x.coeff(m);
        if (c == 0.0 || !(m & bit)) continue;
        int parity = std::popcount(m & (bit - 1));
        r.coeff(m & ~bit) += (parity & 1) ? -c : c;
    }
    return r;
}

InvariantForm reference_volume() {
    return InvariantForm::monomial(InvariantForm::kBasis - 1, 1.0);
}

namespace {

// Extends a map on generators to monomials by the graded Leibniz rule. Works for
// both antiderivations (2-form images) and degree-zero derivations (1-form images):
// either image has definite parity, so the prefix sign is the same.
InvariantForm derive(const InvariantForm& x, const std::array<InvariantForm, gen::count>& rule) {
    InvariantForm out;
    for (unsigned m = 0; m < InvariantForm::kBasis; ++m) {
        double c = x.coeff(m);
        if (c == 0.0) continue;
        for (unsigned rest = m; rest != 0; rest &= rest - 1) {
            int g = std::countr_zero(rest);
            unsigned bit = 1u << g;
            int parity = std::popcount(m & (bit - 1));
            double s = (parity & 1) ? -c : c;
            out += s * wedge(rule[g], InvariantForm::monomial(m & ~bit, 1.0));
        }
    }
    return out;
}

InvariantForm ehat(int b) {
    InvariantForm r;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double eps = epsilon(b, j, k);
            if (eps != 0.0)
                r += 0.5 * eps * wedge(InvariantForm::generator(j), InvariantForm::generator(k));
        }
    return r;
}

} // namespace

StructuralDifferential StructuralDifferential::spatial(const Frame& e, const Connection& a,
                                                       const StructureConstants& c) {
    CurvatureData cd = einstein_tensor(e, a, c);
    StructuralDifferential sd;
    sd.T = cd.T;
    sd.G = cd.G;
    sd.Theta = a.A * inverse(e.E);
    return sd;
}

StructuralDifferential StructuralDifferential::with_time(const Mat3& p, const Mat3& q,
                                                         const InvariantForm& rates) const {
    StructuralDifferential sd(*this);
    sd.P = p;
    sd.Q = q;
    sd.coefficient_rates = rates;
    sd.has_time = true;
    return sd;
}

InvariantForm d(const InvariantForm& x, const StructuralDifferential& sd) {
    std::array<InvariantForm, gen::count> spatial;
    for (int i = 0; i < 3; ++i) {
        InvariantForm de;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double eps = epsilon(i, j, k);
                if (eps != 0.0)
                    de -= eps * wedge(InvariantForm::generator(gen::a1 + j),
                                      InvariantForm::generator(k));
                de += 0.5 * sd.T(i, j, k) *
                      wedge(InvariantForm::generator(j), InvariantForm::generator(k));
            }
        spatial[i] = de;

        InvariantForm da;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double eps = epsilon(i, j, k);
                if (eps != 0.0)
                    da -= 0.5 * eps * wedge(InvariantForm::generator(gen::a1 + j),
                                            InvariantForm::generator(gen::a1 + k));
            }
        for (int b = 0; b < 3; ++b) da += sd.G(i, b) * ehat(b);
        spatial[gen::a1 + i] = da;
    }

    InvariantForm out = derive(x, spatial);

    for (int k = 0; k < 3; ++k) {
        std::array<InvariantForm, gen::count> rho;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double eps = epsilon(k, i, j);
                if (eps == 0.0) continue;
                rho[i] += eps * InvariantForm::generator(j);
                rho[gen::a1 + i] += eps * InvariantForm::generator(gen::a1 + j);
            }
        InvariantForm theta = InvariantForm::generator(gen::a1 + k);
        for (int b = 0; b < 3; ++b) theta -= sd.Theta(k, b) * InvariantForm::generator(b);
        out -= wedge(theta, derive(x, rho));
    }

    if (sd.has_time) {
        std::array<InvariantForm, gen::count> tau;
        for (int i = 0; i < 3; ++i)
            for (int b = 0; b < 3; ++b) {
                tau[i] += sd.P(i, b) * InvariantForm::generator(b);
                tau[gen::a1 + i] += sd.Q(i, b) * InvariantForm::generator(b);
            }
        out += wedge(InvariantForm::generator(gen::dt),
                     derive(x, tau) + sd.coefficient_rates);
    }
    return out;
}

MetricFromPhi metric_from_phi(const InvariantForm& phi) {
    if (phi.pure_degree() != 3)
        throw std::invalid_argument("metric_from_phi: expected a nonzero 3-form");

    const unsigned top = InvariantForm::kBasis - 1;
    Matrix7 B;
    for (int i = 0; i < gen::count; ++i) {
        InvariantForm ii = contract(i, phi);
        for (int j = 0; j <= i; ++j) {
            double v = wedge(wedge(ii, contract(j, phi)), phi).coeff(top);
            B(i, j) = v;
            B(j, i) = v;
        }
    }

    MetricFromPhi r;
    r.det_B = B.determinant();
    if (r.det_B == 0.0)
        throw std::runtime_error("metric_from_phi: degenerate 3-form (det B = 0)");

    double root = std::copysign(std::pow(std::abs(r.det_B), -1.0 / 9.0), r.det_B);
    r.g = std::pow(6.0, -2.0 / 9.0) * root * B;

    Eigen::SelfAdjointEigenSolver<Matrix7> es(r.g);
    Eigen::Matrix<double, 7, 1> ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    double tol = 1e-10 * scale;
    if (scale == 0.0 || ev.cwiseAbs().minCoeff() <= tol) r.flag = Definiteness::singular;
    else if (ev.minCoeff() > 0.0) r.flag = Definiteness::pos_def;
    else if (ev.maxCoeff() < 0.0) r.flag = Definiteness::neg_def;
    else r.flag = Definiteness::indef;
    return r;
}

InvariantForm hodge_star(const InvariantForm& x, const Matrix7& g) {
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("hodge_star: metric is not symmetric");
    Eigen::LLT<Matrix7> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("hodge_star: metric is not positive-definite");

    Matrix7 ginv = g.inverse();
    double vol = std::sqrt(g.determinant());

    std::array<std::vector<unsigned>, gen::count + 1> by_degree;
    for (unsigned m = 0; m < InvariantForm::kBasis; ++m)
        by_degree[std::popcount(m)].push_back(m);

    auto indices = [](unsigned m) {
        std::vector<int> idx;
        for (unsigned rest = m; rest != 0; rest &= rest - 1)
            idx.push_back(std::countr_zero(rest));
        return idx;
    };

    InvariantForm out;
    for (unsigned ma = 0; ma < InvariantForm::kBasis; ++ma) {
        double ca = x.coeff(ma);
        if (ca == 0.0) continue;
        int p = std::popcount(ma);
        std::vector<int> ia = indices(ma);
        for (unsigned mc : by_degree[p]) {
            double minor = 1.0;
            if (p > 0) {
                std::vector<int> ic = indices(mc);
                Eigen::MatrixXd sub(p, p);
                for (int r = 0; r < p; ++r)
                    for (int c = 0; c < p; ++c) sub(r, c) = ginv(ia[r], ic[c]);
                minor = sub.determinant();
            }
            if (minor == 0.0) continue;
            unsigned comp = ~mc & (InvariantForm::kBasis - 1);
            out.coeff(comp) += ca * vol * minor * wedge_sign(mc, comp);
        }
    }
    return out;
}

} // namespace g2flow
