#include "g2flow/mat3.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3 operator+(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
Vec3 operator-(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

Mat3 Mat3::identity() { return diagonal(1.0, 1.0, 1.0); }

Mat3 Mat3::diagonal(double a, double b, double c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
        m(0, j) = r0[j];
        m(1, j) = r1[j];
        m(2, j) = r2[j];
    }
    return m;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m_[i] = m_[i] + o.m_[i];
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m_[i] = m_[i] - o.m_[i];
    return r;
}

Mat3 Mat3::operator-() const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m_[i] = -m_[i];
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    Vec3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Mat3& Mat3::operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m_[i] += o.m_[i];
    return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m_[i] -= o.m_[i];
    return *this;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

double Mat3::trace() const { return m_[0] + m_[4] + m_[8]; }

double Mat3::det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double Mat3::frobenius() const {
    double s = 0;
    for (double v : m_) s += v * v;
    return std::sqrt(s);
}

double Mat3::max_abs() const {
    double s = 0;
    for (double v : m_) s = std::max(s, std::abs(v));
    return s;
}

bool Mat3::all_finite() const {
    for (double v : m_)
        if (!std::isfinite(v)) return false;
    return true;
}

Mat3 operator*(double s, const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = s * m(i, j);
    return r;
}

double epsilon(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) || (i == 2 && j == 0 && k == 1))
        return 1.0;
    return -1.0;
}

const Mat3& so3_generator(int k) {
    static const std::array<Mat3, 3> basis = [] {
        std::array<Mat3, 3> b;
        for (int n = 0; n < 3; ++n)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) b[n](i, j) = -epsilon(n, i, j);
        return b;
    }();
    return basis.at(k);
}

Mat3 so3_bracket(int k, const Mat3& s) {
    const Mat3& L = so3_generator(k);
    return L * s - s * L;
}

Mat3 adjugate(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c)
                        for (int d = 0; d < 3; ++d)
                            s += epsilon(i, a, b) * epsilon(j, c, d) * m(c, a) * m(d, b);
            r(i, j) = 0.5 * s;
        }
    return r;
}

Mat3 adjugate_rate(const Mat3& m, const Mat3& mdot) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c)
                        for (int d = 0; d < 3; ++d)
                            s += epsilon(i, a, b) * epsilon(j, c, d) * mdot(c, a) * m(d, b);
            r(i, j) = s;
        }
    return r;
}

double det_rate(const Mat3& m, const Mat3& mdot) {
    return (adjugate(m) * mdot).trace();
}

Mat3 inverse(const Mat3& m) {
    double d = m.det();
    if (d == 0.0) throw std::runtime_error("Mat3: singular matrix has no inverse");
    return (1.0 / d) * adjugate(m);
}

std::pair<Mat3, Mat3> sym_antisym_split(const Mat3& m) {
    Mat3 s, a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            s(i, j) = 0.5 * (m(i, j) + m(j, i));
            a(i, j) = 0.5 * (m(i, j) - m(j, i));
        }
    return {s, a};
}

bool is_symmetric(const Mat3& m, double tol) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

const char* to_string(Definiteness d) {
    switch (d) {
    case Definiteness::pos_def: return "pos_def";
    case Definiteness::indef: return "indef";
    case Definiteness::neg_def: return "neg_def";
    case Definiteness::singular: return "singular";
    }
    return "?";
}

} // namespace g2flow
