#pragma once

#include <array>
#include <utility>

namespace g2flow {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);
Vec3 operator+(const Vec3& u, const Vec3& v);
Vec3 operator-(const Vec3& u, const Vec3& v);
Vec3 operator*(double s, const Vec3& v);

/// Dense 3x3 matrix, row-major, value semantics. Indices are 0-based.
class Mat3 {
public:
    Mat3() : m_{} {}

    static Mat3 identity();
    static Mat3 diagonal(double a, double b, double c);
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);

    double operator()(int i, int j) const { return m_[3 * i + j]; }
    double& operator()(int i, int j) { return m_[3 * i + j]; }

    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Mat3 operator-() const;
    Mat3 operator*(const Mat3& o) const;
    Vec3 operator*(const Vec3& v) const;
    Mat3& operator+=(const Mat3& o);
    Mat3& operator-=(const Mat3& o);

    Mat3 transpose() const;
    double trace() const;
    double det() const;

    double frobenius() const;
    double max_abs() const;
    bool all_finite() const;

private:
    std::array<double, 9> m_;
};

Mat3 operator*(double s, const Mat3& m);

/// Levi-Civita symbol, 0-based indices; +1 on (0,1,2).
double epsilon(int i, int j, int k);

/// so(3) basis with (L_k)_{ij} = -epsilon(k,i,j), so that [L_i, L_j] = epsilon_{ijk} L_k
/// and L_k acts on column vectors as the cross product with the k-th axis.
const Mat3& so3_generator(int k);

/// Commutator [L_k, s].
Mat3 so3_bracket(int k, const Mat3& s);

/// Adjugate via adj(m)_{ij} = 1/2 eps_{i a b} eps_{j c d} m_{c a} m_{d b};
/// satisfies m * adj(m) = det(m) * I for every m, invertible or not.
Mat3 adjugate(const Mat3& m);

/// Directional derivative of the adjugate along mdot (exact, polynomial).
Mat3 adjugate_rate(const Mat3& m, const Mat3& mdot);

/// Directional derivative of det along mdot: tr(adj(m) * mdot).
double det_rate(const Mat3& m, const Mat3& mdot);

/// Inverse through the adjugate. Throws std::runtime_error when det == 0.
Mat3 inverse(const Mat3& m);

/// (sym, antisym) parts; sym + antisym reproduces the input exactly.
std::pair<Mat3, Mat3> sym_antisym_split(const Mat3& m);

bool is_symmetric(const Mat3& m, double tol);

/// Sign class of a symmetric matrix's spectrum.
enum class Definiteness { pos_def, indef, neg_def, singular };

const char* to_string(Definiteness d);

} // namespace g2flow
