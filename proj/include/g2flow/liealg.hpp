#pragma once

#include "g2flow/mat3.hpp"

#include <string>

namespace g2flow {

/// 3-index array, t(i,j,k), 0-based.
struct Ten3 {
    std::array<double, 27> v{};
    double operator()(int i, int j, int k) const { return v[9 * i + 3 * j + k]; }
    double& operator()(int i, int j, int k) { return v[9 * i + 3 * j + k]; }
    double max_abs() const;
};

/// Structure constants c^i_{jk} of a 3-dimensional Lie algebra,
/// with Maurer-Cartan rule  d lambda^i = -1/2 c^i_{jk} lambda^j ^ lambda^k.
/// Lower-index antisymmetry c^i_{jk} = -c^i_{kj} is enforced on construction.
class StructureConstants {
public:
    /// Throws std::invalid_argument when the array is not antisymmetric in (j,k).
    StructureConstants(const Ten3& c, std::string name);

    double operator()(int i, int j, int k) const { return c_(i, j, k); }
    const std::string& name() const { return name_; }

    /// max |sum_m (c^m_{jk} c^i_{ml} + c^m_{kl} c^i_{mj} + c^m_{lj} c^i_{mk})| over i,j,k,l.
    double jacobi_residual() const;

    /// max_i |sum_j c^j_{ij}|; zero for unimodular algebras.
    double unimodularity_defect() const;

private:
    Ten3 c_;
    std::string name_;
};

enum class Preset { su2, abelian, heisenberg };

const StructureConstants& preset(Preset p);

/// Throws std::invalid_argument for names outside {su2, abelian, heisenberg}.
const StructureConstants& preset(const std::string& name);

/// Solvable algebra [X1,X2] = X2, [X1,X3] = X3: the coframe of constant negative
/// curvature. Jacobi holds; not unimodular, hence not a preset.
const StructureConstants& bianchi_v();

/// d of the invariant 1-form v_i lambda^i: returns W antisymmetric with
/// d(v.lambda) = 1/2 W_{jk} lambda^j ^ lambda^k, i.e. W_{jk} = -v_i c^i_{jk}.
Mat3 maurer_cartan_d(const StructureConstants& c, const Vec3& v);

} // namespace g2flow
