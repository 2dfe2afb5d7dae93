#include "g2flow/liealg.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

double Ten3::max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

StructureConstants::StructureConstants(const Ten3& c, std::string name)
    : c_(c), name_(std::move(name)) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (std::abs(c_(i, j, k) + c_(i, k, j)) > 0.0)
                    throw std::invalid_argument(
                        "StructureConstants: lower indices must be antisymmetric (" + name_ + ")");
}

double StructureConstants::jacobi_residual() const {
    double r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double s = 0;
                    for (int m = 0; m < 3; ++m)
                        s += c_(m, j, k) * c_(i, m, l) + c_(m, k, l) * c_(i, m, j) +
                             c_(m, l, j) * c_(i, m, k);
                    r = std::max(r, std::abs(s));
                }
    return r;
}

double StructureConstants::unimodularity_defect() const {
    double r = 0;
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += c_(j, i, j);
        r = std::max(r, std::abs(s));
    }
    return r;
}

const StructureConstants& preset(Preset p) {
    static const StructureConstants su2 = [] {
        Ten3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) c(i, j, k) = epsilon(i, j, k);
        return StructureConstants(c, "su2");
    }();
    static const StructureConstants abelian = StructureConstants(Ten3{}, "abelian");
    static const StructureConstants heisenberg = [] {
        Ten3 c;
        c(0, 1, 2) = 1.0;
        c(0, 2, 1) = -1.0;
        return StructureConstants(c, "heisenberg");
    }();
    switch (p) {
        case Preset::su2: return su2;
        case Preset::abelian: return abelian;
        case Preset::heisenberg: return heisenberg;
    }
    throw std::invalid_argument("preset: unknown enum value");
}

const StructureConstants& preset(const std::string& name) {
    if (name == "su2") return preset(Preset::su2);
    if (name == "abelian") return preset(Preset::abelian);
    if (name == "heisenberg") return preset(Preset::heisenberg);
    throw std::invalid_argument("preset: unknown name '" + name + "'");
}

const StructureConstants& bianchi_v() {
    static const StructureConstants b5 = [] {
        Ten3 c;
        c(1, 0, 1) = 1.0;
        c(1, 1, 0) = -1.0;
        c(2, 0, 2) = 1.0;
        c(2, 2, 0) = -1.0;
        return StructureConstants(c, "bianchi_v");
    }();
    return b5;
}

Mat3 maurer_cartan_d(const StructureConstants& c, const Vec3& v) {
    Mat3 w;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double s = 0;
            for (int i = 0; i < 3; ++i) s -= v[i] * c(i, j, k);
            w(j, k) = s;
        }
    return w;
}

} // namespace g2flow
