#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "adiaphase/field_path.hpp"
#include "adiaphase/types.hpp"

namespace adiaphase {

inline constexpr double kHermiticityTolerance = 1e-13;

// Dense d x d complex matrix with H = H^dagger (checked on construction).
class HermitianOperator {
public:
    explicit HermitianOperator(CMatrix entries, double tolerance = kHermiticityTolerance);

    const CMatrix& matrix() const noexcept { return entries_; }
    Eigen::Index dimension() const noexcept { return entries_.rows(); }

private:
    CMatrix entries_;
};

// Largest |H_ij - conj(H_ji)|.
double hermiticity_defect(const CMatrix& m);

const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

// Units: hbar = 1, so the spin energies mu*hbar*B/2 read mu*B/2 here.
struct SpinModelParams {
    double coupling = 1.0; // mu = g * mu_B, nonzero
};

// (mu / 2) (Bx sx + By sy + Bz sz) in the {up, down} basis.
HermitianOperator spin_half_hamiltonian(const SpinModelParams& params, const Vec3& field);

// H(R(t)): a field path composed with a pure builder R -> H.
class HamiltonianFamily {
public:
    using Builder = std::function<HermitianOperator(const RVector&)>;

    HamiltonianFamily(FieldPath path, Builder builder, Eigen::Index dimension);

    const FieldPath& path() const noexcept { return path_; }
    double duration() const noexcept { return path_.duration(); }
    Eigen::Index dimension() const noexcept { return dimension_; }

    // Throws DomainError outside [0, T] or when the builder changes dimension.
    HermitianOperator at(double t) const;

private:
    FieldPath path_;
    Builder builder_;
    Eigen::Index dimension_;
};

HamiltonianFamily spin_half_family(const SpinModelParams& params, FieldPath path);

// One field component X_c(t) times a constant Hermitian matrix.
struct FieldTerm {
    std::size_t component;
    CMatrix matrix;
};

// H(t) = sum_i X_{c_i}(t) M_i
HamiltonianFamily matrix_family(std::vector<FieldTerm> terms, FieldPath path);

} // namespace adiaphase
