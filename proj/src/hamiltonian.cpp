#include "adiaphase/hamiltonian.hpp"

#include <limits>
#include <memory>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols())
        return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix entries, double tolerance) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
        throw DomainError("Hermitian operator must be a non-empty square matrix");
    if (!entries_.allFinite())
        throw DomainError("Hermitian operator has non-finite entries");
    const double defect = hermiticity_defect(entries_);
    if (defect > tolerance)
        throw DomainError("operator is not Hermitian (defect " + std::to_string(defect) + ")");
}

const CMatrix& pauli_x() {
    static const CMatrix m = (CMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
    return m;
}

const CMatrix& pauli_y() {
    static const CMatrix m = (CMatrix(2, 2) << 0.0, -kI, kI, 0.0).finished();
    return m;
}

const CMatrix& pauli_z() {
    static const CMatrix m = (CMatrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished();
    return m;
}

HermitianOperator spin_half_hamiltonian(const SpinModelParams& params, const Vec3& field) {
    const double half = 0.5 * params.coupling;
    CMatrix h(2, 2);
    h(0, 0) = half * field.z();
    h(1, 1) = -half * field.z();
    h(0, 1) = half * Complex(field.x(), -field.y());
    h(1, 0) = half * Complex(field.x(), field.y());
    return HermitianOperator(std::move(h));
}

HamiltonianFamily::HamiltonianFamily(FieldPath path, Builder builder, Eigen::Index dimension)
    : path_(std::move(path)), builder_(std::move(builder)), dimension_(dimension) {
    if (dimension_ < 1)
        throw DomainError("Hamiltonian family dimension must be >= 1");
    if (!builder_)
        throw DomainError("Hamiltonian family builder is empty");
}

HermitianOperator HamiltonianFamily::at(double t) const {
    HermitianOperator h = builder_(path_(t));
    if (h.dimension() != dimension_)
        throw DomainError("Hamiltonian builder returned dimension " + std::to_string(h.dimension()) +
                          ", expected " + std::to_string(dimension_));
    return h;
}

HamiltonianFamily spin_half_family(const SpinModelParams& params, FieldPath path) {
    if (params.coupling == 0.0)
        throw DomainError("spin coupling mu must be nonzero");
    if (path.dimension() != 3)
        throw DomainError("spin-1/2 model needs a 3-component field path");
    return HamiltonianFamily(
        std::move(path),
        [params](const RVector& r) { return spin_half_hamiltonian(params, Vec3(r(0), r(1), r(2))); }, 2);
}

HamiltonianFamily matrix_family(std::vector<FieldTerm> terms, FieldPath path) {
    if (terms.empty())
        throw DomainError("matrix family needs at least one term");
    const Eigen::Index dim = terms.front().matrix.rows();
    for (const auto& term : terms) {
        if (term.matrix.rows() != dim || term.matrix.cols() != dim)
            throw DomainError("matrix family terms must share one square dimension");
        if (term.component >= path.dimension())
            throw DomainError("matrix family term refers to field component " +
                              std::to_string(term.component) + " of a " +
                              std::to_string(path.dimension()) + "-component path");
        HermitianOperator check(term.matrix);
    }
    auto shared = std::make_shared<const std::vector<FieldTerm>>(std::move(terms));
    return HamiltonianFamily(
        std::move(path),
        [shared, dim](const RVector& r) {
            CMatrix h = CMatrix::Zero(dim, dim);
            for (const auto& term : *shared)
                h += r(static_cast<Eigen::Index>(term.component)) * term.matrix;
            // Sum of Hermitian matrices; symmetrize away rounding asymmetry.
            return HermitianOperator(0.5 * (h + h.adjoint()));
        },
        dim);
}

} // namespace adiaphase
