#include "spinstar/density_matrix.hpp"

#include "spinstar/errors.hpp"

#include <cmath>
#include <string>

namespace spinstar {

TwoQubitDensityMatrix TwoQubitDensityMatrix::from_matrix(const Eigen::Matrix4cd& m) {
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw ValidationError("density matrix not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const cplx tr = m.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > kTraceTol) {
        throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
    }
    // Symmetrize so downstream eigen-solvers see an exactly Hermitian matrix.
    const Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
    TwoQubitDensityMatrix rho(h);
    const double lo = rho.min_eigenvalue();
    if (lo < -kPsdTol) {
        throw ValidationError("density matrix not positive semidefinite (min eigenvalue " +
                              std::to_string(lo) + ")");
    }
    return rho;
}

double TwoQubitDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Eigen::Matrix4cd x_state_matrix(double a, double b) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(kUpUp, kUpUp) = b;
    m(kDownDown, kDownDown) = b;
    m(kUpDown, kUpDown) = a;
    m(kDownUp, kDownUp) = a;
    m(kUpDown, kDownUp) = a;
    m(kDownUp, kUpDown) = a;
    return m;
}

} // namespace spinstar
