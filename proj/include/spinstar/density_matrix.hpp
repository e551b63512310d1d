#pragma once

#include <Eigen/Dense>

#include <complex>

namespace spinstar {

using cplx = std::complex<double>;

/// Tolerances shared by every producer and consumer of pair states.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Index into the product basis (up-up, up-down, down-up, down-down).
enum ProductIndex : int { kUpUp = 0, kUpDown = 1, kDownUp = 2, kDownDown = 3 };

/// State of the two central spins. Construction validates Hermiticity, unit
/// trace and positivity; a matrix that fails any of them never becomes a
/// TwoQubitDensityMatrix.
class TwoQubitDensityMatrix {
public:
    static TwoQubitDensityMatrix from_matrix(const Eigen::Matrix4cd& m);

    const Eigen::Matrix4cd& matrix() const { return m_; }
    cplx operator()(int row, int col) const { return m_(row, col); }

    double trace() const { return m_.trace().real(); }
    double min_eigenvalue() const;
    double hermitian_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

    /// Largest entrywise modulus of the difference.
    double max_abs_diff(const TwoQubitDensityMatrix& other) const {
        return (m_ - other.m_).cwiseAbs().maxCoeff();
    }

private:
    explicit TwoQubitDensityMatrix(const Eigen::Matrix4cd& m) : m_(m) {}

    Eigen::Matrix4cd m_;
};

/// The matrix with populations b, a, a, b and central coherence a.
Eigen::Matrix4cd x_state_matrix(double a, double b);

} // namespace spinstar
