#pragma once

#include "spinstar/closed_form.hpp"
#include "spinstar/density_matrix.hpp"
#include "spinstar/half_int.hpp"
#include "spinstar/pair_state.hpp"
#include "spinstar/series.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace spinstar {

struct SectorBasisState {
    PairState central;
    HalfInt m;
};

/// |central> (x) |J,M> for one collective J, ordered central-major (T+, T0, T-, S)
/// then M ascending.
class SectorBasis {
public:
    SectorBasis(int n_env, HalfInt j, bool include_singlet);

    int n_env() const { return n_env_; }
    HalfInt j() const { return j_; }
    bool includes_singlet() const { return include_singlet_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const SectorBasisState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    std::optional<int> index_of(PairState central, HalfInt m) const;

private:
    int n_env_;
    HalfInt j_;
    bool include_singlet_;
    std::vector<SectorBasisState> states_;
};

class HermitianOperator {
public:
    /// Rejects matrices whose conjugate-symmetry defect exceeds 1e-12.
    static HermitianOperator from_matrix(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

private:
    explicit HermitianOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {}

    Eigen::MatrixXcd m_;
};

/// omega (S_z + J_z) + alpha (S_+ J_- + S_- J_+) on one sector, assembled from
/// the standard ladder matrix elements.
HermitianOperator build_sector_hamiltonian(const SectorBasis& basis, double omega, double alpha);
HermitianOperator build_sector_hamiltonian(int n_env, HalfInt j, double omega, double alpha,
                                           bool include_singlet);

/// exp(-i H t) by Hermitian eigendecomposition; the decomposition is done once
/// and reused for every t.
class Propagator {
public:
    explicit Propagator(const HermitianOperator& h);

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;
    int dim() const { return static_cast<int>(eigenvalues_.size()); }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

Eigen::VectorXcd propagate(const HermitianOperator& h, const Eigen::VectorXcd& psi0, double t);

/// One sector's contribution to a global state: weight * psi on basis.
struct SectorAmplitudes {
    SectorBasis basis;
    Eigen::VectorXcd psi;
    double weight = 1.0;
};

/// Matrix F with rho_pair = F F^dagger: one column per orthonormal environment label.
using PairFactor = Eigen::Matrix<cplx, 4, Eigen::Dynamic>;

PairFactor pair_factor(std::span<const SectorAmplitudes> sectors);
PairFactor pair_factor(const SectorStateVector& state);

TwoQubitDensityMatrix partial_trace_to_pair(std::span<const SectorAmplitudes> sectors);
TwoQubitDensityMatrix partial_trace_to_pair(const SectorStateVector& state);
TwoQubitDensityMatrix density_from_factor(const PairFactor& factor);

/// Wootters concurrence. The lambdas are obtained as singular values of
/// tau = G^T (sy x sy) G for a square-root factor G of rho, which avoids the
/// precision loss of square-rooting the eigenvalues of rho * rho_tilde.
double wootters_concurrence(const TwoQubitDensityMatrix& rho);
double wootters_concurrence(const PairFactor& factor);

/// Textbook route: sqrt of the eigenvalues of rho * rho_tilde. Less accurate
/// near rank-deficient states; kept as a cross-check of the factored route.
double wootters_concurrence_spinflip(const TwoQubitDensityMatrix& rho);

/// Exact dynamics in the collective-sector basis.
class SectorOracle {
public:
    static constexpr int kMaxEnv = 12;

    /// Throws ResourceGuardError for N > kMaxEnv before building anything.
    explicit SectorOracle(const ScenarioConfig& config);

    std::vector<SectorAmplitudes> evolve(double tau) const;
    TwoQubitDensityMatrix reduced_density(double tau) const;
    double concurrence(double tau) const;
    /// <psi(t)|H|psi(t)> summed over sectors with weights.
    double energy(double tau) const;
    /// Total population left in the singlet component.
    double singlet_population(double tau) const;

    /// Concurrence on config.tau_grid, source Oracle.
    ConcurrenceSeries series() const;

private:
    struct Sector {
        SectorBasis basis;
        HermitianOperator hamiltonian;
        Propagator propagator;
        Eigen::VectorXcd psi0;
        double weight;
    };

    ScenarioConfig config_;
    std::vector<Sector> sectors_;
};

/// Overlap <closed | oracle> of a closed-form sector state with oracle sector vectors.
cplx state_overlap(const SectorStateVector& closed, std::span<const SectorAmplitudes> oracle);

/// Brute force in the full 2^(N+2)-dimensional product space of single spins.
/// Coherent scenario only; the environment starts in explicitly symmetrized
/// Dicke states.
class ProductSpaceOracle {
public:
    static constexpr int kMaxEnv = 8;

    explicit ProductSpaceOracle(const ScenarioConfig& config);

    int dim() const { return dim_; }
    Eigen::VectorXcd evolve(double tau) const;
    PairFactor pair_factor_at(double tau) const;
    double concurrence(double tau) const;
    ConcurrenceSeries series() const;

private:
    ScenarioConfig config_;
    int dim_;
    std::optional<Propagator> propagator_;
    Eigen::VectorXcd psi0_;
};

/// Runs ProductSpaceOracle over config.tau_grid.
ConcurrenceSeries full_product_space_check(const ScenarioConfig& config);

} // namespace spinstar
