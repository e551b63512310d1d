#include "spinstar/oracle.hpp"

#include "spinstar/errors.hpp"
#include "spinstar/spin_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace spinstar {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// <J, M+step | J_{+/-} | J, M> for step = +1 / -1.
double collective_ladder(HalfInt j, HalfInt m, int step) {
    const double jv = j.value();
    const double mv = m.value();
    return std::sqrt(std::max(0.0, jv * (jv + 1.0) - mv * (mv + step)));
}

// S_+ on the pair: |1,0> -> sqrt2 |1,1>, |1,-1> -> sqrt2 |1,0>; S_- the adjoint.
std::optional<PairState> pair_raise(PairState s) {
    switch (s) {
    case PairState::T0: return PairState::Tplus;
    case PairState::Tminus: return PairState::T0;
    default: return std::nullopt;
    }
}

std::optional<PairState> pair_lower(PairState s) {
    switch (s) {
    case PairState::Tplus: return PairState::T0;
    case PairState::T0: return PairState::Tminus;
    default: return std::nullopt;
    }
}

const Eigen::Matrix4d& spin_flip() {
    static const Eigen::Matrix4d y = [] {
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return y;
}

double concurrence_from_lambdas(Eigen::VectorXd lambdas) {
    std::sort(lambdas.data(), lambdas.data() + lambdas.size(), std::greater<>());
    double c = lambdas.size() > 0 ? lambdas(0) : 0.0;
    for (Eigen::Index i = 1; i < lambdas.size(); ++i) {
        c -= lambdas(i);
    }
    return std::clamp(c, 0.0, 1.0);
}

// Singular values of G^T Y G for any G with rho = G G^dagger.
double concurrence_from_square_root(const Eigen::Matrix4cd& g) {
    const Eigen::Matrix4cd tau = g.transpose() * spin_flip().cast<cplx>() * g;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    return concurrence_from_lambdas(svd.singularValues());
}

void check_sector_norm(double norm2, const char* who) {
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw UsageError(std::string(who) + ": global state is not normalized (norm^2 = " +
                         std::to_string(norm2) + ")");
    }
}

} // namespace

SectorBasis::SectorBasis(int n_env, HalfInt j, bool include_singlet)
    : n_env_(n_env), j_(j), include_singlet_(include_singlet) {
    if (n_env < 0 || j.twice() < 0 || j.twice() > n_env || (n_env - j.twice()) % 2 != 0) {
        throw DomainError("SectorBasis: J=" + j.to_string() + " is not reachable with N=" + std::to_string(n_env));
    }
    for (PairState c : kAllPairStates) {
        if (c == PairState::Singlet && !include_singlet) {
            continue;
        }
        for (int tm = -j.twice(); tm <= j.twice(); tm += 2) {
            states_.push_back({c, HalfInt::from_twice(tm)});
        }
    }
}

std::optional<int> SectorBasis::index_of(PairState central, HalfInt m) const {
    if (!is_projection_of(m, j_) || (central == PairState::Singlet && !include_singlet_)) {
        return std::nullopt;
    }
    const int block = j_.twice() + 1;
    return static_cast<int>(central) * block + (m.twice() + j_.twice()) / 2;
}

HermitianOperator HermitianOperator::from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols()) {
        throw UsageError("HermitianOperator: matrix is not square");
    }
    const double defect = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-12) {
        throw ValidationError("HermitianOperator: conjugate-symmetry defect " + std::to_string(defect));
    }
    return HermitianOperator(std::move(m));
}

HermitianOperator build_sector_hamiltonian(const SectorBasis& basis, double omega, double alpha) {
    const int dim = basis.dim();
    const HalfInt j = basis.j();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto [central, m] = basis.state(col);
        h(col, col) = omega * (pair_sz(central) + m.value());

        // S_+ J_-
        if (auto up = pair_raise(central)) {
            if (auto row = basis.index_of(*up, m - 1)) {
                h(*row, col) += alpha * kSqrt2 * collective_ladder(j, m, -1);
            }
        }
        // S_- J_+
        if (auto down = pair_lower(central)) {
            if (auto row = basis.index_of(*down, m + 1)) {
                h(*row, col) += alpha * kSqrt2 * collective_ladder(j, m, +1);
            }
        }
    }
    return HermitianOperator::from_matrix(std::move(h));
}

HermitianOperator build_sector_hamiltonian(int n_env, HalfInt j, double omega, double alpha,
                                           bool include_singlet) {
    if (j.twice() > n_env) {
        throw DomainError("build_sector_hamiltonian: J=" + j.to_string() + " exceeds N/2");
    }
    return build_sector_hamiltonian(SectorBasis(n_env, j, include_singlet), omega, alpha);
}

Propagator::Propagator(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    if (es.info() != Eigen::Success) {
        throw ValidationError("Propagator: eigendecomposition failed");
    }
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != eigenvalues_.size()) {
        throw UsageError("propagate: state dimension " + std::to_string(psi0.size()) +
                         " does not match operator dimension " + std::to_string(eigenvalues_.size()));
    }
    if (t == 0.0) {
        return psi0;
    }
    Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -eigenvalues_(k) * t);
    }
    return eigenvectors_ * coeffs;
}

Eigen::VectorXcd propagate(const HermitianOperator& h, const Eigen::VectorXcd& psi0, double t) {
    if (psi0.size() != h.dim()) {
        throw UsageError("propagate: state dimension " + std::to_string(psi0.size()) +
                         " does not match operator dimension " + std::to_string(h.dim()));
    }
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12) {
        throw UsageError("propagate: initial state is not normalized");
    }
    return Propagator(h).evolve(psi0, t);
}

PairFactor pair_factor(std::span<const SectorAmplitudes> sectors) {
    double norm2 = 0.0;
    Eigen::Index columns = 0;
    for (const auto& s : sectors) {
        if (s.psi.size() != s.basis.dim()) {
            throw UsageError("pair_factor: sector vector does not match its basis");
        }
        norm2 += s.weight * s.weight * s.psi.squaredNorm();
        columns += s.basis.j().twice() + 1;
    }
    check_sector_norm(norm2, "partial_trace_to_pair");

    const Eigen::Matrix4cd& u = coupled_to_product();
    PairFactor f = PairFactor::Zero(4, columns);
    Eigen::Index col = 0;
    for (const auto& s : sectors) {
        const HalfInt j = s.basis.j();
        for (int tm = -j.twice(); tm <= j.twice(); tm += 2, ++col) {
            const HalfInt m = HalfInt::from_twice(tm);
            Eigen::Vector4cd coupled = Eigen::Vector4cd::Zero();
            for (PairState c : kAllPairStates) {
                if (auto idx = s.basis.index_of(c, m)) {
                    coupled(static_cast<int>(c)) = s.weight * s.psi(*idx);
                }
            }
            f.col(col) = u * coupled;
        }
    }
    return f;
}

PairFactor pair_factor(const SectorStateVector& state) {
    check_sector_norm(state.norm_squared(), "partial_trace_to_pair");
    // Environment labels (J, M) are orthonormal; gather the pair vector for each.
    std::map<std::pair<int, int>, Eigen::Vector4cd> by_env;
    for (const auto& e : state.entries) {
        if (!is_projection_of(e.m, e.j)) {
            throw UsageError("partial_trace_to_pair: invalid environment label");
        }
        auto [it, inserted] = by_env.try_emplace({e.j.twice(), e.m.twice()}, Eigen::Vector4cd::Zero());
        it->second(static_cast<int>(e.central)) += e.amplitude;
    }
    const Eigen::Matrix4cd& u = coupled_to_product();
    PairFactor f(4, static_cast<Eigen::Index>(by_env.size()));
    Eigen::Index col = 0;
    for (const auto& [label, v] : by_env) {
        f.col(col++) = u * v;
    }
    return f;
}

TwoQubitDensityMatrix density_from_factor(const PairFactor& factor) {
    return TwoQubitDensityMatrix::from_matrix(factor * factor.adjoint());
}

TwoQubitDensityMatrix partial_trace_to_pair(std::span<const SectorAmplitudes> sectors) {
    return density_from_factor(pair_factor(sectors));
}

TwoQubitDensityMatrix partial_trace_to_pair(const SectorStateVector& state) {
    return density_from_factor(pair_factor(state));
}

double wootters_concurrence(const TwoQubitDensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.matrix());
    const Eigen::Vector4d p = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return concurrence_from_square_root(es.eigenvectors() * p.asDiagonal());
}

double wootters_concurrence(const PairFactor& factor) {
    // Reduce the 4 x K factor to 4 x 4 without squaring: F = U S V^dagger, G = U S.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(factor), Eigen::ComputeThinU);
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    const Eigen::Index r = svd.singularValues().size();
    g.leftCols(r) = svd.matrixU() * svd.singularValues().asDiagonal();
    return concurrence_from_square_root(g);
}

double wootters_concurrence_spinflip(const TwoQubitDensityMatrix& rho) {
    const Eigen::Matrix4cd y = spin_flip().cast<cplx>();
    const Eigen::Matrix4cd tilde = y * rho.matrix().conjugate() * y;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho.matrix() * tilde);
    Eigen::Vector4d lambdas;
    for (int i = 0; i < 4; ++i) {
        const double ev = es.eigenvalues()(i).real();
        if (ev < -kPsdTol) {
            throw ValidationError("wootters_concurrence: rho * rho_tilde has eigenvalue " + std::to_string(ev));
        }
        lambdas(i) = std::sqrt(std::max(0.0, ev));
    }
    return concurrence_from_lambdas(lambdas);
}

SectorOracle::SectorOracle(const ScenarioConfig& config) : config_(config) {
    if (config.n_env > kMaxEnv) {
        throw ResourceGuardError("sector oracle is limited to N <= " + std::to_string(kMaxEnv) + ", got N=" +
                                 std::to_string(config.n_env));
    }
    config.validate();

    if (config.scenario == Scenario::Binomial) {
        for (const auto& [j, w] : binomial_weights(config.n_env, config.p).weights) {
            SectorBasis basis(config.n_env, j, true);
            HermitianOperator h = build_sector_hamiltonian(basis, config.omega, config.alpha);
            Propagator prop(h);
            Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dim());
            psi0(*basis.index_of(PairState::T0, HalfInt{})) = 1.0;
            sectors_.push_back({std::move(basis), std::move(h), std::move(prop), std::move(psi0), w});
        }
    } else {
        const HalfInt j = half_of(config.n_env);
        SectorBasis basis(config.n_env, j, true);
        HermitianOperator h = build_sector_hamiltonian(basis, config.omega, config.alpha);
        Propagator prop(h);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dim());
        for (const auto& [m, w] : coherent_weights(config.n_env, config.p).weights) {
            psi0(*basis.index_of(PairState::T0, m)) = w;
        }
        sectors_.push_back({std::move(basis), std::move(h), std::move(prop), std::move(psi0), 1.0});
    }
}

std::vector<SectorAmplitudes> SectorOracle::evolve(double tau) const {
    const double t = config_.time_of(tau);
    std::vector<SectorAmplitudes> out;
    out.reserve(sectors_.size());
    for (const auto& s : sectors_) {
        out.push_back({s.basis, s.propagator.evolve(s.psi0, t), s.weight});
    }
    return out;
}

TwoQubitDensityMatrix SectorOracle::reduced_density(double tau) const {
    return partial_trace_to_pair(evolve(tau));
}

double SectorOracle::concurrence(double tau) const { return wootters_concurrence(pair_factor(evolve(tau))); }

double SectorOracle::energy(double tau) const {
    const auto states = evolve(tau);
    double e = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& psi = states[i].psi;
        e += states[i].weight * states[i].weight * psi.dot(sectors_[i].hamiltonian.matrix() * psi).real();
    }
    return e;
}

double SectorOracle::singlet_population(double tau) const {
    double pop = 0.0;
    for (const auto& s : evolve(tau)) {
        const int block = s.basis.j().twice() + 1;
        pop += s.weight * s.weight * s.psi.segment(3 * block, block).squaredNorm();
    }
    return pop;
}

ConcurrenceSeries SectorOracle::series() const {
    ConcurrenceSeries out;
    out.source = SeriesSource::Oracle;
    out.tau = config_.tau_grid;
    out.values.reserve(out.tau.size());
    for (double tau : out.tau) {
        out.values.push_back(concurrence(tau));
    }
    return out;
}

cplx state_overlap(const SectorStateVector& closed, std::span<const SectorAmplitudes> oracle) {
    cplx overlap(0.0, 0.0);
    for (const auto& e : closed.entries) {
        for (const auto& s : oracle) {
            if (s.basis.j() != e.j) {
                continue;
            }
            if (auto idx = s.basis.index_of(e.central, e.m)) {
                overlap += std::conj(e.amplitude) * s.weight * s.psi(*idx);
            }
        }
    }
    return overlap;
}

namespace {

// Bit layout of a product-basis index: environment spins occupy bits 0..N-1,
// central spin B bit N and A bit N+1. A set bit means spin down, so the two
// high bits read directly as the (uu, ud, du, dd) pair index.
Eigen::MatrixXcd product_space_hamiltonian(int n_env, double omega, double alpha) {
    const int n_spins = n_env + 2;
    const int dim = 1 << n_spins;
    const unsigned central_bits[2] = {1u << (n_env + 1), 1u << n_env};
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        const int downs = std::popcount(s);
        h(s, s) = omega * 0.5 * (n_spins - 2 * downs);
        for (unsigned cb : central_bits) {
            for (int e = 0; e < n_env; ++e) {
                const unsigned eb = 1u << e;
                const bool central_down = (s & cb) != 0;
                const bool env_down = (s & eb) != 0;
                // sigma_+^c sigma_-^e and sigma_-^c sigma_+^e both flip an
                // anti-aligned pair.
                if (central_down != env_down) {
                    h(s ^ cb ^ eb, s) += alpha;
                }
            }
        }
    }
    return h;
}

} // namespace

ProductSpaceOracle::ProductSpaceOracle(const ScenarioConfig& config) : config_(config), dim_(0) {
    if (config.scenario != Scenario::Coherent) {
        throw UsageError("full product-space check supports the coherent scenario only");
    }
    if (config.n_env > kMaxEnv) {
        throw ResourceGuardError("full product-space check is limited to N <= " + std::to_string(kMaxEnv) +
                                 ", got N=" + std::to_string(config.n_env));
    }
    config.validate();

    const int n = config.n_env;
    dim_ = 1 << (n + 2);
    propagator_.emplace(HermitianOperator::from_matrix(product_space_hamiltonian(n, config.omega, config.alpha)));

    // Dicke state |N/2, M> = symmetrized sum over environment configurations
    // with M + N/2 spins up.
    const WeightDistribution dist = coherent_weights(n, config.p);
    std::vector<double> env_amp(static_cast<std::size_t>(1) << n, 0.0);
    for (int k = 0; k <= n; ++k) {
        std::vector<unsigned> members;
        for (unsigned env = 0; env < (1u << n); ++env) {
            if (n - std::popcount(env) == k) {
                members.push_back(env);
            }
        }
        const double amp = dist.weights[static_cast<std::size_t>(k)].amplitude / std::sqrt(double(members.size()));
        for (unsigned env : members) {
            env_amp[env] = amp;
        }
    }
    psi0_ = Eigen::VectorXcd::Zero(dim_);
    const double h = 1.0 / std::sqrt(2.0);
    for (unsigned env = 0; env < (1u << n); ++env) {
        psi0_(static_cast<Eigen::Index>((unsigned(kUpDown) << n) | env)) = h * env_amp[env];
        psi0_(static_cast<Eigen::Index>((unsigned(kDownUp) << n) | env)) = h * env_amp[env];
    }
}

Eigen::VectorXcd ProductSpaceOracle::evolve(double tau) const {
    return propagator_->evolve(psi0_, config_.time_of(tau));
}

PairFactor ProductSpaceOracle::pair_factor_at(double tau) const {
    const Eigen::VectorXcd psi = evolve(tau);
    const Eigen::Index env_dim = Eigen::Index(1) << config_.n_env;
    PairFactor f(4, env_dim);
    for (int pair = 0; pair < 4; ++pair) {
        f.row(pair) = psi.segment(pair * env_dim, env_dim).transpose();
    }
    return f;
}

double ProductSpaceOracle::concurrence(double tau) const { return wootters_concurrence(pair_factor_at(tau)); }

ConcurrenceSeries ProductSpaceOracle::series() const {
    ConcurrenceSeries out;
    out.source = SeriesSource::Oracle;
    out.tau = config_.tau_grid;
    out.values.reserve(out.tau.size());
    for (double tau : out.tau) {
        out.values.push_back(concurrence(tau));
    }
    return out;
}

ConcurrenceSeries full_product_space_check(const ScenarioConfig& config) {
    return ProductSpaceOracle(config).series();
}

} // namespace spinstar
