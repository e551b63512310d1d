#pragma once

#include "spinstar/density_matrix.hpp"
#include "spinstar/half_int.hpp"

#include <Eigen/Dense>

#include <array>

namespace spinstar {

/// Coupled states of the central pair: the triplet |1,+1>, |1,0>, |1,-1> and the singlet |0,0>.
enum class PairState : int { Tplus = 0, T0 = 1, Tminus = 2, Singlet = 3 };

inline constexpr std::array<PairState, 4> kAllPairStates = {PairState::Tplus, PairState::T0,
                                                            PairState::Tminus, PairState::Singlet};

/// Total S_z of the pair state.
constexpr int pair_sz(PairState s) {
    switch (s) {
    case PairState::Tplus: return 1;
    case PairState::Tminus: return -1;
    default: return 0;
    }
}

const char* to_string(PairState s);

/// Rows: product basis (uu, ud, du, dd). Columns: coupled basis in PairState order.
/// |1,0> = (ud + du)/sqrt2, |0,0> = (ud - du)/sqrt2.
const Eigen::Matrix4cd& coupled_to_product();

} // namespace spinstar
