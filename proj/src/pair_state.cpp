#include "spinstar/pair_state.hpp"

#include <cmath>

namespace spinstar {

const char* to_string(PairState s) {
    switch (s) {
    case PairState::Tplus: return "T+";
    case PairState::T0: return "T0";
    case PairState::Tminus: return "T-";
    case PairState::Singlet: return "S";
    }
    return "?";
}

const Eigen::Matrix4cd& coupled_to_product() {
    static const Eigen::Matrix4cd u = [] {
        const double h = 1.0 / std::sqrt(2.0);
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(kUpUp, 0) = 1.0;
        m(kUpDown, 1) = h;
        m(kDownUp, 1) = h;
        m(kDownDown, 2) = 1.0;
        m(kUpDown, 3) = h;
        m(kDownUp, 3) = -h;
        return m;
    }();
    return u;
}

} // namespace spinstar
