#include "qtp/grid.hpp"

#include <cmath>
#include <sstream>

namespace qtp {

void check_oscillation_resolution(const Grid& kgrid, double x, double v_max,
                                  double t_abs_max) {
    const double reach = std::abs(x) + std::abs(v_max) * std::abs(t_abs_max);
    const double phase_per_step = kgrid.step() * reach;
    const double limit = M_PI / 4.0;
    if (phase_per_step >= limit) {
        std::ostringstream os;
        os << "momentum grid too coarse for the requested geometry: dk*(|x|+v*|t|max) = "
           << phase_per_step << " >= pi/4; need at least "
           << static_cast<long>(std::ceil((kgrid.max - kgrid.min) * reach / limit)) + 1
           << " nodes";
        throw GridError(os.str());
    }
}

}  // namespace qtp
