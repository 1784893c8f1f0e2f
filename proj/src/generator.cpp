#include "jumpflow/generator.hpp"

#include <stdexcept>

namespace jumpflow {

double apply_generator(const CoefficientSet& cs, double t, const TestFunction& phi, double x) {
    if (cs.dim != 1)
        throw std::invalid_argument("apply_generator: 1-D coefficient set required");
    double acc = drift_1d(cs, t, x) * phi.deriv1(x) + a_1d(cs, t, x) * phi.deriv2(x);
    if (cs.jump_scale != 0.0 || !cs.nu.empty()) {
        const double phi_x = phi.value(x);
        for (std::size_t k = 0; k < cs.nu.size(); ++k) {
            const auto& atom = cs.nu.atom(k);
            const double shift = cs.jump_scale * jump_amp_1d(cs, t, x, atom.mark[0]);
            acc += atom.weight * (phi.value(x + shift) - phi_x);
        }
    }
    return acc;
}

} // namespace jumpflow
