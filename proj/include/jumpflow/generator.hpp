#pragma once

#include "jumpflow/coefficients.hpp"
#include "jumpflow/test_functions.hpp"

namespace jumpflow {

// (A_t + B_t) phi at x for a 1-D coefficient set:
//   b(t,x) phi'(x) + a(t,x) phi''(x)
//     + sum_k w_k [ phi(x + gamma g(t,x,u_k)) - phi(x) ],
// with a = sigma^2 / 2.
double apply_generator(const CoefficientSet& cs, double t, const TestFunction& phi, double x);

} // namespace jumpflow
