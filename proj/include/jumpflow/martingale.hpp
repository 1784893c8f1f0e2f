#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jumpflow/coefficients.hpp"
#include "jumpflow/path.hpp"
#include "jumpflow/test_functions.hpp"

namespace jumpflow {

// Bounded functional of the path restricted to [0, cutoff]; the
// declared bound is checked at evaluation time.
struct PathFunctional {
    std::string label;
    double cutoff = 0.0;
    double bound = 1.0;
    std::function<double(const PathSample&)> eval;
};

PathFunctional constant_functional(double value, double cutoff);

// chi(w) = prod_j logistic(scale * (w_{t_j} - center_j)), times <= cutoff.
PathFunctional sigmoid_product_functional(std::vector<std::pair<double, double>> time_centers,
                                          double scale, double cutoff);

struct DefectReport {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t n_paths = 0;
    std::string phi_label;
    std::string chi_label;
    double s = 0.0;
    double t = 0.0;

    // Monte Carlo detection flag: |estimate| > threshold means the
    // martingale property is rejected at this (phi, chi).
    bool exceeds(double bias_allowance) const {
        return std::fabs(estimate) > 3.0 * stderr_ + bias_allowance;
    }
};

// Monte Carlo mean and standard error of
//   [ phi(w_t) - phi(w_s) - Integral_s^t (A_r+B_r)phi(w_r) dr ] * chi(w),
// the time integral by trapezoid quadrature on each path's own grid.
DefectReport martingale_defect(const PathEnsemble& ens, const CoefficientSet& cs,
                               const TestFunction& phi, const PathFunctional& chi, double s,
                               double t, int n_threads = 1);

// All (phi, chi) pairs in one sweep, sharing coefficient evaluations
// across the dictionary. Row order: phi-major.
std::vector<DefectReport> martingale_defect_batch(const PathEnsemble& ens,
                                                  const CoefficientSet& cs,
                                                  std::span<const TestFunction> phis,
                                                  std::span<const PathFunctional> chis, double s,
                                                  double t, int n_threads = 1);

} // namespace jumpflow
