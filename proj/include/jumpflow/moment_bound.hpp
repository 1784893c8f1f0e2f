#pragma once

#include <span>
#include <string>

#include "jumpflow/path.hpp"

namespace jumpflow {

// Concave C^1 truncation profile:
//   lambda(r) = r on [0,1], plateau 1.5 on [2,inf),
//   lambda'(r) = (1 + cos(pi (r-1))) / 2 on [1,2].
double lambda_eval(double r);
double lambda_deriv(double r);
constexpr double lambda_plateau() { return 1.5; }

// lambda_n(x) = n * lambda(rho(x)/n) with rho(x) = sqrt(1+|x|^2).
// Equals rho(x) exactly when rho(x) <= n and saturates at 1.5 n.
double lambda_n_eval(int n, std::span<const double> x);
double lambda_n_eval(int n, double x);

struct BoundReport {
    double kappa_bdg = 0.0;
    double c_bundled = 0.0;  // bundled growth constant entering t0
    double t0 = 0.0;         // solves C (t0 + sqrt(t0)) = 1/2
    int doubling_exponent = 0;  // floor(T/t0) + 1
    double bound = 0.0;
    double empirical_sup_moment = 0.0;
    double slack = 0.0;      // bound / empirical (inf when empirical = 0)
    bool pass = false;
    std::string to_string() const;
};

// A-priori first-moment bound for the running supremum:
//   E sup_{t<=T} |X_t| <= 2^(floor(T/t0)+1) mu0(|.|) + 2^(floor(T/t0)+1) - 1,
// with t0 from C (t0 + sqrt(t0)) = 1/2 and
// C = kappa * max(c1, sqrt(c2 nu(U)), c1 + sqrt(c2 nu(U))), kappa = 6.
// Compared against the ensemble's empirical E sup |X|.
BoundReport moment_bound_check(const PathEnsemble& ens, double mu0_first_moment, double c1,
                               double c2, double nu_mass);

} // namespace jumpflow
