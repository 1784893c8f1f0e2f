#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "jumpflow/mark_measure.hpp"
#include "jumpflow/rng.hpp"

namespace jumpflow {

// Coefficient callbacks write into caller-provided buffers so the hot
// simulation loop does not allocate.
//
//   drift(t, x, out)          out: d
//   diffusion(t, x, out)      out: d*m, row-major (rows = state, cols = noise)
//   jump_amplitude(t, x, u, out)  out: d
using DriftFn = std::function<void(double, std::span<const double>, std::span<double>)>;
using DiffusionFn = std::function<void(double, std::span<const double>, std::span<double>)>;
using JumpAmplitudeFn =
    std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)>;

// Data of one jump-diffusion problem:
//   dX = b(t,X) dt + sigma(t,X) dB + gamma * Integral g(t,X-,u) N(dt,du)
// with N a Poisson random measure of intensity dt nu(du), nu finite and
// atomic. c1 and c2 are the declared linear/quadratic growth constants:
//   |b| + ||sigma|| <= c1 (1+|x|),   sum_k w_k |g(t,x,u_k)|^2 <= c2 (1+|x|)^2.
struct CoefficientSet {
    int dim = 1;
    int noise_dim = 1;
    DriftFn drift;
    DiffusionFn diffusion;
    double jump_scale = 0.0; // gamma
    JumpAmplitudeFn jump_amplitude;
    MarkMeasure nu;
    double c1 = 0.0;
    double c2 = 0.0;
};

using Scalar2Fn = std::function<double(double, double)>;          // (t,x)
using Scalar3Fn = std::function<double(double, double, double)>;  // (t,x,u)

// 1-D convenience constructor. Scalar marks; g defaults to g(t,x,u)=u.
CoefficientSet make_coefficients_1d(Scalar2Fn b, Scalar2Fn sigma, double gamma,
                                    MarkMeasure nu, double c1, double c2,
                                    Scalar3Fn g = {});

// Scalar drift/diffusion/jump evaluation for 1-D sets.
double drift_1d(const CoefficientSet& cs, double t, double x);
double sigma_1d(const CoefficientSet& cs, double t, double x);
double jump_amp_1d(const CoefficientSet& cs, double t, double x, double u);
// a = sigma sigma^T / 2 (scalar form).
double a_1d(const CoefficientSet& cs, double t, double x);

struct ValidationReport {
    int n_probe = 0;
    double max_drift_diffusion_ratio = 0.0; // (|b|+||sigma||) / (c1 (1+|x|))
    double max_jump_ratio = 0.0;            // sum w|g|^2 / (c2 (1+|x|)^2)
    double witness_t = 0.0;
    std::vector<double> witness_x;
    double jump_witness_t = 0.0;
    std::vector<double> jump_witness_x;
    bool violation = false;
    std::string to_string() const;
};

// Spot-check the growth hypotheses on random (t,x) draws in
// [0,t_max] x [-x_radius, x_radius]^d. Report-only; never throws on a
// violation.
ValidationReport validate_coefficients(const CoefficientSet& cs, int n_probe,
                                       std::uint64_t seed, double t_max = 1.0,
                                       double x_radius = 10.0);

} // namespace jumpflow
