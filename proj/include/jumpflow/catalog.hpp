#pragma once

#include <map>
#include <string>
#include <vector>

#include "jumpflow/coefficients.hpp"
#include "jumpflow/grid_density.hpp"
#include "jumpflow/simulate.hpp"

namespace jumpflow {

// A named, parameterized problem: coefficients, initial law (both as a
// sampler and as a grid density), and the hypotheses it is known to
// satisfy. Functions never live in configs; experiments refer to
// problems by catalog name plus a numeric parameter map.
struct Problem {
    std::string name;
    CoefficientSet coeffs;
    InitialSampler mu0_sampler;
    std::function<GridDensity1D(const Grid1D&)> mu0_density;
    double mu0_first_moment = 0.0; // analytic integral of |x| d mu0
    bool additive_jumps = false;   // g(t,x,u) = u, so the grid solver applies
    std::vector<std::string> assumptions;
};

struct ParamSpec {
    std::string key;
    double default_value = 0.0;
    std::string description;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
};

const std::vector<CatalogEntry>& catalog_entries();
bool catalog_has(const std::string& name);

// Instantiate a problem. Unknown names or parameter keys throw
// std::invalid_argument; every instantiation is growth-checked before
// it is returned.
Problem make_problem(const std::string& name, const std::map<std::string, double>& params);

// Human-readable listing (deterministic) with parameters and the
// assumption log of each entry.
std::string catalog_listing();

} // namespace jumpflow
