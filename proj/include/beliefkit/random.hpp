#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "beliefkit/mass_function.hpp"

namespace beliefkit {

using Rng = std::mt19937_64;

/// Dirichlet(alpha,...,alpha) draw of dimension k.
std::vector<double> dirichlet(Rng& rng, std::size_t k, double alpha = 1.0);

/// Random BPA whose focal elements are all nonempty subsets (Dirichlet(1)
/// weights), so every subset carries strictly positive mass.
MassFunction random_full_mass(const Frame& frame, Rng& rng);

/// Random BPA with `focal_count` distinct nonempty focal elements chosen
/// uniformly, plus Dirichlet(1) weights.
MassFunction random_mass(const Frame& frame, Rng& rng, std::size_t focal_count);

/// Random Bayesian BPA (Dirichlet(1) over singletons).
MassFunction random_bayesian(const Frame& frame, Rng& rng);

}  // namespace beliefkit
