#pragma once

#include <cstdint>

#include "ramct/objective.hpp"

namespace ramct {

/// Deterministic random convex instance for tests and the solver benchmark:
/// one Gaussian data term per channel (n+2 rows), identity and
/// first-difference regularizers, and the consistent-weights configuration
/// (gamma = beta = 1, xi = 0, eta = 0, nu = 0). Priors are a common random
/// vector, so the shifted regularization path is exercised.
ProblemInstance seeded_instance(int n, int channels, std::uint32_t seed);

/// Joint minimizer of the instance with the coupling collapsed (w = u = v),
/// computed by the dense normal-equations oracle. This is the reference the
/// iterative optimizers are compared against.
RealVector collapsed_minimizer(const ProblemInstance& p);

}  // namespace ramct
