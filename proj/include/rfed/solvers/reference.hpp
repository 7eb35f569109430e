#pragma once

#include "rfed/problems/dataset_io.hpp"
#include "rfed/solvers/rsd.hpp"

namespace rfed {

// High-accuracy optimum for excess-risk reporting: the closed form when the
// problem has one, otherwise steepest descent from a problem-specific start
// (log-Euclidean mean for SPD means, the planted subspace when known).
ReferenceSolution compute_reference(const FederatedProblem& problem,
                                    const SolverConfig& config = {});

}  // namespace rfed
