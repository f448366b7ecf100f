#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kwsum {

struct TransportPlan {
  double cost = 0.0;
  // Row-major supply x demand matrix of shipped mass.
  std::vector<double> flow;
  std::size_t pivots = 0;
};

// Exact balanced transportation problem
//   min sum_ij flow_ij * cost_ij  s.t. row sums = supply, column sums = demand
// solved with the transportation (network) simplex: north-west corner start,
// potentials on the basis tree, Dantzig pricing with a fallback to Bland's
// rule after a run of degenerate pivots. Supply and demand must be
// non-negative and are rescaled to a common total.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              std::span<const double> cost);

}  // namespace kwsum
