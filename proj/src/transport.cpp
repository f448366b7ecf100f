#include "kwsum/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kwsum/error.hpp"

namespace kwsum {

namespace {

struct Cell {
  std::size_t row;
  std::size_t col;
  double flow;
};

}  // namespace

TransportPlan solve_transport(std::span<const double> supply_in, std::span<const double> demand_in,
                              std::span<const double> cost) {
  const std::size_t m = supply_in.size();
  const std::size_t n = demand_in.size();
  if (m == 0 || n == 0 || cost.size() != m * n) {
    throw Error(ErrorCode::kInvalidArgument, "transport: bad problem dimensions");
  }
  std::vector<double> supply(supply_in.begin(), supply_in.end());
  std::vector<double> demand(demand_in.begin(), demand_in.end());
  const double s_total = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double d_total = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (!(s_total > 0.0) || !(d_total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "transport: supply and demand must be positive");
  }
  for (double& d : demand) d *= s_total / d_total;

  // North-west corner: exactly m + n - 1 basic cells, some possibly empty.
  std::vector<Cell> basis;
  basis.reserve(m + n - 1);
  std::vector<char> is_basic(m * n, 0);
  {
    std::vector<double> s = supply;
    std::vector<double> d = demand;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const double x = std::min(s[i], d[j]);
      basis.push_back({i, j, std::max(0.0, x)});
      is_basic[i * n + j] = 1;
      s[i] -= x;
      d[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (s[i] <= d[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  double max_cost = 0.0;
  for (double c : cost) max_cost = std::max(max_cost, std::abs(c));
  const double tol = 1e-12 * std::max(1.0, max_cost);

  const std::size_t nodes = m + n;  // rows first, then columns
  std::vector<std::vector<std::size_t>> adj(nodes);
  std::vector<double> pot(nodes);
  std::vector<std::size_t> parent_cell(nodes);
  std::vector<char> seen(nodes);
  std::vector<std::size_t> queue;
  queue.reserve(nodes);

  auto build_tree = [&](std::size_t root) {
    for (auto& a : adj) a.clear();
    for (std::size_t c = 0; c < basis.size(); ++c) {
      adj[basis[c].row].push_back(c);
      adj[m + basis[c].col].push_back(c);
    }
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    queue.push_back(root);
    seen[root] = 1;
    pot[root] = 0.0;
    parent_cell[root] = SIZE_MAX;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t v = queue[qi];
      for (std::size_t c : adj[v]) {
        const Cell& cell = basis[c];
        const std::size_t r = cell.row;
        const std::size_t k = m + cell.col;
        const std::size_t other = v == r ? k : r;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_cell[other] = c;
        // u_row + v_col = cost on basic cells
        pot[other] = cost[cell.row * n + cell.col] - pot[v];
        queue.push_back(other);
      }
    }
  };

  TransportPlan plan;
  std::size_t degenerate_run = 0;
  const std::size_t max_pivots = 100 * (m * n + nodes) + 1000;
  std::vector<std::size_t> path;
  while (plan.pivots < max_pivots) {
    build_tree(0);
    const bool bland = degenerate_run > nodes;
    std::size_t enter = SIZE_MAX;
    double best = -tol;
    for (std::size_t i = 0; i < m && !(bland && enter != SIZE_MAX); ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (is_basic[i * n + j]) continue;
        const double rc = cost[i * n + j] - pot[i] - pot[m + j];
        if (rc < best) {
          best = rc;
          enter = i * n + j;
          if (bland) break;
        }
      }
    }
    if (enter == SIZE_MAX) break;
    const std::size_t ei = enter / n;
    const std::size_t ej = enter % n;

    // Tree path from column node ej up to the root, then from row node ei; the
    // cycle is the symmetric difference.
    build_tree(ei);
    path.clear();
    for (std::size_t v = m + ej; v != ei;) {
      const std::size_t c = parent_cell[v];
      path.push_back(c);
      const Cell& cell = basis[c];
      v = (v == cell.row) ? m + cell.col : cell.row;
    }
    // path[0] touches the entering column: it loses flow, then signs alternate.
    double theta = INFINITY;
    std::size_t leave = SIZE_MAX;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const Cell& cell = basis[path[k]];
      if (cell.flow < theta ||
          (cell.flow == theta && bland && cell.row * n + cell.col <
                                              basis[leave].row * n + basis[leave].col)) {
        theta = cell.flow;
        leave = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      Cell& cell = basis[path[k]];
      cell.flow = (k % 2 == 0) ? cell.flow - theta : cell.flow + theta;
    }
    degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
    Cell& out = basis[leave];
    is_basic[out.row * n + out.col] = 0;
    out = Cell{ei, ej, theta};
    is_basic[enter] = 1;
    ++plan.pivots;
  }

  plan.flow.assign(m * n, 0.0);
  for (const Cell& c : basis) {
    plan.flow[c.row * n + c.col] = std::max(0.0, c.flow);
    plan.cost += std::max(0.0, c.flow) * cost[c.row * n + c.col];
  }
  return plan;
}

}  // namespace kwsum
