//
// Copyright 2026 The puffercal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "puffercal/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "puffercal/errors.hpp"

namespace puffercal {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Cell {
  int row, col;
  double flow;
};

// Spanning-tree basis over the bipartite node set (rows 0..M-1, cols M..M+N-1).
struct Basis {
  int rows, cols;
  std::vector<Cell> cells;  // always rows + cols - 1 entries

  int node_of_col(int c) const { return rows + c; }
};

// The basis tree determines the flows uniquely given the marginals: peel
// leaves (nodes incident to exactly one basic cell). Returns false if some
// flow comes out below -1e-9 (basis infeasible for these marginals).
bool flows_from_basis(Basis& basis, const VectorXd& supply,
                      const VectorXd& demand) {
  const int m = basis.rows, n = basis.cols;
  const int nodes = m + n;
  std::vector<double> residual(nodes);
  for (int i = 0; i < m; ++i) residual[i] = supply[i];
  for (int j = 0; j < n; ++j) residual[m + j] = demand[j];

  std::vector<int> degree(nodes, 0);
  std::vector<std::vector<int>> incident(nodes);
  for (int c = 0; c < static_cast<int>(basis.cells.size()); ++c) {
    const auto& cell = basis.cells[c];
    incident[cell.row].push_back(c);
    incident[basis.node_of_col(cell.col)].push_back(c);
    ++degree[cell.row];
    ++degree[basis.node_of_col(cell.col)];
  }
  std::vector<bool> done(basis.cells.size(), false);
  std::deque<int> leaves;
  for (int v = 0; v < nodes; ++v) {
    if (degree[v] == 1) leaves.push_back(v);
  }
  int resolved = 0;
  bool feasible = true;
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop_front();
    if (degree[v] != 1) continue;
    int cell_idx = -1;
    for (int c : incident[v]) {
      if (!done[c]) {
        cell_idx = c;
        break;
      }
    }
    if (cell_idx < 0) continue;
    auto& cell = basis.cells[cell_idx];
    const int other =
        (v == cell.row) ? basis.node_of_col(cell.col) : cell.row;
    cell.flow = residual[v];
    if (cell.flow < -1e-9) feasible = false;
    if (cell.flow < 0.0) cell.flow = 0.0;
    residual[v] = 0.0;
    residual[other] -= cell.flow;
    done[cell_idx] = true;
    ++resolved;
    --degree[v];
    if (--degree[other] == 1) leaves.push_back(other);
  }
  if (resolved != static_cast<int>(basis.cells.size())) {
    throw NumericError("transport: basis is not a spanning tree");
  }
  return feasible;
}

// Dual potentials from the basis: u[0] = 0, then propagate c = u + v over
// the tree.
void potentials(const Basis& basis, const MatrixXd& cost, VectorXd& u,
                VectorXd& v) {
  const int m = basis.rows, n = basis.cols;
  std::vector<std::vector<std::pair<int, int>>> row_cells(m), col_cells(n);
  for (std::size_t c = 0; c < basis.cells.size(); ++c) {
    row_cells[basis.cells[c].row].emplace_back(basis.cells[c].col,
                                               static_cast<int>(c));
    col_cells[basis.cells[c].col].emplace_back(basis.cells[c].row,
                                               static_cast<int>(c));
  }
  std::vector<bool> urow(m, false), vcol(n, false);
  u.setZero(m);
  v.setZero(n);
  std::deque<int> queue;  // rows as i, cols as m+j
  urow[0] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    if (node < m) {
      for (auto [j, c] : row_cells[node]) {
        if (!vcol[j]) {
          v[j] = cost(node, j) - u[node];
          vcol[j] = true;
          queue.push_back(m + j);
        }
      }
    } else {
      const int j = node - m;
      for (auto [i, c] : col_cells[j]) {
        if (!urow[i]) {
          u[i] = cost(i, j) - v[j];
          urow[i] = true;
          queue.push_back(i);
        }
      }
    }
  }
}

// Unique cycle created by adding (erow, ecol) to the basis tree: alternating
// path found by DFS from the entering row node to the entering col node.
std::vector<int> find_cycle_path(const Basis& basis, int erow, int ecol) {
  const int m = basis.rows, n = basis.cols;
  const int nodes = m + n;
  std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (node, cell)
  for (std::size_t c = 0; c < basis.cells.size(); ++c) {
    const int a = basis.cells[c].row;
    const int b = basis.node_of_col(basis.cells[c].col);
    adj[a].emplace_back(b, static_cast<int>(c));
    adj[b].emplace_back(a, static_cast<int>(c));
  }
  std::vector<int> parent_node(nodes, -1), parent_cell(nodes, -1);
  std::vector<bool> seen(nodes, false);
  std::deque<int> queue;
  seen[erow] = true;
  queue.push_back(erow);
  const int target = basis.node_of_col(ecol);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == target) break;
    for (auto [w, c] : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        parent_node[w] = v;
        parent_cell[w] = c;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> path;  // basis cell indices from target back to erow
  for (int v = target; v != erow; v = parent_node[v]) {
    if (parent_cell[v] < 0) {
      throw NumericError("transport: basis tree disconnected");
    }
    path.push_back(parent_cell[v]);
  }
  return path;
}

}  // namespace

TransportPlan solve_transport(const Gmm1D& src, const Gmm1D& dst) {
  if (src.empty() || dst.empty()) {
    throw DomainError("solve_transport: empty mixture");
  }
  const int m = src.size();
  const int n = dst.size();

  MatrixXd cost(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      cost(i, j) =
          w2_squared(src.components()[i].component, dst.components()[j].component);
    }
  }

  VectorXd supply(m), demand(n);
  for (int i = 0; i < m; ++i) supply[i] = src.components()[i].weight;
  for (int j = 0; j < n; ++j) demand[j] = dst.components()[j].weight;

  // Perturbed marginals keep every basic flow strictly positive, which rules
  // out degenerate pivot cycling; the final flows are recomputed from the
  // optimal basis with the exact marginals.
  const double eta = 1e-10;
  VectorXd psupply = supply.array() + eta;
  VectorXd pdemand = demand;
  pdemand[n - 1] += m * eta;

  // Northwest-corner start.
  Basis basis{m, n, {}};
  {
    VectorXd ra = psupply, rb = pdemand;
    int i = 0, j = 0;
    while (static_cast<int>(basis.cells.size()) < m + n - 1) {
      const double f = std::min(ra[i], rb[j]);
      basis.cells.push_back({i, j, f});
      ra[i] -= f;
      rb[j] -= f;
      if (i == m - 1 && j == n - 1) break;
      if (ra[i] <= rb[j] && i < m - 1) {
        ++i;
      } else if (j < n - 1) {
        ++j;
      } else {
        ++i;
      }
    }
    if (static_cast<int>(basis.cells.size()) != m + n - 1) {
      throw NumericError("transport: northwest-corner start incomplete");
    }
  }

  const double cost_scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double rc_tol = 1e-12 * cost_scale;
  const int max_pivots = 50 * m * n + 100;

  VectorXd u(m), v(n);
  MatrixXd in_basis = MatrixXd::Zero(m, n);
  for (int pivot = 0;; ++pivot) {
    if (pivot > max_pivots) {
      throw NumericError("transport: pivot limit exceeded (cycling?)");
    }
    potentials(basis, cost, u, v);

    in_basis.setZero();
    for (const auto& cell : basis.cells) in_basis(cell.row, cell.col) = 1.0;

    int erow = -1, ecol = -1;
    double best_rc = -rc_tol;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (in_basis(i, j) != 0.0) continue;
        const double rc = cost(i, j) - u[i] - v[j];
        if (rc < best_rc) {
          best_rc = rc;
          erow = i;
          ecol = j;
        }
      }
    }
    if (erow < 0) break;  // all reduced costs nonnegative: optimal

    const std::vector<int> path = find_cycle_path(basis, erow, ecol);
    // Walking the path from the target col node back toward the entering row:
    // cells alternate -,+,-,... starting with - (they close the cycle with
    // the entering cell at +).
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    int sign = -1;
    for (int c : path) {
      if (sign < 0 && basis.cells[c].flow < theta) {
        theta = basis.cells[c].flow;
        leave = c;
      }
      sign = -sign;
    }
    if (leave < 0) {
      throw NumericError("transport: no leaving cell found");
    }
    sign = -1;
    for (int c : path) {
      basis.cells[c].flow += sign * theta;
      sign = -sign;
    }
    basis.cells[leave] = {erow, ecol, theta};
  }

  // Exact flows on the optimal basis.
  if (!flows_from_basis(basis, supply, demand)) {
    throw NumericError("transport: optimal basis infeasible for exact marginals");
  }

  TransportPlan plan;
  plan.weights = MatrixXd::Zero(m, n);
  for (const auto& cell : basis.cells) {
    plan.weights(cell.row, cell.col) = cell.flow;
  }
  plan.row_marginals = supply;
  plan.col_marginals = demand;
  plan.cost = (plan.weights.array() * cost.array()).sum();
  return plan;
}

std::vector<PlanCostTerm> plan_cost_terms(const TransportPlan& plan,
                                          const Gmm1D& src, const Gmm1D& dst) {
  const int m = src.size();
  const int n = dst.size();
  if (plan.weights.rows() != m || plan.weights.cols() != n) {
    throw DomainError("plan_cost_terms: plan shape does not match models");
  }
  for (int i = 0; i < m; ++i) {
    if (std::abs(plan.weights.row(i).sum() - src.components()[i].weight) >
        1e-9) {
      throw DomainError("plan_cost_terms: row marginal mismatch");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(plan.weights.col(j).sum() - dst.components()[j].weight) >
        1e-9) {
      throw DomainError("plan_cost_terms: column marginal mismatch");
    }
  }
  std::vector<PlanCostTerm> terms;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = plan.weights(i, j);
      if (w > 0.0) {
        terms.push_back(PlanCostTerm{
            i, j, w,
            std::abs(src.components()[i].component.mu -
                     dst.components()[j].component.mu),
            std::abs(src.components()[i].component.sigma -
                     dst.components()[j].component.sigma)});
      }
    }
  }
  return terms;
}

}  // namespace puffercal
