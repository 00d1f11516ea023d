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

// Brute-force transportation-LP oracle: enumerate every spanning-tree basis
// of the complete bipartite support, solve each basis by leaf elimination,
// keep the cheapest feasible one. Exponential; only for tiny instances.

#ifndef PUFFERCAL_TESTS_TRANSPORT_ORACLE_HPP
#define PUFFERCAL_TESTS_TRANSPORT_ORACLE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracles {

inline double transport_optimum(const Eigen::MatrixXd& cost,
                                const Eigen::VectorXd& supply,
                                const Eigen::VectorXd& demand) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  const int cells = m * n;
  const int basis_size = m + n - 1;
  double best = std::numeric_limits<double>::infinity();

  std::vector<int> pick(basis_size);
  const std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == basis_size) {
      std::vector<int> parent(m + n);
      for (int v = 0; v < m + n; ++v) parent[v] = v;
      const std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      for (int c : pick) {
        const int ra = find(c / n);
        const int rb = find(m + c % n);
        if (ra == rb) return;  // cycle: not a tree
        parent[ra] = rb;
      }
      // Acyclic with m + n - 1 edges over m + n nodes: a spanning tree.
      std::vector<double> residual(m + n);
      for (int i = 0; i < m; ++i) residual[i] = supply[i];
      for (int j = 0; j < n; ++j) residual[m + j] = demand[j];
      std::vector<int> degree(m + n, 0);
      for (int c : pick) {
        ++degree[c / n];
        ++degree[m + c % n];
      }
      std::vector<bool> used(basis_size, false);
      double total = 0.0;
      for (int round = 0; round < basis_size; ++round) {
        int leaf_cell = -1, leaf_node = -1;
        for (int c = 0; c < basis_size; ++c) {
          if (used[c]) continue;
          if (degree[pick[c] / n] == 1) {
            leaf_cell = c;
            leaf_node = pick[c] / n;
            break;
          }
          if (degree[m + pick[c] % n] == 1) {
            leaf_cell = c;
            leaf_node = m + pick[c] % n;
            break;
          }
        }
        if (leaf_cell < 0) return;
        const int row = pick[leaf_cell] / n;
        const int col = pick[leaf_cell] % n;
        const int a = row;
        const int b = m + col;
        const int other = (leaf_node == a) ? b : a;
        const double flow = residual[leaf_node];
        if (flow < -1e-12) return;  // infeasible basis
        total += std::max(flow, 0.0) * cost(row, col);
        residual[leaf_node] = 0.0;
        residual[other] -= std::max(flow, 0.0);
        used[leaf_cell] = true;
        --degree[a];
        --degree[b];
      }
      best = std::min(best, total);
      return;
    }
    for (int c = start; c <= cells - (basis_size - depth); ++c) {
      pick[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace oracles

#endif  // PUFFERCAL_TESTS_TRANSPORT_ORACLE_HPP
