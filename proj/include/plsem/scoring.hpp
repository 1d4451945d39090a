#pragma once

// Additive spline regression and node scores.
//
// Each smooth term is a natural cubic spline with knots at empirical
// quantiles of the (min/max normalized) regressor. The constant basis
// function is dropped and the remaining columns are centered, so a single
// global intercept carries the mean.

#include <Eigen/Dense>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "plsem/model.hpp"

namespace plsem {

struct BasisConfig {
  int dim = 6;  // columns per smooth term, >= 3
};

struct NodeFit {
  double sigma_hat = 0.0;  // sqrt(RSS / n)
  double score = 0.0;      // log(sigma_hat)
  Eigen::VectorXd coefficients;  // intercept first, then one block per parent
};

// n x dim matrix (fewer columns only when ties collapse quantile knots).
// Throws DegenerateInput if x is constant or n < dim + 2, InvalidArgument if
// dim < 3.
Eigen::MatrixXd spline_basis(std::span<const double> x, const BasisConfig& cfg);

// Least squares of y on [1 | basis(parent_1) | ...]; rank deficiency is
// resolved by the minimum-norm solution. Throws DimensionMismatch,
// DegenerateInput if n <= 1 + |parents| * dim.
NodeFit fit_additive_node(std::span<const double> y, const std::vector<std::vector<double>>& parents,
                          const BasisConfig& cfg);
// Same, reading column `node - 1` and parent columns from `data`.
NodeFit fit_additive_node(const DataMatrix& data, int node, std::span<const int> parents, const BasisConfig& cfg);

// Score of the reversed model minus score of the current model for the
// covered edge i -> j with cover S:
//   [log s_i(S+j) + log s_j(S)] - [log s_i(S) + log s_j(S+i)]
double covered_reversal_delta(const DataMatrix& data, int i, int j, std::span<const int> cover,
                              const BasisConfig& cfg);

// Memoizes node scores by (node, parent set) over one data matrix. Not
// thread-safe.
class NodeScoreCache {
 public:
  NodeScoreCache(const DataMatrix& data, BasisConfig cfg);

  double score(int node, std::span<const int> parents);
  double delta(int i, int j, std::span<const int> cover);

  std::size_t fits_computed() const noexcept { return fits_; }
  const DataMatrix& data() const noexcept { return data_; }

 private:
  const DataMatrix& data_;
  BasisConfig cfg_;
  std::map<std::pair<int, std::vector<int>>, double> cache_;
  std::size_t fits_ = 0;
};

}  // namespace plsem
