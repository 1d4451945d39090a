#include "plsem/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plsem/error.hpp"

namespace plsem {

namespace {

// Keeps log(sigma_hat) finite for exact fits.
constexpr double kMinSigma = 1e-300;

// Sample quantile at level k/m (type 2: averages at discontinuities), which
// is unchanged by duplicating every observation and commutes with x -> -x.
double quantile_type2(const std::vector<double>& sorted, std::size_t k, std::size_t m) {
  const std::size_t n = sorted.size();
  const std::size_t num = n * k;
  if (num % m == 0) {
    std::size_t h = num / m;
    if (h == 0) return sorted.front();
    if (h == n) return sorted.back();
    return 0.5 * (sorted[h - 1] + sorted[h]);
  }
  return sorted[num / m];
}

void check_dim(const BasisConfig& cfg) {
  if (cfg.dim < 3) throw Error(ErrorKind::InvalidArgument, "basis dimension must be at least 3");
}

Eigen::MatrixXd design(const std::vector<const Eigen::MatrixXd*>& blocks, Eigen::Index n) {
  Eigen::Index cols = 1;
  for (const auto* b : blocks) cols += b->cols();
  Eigen::MatrixXd x(n, cols);
  x.col(0).setOnes();
  Eigen::Index c = 1;
  for (const auto* b : blocks) {
    x.middleCols(c, b->cols()) = *b;
    c += b->cols();
  }
  return x;
}

NodeFit solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  NodeFit fit;
  if (x.cols() == 1) {
    fit.coefficients = Eigen::VectorXd::Constant(1, y.mean());
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    fit.coefficients = cod.solve(y);
  }
  const double rss = (y - x * fit.coefficients).squaredNorm();
  fit.sigma_hat = std::max(std::sqrt(rss / static_cast<double>(y.size())), kMinSigma);
  fit.score = std::log(fit.sigma_hat);
  return fit;
}

void check_sample_size(Eigen::Index n, std::size_t nparents, const BasisConfig& cfg) {
  if (n <= 1 + static_cast<Eigen::Index>(nparents) * cfg.dim)
    throw Error(ErrorKind::DegenerateInput, "sample size " + std::to_string(n) + " too small for " +
                                                std::to_string(nparents) + " smooth terms of dimension " +
                                                std::to_string(cfg.dim));
}

}  // namespace

Eigen::MatrixXd spline_basis(std::span<const double> x, const BasisConfig& cfg) {
  check_dim(cfg);
  const std::size_t n = x.size();
  if (n < static_cast<std::size_t>(cfg.dim) + 2)
    throw Error(ErrorKind::DegenerateInput, "need at least dim + 2 observations for a spline basis");
  auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo) || !std::isfinite(hi - lo)) throw Error(ErrorKind::DegenerateInput, "regressor is constant");

  std::vector<double> z(n);
  for (std::size_t r = 0; r < n; ++r) z[r] = (x[r] - lo) / (hi - lo);
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end());

  const auto m = static_cast<std::size_t>(cfg.dim);
  std::vector<double> knots;
  for (std::size_t k = 0; k <= m; ++k) knots.push_back(quantile_type2(sorted, k, m));
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  const std::size_t nk = knots.size();
  const double last = knots.back();
  auto cube = [](double v) { return v > 0.0 ? v * v * v : 0.0; };
  auto d = [&](std::size_t k, double v) { return (cube(v - knots[k]) - cube(v - last)) / (last - knots[k]); };

  Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nk - 1));
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    b(row, 0) = z[r];
    if (nk >= 3) {
      const double tail = d(nk - 2, z[r]);
      for (std::size_t k = 0; k + 2 < nk; ++k) b(row, static_cast<Eigen::Index>(k + 1)) = d(k, z[r]) - tail;
    }
  }
  b.rowwise() -= b.colwise().mean();
  return b;
}

NodeFit fit_additive_node(std::span<const double> y, const std::vector<std::vector<double>>& parents,
                          const BasisConfig& cfg) {
  check_dim(cfg);
  const auto n = static_cast<Eigen::Index>(y.size());
  for (const auto& col : parents)
    if (col.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "parent column length differs from y");
  check_sample_size(n, parents.size(), cfg);
  std::vector<Eigen::MatrixXd> bases;
  bases.reserve(parents.size());
  for (const auto& col : parents) bases.push_back(spline_basis(col, cfg));
  std::vector<const Eigen::MatrixXd*> blocks;
  for (const auto& b : bases) blocks.push_back(&b);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  return solve(design(blocks, n), yv);
}

NodeFit fit_additive_node(const DataMatrix& data, int node, std::span<const int> parents, const BasisConfig& cfg) {
  const auto p = static_cast<int>(data.cols());
  auto check = [&](int v) {
    if (v < 1 || v > p) throw Error(ErrorKind::DimensionMismatch, "node " + std::to_string(v) + " has no data column");
  };
  check(node);
  std::vector<double> y(data.col(node - 1).begin(), data.col(node - 1).end());
  std::vector<std::vector<double>> cols;
  for (int v : parents) {
    check(v);
    cols.emplace_back(data.col(v - 1).begin(), data.col(v - 1).end());
  }
  return fit_additive_node(y, cols, cfg);
}

double covered_reversal_delta(const DataMatrix& data, int i, int j, std::span<const int> cover,
                              const BasisConfig& cfg) {
  NodeScoreCache cache(data, cfg);
  return cache.delta(i, j, cover);
}

NodeScoreCache::NodeScoreCache(const DataMatrix& data, BasisConfig cfg) : data_(data), cfg_(cfg) { check_dim(cfg_); }

double NodeScoreCache::score(int node, std::span<const int> parents) {
  std::vector<int> key(parents.begin(), parents.end());
  std::sort(key.begin(), key.end());
  auto found = cache_.find({node, key});
  if (found != cache_.end()) return found->second;
  double s = fit_additive_node(data_, node, key, cfg_).score;
  ++fits_;
  cache_.emplace(std::make_pair(node, std::move(key)), s);
  return s;
}

double NodeScoreCache::delta(int i, int j, std::span<const int> cover) {
  for (int s : cover)
    if (s == i || s == j) throw Error(ErrorKind::InvalidArgument, "cover must not contain the edge's endpoints");
  std::vector<int> s(cover.begin(), cover.end());
  std::vector<int> s_i = s;
  s_i.push_back(i);
  std::vector<int> s_j = s;
  s_j.push_back(j);
  return (score(i, s_j) + score(j, s)) - (score(i, s) + score(j, s_i));
}

}  // namespace plsem
