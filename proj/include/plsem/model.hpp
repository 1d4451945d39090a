#pragma once

// Partially linear additive SEMs with Gaussian noise:
//
//   X_j = mu_j + sum_{i in pa(j)} f_{j,i}(X_i) + eps_j,   eps_j ~ N(0, sigma_j^2)
//
// Edge functions are finite weighted sums of atoms drawn from a family that
// is closed under the covered-linear-edge reversal, so reversals are exact.

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "plsem/graph.hpp"

namespace plsem {

// One row per observation, one column per node (column j-1 holds X_j).
using DataMatrix = Eigen::MatrixXd;

enum class AtomKind { Identity, Power, Cos, Tanh };

struct FunctionAtom {
  AtomKind kind = AtomKind::Identity;
  int exponent = 1;  // Power only, >= 2
  double c1 = 1.0;   // Cos/Tanh frequency, > 0
  double c2 = 0.0;   // Cos/Tanh shift

  static FunctionAtom identity() { return {}; }
  static FunctionAtom power(int k);
  static FunctionAtom cos_wave(double c1, double c2);
  static FunctionAtom tanh_wave(double c1, double c2);

  double operator()(double x) const;

  friend bool operator==(const FunctionAtom&, const FunctionAtom&) = default;
};

// Strict weak order used to keep terms canonical.
bool atom_less(const FunctionAtom& a, const FunctionAtom& b);

struct Term {
  double weight = 0.0;
  FunctionAtom atom;
};

// Weighted sum of atoms. Canonical form: like atoms combined, terms sorted by
// atom, exact zeros dropped.
class EdgeFunction {
 public:
  static constexpr double kLinearTolerance = 1e-10;

  EdgeFunction() = default;
  explicit EdgeFunction(std::vector<Term> terms);
  static EdgeFunction linear(double coefficient);

  double operator()(double x) const;

  std::span<const Term> terms() const noexcept { return terms_; }
  double linear_coefficient() const;
  // Every non-identity atom has |weight| below kLinearTolerance.
  bool is_linear() const;
  bool is_zero() const;

  EdgeFunction scaled(double factor) const;
  friend EdgeFunction operator+(const EdgeFunction& a, const EdgeFunction& b);

 private:
  std::vector<Term> terms_;
};

class Plsem {
 public:
  // Throws InvalidArgument if sizes disagree with the DAG, a variance is not
  // positive, a function is attached to a non-edge, an edge has no function,
  // or a function is identically zero.
  Plsem(Dag dag, std::vector<double> mu, std::vector<double> sigma2, std::map<Edge, EdgeFunction> functions);

  const Dag& dag() const noexcept { return dag_; }
  int node_count() const noexcept { return dag_.node_count(); }
  double mu(int j) const { return mu_.at(j - 1); }
  double sigma2(int j) const { return sigma2_.at(j - 1); }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<double>& sigma2() const noexcept { return sigma2_; }
  // Throws NoSuchEdge.
  const EdgeFunction& function(int i, int j) const;
  const std::map<Edge, EdgeFunction>& functions() const noexcept { return functions_; }

 private:
  Dag dag_;
  std::vector<double> mu_;
  std::vector<double> sigma2_;
  std::map<Edge, EdgeFunction> functions_;
};

// Structural residual map F(x)_j = (x_j - mu_j - sum f_{j,i}(x_i)) / sigma_j.
std::vector<double> evaluate_F(const Plsem& m, std::span<const double> x);

// Ancestral sampling; row r draws one noise value per node in topological
// order from Rng(seed). Throws InvalidArgument if n < 1.
DataMatrix sample(const Plsem& m, int n, std::uint64_t seed);

double log_density(const Plsem& m, std::span<const double> x);

// Throws NoSuchEdge.
bool is_edge_linear(const Plsem& m, int i, int j);

// Closed-form distribution-preserving reversal of a covered linear edge.
// Throws NoSuchEdge, NotCovered, NotLinear, ZeroCoefficient.
Plsem reverse_covered_linear_edge(const Plsem& m, int i, int j);

// Max |log density difference| over `npoints` points drawn as 3 * N(0, I).
// Throws DimensionMismatch.
double max_log_density_gap(const Plsem& a, const Plsem& b, int npoints, std::uint64_t seed);
bool densities_equal(const Plsem& a, const Plsem& b, int npoints, std::uint64_t seed, double tol);

}  // namespace plsem
