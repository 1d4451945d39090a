#include "plsem/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "plsem/error.hpp"
#include "plsem/random.hpp"

namespace plsem {

namespace {

// Terms whose combined weight is this small are treated as cancelled.
constexpr double kPruneTolerance = 1e-12;

std::string edge_name(int i, int j) { return std::to_string(i) + " -> " + std::to_string(j); }

}  // namespace

FunctionAtom FunctionAtom::power(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "power atom needs exponent >= 2");
  return {AtomKind::Power, k, 1.0, 0.0};
}

FunctionAtom FunctionAtom::cos_wave(double c1, double c2) {
  if (!(c1 > 0.0)) throw Error(ErrorKind::InvalidArgument, "wave atom needs c1 > 0");
  return {AtomKind::Cos, 1, c1, c2};
}

FunctionAtom FunctionAtom::tanh_wave(double c1, double c2) {
  if (!(c1 > 0.0)) throw Error(ErrorKind::InvalidArgument, "wave atom needs c1 > 0");
  return {AtomKind::Tanh, 1, c1, c2};
}

double FunctionAtom::operator()(double x) const {
  switch (kind) {
    case AtomKind::Identity: return x;
    case AtomKind::Power: {
      double r = x;
      for (int k = 1; k < exponent; ++k) r *= x;
      return r;
    }
    case AtomKind::Cos: return std::cos(c1 * (x - c2));
    case AtomKind::Tanh: return std::tanh(c1 * (x - c2));
  }
  return 0.0;
}

bool atom_less(const FunctionAtom& a, const FunctionAtom& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  if (a.c1 != b.c1) return a.c1 < b.c1;
  return a.c2 < b.c2;
}

EdgeFunction::EdgeFunction(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return atom_less(x.atom, y.atom); });
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().atom == t.atom)
      terms_.back().weight += t.weight;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.weight) <= kPruneTolerance; });
}

EdgeFunction EdgeFunction::linear(double coefficient) {
  return EdgeFunction({Term{coefficient, FunctionAtom::identity()}});
}

double EdgeFunction::operator()(double x) const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.weight * t.atom(x);
  return s;
}

double EdgeFunction::linear_coefficient() const {
  for (const Term& t : terms_)
    if (t.atom.kind == AtomKind::Identity) return t.weight;
  return 0.0;
}

bool EdgeFunction::is_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.atom.kind == AtomKind::Identity || std::abs(t.weight) < kLinearTolerance;
  });
}

bool EdgeFunction::is_zero() const { return terms_.empty(); }

EdgeFunction EdgeFunction::scaled(double factor) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.weight *= factor;
  return EdgeFunction(std::move(out));
}

EdgeFunction operator+(const EdgeFunction& a, const EdgeFunction& b) {
  std::vector<Term> out(a.terms_.begin(), a.terms_.end());
  out.insert(out.end(), b.terms_.begin(), b.terms_.end());
  return EdgeFunction(std::move(out));
}

// ---------------------------------------------------------------------------

Plsem::Plsem(Dag dag, std::vector<double> mu, std::vector<double> sigma2, std::map<Edge, EdgeFunction> functions)
    : dag_(std::move(dag)), mu_(std::move(mu)), sigma2_(std::move(sigma2)), functions_(std::move(functions)) {
  const auto p = static_cast<std::size_t>(dag_.node_count());
  if (mu_.size() != p || sigma2_.size() != p)
    throw Error(ErrorKind::InvalidArgument, "mu and sigma2 must have one entry per node");
  for (std::size_t j = 0; j < p; ++j) {
    if (!(sigma2_[j] > 0.0) || !std::isfinite(sigma2_[j]))
      throw Error(ErrorKind::InvalidArgument, "sigma2 of node " + std::to_string(j + 1) + " must be positive");
    if (!std::isfinite(mu_[j])) throw Error(ErrorKind::InvalidArgument, "mu must be finite");
  }
  if (functions_.size() != dag_.edge_count())
    throw Error(ErrorKind::InvalidArgument, "edge functions must be given for exactly the DAG's edges");
  for (const auto& [e, f] : functions_) {
    if (!dag_.has_edge(e.from, e.to))
      throw Error(ErrorKind::InvalidArgument, "function attached to non-edge " + edge_name(e.from, e.to));
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "edge function of " + edge_name(e.from, e.to) + " is zero");
  }
}

const EdgeFunction& Plsem::function(int i, int j) const {
  auto it = functions_.find({i, j});
  if (it == functions_.end()) throw Error(ErrorKind::NoSuchEdge, "no edge " + edge_name(i, j));
  return it->second;
}

namespace {

double residual(const Plsem& m, std::span<const double> x, int j) {
  double r = x[j - 1] - m.mu(j);
  for (int i : m.dag().parents(j)) r -= m.function(i, j)(x[i - 1]);
  return r;
}

void check_point(const Plsem& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.node_count()))
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.size()) + " coordinates, model has " +
                                                  std::to_string(m.node_count()) + " nodes");
}

}  // namespace

std::vector<double> evaluate_F(const Plsem& m, std::span<const double> x) {
  check_point(m, x);
  std::vector<double> out(x.size());
  for (int j = 1; j <= m.node_count(); ++j) out[j - 1] = residual(m, x, j) / std::sqrt(m.sigma2(j));
  return out;
}

DataMatrix sample(const Plsem& m, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
  const int p = m.node_count();
  const std::vector<int> order = topological_order(m.dag());
  std::vector<double> sd(p);
  for (int j = 1; j <= p; ++j) sd[j - 1] = std::sqrt(m.sigma2(j));
  DataMatrix x(n, p);
  Rng rng(seed);
  for (int r = 0; r < n; ++r) {
    for (int j : order) {
      double v = m.mu(j);
      for (int i : m.dag().parents(j)) v += m.function(i, j)(x(r, i - 1));
      x(r, j - 1) = v + sd[j - 1] * rng.normal();
    }
  }
  return x;
}

double log_density(const Plsem& m, std::span<const double> x) {
  check_point(m, x);
  double total = 0.0;
  for (int j = 1; j <= m.node_count(); ++j) {
    double s2 = m.sigma2(j);
    double r = residual(m, x, j);
    total += -0.5 * std::log(2.0 * std::numbers::pi * s2) - r * r / (2.0 * s2);
  }
  return total;
}

bool is_edge_linear(const Plsem& m, int i, int j) { return m.function(i, j).is_linear(); }

Plsem reverse_covered_linear_edge(const Plsem& m, int i, int j) {
  const Dag& d = m.dag();
  if (!d.has_edge(i, j)) throw Error(ErrorKind::NoSuchEdge, "no edge " + edge_name(i, j));
  if (!is_covered(d, i, j)) throw Error(ErrorKind::NotCovered, "edge " + edge_name(i, j) + " is not covered");
  const EdgeFunction& fij = m.function(i, j);
  if (!fij.is_linear()) throw Error(ErrorKind::NotLinear, "edge " + edge_name(i, j) + " is nonlinear");
  const double a = fij.linear_coefficient();
  if (std::abs(a) <= kPruneTolerance)
    throw Error(ErrorKind::ZeroCoefficient, "edge " + edge_name(i, j) + " has zero coefficient");

  const double s2i = m.sigma2(i);
  const double s2j = m.sigma2(j);
  const double tau2 = a * a * s2i + s2j;
  const double beta = a * s2i / tau2;
  const double nu2 = s2i * s2j / tau2;

  std::vector<double> mu = m.mu();
  std::vector<double> sigma2 = m.sigma2();
  const double mu_j = m.mu(j) + a * m.mu(i);
  mu[j - 1] = mu_j;
  mu[i - 1] = m.mu(i) - beta * mu_j;
  sigma2[j - 1] = tau2;
  sigma2[i - 1] = nu2;

  std::map<Edge, EdgeFunction> fns = m.functions();
  fns.erase({i, j});
  fns[{j, i}] = EdgeFunction::linear(beta);
  for (int s : d.parents(i)) {
    const EdgeFunction& fis = m.function(s, i);
    const EdgeFunction& fjs = m.function(s, j);
    EdgeFunction new_j = fis.scaled(a) + fjs;
    EdgeFunction new_i = fis.scaled(1.0 - beta * a) + fjs.scaled(-beta);
    fns.erase({s, i});
    fns.erase({s, j});
    if (!new_j.is_zero()) fns[{s, j}] = std::move(new_j);
    if (!new_i.is_zero()) fns[{s, i}] = std::move(new_i);
  }

  std::vector<Edge> edges;
  edges.reserve(fns.size());
  for (const auto& kv : fns) edges.push_back(kv.first);
  return Plsem(Dag(d.node_count(), edges), std::move(mu), std::move(sigma2), std::move(fns));
}

double max_log_density_gap(const Plsem& a, const Plsem& b, int npoints, std::uint64_t seed) {
  if (a.node_count() != b.node_count()) throw Error(ErrorKind::DimensionMismatch, "models have different node counts");
  Rng rng(seed);
  std::vector<double> x(a.node_count());
  double gap = 0.0;
  for (int k = 0; k < npoints; ++k) {
    for (double& v : x) v = 3.0 * rng.normal();
    gap = std::max(gap, std::abs(log_density(a, x) - log_density(b, x)));
  }
  return gap;
}

bool densities_equal(const Plsem& a, const Plsem& b, int npoints, std::uint64_t seed, double tol) {
  return max_log_density_gap(a, b, npoints, seed) <= tol;
}

}  // namespace plsem
