#include "tauprec/symbols.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "tauprec/errors.hpp"
#include "tauprec/quadrature.hpp"

namespace tauprec {

namespace {
constexpr long double kPi = 3.14159265358979323846264338327950288L;
}

struct Symbol::Node {
  enum class Kind { abs_pow, laplace_pow, product, scaled, zero };
  Kind kind;
  double theta = 0.0;  // abs_pow
  int k = 0;           // laplace_pow
  double scale = 1.0;  // scaled
  std::shared_ptr<const Node> left, right;
  double zero_order = 0.0;
  std::string key;

  long double eval(long double t) const {
    switch (kind) {
      case Kind::abs_pow:
        return theta == 0.0 ? 1.0L : powl(fabsl(t), static_cast<long double>(theta));
      case Kind::laplace_pow: {
        // 2 - 2 cos t = 4 sin^2(t/2), the stable form near the zero.
        const long double s = sinl(0.5L * t);
        return powl(4.0L * s * s, static_cast<long double>(k));
      }
      case Kind::product:
        return left->eval(t) * right->eval(t);
      case Kind::scaled:
        return static_cast<long double>(scale) * left->eval(t);
      case Kind::zero:
        return 0.0L;
    }
    return 0.0L;
  }

  bool is_polynomial() const {
    switch (kind) {
      case Kind::abs_pow:
        return theta == 0.0;
      case Kind::laplace_pow:
        return true;
      case Kind::product:
        return left->is_polynomial() && right->is_polynomial();
      case Kind::scaled:
        return left->is_polynomial();
      case Kind::zero:
        return true;
    }
    return false;
  }

  // Convolution of two symmetric coefficient sequences given by their
  // nonnegative-lag halves.
  static std::vector<double> convolve_symmetric(const std::vector<double>& a,
                                                const std::vector<double>& b) {
    const int ma = static_cast<int>(a.size()) - 1;
    const int mb = static_cast<int>(b.size()) - 1;
    std::vector<double> out(ma + mb + 1, 0.0);
    auto at = [](const std::vector<double>& v, int l) {
      l = std::abs(l);
      return l < static_cast<int>(v.size()) ? v[l] : 0.0;
    };
    for (int l = 0; l <= ma + mb; ++l) {
      double s = 0.0;
      for (int m = -mb; m <= mb; ++m) s += at(b, m) * at(a, l - m);
      out[l] = s;
    }
    return out;
  }

  // Cosine coefficients a_0..a_m of a polynomial symbol (a_{-l} = a_l).
  std::vector<double> cosine_coefficients() const {
    switch (kind) {
      case Kind::abs_pow:
        return {1.0};
      case Kind::laplace_pow: {
        std::vector<double> c = {2.0, -1.0};
        for (int i = 1; i < k; ++i) c = convolve_symmetric(c, {2.0, -1.0});
        return c;
      }
      case Kind::product:
        return convolve_symmetric(left->cosine_coefficients(), right->cosine_coefficients());
      case Kind::scaled: {
        std::vector<double> c = left->cosine_coefficients();
        for (double& v : c) v *= scale;
        return c;
      }
      case Kind::zero:
        return {0.0};
    }
    return {};
  }
};

Symbol::Symbol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Symbol Symbol::abs_pow(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("abs_pow: theta must be a finite nonnegative real");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::abs_pow;
  n->theta = theta;
  n->zero_order = theta;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "abs(%.17g)", theta);
  n->key = buf;
  return Symbol(n);
}

Symbol Symbol::laplace_pow(int k) {
  if (k < 1) throw std::invalid_argument("laplace_pow: k must be a positive integer");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::laplace_pow;
  n->k = k;
  n->zero_order = 2.0 * k;
  n->key = "lap(" + std::to_string(k) + ")";
  return Symbol(n);
}

Symbol Symbol::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::zero;
  n->zero_order = 0.0;
  n->key = "zero";
  return Symbol(n);
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  auto n = std::make_shared<Symbol::Node>();
  n->kind = Symbol::Node::Kind::product;
  n->left = a.node_;
  n->right = b.node_;
  n->zero_order = a.zero_order() + b.zero_order();
  n->key = "mul(" + a.key() + "," + b.key() + ")";
  return Symbol(n);
}

Symbol operator*(double c, const Symbol& s) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("symbol scale must be positive");
  auto n = std::make_shared<Symbol::Node>();
  n->kind = Symbol::Node::Kind::scaled;
  n->scale = c;
  n->left = s.node_;
  n->zero_order = s.zero_order();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scl(%.17g,", c);
  n->key = buf + s.key() + ")";
  return Symbol(n);
}

double Symbol::operator()(double t) const {
  return static_cast<double>(node_->eval(static_cast<long double>(t)));
}

double Symbol::zero_order() const { return node_->zero_order; }
bool Symbol::is_polynomial() const { return node_->is_polynomial(); }
const std::string& Symbol::key() const { return node_->key; }

int Symbol::bandwidth() const {
  if (!is_polynomial()) throw std::logic_error("bandwidth: symbol is not a trigonometric polynomial");
  return static_cast<int>(node_->cosine_coefficients().size()) - 1;
}

std::vector<double> Symbol::cosine_coefficients() const {
  if (!is_polynomial())
    throw std::logic_error("cosine_coefficients: symbol is not a trigonometric polynomial");
  return node_->cosine_coefficients();
}

namespace {

// Quadrature targets: work far below the contract (1e-12 relative, 1e-15
// absolute floor) so coefficient errors stay near double rounding even after
// the ill-conditioned spectral transforms downstream.
constexpr double kTargetRel = 1e-15;
constexpr double kTargetAbs = 5e-17;
constexpr double kContractRel = 1e-12;
constexpr double kContractAbs = 1e-15;

// One initial panel per period of cos(l t); the 25-point panel rule is
// fully converged at that oscillation density.
std::vector<long double> oscillation_breakpoints(long l) {
  std::vector<long double> breaks;
  if (l > 1) {
    breaks.reserve(l / 2);
    for (long j = 1; 2 * j < l; ++j)
      breaks.push_back(2.0L * kPi * static_cast<long double>(j) / static_cast<long double>(l));
  }
  return breaks;
}

void require_converged(const QuadratureResult& q, const std::string& what) {
  if (q.error_estimate > std::max(kContractRel * std::abs(q.value), kContractAbs))
    throw QuadratureError("fourier_coeff: " + what + " achieved error estimate " +
                              std::to_string(q.error_estimate),
                          q.error_estimate, kContractAbs);
}

// I(theta, l) = Int_0^pi t^theta cos(l t) dt for l >= 1. For theta > 2 the
// integral reduces exactly by integration by parts:
//   I(theta, l) = theta (-1)^l pi^(theta-1) / l^2
//                 - theta (theta - 1) / l^2 * I(theta - 2, l),
// so only a base exponent in (0, 2) ever reaches quadrature. Base values are
// cached across symbols (theta and theta - 2 share them).
long double abs_pow_base_integral(double theta, long l) {
  static std::mutex mutex;
  static std::map<std::pair<double, long>, long double>* cache =
      new std::map<std::pair<double, long>, long double>();
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache->find({theta, l});
    if (it != cache->end()) return it->second;
  }
  const std::vector<long double> breaks = oscillation_breakpoints(l);
  const long double th = static_cast<long double>(theta);
  auto f = [th, l](long double t) { return powl(t, th) * cosl(l * t); };
  QuadratureResult q = integrate_adaptive(f, 0.0L, kPi, kTargetRel, kTargetAbs, breaks);
  require_converged(q, "|t|^" + std::to_string(theta) + " at l=" + std::to_string(l));
  const long double value = static_cast<long double>(q.value);
  std::lock_guard<std::mutex> lock(mutex);
  cache->emplace(std::make_pair(theta, l), value);
  return value;
}

long double abs_pow_integral(double theta, long l) {
  if (theta > 2.0) {
    const long double th = static_cast<long double>(theta);
    const long double sign = (l % 2 == 0) ? 1.0L : -1.0L;
    const long double l2 = static_cast<long double>(l) * static_cast<long double>(l);
    return th * sign * powl(kPi, th - 1.0L) / l2 -
           th * (th - 1.0L) / l2 * abs_pow_integral(theta - 2.0, l);
  }
  if (theta == 0.0) return 0.0L;  // Int_0^pi cos(lt) dt = 0 for l >= 1
  if (theta == 2.0) {
    const long double sign = (l % 2 == 0) ? 1.0L : -1.0L;
    return 2.0L * sign * kPi / (static_cast<long double>(l) * static_cast<long double>(l));
  }
  return abs_pow_base_integral(theta, l);
}

double coefficient(const Symbol::Node& node, long l);

double cached_coefficient(const Symbol::Node& node, long l);

// (1/pi) Int_0^pi f(t) cos(l t) dt split at the zeros of the cosine factor.
double coeff_by_quadrature(const Symbol::Node& node, long l) {
  const std::vector<long double> breaks = oscillation_breakpoints(l);
  auto f = [&node, l](long double t) { return node.eval(t) * cosl(l * t); };
  QuadratureResult q = integrate_adaptive(f, 0.0L, kPi, kTargetRel, kTargetAbs, breaks);
  require_converged(q, node.key + " at l=" + std::to_string(l));
  return static_cast<double>(static_cast<long double>(q.value) / kPi);
}

// Product with a trigonometric polynomial factor: the coefficients are the
// exact finite convolution of the polynomial's coefficients with the other
// factor's. Products of two non-polynomial factors fall back to quadrature
// of the pointwise product (a coefficient convolution there would need
// truncation).
double product_coefficient(const Symbol::Node& node, long l) {
  const Symbol::Node* poly = nullptr;
  const Symbol::Node* other = nullptr;
  if (node.left->is_polynomial()) {
    poly = node.left.get();
    other = node.right.get();
  } else if (node.right->is_polynomial()) {
    poly = node.right.get();
    other = node.left.get();
  }
  if (poly == nullptr) return coeff_by_quadrature(node, l);
  const std::vector<double> p = poly->cosine_coefficients();
  const int band = static_cast<int>(p.size()) - 1;
  long double sum = 0.0L;
  for (int m = -band; m <= band; ++m)
    sum += static_cast<long double>(p[std::abs(m)]) *
           static_cast<long double>(cached_coefficient(*other, std::labs(l - m)));
  return static_cast<double>(sum);
}

double coefficient(const Symbol::Node& node, long l) {
  l = std::labs(l);
  using Kind = Symbol::Node::Kind;
  switch (node.kind) {
    case Kind::zero:
      return 0.0;
    case Kind::scaled:
      return node.scale * cached_coefficient(*node.left, l);
    case Kind::laplace_pow: {
      const std::vector<double> c = node.cosine_coefficients();
      return l < static_cast<long>(c.size()) ? c[l] : 0.0;
    }
    case Kind::abs_pow: {
      if (node.theta == 0.0) return l == 0 ? 1.0 : 0.0;
      if (l == 0)  // (1/pi) Int_0^pi t^theta dt = pi^theta/(theta+1)
        return static_cast<double>(powl(kPi, static_cast<long double>(node.theta)) /
                                   (static_cast<long double>(node.theta) + 1.0L));
      return static_cast<double>(abs_pow_integral(node.theta, l) / kPi);
    }
    case Kind::product: {
      if (node.is_polynomial()) {
        const std::vector<double> c = node.cosine_coefficients();
        return l < static_cast<long>(c.size()) ? c[l] : 0.0;
      }
      return product_coefficient(node, l);
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

struct CoeffCache {
  std::mutex mutex;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<double>>> table;
};

CoeffCache& coeff_cache() {
  static CoeffCache* cache = new CoeffCache();
  return *cache;
}

// Prefix a_0..a_{n-1} for the node, grown monotonically in the cache. The
// lock is not held while computing, so concurrent growers may duplicate work
// but always produce identical values.
std::shared_ptr<const std::vector<double>> cached_prefix(const Symbol::Node& node, int n) {
  CoeffCache& cache = coeff_cache();
  std::shared_ptr<const std::vector<double>> hit;
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.table.find(node.key);
    if (it != cache.table.end()) hit = it->second;
  }
  if (hit && static_cast<int>(hit->size()) >= n) return hit;
  auto grown = std::make_shared<std::vector<double>>(hit ? *hit : std::vector<double>{});
  grown->reserve(n);
  for (int l = static_cast<int>(grown->size()); l < n; ++l) grown->push_back(coefficient(node, l));
  std::lock_guard<std::mutex> lock(cache.mutex);
  auto& slot = cache.table[node.key];
  if (!slot || slot->size() < grown->size()) slot = grown;
  return slot;
}

double cached_coefficient(const Symbol::Node& node, long l) {
  l = std::labs(l);
  return (*cached_prefix(node, static_cast<int>(l) + 1))[l];
}

}  // namespace

double fourier_coeff(const Symbol& s, long l) { return cached_coefficient(*s.node_, l); }

Eigen::VectorXd fourier_coeffs(const Symbol& s, int n) {
  if (n < 1) throw std::invalid_argument("fourier_coeffs: n must be >= 1");
  auto prefix = cached_prefix(*s.node_, n);
  Eigen::VectorXd out(n);
  for (int l = 0; l < n; ++l) out[l] = (*prefix)[l];
  return out;
}

Eigen::VectorXd grid_samples(const Symbol& s, int n) {
  if (n < 1) throw std::invalid_argument("grid_samples: n must be >= 1");
  Eigen::VectorXd w(n);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i * kPi / (n + 1));
    const double v = s(t);
    if (v == 0.0)
      throw ZeroGridSample("grid_samples: symbol vanishes at grid point i=" + std::to_string(i));
    if (!(v > 0.0))
      throw ZeroGridSample("grid_samples: symbol is not positive at grid point i=" +
                           std::to_string(i));
    w[i - 1] = v;
  }
  return w;
}

}  // namespace tauprec
