#include "psc/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace psc {

namespace {

using GaussRule = boost::math::quadrature::gauss<double, 30>;

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

// Nodes and weights of the 30-point rule mapped to [0, 1].
struct UnitRule {
  std::vector<double> nodes, weights;
  UnitRule() {
    const auto& x = GaussRule::abscissa();
    const auto& w = GaussRule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes.push_back(0.5 * (1.0 + x[i]));
      weights.push_back(0.5 * w[i]);
      if (x[i] != 0.0) {
        nodes.push_back(0.5 * (1.0 - x[i]));
        weights.push_back(0.5 * w[i]);
      }
    }
  }
};

const UnitRule& unit_rule() {
  static const UnitRule rule;
  return rule;
}

// p.v. int_0^1 p(u) / (c - u) du for |c| < 1, c != 0, with p in power form.
double near_pole_integral(const std::vector<double>& a, double c) {
  double moment = std::log(std::abs((1.0 - c) / c));  // I_0
  double acc = a.empty() ? 0.0 : a[0] * moment;
  for (std::size_t k = 1; k < a.size(); ++k) {
    moment = 1.0 / static_cast<double>(k) + c * moment;
    acc += a[k] * moment;
  }
  return -acc;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs)
    : breaks_(std::move(breaks)), coeffs_(std::move(coeffs)) {
  if (breaks_.empty() ? !coeffs_.empty() : coeffs_.size() + 1 != breaks_.size())
    throw std::invalid_argument("piecewise polynomial needs one more break than pieces");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1]))
      throw std::invalid_argument("piecewise polynomial breaks must be strictly increasing");
}

PiecewisePolynomial PiecewisePolynomial::zero(std::vector<double> breaks, int degree) {
  const std::size_t pieces = breaks.empty() ? 0 : breaks.size() - 1;
  std::vector<std::vector<double>> c(pieces, std::vector<double>(degree + 1, 0.0));
  return PiecewisePolynomial(std::move(breaks), std::move(c));
}

int PiecewisePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.size());
  return static_cast<int>(d) - 1;
}

int PiecewisePolynomial::piece_index(double t) const {
  if (coeffs_.empty() || !(t >= breaks_.front()) || !(t < breaks_.back())) return -1;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return static_cast<int>(it - breaks_.begin()) - 1;
}

double PiecewisePolynomial::eval_piece(std::size_t i, double x) const {
  return horner(coeffs_[i], x);
}

double PiecewisePolynomial::operator()(double t) const {
  const int i = piece_index(t);
  return i < 0 ? 0.0 : horner(coeffs_[i], t - breaks_[i]);
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  PiecewisePolynomial d = *this;
  for (auto& c : d.coeffs_) {
    if (c.size() <= 1) {
      c.assign(1, 0.0);
      continue;
    }
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = static_cast<double>(k) * c[k];
    c.pop_back();
  }
  return d;
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  PiecewisePolynomial a = *this;
  double running = 0.0;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    auto& c = a.coeffs_[i];
    c.insert(c.begin(), 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) c[k] /= static_cast<double>(k);
    c[0] = running;
    running = horner(c, breaks_[i + 1] - breaks_[i]);
  }
  return a;
}

double PiecewisePolynomial::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double len = breaks_[i + 1] - breaks_[i];
    double x = len, piece = 0.0;
    for (std::size_t k = 0; k < coeffs_[i].size(); ++k, x *= len)
      piece += coeffs_[i][k] * x / static_cast<double>(k + 1);
    total += piece;
  }
  return total;
}

double PiecewisePolynomial::integral_up_to(double t) const {
  if (coeffs_.empty() || t <= breaks_.front()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double len = std::min(breaks_[i + 1], t) - breaks_[i];
    double x = len, piece = 0.0;
    for (std::size_t k = 0; k < coeffs_[i].size(); ++k, x *= len)
      piece += coeffs_[i][k] * x / static_cast<double>(k + 1);
    total += piece;
    if (t <= breaks_[i + 1]) break;
  }
  return total;
}

double PiecewisePolynomial::hilbert(double t) const { return HilbertEvaluator(*this)(t); }

PiecewisePolynomial& PiecewisePolynomial::operator*=(double s) {
  for (auto& c : coeffs_)
    for (double& v : c) v *= s;
  return *this;
}

namespace {

PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b,
                            double sign) {
  if (a.breaks() != b.breaks())
    throw std::invalid_argument("piecewise polynomials live on different breaks");
  auto coeffs = a.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& other = b.coefficients()[i];
    if (coeffs[i].size() < other.size()) coeffs[i].resize(other.size(), 0.0);
    for (std::size_t k = 0; k < other.size(); ++k) coeffs[i][k] += sign * other[k];
  }
  return PiecewisePolynomial(a.breaks(), std::move(coeffs));
}

}  // namespace

PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  return combine(a, b, 1.0);
}

PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  return combine(a, b, -1.0);
}

HilbertEvaluator::HilbertEvaluator(const PiecewisePolynomial& f) : breaks_(f.breaks()) {
  const auto& rule = unit_rule();
  const std::size_t pieces = f.piece_count();
  if (pieces > 0) span_ = breaks_.back() - breaks_.front();
  lengths_.resize(pieces);
  scaled_.resize(pieces);
  reflected_.resize(pieces);
  node_values_.resize(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double len = breaks_[i + 1] - breaks_[i];
    lengths_[i] = len;
    std::vector<double> a = f.coefficients()[i];
    double scale = 1.0;
    for (double& v : a) {
      v *= scale;
      scale *= len;
    }
    // p(1 - u) = sum_j u^j (-1)^j sum_{k >= j} C(k, j) a_k
    std::vector<double> r(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      double binom = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        r[j] += ((j % 2) ? -1.0 : 1.0) * binom * a[k];
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
      }
    }
    std::vector<double> values(rule.nodes.size());
    for (std::size_t q = 0; q < values.size(); ++q) values[q] = horner(a, rule.nodes[q]);
    scaled_[i] = std::move(a);
    reflected_[i] = std::move(r);
    node_values_[i] = std::move(values);
  }
}

double HilbertEvaluator::raw(double t) const {
  const auto& rule = unit_rule();
  double total = 0.0;
  for (std::size_t i = 0; i < scaled_.size(); ++i) {
    const double c = (t - breaks_[i]) / lengths_[i];
    if (c <= -1.0 || c >= 2.0) {
      double piece = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        piece += rule.weights[q] * node_values_[i][q] / (c - rule.nodes[q]);
      total += piece;
    } else if (c <= 0.5) {
      total += near_pole_integral(scaled_[i], c);
    } else {
      total -= near_pole_integral(reflected_[i], 1.0 - c);
    }
  }
  return total / std::numbers::pi;
}

double HilbertEvaluator::operator()(double t) const {
  if (scaled_.empty()) return 0.0;
  const double delta = 1e-12 * span_;
  for (double b : breaks_) {
    if (std::abs(t - b) <= 0.25 * delta) return 0.5 * (raw(b - delta) + raw(b + delta));
  }
  return raw(t);
}

}  // namespace psc
