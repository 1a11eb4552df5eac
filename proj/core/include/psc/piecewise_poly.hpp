#pragma once

#include <vector>

namespace psc {

/// Piecewise polynomial on breaks b_0 < b_1 < ... < b_P.
///
/// Piece i covers [b_i, b_{i+1}) and stores power coefficients in the local
/// variable (t - b_i), constant term first. The function is zero outside
/// [b_0, b_P). Exact calculus (derivative, antiderivative, integral) stays in
/// this representation; the Hilbert transform is evaluated in closed form.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> coeffs);

  /// All-zero function with `degree + 1` coefficients per piece.
  static PiecewisePolynomial zero(std::vector<double> breaks, int degree);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<double>>& coefficients() const { return coeffs_; }
  std::vector<std::vector<double>>& coefficients() { return coeffs_; }
  std::size_t piece_count() const { return coeffs_.size(); }
  /// Largest stored coefficient index (not trimmed of trailing zeros).
  int degree() const;
  bool empty() const { return coeffs_.empty(); }

  /// Index i with b_i <= t < b_{i+1}, or -1 outside [b_0, b_P).
  int piece_index(double t) const;

  double operator()(double t) const;
  /// Value of piece i at local offset x = t - b_i (no range check).
  double eval_piece(std::size_t i, double x) const;

  PiecewisePolynomial derivative() const;
  /// Antiderivative that vanishes at b_0. Evaluation past b_P still returns 0
  /// by the outside-is-zero rule; use integral_up_to for CDF-style queries.
  PiecewisePolynomial antiderivative() const;

  /// Integral over the whole support.
  double integral() const;
  /// Integral over (-inf, t].
  double integral_up_to(double t) const;

  /// Hilbert transform (1/pi) p.v. int f(tau) / (t - tau) dtau. At a break
  /// the transform is averaged over t +/- 1e-12 * (b_P - b_0).
  double hilbert(double t) const;

  PiecewisePolynomial& operator*=(double s);
  /// Sum of two functions on identical breaks.
  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

 private:
  std::vector<double> breaks_;
  std::vector<std::vector<double>> coeffs_;
};

/// Precomputed closed-form Hilbert transform of a fixed piecewise polynomial.
///
/// On each piece, normalized to u in [0, 1] with pole at c = (t - b_i) / L:
/// far poles (c <= -1 or c >= 2) use 30-point Gauss-Legendre on the smooth
/// integrand; near poles use the moment recurrence
/// I_k = 1/k + c I_{k-1}, I_0 = log|(1 - c) / c|, which is stable for |c| <= 1.
/// Poles with c in (1/2, 2) are handled on the reflected polynomial u -> 1 - u
/// so the recurrence always runs with |c| < 1.
class HilbertEvaluator {
 public:
  explicit HilbertEvaluator(const PiecewisePolynomial& f);

  double operator()(double t) const;

 private:
  double raw(double t) const;

  std::vector<double> breaks_;
  std::vector<double> lengths_;
  std::vector<std::vector<double>> scaled_;     // a_k = c_k L^k
  std::vector<std::vector<double>> reflected_;  // coefficients of p(1 - u)
  std::vector<std::vector<double>> node_values_;
  double span_ = 0.0;
};

}  // namespace psc
