#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flatlab/rational.hpp"
#include "flatlab/sidon.hpp"

namespace flatlab {

using Complex = std::complex<double>;

/// Exact form of a polynomial whose coefficients are w_k / sqrt(denominator)
/// with integer w_k. Normalized Newman and rank-one polynomials have it.
struct IntegerForm {
  std::map<std::int64_t, std::int64_t> weights;
  std::int64_t denominator = 1;
};

/// Trigonometric polynomial sum_k c_k z^k, z = e^{2 pi i x}. Frequencies may
/// be negative; zero coefficients are never stored.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(const std::map<std::int64_t, Complex>& coeffs);
  explicit TrigPoly(IntegerForm form);

  static TrigPoly constant(Complex c) { return TrigPoly({{0, c}}); }
  static TrigPoly monomial(std::int64_t k, Complex c = 1.0) { return TrigPoly({{k, c}}); }
  /// 1 + alpha cos(n theta).
  static TrigPoly cosine_bump(double alpha, std::int64_t n);

  const std::map<std::int64_t, Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(std::int64_t k) const;
  const std::optional<IntegerForm>& integer_form() const { return exact_; }

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }
  std::int64_t min_frequency() const;
  std::int64_t max_frequency() const;
  std::int64_t span() const { return is_zero() ? 0 : max_frequency() - min_frequency(); }
  /// max |k| over stored frequencies.
  std::int64_t degree() const;

  /// Sum of |c_k|^2.
  double l2_norm_squared() const;

  /// Value at z = e^{2 pi i x}.
  Complex operator()(double x) const;

  /// P(z^n).
  TrigPoly dilate(std::int64_t n) const;
  /// d/dtheta P(e^{i theta}).
  TrigPoly derivative() const;
  TrigPoly scaled(Complex s) const;

  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);

 private:
  std::map<std::int64_t, Complex> coeffs_;
  std::optional<IntegerForm> exact_;
};

/// Trigonometric polynomial with exact rational coefficients.
class RationalTrigPoly {
 public:
  RationalTrigPoly() = default;
  explicit RationalTrigPoly(std::map<std::int64_t, Rational> coeffs);

  const std::map<std::int64_t, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::int64_t k) const;
  std::size_t term_count() const { return coeffs_.size(); }

  /// Sum of c_k^2.
  Rational sum_of_squares() const;
  TrigPoly to_trigpoly() const;

 private:
  std::map<std::int64_t, Rational> coeffs_;
};

/// Coefficients 1/sqrt(|A|) (normalized) or 1 at each element.
TrigPoly from_support(const SupportSet& support, bool normalize);

/// Values P(e^{2 pi i (j / grid_size + offset)}), j = 0 .. grid_size - 1.
/// Uses an FFT above kDirectGridThreshold points.
std::vector<Complex> evaluate_grid(const TrigPoly& poly, std::size_t grid_size, double offset = 0.0);
std::vector<Complex> evaluate_grid_direct(const TrigPoly& poly, std::size_t grid_size, double offset = 0.0);
std::vector<Complex> evaluate_grid_fft(const TrigPoly& poly, std::size_t grid_size, double offset = 0.0);

inline constexpr std::size_t kDirectGridThreshold = 64;

}  // namespace flatlab
