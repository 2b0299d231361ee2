#include "flatlab/trigpoly.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

std::map<std::int64_t, Complex> drop_zeros(const std::map<std::int64_t, Complex>& in) {
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : in) {
    if (c != Complex(0.0, 0.0)) out.emplace(k, c);
  }
  return out;
}

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

Complex unit(double turns) {
  const double t = 2.0 * std::numbers::pi * turns;
  return {std::cos(t), std::sin(t)};
}

}  // namespace

TrigPoly::TrigPoly(const std::map<std::int64_t, Complex>& coeffs) : coeffs_(drop_zeros(coeffs)) {}

TrigPoly::TrigPoly(IntegerForm form) {
  if (form.denominator <= 0) throw Error(ErrorCode::InvalidParam, "denominator must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(form.denominator));
  std::map<std::int64_t, std::int64_t> w;
  for (const auto& [k, v] : form.weights) {
    if (v != 0) {
      w.emplace(k, v);
      coeffs_.emplace(k, Complex(static_cast<double>(v) * scale, 0.0));
    }
  }
  form.weights = std::move(w);
  exact_ = std::move(form);
}

TrigPoly TrigPoly::cosine_bump(double alpha, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidParam, "cosine_bump needs n >= 1");
  return TrigPoly({{0, 1.0}, {n, alpha / 2.0}, {-n, alpha / 2.0}});
}

Complex TrigPoly::coefficient(std::int64_t k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

std::int64_t TrigPoly::min_frequency() const { return is_zero() ? 0 : coeffs_.begin()->first; }
std::int64_t TrigPoly::max_frequency() const { return is_zero() ? 0 : coeffs_.rbegin()->first; }

std::int64_t TrigPoly::degree() const {
  return is_zero() ? 0 : std::max(std::abs(min_frequency()), std::abs(max_frequency()));
}

double TrigPoly::l2_norm_squared() const {
  long double s = 0.0L;
  for (const auto& [k, c] : coeffs_) s += std::norm(c);
  return static_cast<double>(s);
}

Complex TrigPoly::operator()(double x) const {
  Complex s(0.0, 0.0);
  for (const auto& [k, c] : coeffs_) s += c * unit(frac(static_cast<double>(k) * x));
  return s;
}

TrigPoly TrigPoly::dilate(std::int64_t n) const {
  if (n < 1) throw Error(ErrorCode::InvalidParam, "dilation must be >= 1");
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : coeffs_) out.emplace(k * n, c);
  TrigPoly r(out);
  if (exact_) {
    IntegerForm f;
    f.denominator = exact_->denominator;
    for (const auto& [k, w] : exact_->weights) f.weights.emplace(k * n, w);
    r.exact_ = std::move(f);
  }
  return r;
}

TrigPoly TrigPoly::derivative() const {
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : coeffs_) out.emplace(k, c * Complex(0.0, static_cast<double>(k)));
  return TrigPoly(out);
}

TrigPoly TrigPoly::scaled(Complex s) const {
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : coeffs_) out.emplace(k, c * s);
  return TrigPoly(out);
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  std::map<std::int64_t, Complex> out;
  for (const auto& [i, x] : a.coeffs_) {
    for (const auto& [j, y] : b.coeffs_) out[i + j] += x * y;
  }
  TrigPoly r(out);
  if (a.exact_ && b.exact_) {
    std::map<std::int64_t, __int128> acc;
    for (const auto& [i, x] : a.exact_->weights) {
      for (const auto& [j, y] : b.exact_->weights) acc[i + j] += static_cast<__int128>(x) * y;
    }
    IntegerForm f;
    const __int128 den = static_cast<__int128>(a.exact_->denominator) * b.exact_->denominator;
    bool fits = den <= std::numeric_limits<std::int64_t>::max();
    for (const auto& [k, v] : acc) {
      if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        fits = false;
      } else if (v != 0) {
        f.weights.emplace(k, static_cast<std::int64_t>(v));
      }
    }
    if (fits) {
      f.denominator = static_cast<std::int64_t>(den);
      r = TrigPoly(std::move(f));
    }
  }
  return r;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  std::map<std::int64_t, Complex> out = a.coeffs_;
  for (const auto& [k, c] : b.coeffs_) out[k] += c;
  return TrigPoly(out);
}

RationalTrigPoly::RationalTrigPoly(std::map<std::int64_t, Rational> coeffs) {
  for (auto& [k, c] : coeffs) {
    c.canonicalize();
    if (c != 0) coeffs_.emplace(k, c);
  }
}

Rational RationalTrigPoly::coefficient(std::int64_t k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational RationalTrigPoly::sum_of_squares() const {
  Rational s(0);
  for (const auto& [k, c] : coeffs_) s += c * c;
  return s;
}

TrigPoly RationalTrigPoly::to_trigpoly() const {
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : coeffs_) out.emplace(k, Complex(c.get_d(), 0.0));
  return TrigPoly(out);
}

TrigPoly from_support(const SupportSet& support, bool normalize) {
  if (normalize && support.empty()) throw Error(ErrorCode::EmptySupport, "cannot normalize an empty support");
  IntegerForm f;
  f.denominator = normalize ? static_cast<std::int64_t>(support.size()) : 1;
  for (std::int64_t a : support) f.weights.emplace(a, 1);
  return TrigPoly(std::move(f));
}

std::vector<Complex> evaluate_grid_direct(const TrigPoly& poly, std::size_t grid_size, double offset) {
  if (grid_size == 0) throw Error(ErrorCode::InvalidParam, "grid_size must be >= 1");
  const auto n = static_cast<std::int64_t>(grid_size);
  struct Term {
    std::int64_t k_mod;
    Complex c;
  };
  std::vector<Term> terms;
  terms.reserve(poly.term_count());
  for (const auto& [k, c] : poly.coefficients()) {
    terms.push_back({((k % n) + n) % n, c * unit(frac(static_cast<double>(k) * offset))});
  }
  std::vector<Complex> out(grid_size);
  for_each_block(grid_size, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      Complex s(0.0, 0.0);
      for (const auto& t : terms) {
        const auto r = static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(t.k_mod) * j) % static_cast<unsigned __int128>(n));
        s += t.c * unit(static_cast<double>(r) / static_cast<double>(n));
      }
      out[j] = s;
    }
  });
  return out;
}

std::vector<Complex> evaluate_grid_fft(const TrigPoly& poly, std::size_t grid_size, double offset) {
  if (grid_size == 0) throw Error(ErrorCode::InvalidParam, "grid_size must be >= 1");
  static std::mutex planner_mutex;
  const auto n = static_cast<std::int64_t>(grid_size);
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * grid_size));
  if (buf == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < grid_size; ++i) buf[i][0] = buf[i][1] = 0.0;
  for (const auto& [k, c] : poly.coefficients()) {
    const Complex v = c * unit(frac(static_cast<double>(k) * offset));
    const auto m = static_cast<std::size_t>(((k % n) + n) % n);
    buf[m][0] += v.real();
    buf[m][1] += v.imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(grid_size), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<Complex> out(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) out[i] = Complex(buf[i][0], buf[i][1]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

std::vector<Complex> evaluate_grid(const TrigPoly& poly, std::size_t grid_size, double offset) {
  if (grid_size <= kDirectGridThreshold) return evaluate_grid_direct(poly, grid_size, offset);
  return evaluate_grid_fft(poly, grid_size, offset);
}

}  // namespace flatlab
