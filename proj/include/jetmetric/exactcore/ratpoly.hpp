#pragma once

// Univariate polynomials with rational coefficients, used for Hilbert
// polynomials in the variable n.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace jetmetric::exact {

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const mpq_class& v) { return RatPoly({v}); }
  // n + s
  static RatPoly shifted_n(const mpq_class& s) { return RatPoly({s, 1}); }

  // binomial(n + s, k) as a polynomial in n.
  static RatPoly binomial_shifted(long s, unsigned k) {
    RatPoly out = constant(1);
    mpz_class fact = 1;
    for (unsigned i = 0; i < k; ++i) {
      out = out * shifted_n(mpq_class(s - static_cast<long>(i)));
      fact *= i + 1;
    }
    return out * constant(mpq_class(1) / mpq_class(fact));
  }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  mpq_class operator()(const mpq_class& x) const {
    mpq_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  RatPoly operator+(const RatPoly& o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RatPoly(std::move(r));
  }
  RatPoly operator-(const RatPoly& o) const { return *this + o * constant(-1); }
  RatPoly operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(r));
  }
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  // Highest power first: "1/2*n^2 + 1/2*n", "4*n - 2", "0".
  std::string to_string(const std::string& var = "n") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const mpq_class& v = c_[i];
      if (v == 0) continue;
      const bool neg = v < 0;
      const mpq_class a = abs(v);
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      const bool unit = a == 1;
      if (i == 0 || !unit) out += a.get_str();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpq_class> c_;
};

// The polynomial of degree <= values.size() - 1 through (start + i, values[i]),
// by Newton's forward differences.
inline RatPoly newton_interpolate(long start, const std::vector<mpq_class>& values) {
  std::vector<mpq_class> diff = values;
  RatPoly out;
  RatPoly basis = RatPoly::constant(1);  // binomial(n - start, k) built incrementally
  for (std::size_t k = 0; k < values.size(); ++k) {
    out = out + basis * RatPoly::constant(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size() - k; ++i) diff[i] = diff[i + 1] - diff[i];
    basis = basis * RatPoly::shifted_n(mpq_class(-start - static_cast<long>(k))) *
            RatPoly::constant(mpq_class(1, static_cast<long>(k + 1)));
  }
  return out;
}

}  // namespace jetmetric::exact
