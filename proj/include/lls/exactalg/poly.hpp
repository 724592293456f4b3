#pragma once

#include <string>
#include <vector>

#include "lls/exactalg/field.hpp"
#include "lls/exactalg/matrix.hpp"

namespace lls::exactalg {

/// Univariate polynomial, coefficients low degree first, trailing zeros trimmed.
class Poly {
 public:
  explicit Poly(FieldSpec field) : field_(field) {}
  Poly(FieldSpec field, Vector coeffs);
  static Poly constant(FieldSpec field, const Scalar& c);
  /// (x - p)^m
  static Poly linear_power(FieldSpec field, const Scalar& p, int m);

  const FieldSpec& field() const { return field_; }
  const Vector& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

  Scalar eval(const Scalar& x) const;
  /// Coefficient vector padded (or checked) to exactly `len` entries.
  Vector padded(std::size_t len) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Scalar& s) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  FieldSpec field_;
  Vector c_;
};

/// Binomial coefficient C(n, k) as a field element.
Scalar binomial(const FieldSpec& field, int n, int k);

/// Coefficient of (x - point)^order in the expansion of f about point.
Scalar taylor_coefficient(const Poly& f, const Scalar& point, int order);

/// The linear functional "coefficient of (x-point)^order" on polynomials of
/// degree < len, as a row vector.
Vector taylor_row(const FieldSpec& field, const Scalar& point, int order, std::size_t len);

/// Smallest k with a nonzero k-th Taylor coefficient at point; -1 for f = 0.
int order_at(const Poly& f, const Scalar& point);

}  // namespace lls::exactalg
