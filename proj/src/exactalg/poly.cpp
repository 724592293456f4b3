#include "lls/exactalg/poly.hpp"

#include <stdexcept>

namespace lls::exactalg {

Poly::Poly(FieldSpec field, Vector coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldSpec field, const Scalar& c) { return Poly(field, Vector{c}); }

Poly Poly::linear_power(FieldSpec field, const Scalar& p, int m) {
  if (m < 0) throw std::invalid_argument("negative exponent in linear_power");
  Poly base(field, Vector{-p, field.one()});
  Poly out = constant(field, field.one());
  for (int i = 0; i < m; ++i) out = out * base;
  return out;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Vector Poly::padded(std::size_t len) const {
  if (c_.size() > len) throw std::logic_error("polynomial of degree " + std::to_string(degree()) +
                                              " does not fit in " + std::to_string(len) + " coefficients");
  Vector v = c_;
  v.resize(len, field_.zero());
  return v;
}

Poly operator+(const Poly& a, const Poly& b) {
  Vector c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(a.field_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(-b.field_.one()); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  Vector c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.field_, std::move(c));
}

Poly Poly::scaled(const Scalar& s) const {
  Vector c = c_;
  for (auto& x : c) x *= s;
  return Poly(field_, std::move(c));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[i].to_string() + ")";
    if (i == 1) out += "x";
    if (i > 1) out += "x^" + std::to_string(i);
  }
  return out;
}

Scalar binomial(const FieldSpec& field, int n, int k) {
  if (k < 0 || k > n) return field.zero();
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  if (b.fits_slong_p()) return field.from_int(b.get_si());
  return field.parse(b.get_str());
}

Vector taylor_row(const FieldSpec& field, const Scalar& point, int order, std::size_t len) {
  Vector row(len, field.zero());
  if (order < 0) return row;
  Scalar pw = field.one();
  for (std::size_t i = static_cast<std::size_t>(order); i < len; ++i) {
    row[i] = binomial(field, static_cast<int>(i), order) * pw;
    pw *= point;
  }
  return row;
}

Scalar taylor_coefficient(const Poly& f, const Scalar& point, int order) {
  const auto& c = f.coeffs();
  Scalar acc = f.field().zero();
  if (order < 0) return acc;
  Vector row = taylor_row(f.field(), point, order, c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!row[i].is_zero()) acc += row[i] * c[i];
  return acc;
}

int order_at(const Poly& f, const Scalar& point) {
  if (f.is_zero()) return -1;
  for (int k = 0;; ++k)
    if (!taylor_coefficient(f, point, k).is_zero()) return k;
}

}  // namespace lls::exactalg
