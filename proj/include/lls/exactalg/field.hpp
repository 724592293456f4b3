#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace lls::exactalg {

class FieldSpec;

/// Residue modulo a prime. The modulus is stored with the value and checked
/// on every binary operation.
struct Residue {
  std::uint32_t value = 0;
  std::uint32_t modulus = 0;
};

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact field element, either a rational number or a residue mod p.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Residue r) : rep_(r) {}
  explicit Scalar(mpq_class q) : rep_(std::move(q)) { std::get<mpq_class>(rep_).canonicalize(); }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return std::holds_alternative<mpq_class>(rep_); }
  std::uint32_t modulus() const;

  /// Residue representative in [0, p); only valid in a prime field.
  std::uint32_t residue() const;
  const mpq_class& rational() const;

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "num/den" (or an integer) for rationals, the residue for prime fields.
  std::string to_string() const;

 private:
  void check_compatible(const Scalar& o) const;
  std::variant<Residue, mpq_class> rep_;
};

/// The base field of a computation: the rationals or a prime field.
class FieldSpec {
 public:
  enum class Kind { Rationals, Prime };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws FieldError unless p is prime.
  static FieldSpec prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::Prime; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(std::int64_t v) const;
  Scalar from_fraction(std::int64_t num, std::int64_t den) const;
  /// Accepts "a", "-a", "a/b"; residues are reduced mod p.
  Scalar parse(std::string_view text) const;

  /// Element number k of a prime field in the fixed order 0, 1, ..., p-1.
  Scalar element(std::uint32_t k) const;
  /// Uniform element of F_p, or a small rational with numerator/denominator
  /// bounded by 9 over Q.
  Scalar random(std::mt19937_64& rng) const;
  Scalar random_nonzero(std::mt19937_64& rng) const;

  bool contains(const Scalar& s) const;
  std::string describe() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

 private:
  FieldSpec(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime_number(std::uint64_t n);

}  // namespace lls::exactalg
