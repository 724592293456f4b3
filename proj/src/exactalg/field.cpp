#include "lls/exactalg/field.hpp"

#include <charconv>

namespace lls::exactalg {

namespace {

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool Scalar::is_zero() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Scalar::is_one() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 1 % std::max<std::uint32_t>(r->modulus, 2);
  return std::get<mpq_class>(rep_) == 1;
}

std::uint32_t Scalar::modulus() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->modulus;
  return 0;
}

std::uint32_t Scalar::residue() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value;
  throw FieldError("residue() called on a rational scalar");
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&rep_)) return *q;
  throw FieldError("rational() called on a residue");
}

void Scalar::check_compatible(const Scalar& o) const {
  if (rep_.index() != o.rep_.index() || modulus() != o.modulus())
    throw FieldError("arithmetic between scalars of different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw FieldError("inverse of zero");
  if (auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{mod_pow(r->value, r->modulus - 2, r->modulus), r->modulus});
  return Scalar(mpq_class(1) / std::get<mpq_class>(rep_));
}

Scalar Scalar::operator-() const {
  if (auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  return Scalar(mpq_class(-std::get<mpq_class>(rep_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_compatible(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    std::uint64_t v = std::uint64_t{r->value} + std::get<Residue>(o.rep_).value;
    if (v >= r->modulus) v -= r->modulus;
    r->value = static_cast<std::uint32_t>(v);
  } else {
    std::get<mpq_class>(rep_) += std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_compatible(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    std::uint32_t b = std::get<Residue>(o.rep_).value;
    r->value = r->value >= b ? r->value - b : r->value + (r->modulus - b);
  } else {
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_compatible(o);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    r->value = static_cast<std::uint32_t>(std::uint64_t{r->value} * std::get<Residue>(o.rep_).value %
                                          r->modulus);
  } else {
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (auto* r = std::get_if<Residue>(&a.rep_)) {
    const auto& s = std::get<Residue>(b.rep_);
    return r->modulus == s.modulus && r->value == s.value;
  }
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

std::string Scalar::to_string() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
  return std::get<mpq_class>(rep_).get_str();
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime_number(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (p > 65521) throw FieldError("prime fields above 65521 are not supported");
  return FieldSpec(Kind::Prime, p);
}

Scalar FieldSpec::from_int(std::int64_t v) const {
  if (kind_ == Kind::Prime) return Scalar(Residue{reduce(v, p_), p_});
  return Scalar(mpq_class(static_cast<long>(v)));
}

Scalar FieldSpec::from_fraction(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw FieldError("zero denominator");
  return from_int(num) / from_int(den);
}

Scalar FieldSpec::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw FieldError("empty field element");
  auto slash = text.find('/');
  std::string_view num_text = trim(text.substr(0, slash));
  std::string_view den_text = slash == std::string_view::npos ? "1" : trim(text.substr(slash + 1));
  mpz_class num, den;
  if (num.set_str(std::string(num_text), 10) != 0 || den.set_str(std::string(den_text), 10) != 0)
    throw FieldError("malformed field element '" + std::string(text) + "'");
  if (den == 0) throw FieldError("zero denominator in '" + std::string(text) + "'");
  if (kind_ == Kind::Rationals) return Scalar(mpq_class(num, den));
  auto to_residue = [this](const mpz_class& z) {
    mpz_class r = z % p_;
    if (r < 0) r += p_;
    return Scalar(Residue{static_cast<std::uint32_t>(r.get_ui()), p_});
  };
  Scalar d = to_residue(den);
  if (d.is_zero()) throw FieldError("denominator divisible by p in '" + std::string(text) + "'");
  return to_residue(num) / d;
}

Scalar FieldSpec::element(std::uint32_t k) const {
  if (kind_ != Kind::Prime) throw FieldError("element enumeration needs a prime field");
  return Scalar(Residue{k % p_, p_});
}

Scalar FieldSpec::random(std::mt19937_64& rng) const {
  if (kind_ == Kind::Prime) return Scalar(Residue{static_cast<std::uint32_t>(rng() % p_), p_});
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  return from_fraction(num(rng), den(rng));
}

Scalar FieldSpec::random_nonzero(std::mt19937_64& rng) const {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

bool FieldSpec::contains(const Scalar& s) const {
  if (kind_ == Kind::Prime) return !s.is_rational() && s.modulus() == p_;
  return s.is_rational();
}

std::string FieldSpec::describe() const {
  return kind_ == Kind::Prime ? "GF(" + std::to_string(p_) + ")" : "QQ";
}

}  // namespace lls::exactalg
