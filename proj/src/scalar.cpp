#include "eqhh/scalar.h"

namespace eqhh {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime_field(std::uint64_t p) {
  require(p >= 2 && p < (1ull << 31), ErrKind::InvalidInput,
          "prime field characteristic out of range");
  require(is_prime_u64(p), ErrKind::InvalidInput,
          "not a prime: " + std::to_string(p));
  return Field{Tag::Fp, p};
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F" + std::to_string(p);
}

namespace {
inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
}  // namespace

Scalar Scalar::of_int(const Field& f, long long n) {
  Scalar s;
  s.f_ = f;
  if (f.is_rational()) {
    s.q_ = mpq_class(static_cast<long>(n));
  } else {
    long long m = n % static_cast<long long>(f.p);
    if (m < 0) m += static_cast<long long>(f.p);
    s.r_ = static_cast<std::uint64_t>(m);
  }
  return s;
}

Scalar Scalar::rational(long long num, long long den) {
  require(den != 0, ErrKind::InvalidInput, "zero denominator");
  Scalar s;
  s.f_ = Field::rationals();
  s.q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& v) {
  Scalar s;
  s.f_ = Field::rationals();
  s.q_ = v;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::residue(std::uint64_t r, std::uint64_t p) {
  Field f = Field::prime_field(p);
  Scalar s;
  s.f_ = f;
  s.r_ = r % p;
  return s;
}

bool Scalar::is_zero() const {
  return f_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return f_.is_rational() ? q_ == 1 : r_ == 1 % f_.p;
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (f_.is_rational())
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : f_.p - r_;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s(*this);
  s += o;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s(*this);
  s -= o;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s(*this);
  s *= o;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (f_.is_rational())
    q_ += o.q_;
  else
    r_ = addm(r_, o.r_, f_.p);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (f_.is_rational())
    q_ -= o.q_;
  else
    r_ = subm(r_, o.r_, f_.p);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (f_.is_rational())
    q_ *= o.q_;
  else
    r_ = mulm(r_, o.r_, f_.p);
  return *this;
}

Scalar Scalar::inv() const {
  require(!is_zero(), ErrKind::InvalidInput, "inverse of zero");
  Scalar s(*this);
  if (f_.is_rational())
    s.q_ = 1 / q_;
  else
    s.r_ = powm(r_, f_.p - 2, f_.p);
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
  if (!(f_ == o.f_)) return false;
  return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
  return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

}  // namespace eqhh
