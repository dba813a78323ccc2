#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "eqhh/errors.h"

namespace eqhh {

// Ground field: Q, or F_p for a prime p < 2^31.
struct Field {
  enum class Tag { Q, Fp };
  Tag tag = Tag::Q;
  std::uint64_t p = 0;  // the prime when tag == Fp, else 0

  static Field rationals() { return Field{Tag::Q, 0}; }
  static Field prime_field(std::uint64_t p);

  bool is_rational() const { return tag == Tag::Q; }
  bool operator==(const Field&) const = default;
  std::string name() const;
};

bool is_prime_u64(std::uint64_t n);

// Exact field element. Rational payload lives in q_, prime-field payload in
// r_. Arithmetic never rounds; rationals stay reduced with positive
// denominator (mpq_class maintains that).
class Scalar {
 public:
  Scalar() : f_(Field::rationals()), q_(0) {}

  static Scalar zero(const Field& f) { return of_int(f, 0); }
  static Scalar one(const Field& f) { return of_int(f, 1); }
  static Scalar of_int(const Field& f, long long n);
  static Scalar rational(long long num, long long den);
  static Scalar from_mpq(const mpq_class& v);
  static Scalar residue(std::uint64_t r, std::uint64_t p);

  const Field& field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inv() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Rational payload (tag Q only).
  const mpq_class& rat() const { return q_; }
  // Residue payload (tag Fp only).
  std::uint64_t res() const { return r_; }

  std::string str() const;  // "3/4", "-2", or residue digits

 private:
  Field f_;
  mpq_class q_;
  std::uint64_t r_ = 0;

  void check_same(const Scalar& o) const {
    require(f_ == o.f_, ErrKind::MixedFields,
            "scalar fields disagree: " + f_.name() + " vs " + o.f_.name());
  }
};

}  // namespace eqhh
