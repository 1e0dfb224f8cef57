#pragma once

// Exact scalars over GF(p) and Q.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "matfact/errors.hpp"

namespace matfact {

class FieldSpec {
 public:
  enum class Kind { prime_field, rationals };

  /// Largest supported modulus; keeps residue products inside 64 bits.
  static constexpr std::uint64_t max_prime = (1ULL << 31) - 1;

  /// Throws Errc::invalid_field unless p is a prime <= max_prime.
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::prime_field; }
  /// Modulus; 0 for the rationals.
  std::uint64_t p() const noexcept { return p_; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t p);

/// An element of a FieldSpec held in canonical form: a residue in [0, p) or
/// a reduced fraction with positive denominator. Equality is structural.
class Scalar {
 public:
  Scalar(const FieldSpec& field, std::int64_t value);
  Scalar(const FieldSpec& field, const mpq_class& value);

  static Scalar zero(const FieldSpec& field) { return Scalar(field, std::int64_t{0}); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, std::int64_t{1}); }

  /// Parses the text form: a decimal integer for GF(p) (reduced mod p), "a" or
  /// "a/b" for Q.
  static Scalar parse(const FieldSpec& field, const std::string& text);

  const FieldSpec& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Residue for GF(p) scalars.
  std::uint64_t residue() const;
  /// Value for Q scalars.
  const mpq_class& rational() const;

  Scalar inverse() const;
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void check_same_field(const Scalar& other) const;

  FieldSpec field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

enum class ArithOp { add, sub, mul, div };

Scalar arith(const Scalar& a, const Scalar& b, ArithOp op);

/// All elements of a prime field in ascending order; Errc::infinite_field for Q.
std::vector<Scalar> enumerate_field(const FieldSpec& field);

}  // namespace matfact
