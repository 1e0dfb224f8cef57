#include "matfact/exactfield.hpp"

#include <cctype>
#include <tuple>
#include <utility>

namespace matfact {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::infinite_field: return "InfiniteField";
    case Errc::invalid_field: return "InvalidField";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::singular_conjugator: return "SingularConjugator";
    case Errc::singular_input: return "SingularInput";
    case Errc::budget_exhausted: return "BudgetExhausted";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::span_deficient: return "SpanDeficient";
    case Errc::internal_contradiction: return "InternalContradiction";
    case Errc::too_large: return "TooLarge";
    case Errc::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > max_prime) raise(Errc::invalid_field, "modulus " + std::to_string(p) + " is too large");
  if (!is_prime(p)) raise(Errc::invalid_field, std::to_string(p) + " is not prime");
  return FieldSpec(Kind::prime_field, p);
}

std::string FieldSpec::to_string() const {
  return is_finite() ? "GF(" + std::to_string(p_) + ")" : "Q";
}

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = v % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return reduce(t, p);
}

}  // namespace

Scalar::Scalar(const FieldSpec& field, std::int64_t value) : field_(field) {
  if (field.is_finite()) {
    value_ = reduce(value, field.p());
  } else {
    value_ = mpq_class(static_cast<long>(value));
  }
}

Scalar::Scalar(const FieldSpec& field, const mpq_class& value) : field_(field) {
  if (field.is_finite()) {
    mpq_class q = value;
    q.canonicalize();
    const std::uint64_t num = reduce(q.get_num(), field.p());
    const std::uint64_t den = reduce(q.get_den(), field.p());
    if (den == 0) raise(Errc::division_by_zero, "denominator vanishes in " + field.to_string());
    value_ = num * inverse_mod(den, field.p()) % field.p();
  } else {
    mpq_class q = value;
    q.canonicalize();
    value_ = std::move(q);
  }
}

Scalar Scalar::parse(const FieldSpec& field, const std::string& text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string trimmed = text.substr(begin, end - begin);
  const auto is_integer = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto to_mpz = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  };
  const auto slash = trimmed.find('/');
  if (slash == std::string::npos) {
    if (!is_integer(trimmed)) raise(Errc::invalid_input, "bad scalar '" + text + "'");
    return Scalar(field, mpq_class(to_mpz(trimmed)));
  }
  if (field.is_finite()) raise(Errc::invalid_input, "fractions are not allowed in " + field.to_string());
  const std::string num = trimmed.substr(0, slash), den = trimmed.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den)) raise(Errc::invalid_input, "bad scalar '" + text + "'");
  const mpz_class d = to_mpz(den);
  if (d == 0) raise(Errc::division_by_zero, "zero denominator in '" + text + "'");
  return Scalar(field, mpq_class(to_mpz(num), d));
}

bool Scalar::is_zero() const noexcept {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint64_t Scalar::residue() const {
  if (!field_.is_finite()) raise(Errc::field_mismatch, "residue() on a rational scalar");
  return std::get<std::uint64_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (field_.is_finite()) raise(Errc::field_mismatch, "rational() on a " + field_.to_string() + " scalar");
  return std::get<mpq_class>(value_);
}

void Scalar::check_same_field(const Scalar& other) const {
  if (field_ != other.field_) {
    raise(Errc::field_mismatch, field_.to_string() + " vs " + other.field_.to_string());
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) raise(Errc::division_by_zero, "inverse of zero");
  Scalar out = *this;
  if (field_.is_finite()) {
    out.value_ = inverse_mod(std::get<std::uint64_t>(value_), field_.p());
  } else {
    out.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  }
  return out;
}

std::string Scalar::to_string() const {
  if (field_.is_finite()) return std::to_string(std::get<std::uint64_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.is_finite()) {
    const auto r = std::get<std::uint64_t>(value_);
    out.value_ = r == 0 ? 0 : field_.p() - r;
  } else {
    out.value_ = mpq_class(-std::get<mpq_class>(value_));
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(value_);
    r += std::get<std::uint64_t>(rhs.value_);
    if (r >= field_.p()) r -= field_.p();
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(value_);
    const auto s = std::get<std::uint64_t>(rhs.value_);
    r = r >= s ? r - s : r + field_.p() - s;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(value_);
    r = r * std::get<std::uint64_t>(rhs.value_) % field_.p();
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

Scalar arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  raise(Errc::invalid_input, "unknown arithmetic operation");
}

std::vector<Scalar> enumerate_field(const FieldSpec& field) {
  if (!field.is_finite()) raise(Errc::infinite_field, "cannot enumerate Q");
  std::vector<Scalar> out;
  out.reserve(field.p());
  for (std::uint64_t v = 0; v < field.p(); ++v) out.emplace_back(field, static_cast<std::int64_t>(v));
  return out;
}

}  // namespace matfact
