#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mgkl {

// Coefficient fields are passed around as small context objects; element types
// are plain values so the linear algebra and polynomial layers can stay
// agnostic of the base field. Only Q and F_p (p an odd prime) are supported:
// the sheaf computations need 2 to be invertible.

struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_one(const Elem& a) const { return a == 1; }

  std::string to_string(const Elem& a) const { return a.get_str(); }
  std::string numerator_str(const Elem& a) const { return a.get_num().get_str(); }
  std::string denominator_str(const Elem& a) const { return a.get_den().get_str(); }

  std::string name() const { return "Q"; }
  long characteristic() const { return 0; }
};

struct PrimeField {
  using Elem = std::uint64_t;

  std::uint64_t p = 0;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
      throw std::invalid_argument("PrimeField: modulus must be an odd prime, got " +
                                  std::to_string(prime));
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p ? s - p : s; }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
    // Fermat: a^(p-2) mod p.
    Elem r = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool is_one(Elem a) const { return a == 1; }

  std::string to_string(Elem a) const { return std::to_string(a); }
  std::string numerator_str(Elem a) const { return std::to_string(a); }
  std::string denominator_str(Elem) const { return "1"; }

  std::string name() const { return "F" + std::to_string(p); }
  long characteristic() const { return static_cast<long>(p); }
};

// Runtime field selector, e.g. for CLI flags: "Q" | "F3" | "F5" | "Fp:<p>".
struct FieldSpec {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint64_t p = 0;

  static FieldSpec rational() { return FieldSpec{Kind::Rational, 0}; }
  static FieldSpec prime(std::uint64_t p) { return FieldSpec{Kind::Prime, p}; }

  static FieldSpec parse(const std::string& s) {
    if (s == "Q") return rational();
    if (s == "F3") return prime(3);
    if (s == "F5") return prime(5);
    if (s.rfind("Fp:", 0) == 0) {
      std::uint64_t q = std::stoull(s.substr(3));
      return prime(q);
    }
    throw std::invalid_argument("unknown field '" + s + "' (expected Q|F3|F5|Fp:<p>)");
  }

  long characteristic() const { return kind == Kind::Rational ? 0 : static_cast<long>(p); }

  std::string name() const {
    return kind == Kind::Rational ? "Q" : "F" + std::to_string(p);
  }
};

// Instantiates fn with the concrete field object selected by spec.
template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rational) return fn(RationalField{});
  return fn(PrimeField{spec.p});
}

}  // namespace mgkl
