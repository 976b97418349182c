#pragma once
// Exact scalar arithmetic: big integers, rationals, prime fields and the
// coefficient-ring tag shared by every computation.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spx {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an exact division leaves a remainder.
class InexactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Prime factorisation by trial division; returns (prime, exponent) pairs.
inline std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  for (Integer d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Non-negative residue of an integer modulo p.
inline std::uint64_t residue(const Integer& v, std::uint64_t p) {
  Integer r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

/// Coefficient ring selector: the integers, the rationals or F_p.
struct Coefficients {
  enum class Kind { Z, Q, Fp };
  Kind kind = Kind::Z;
  std::uint64_t prime = 0;

  static Coefficients integers() { return {Kind::Z, 0}; }
  static Coefficients rationals() { return {Kind::Q, 0}; }
  static Coefficients mod(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidArgument("F_p needs a prime modulus, got " + std::to_string(p));
    return {Kind::Fp, p};
  }

  bool is_field() const { return kind != Kind::Z; }

  /// Parses "Z", "Q" or "F<p>".
  static Coefficients parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
      std::uint64_t p = 0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InvalidArgument("bad coefficient spec '" + s + "'");
        p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (p > (1ULL << 31)) throw InvalidArgument("modulus too large in '" + s + "'");
      }
      return mod(p);
    }
    throw InvalidArgument("bad coefficient spec '" + s + "' (expected Z, Q or Fp)");
  }

  std::string name() const {
    switch (kind) {
      case Kind::Z: return "Z";
      case Kind::Q: return "Q";
      case Kind::Fp: return "F" + std::to_string(prime);
    }
    return "?";
  }

  /// Image of an integer coefficient; for Z and Q this is the identity.
  Integer reduce(const Integer& v) const {
    if (kind != Kind::Fp) return v;
    return Integer(residue(v, prime));
  }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

// Field policies for the elimination templates.  A policy supplies value_type
// plus the field operations; values are always kept normalised.

struct RationalField {
  using value_type = Rational;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from(const Integer& v) const { return Rational(v); }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  std::string str(const value_type& a) const { return a.str(); }
};

struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (!is_prime(prime)) throw InvalidArgument("PrimeField needs a prime modulus");
  }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from(const Integer& v) const { return residue(v, p); }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type neg(value_type a) const { return (p - a) % p; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    // Fermat: a^(p-2)
    value_type r = 1, base = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
    }
    return r;
  }
  std::string str(value_type a) const { return std::to_string(a); }
};

/// Calls f with the field policy matching a field coefficient spec.
template <class F>
decltype(auto) with_field(const Coefficients& c, F&& f) {
  if (c.kind == Coefficients::Kind::Q) return f(RationalField{});
  if (c.kind == Coefficients::Kind::Fp) return f(PrimeField{c.prime});
  throw InvalidArgument("a field (Q or Fp) is required here, got Z");
}

}  // namespace spx
