#pragma once
// Chain-level coproduct on C_*(SP^n X).  Circle classes are primitive; a
// 2-cell D maps to D(x)1 + 1(x)D + Q(w) where Q is read off the attaching
// word; divided powers and products follow because the coproduct is
// multiplicative for the Koszul product on the tensor square.

#include "spx/arith.hpp"
#include "spx/presentation.hpp"
#include "spx/spchain.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace spx {

using TensorKey = std::pair<Monomial, Monomial>;
using TensorChain = LinearCombination<TensorKey>;

inline std::string to_string(const TensorChain& t) {
  if (t.is_zero()) return "0";
  std::string s;
  for (const auto& [k, v] : t.terms()) {
    if (!s.empty()) s += " + ";
    s += v.str() + " · " + to_string(k.first) + " ⊗ " + to_string(k.second);
  }
  return s;
}

/// (u(x)v)(u'(x)v') = (-1)^{|v||u'|} (u*u') (x) (v*v').
inline TensorChain tensor_multiply(const TensorChain& a, const TensorChain& b) {
  TensorChain out(a.ring());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      auto left = multiply(ka.first, kb.first);
      if (left.is_zero()) continue;
      auto right = multiply(ka.second, kb.second);
      if (right.is_zero()) continue;
      int sign = (ka.second.degree() * kb.first.degree()) % 2 ? -1 : 1;
      const auto& [lm, lc] = *left.terms().begin();
      const auto& [rm, rc] = *right.terms().begin();
      out.add({lm, rm}, ca * cb * lc * rc * sign);
    }
  return out;
}

/// sum c_ij e_i (x) e_j, indices 0-based.
struct QuadraticPart {
  std::map<std::pair<std::size_t, std::size_t>, Integer> coefficients;

  Integer at(std::size_t i, std::size_t j) const {
    auto it = coefficients.find({i, j});
    return it == coefficients.end() ? Integer(0) : it->second;
  }

  TensorChain as_tensor() const {
    TensorChain t;
    for (const auto& [ij, c] : coefficients) t.add({Monomial::circle(ij.first), Monomial::circle(ij.second)}, c);
    return t;
  }
};

/// For letters c_t = eps_t e_{i_t}:  sum_{s<t} c_s (x) c_t + sum_{eps_t=-1} e_{i_t} (x) e_{i_t}.
/// The word is used as given, without free reduction.
inline QuadraticPart quadratic_part(const AttachingWord& w) {
  QuadraticPart q;
  auto bump = [&](std::size_t i, std::size_t j, const Integer& c) {
    auto& slot = q.coefficients[{i, j}];
    slot += c;
    if (slot == 0) q.coefficients.erase({i, j});
  };
  for (std::size_t t = 0; t < w.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) bump(w[s].circle, w[t].circle, w[s].exponent * w[t].exponent);
    if (w[t].exponent < 0) bump(w[t].circle, w[t].circle, 1);
  }
  return q;
}

/// Coproduct engine for one presentation.  Generator coproducts are computed
/// on first use and cached; the cache is guarded so the engine can be shared.
class Diagonal {
 public:
  explicit Diagonal(ComplexPresentation p) : p_(std::move(p)) {
    for (const auto& c : p_.cells()) quadratic_.push_back(quadratic_part(c.word));
  }
  Diagonal(const Diagonal&) = delete;
  Diagonal& operator=(const Diagonal&) = delete;

  const ComplexPresentation& presentation() const { return p_; }
  const QuadraticPart& quadratic(std::size_t cell) const { return quadratic_.at(cell); }

  /// e_i (x) 1 + 1 (x) e_i.
  static TensorChain circle_coproduct(std::size_t i) {
    TensorChain t;
    t.add({Monomial::circle(i), Monomial::unit()}, 1);
    t.add({Monomial::unit(), Monomial::circle(i)}, 1);
    return t;
  }

  /// Integral coproduct of SP^s(D_j): the s-th Koszul power of
  /// D(x)1 + 1(x)D + Q_j, divided by s!.  Throws InexactDivision if a
  /// coefficient is not divisible.
  TensorChain divided_power_coproduct(std::size_t cell, unsigned s) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find({cell, s}); it != cache_.end()) return it->second;
    }
    TensorChain result;
    if (s == 0) {
      result.add({Monomial::unit(), Monomial::unit()}, 1);
    } else {
      TensorChain base = quadratic_.at(cell).as_tensor();
      base.add({Monomial::divided(cell, 1), Monomial::unit()}, 1);
      base.add({Monomial::unit(), Monomial::divided(cell, 1)}, 1);
      TensorChain power = base;
      for (unsigned i = 1; i < s; ++i) power = tensor_multiply(power, base);
      result = power.divided_exactly(factorial(s));
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(std::pair{cell, s}, result);
    return result;
  }

  /// Integral coproduct of a basis monomial, truncated so both factors have
  /// filtration <= n.
  TensorChain coproduct(const Monomial& x, unsigned n) const {
    TensorChain acc;
    acc.add({Monomial::unit(), Monomial::unit()}, 1);
    for (auto i : x.exterior) acc = tensor_multiply(acc, circle_coproduct(i));
    for (const auto& [j, s] : x.powers) acc = tensor_multiply(acc, divided_power_coproduct(j, s));
    TensorChain out;
    for (const auto& [k, c] : acc.terms())
      if (k.first.filtration() <= n && k.second.filtration() <= n) out.add(k, c);
    return out;
  }

  TensorChain coproduct(const Monomial& x) const { return coproduct(x, x.filtration()); }

  /// Coproduct read in a coefficient ring.
  TensorChain coproduct(const Monomial& x, unsigned n, const Coefficients& c) const {
    return coproduct(x, n).reduced(c);
  }

  TensorChain coproduct(const Chain& x) const {
    TensorChain out(x.ring());
    for (const auto& [m, v] : x.terms()) out += coproduct(m).scaled(v);
    return out;
  }

 private:
  ComplexPresentation p_;
  std::vector<QuadraticPart> quadratic_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, unsigned>, TensorChain> cache_;
};

/// Coproduct of a generator e_i or SP^s(D_j).
inline TensorChain coproduct_generator(const Monomial& generator, const ComplexPresentation& p) {
  bool circle = generator.exterior.size() == 1 && generator.powers.empty();
  bool divided = generator.exterior.empty() && generator.powers.size() == 1;
  if (!circle && !divided) throw InvalidArgument("not a generator: " + to_string(generator));
  return Diagonal(p).coproduct(generator);
}

// ---------------------------------------------------------------------------
// Structural identities, used by the property suites.

/// d(u(x)v) = du(x)v + (-1)^{|u|} u(x)dv.
inline TensorChain tensor_boundary(const TensorChain& t, const std::vector<std::vector<Integer>>& cell_bd) {
  TensorChain out(t.ring());
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [m, v] : boundary(k.first, cell_bd).terms()) out.add({m, k.second}, c * v);
    int sign = k.first.degree() % 2 ? -1 : 1;
    for (const auto& [m, v] : boundary(k.second, cell_bd).terms()) out.add({k.first, m}, c * v * sign);
  }
  return out;
}

/// (eps (x) id) and (id (x) eps); eps keeps only the unit.
inline Chain counit_left(const TensorChain& t) {
  Chain out(t.ring());
  for (const auto& [k, c] : t.terms())
    if (k.first.is_unit()) out.add(k.second, c);
  return out;
}
inline Chain counit_right(const TensorChain& t) {
  Chain out(t.ring());
  for (const auto& [k, c] : t.terms())
    if (k.second.is_unit()) out.add(k.first, c);
  return out;
}

using TripleKey = std::tuple<Monomial, Monomial, Monomial>;
using TripleChain = LinearCombination<TripleKey>;

/// (lambda (x) id) lambda (x) and (id (x) lambda) lambda (x).
inline std::pair<TripleChain, TripleChain> coassociativity_sides(const Diagonal& diag, const Monomial& x) {
  TripleChain left, right;
  for (const auto& [k, c] : diag.coproduct(x).terms()) {
    for (const auto& [k2, c2] : diag.coproduct(k.first).terms()) left.add({k2.first, k2.second, k.second}, c * c2);
    for (const auto& [k2, c2] : diag.coproduct(k.second).terms()) right.add({k.first, k2.first, k2.second}, c * c2);
  }
  return {left, right};
}

}  // namespace spx
