#pragma once
// Cells of the reduced symmetric product complex.  A cell is an exterior
// monomial in the circle classes e_i times divided powers SP^s(D_j) of the
// 2-cells; the *-product and the derivation boundary act on these.

#include "spx/arith.hpp"
#include "spx/linalg.hpp"
#include "spx/presentation.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spx {

/// e_{i1} * ... * e_{it} * SP^{s1}(D_{j1}) * ...  with i1 < ... < it and
/// j1 < j2 < ..., every s >= 1.  Indices are 0-based.  The empty monomial is
/// the basepoint class.
struct Monomial {
  std::vector<std::size_t> exterior;
  std::vector<std::pair<std::size_t, unsigned>> powers;

  unsigned divided_total() const {
    unsigned s = 0;
    for (const auto& [j, e] : powers) s += e;
    return s;
  }
  unsigned degree() const { return static_cast<unsigned>(exterior.size()) + 2 * divided_total(); }
  unsigned filtration() const { return static_cast<unsigned>(exterior.size()) + divided_total(); }
  bool is_unit() const { return exterior.empty() && powers.empty(); }

  unsigned power_of(std::size_t cell) const {
    for (const auto& [j, e] : powers)
      if (j == cell) return e;
    return 0;
  }

  static Monomial unit() { return {}; }
  static Monomial circle(std::size_t i) { return Monomial{{i}, {}}; }
  static Monomial divided(std::size_t j, unsigned s) {
    if (s == 0) return {};
    return Monomial{{}, {{j, s}}};
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

/// Basis order: degree, then filtration, then lexicographic.
struct BasisOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.filtration() != b.filtration()) return a.filtration() < b.filtration();
    return a < b;
  }
};

/// "e1*e3*SP2(D1)*SP1(D2)"; the unit prints as "1".
inline std::string to_string(const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  auto sep = [&] {
    if (!s.empty()) s += '*';
  };
  for (auto i : m.exterior) sep(), s += "e" + std::to_string(i + 1);
  for (const auto& [j, e] : m.powers) sep(), s += "SP" + std::to_string(e) + "(D" + std::to_string(j + 1) + ")";
  return s;
}

/// Finite formal sum with integer coefficients, optionally read in F_p
/// (coefficients then live in [0, p)).  No zero coefficients are stored.
template <class Key>
class LinearCombination {
 public:
  using Terms = std::map<Key, Integer>;

  LinearCombination() = default;
  explicit LinearCombination(Coefficients ring) : ring_(ring) {}
  LinearCombination(const Key& k, Integer c, Coefficients ring = Coefficients::integers()) : ring_(ring) {
    add(k, std::move(c));
  }

  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  const Coefficients& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add(const Key& k, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, 0);
    it->second = ring_.reduce(it->second + c);
    if (it->second == 0) terms_.erase(it);
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinearCombination scaled(const Integer& s) const {
    LinearCombination r(ring_);
    for (const auto& [k, c] : terms_) r.add(k, c * s);
    return r;
  }
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }

  /// Image in another coefficient ring.
  LinearCombination reduced(Coefficients ring) const {
    LinearCombination r(ring);
    for (const auto& [k, c] : terms_) r.add(k, c);
    return r;
  }

  /// Exact division of every coefficient; throws InexactDivision otherwise.
  LinearCombination divided_exactly(const Integer& d) const {
    LinearCombination r(ring_);
    for (const auto& [k, c] : terms_) {
      if (c % d != 0)
        throw InexactDivision("coefficient " + c.str() + " is not divisible by " + d.str());
      r.add(k, c / d);
    }
    return r;
  }

  bool operator==(const LinearCombination& o) const { return terms_ == o.terms_; }

 private:
  Coefficients ring_ = Coefficients::integers();
  Terms terms_;
};

using Chain = LinearCombination<Monomial>;

inline std::string to_string(const Chain& c) {
  if (c.is_zero()) return "0";
  std::string s;
  for (const auto& [m, v] : c.terms()) {
    if (!s.empty()) s += " + ";
    s += v.str() + "*" + to_string(m);
  }
  return s;
}

/// Merges two sorted disjoint index lists; returns nullopt when they meet,
/// otherwise the merged list and the sign of the sorting permutation.
inline std::optional<std::pair<std::vector<std::size_t>, int>> merge_exterior(const std::vector<std::size_t>& a,
                                                                               const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  std::size_t inversions = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;  // b[j] jumps over the rest of a
      out.push_back(b[j++]);
    } else {
      return std::nullopt;
    }
  }
  return std::pair{std::move(out), (inversions % 2) ? -1 : 1};
}

/// Exterior sign times the binomial factors of the divided powers.
inline Chain multiply(const Monomial& x, const Monomial& y) {
  auto merged = merge_exterior(x.exterior, y.exterior);
  if (!merged) return {};
  Monomial r;
  r.exterior = std::move(merged->first);
  Integer coeff = merged->second;
  std::size_t i = 0, j = 0;
  while (i < x.powers.size() || j < y.powers.size()) {
    if (j == y.powers.size() || (i < x.powers.size() && x.powers[i].first < y.powers[j].first)) {
      r.powers.push_back(x.powers[i++]);
    } else if (i == x.powers.size() || y.powers[j].first < x.powers[i].first) {
      r.powers.push_back(y.powers[j++]);
    } else {
      unsigned s = x.powers[i].second, t = y.powers[j].second;
      coeff *= binomial(s + t, t);
      r.powers.emplace_back(x.powers[i].first, s + t);
      ++i;
      ++j;
    }
  }
  return Chain(r, coeff);
}

/// Bilinear extension of multiply.
inline Chain multiply(const Chain& a, const Chain& b) {
  Chain out(a.ring());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms())
      for (const auto& [z, cz] : multiply(x, y).terms()) out.add(z, cx * cy * cz);
  return out;
}

/// Boundary columns of the 2-cells: cell j -> sum_i m_ij e_i.
inline std::vector<std::vector<Integer>> cell_boundaries(const ComplexPresentation& p) {
  std::vector<std::vector<Integer>> out;
  for (const auto& c : p.cells()) out.push_back(abelianize(c.word, p.circle_count()));
  return out;
}

/// d(e_I * prod SP^{s_j} D_j) = (-1)^{|I|} sum_j e_I * dD_j * SP^{s_j - 1} D_j * (rest).
inline Chain boundary(const Monomial& x, const std::vector<std::vector<Integer>>& cell_bd) {
  Chain out;
  const int sign = (x.exterior.size() % 2) ? -1 : 1;
  for (std::size_t f = 0; f < x.powers.size(); ++f) {
    const auto [cell, s] = x.powers[f];
    Monomial lowered;
    lowered.exterior = x.exterior;
    for (std::size_t g = 0; g < x.powers.size(); ++g) {
      if (g != f)
        lowered.powers.push_back(x.powers[g]);
      else if (s > 1)
        lowered.powers.emplace_back(cell, s - 1);
    }
    const auto& col = cell_bd.at(cell);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == 0) continue;
      auto merged = merge_exterior(lowered.exterior, {i});
      if (!merged) continue;
      Monomial t{std::move(merged->first), lowered.powers};
      out.add(t, col[i] * sign * merged->second);
    }
  }
  return out;
}

inline Chain boundary(const Monomial& x, const ComplexPresentation& p) { return boundary(x, cell_boundaries(p)); }

inline Chain boundary(const Chain& c, const std::vector<std::vector<Integer>>& cell_bd) {
  Chain out(c.ring());
  for (const auto& [m, v] : c.terms())
    for (const auto& [t, w] : boundary(m, cell_bd).terms()) out.add(t, v * w);
  return out;
}

/// All monomials of filtration <= n (and of degree d when given) in basis
/// order.  The unit is included in degree 0.
inline std::vector<Monomial> enumerate_basis(const ComplexPresentation& p, unsigned n,
                                             std::optional<unsigned> d = std::nullopt) {
  const std::size_t k = p.circle_count(), r = p.cell_count();
  std::vector<Monomial> out;

  std::vector<std::size_t> subset;
  std::vector<unsigned> exps(r, 0);

  // Distributes at most `budget` among the cells j >= from.
  auto powers_rec = [&](auto&& self, std::size_t from, unsigned budget) -> void {
    if (from == r) {
      Monomial m;
      m.exterior = subset;
      for (std::size_t j = 0; j < r; ++j)
        if (exps[j]) m.powers.emplace_back(j, exps[j]);
      if (!d || m.degree() == *d) out.push_back(std::move(m));
      return;
    }
    for (unsigned s = 0; s <= budget; ++s) {
      exps[from] = s;
      self(self, from + 1, budget - s);
    }
    exps[from] = 0;
  };
  auto subsets_rec = [&](auto&& self, std::size_t from) -> void {
    powers_rec(powers_rec, 0, n - static_cast<unsigned>(subset.size()));
    if (subset.size() == n) return;
    for (std::size_t i = from; i < k; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  subsets_rec(subsets_rec, 0);
  std::sort(out.begin(), out.end(), BasisOrder{});
  return out;
}

/// The truncated complex C_*(SP^n X) in the reduced basis: bases per degree
/// 0..2n and the integral boundary matrices.  Immutable after construction.
class SymmetricProductComplex {
 public:
  SymmetricProductComplex(ComplexPresentation p, unsigned n)
      : p_(std::move(p)), n_(n), cell_bd_(cell_boundaries(p_)), bases_(2 * n + 1) {
    for (auto& m : enumerate_basis(p_, n)) bases_[m.degree()].push_back(std::move(m));
    index_.resize(bases_.size());
    for (std::size_t d = 0; d < bases_.size(); ++d)
      for (std::size_t i = 0; i < bases_[d].size(); ++i) index_[d].emplace(bases_[d][i], i);
  }

  const ComplexPresentation& presentation() const { return p_; }
  unsigned filtration_bound() const { return n_; }
  unsigned top_degree() const { return 2 * n_; }
  const std::vector<std::vector<Integer>>& cell_boundary_columns() const { return cell_bd_; }

  const std::vector<Monomial>& basis(unsigned d) const {
    static const std::vector<Monomial> none;
    return d < bases_.size() ? bases_[d] : none;
  }
  std::size_t dimension(unsigned d) const { return basis(d).size(); }

  std::optional<std::size_t> index_of(const Monomial& m) const {
    unsigned d = m.degree();
    if (d >= index_.size()) return std::nullopt;
    auto it = index_[d].find(m);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
  }

  Chain boundary_of(const Monomial& m) const { return boundary(m, cell_bd_); }

  /// d_d : C_d -> C_{d-1}; rows index the degree d-1 basis.  With a filtration
  /// given, both bases are restricted to monomials of exactly that filtration.
  IntegerMatrix boundary_matrix(unsigned d, std::optional<unsigned> filtration = std::nullopt) const {
    auto src = slice(d, filtration);
    auto dst = d == 0 ? std::vector<std::size_t>{} : slice(d - 1, filtration);
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t r = 0; r < dst.size(); ++r) row_of.emplace(dst[r], r);
    IntegerMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      for (const auto& [t, v] : boundary_of(basis(d)[src[c]]).terms()) {
        auto idx = index_of(t);
        if (!idx) continue;  // filtration is preserved, so this cannot happen
        m.add(row_of.at(*idx), c, v);
      }
    }
    return m;
  }

  /// Positions in basis(d) of the monomials with the given filtration (all when nullopt).
  std::vector<std::size_t> slice(unsigned d, std::optional<unsigned> filtration) const {
    std::vector<std::size_t> out;
    const auto& b = basis(d);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!filtration || b[i].filtration() == *filtration) out.push_back(i);
    return out;
  }

 private:
  ComplexPresentation p_;
  unsigned n_;
  std::vector<std::vector<Integer>> cell_bd_;
  std::vector<std::vector<Monomial>> bases_;
  std::vector<std::map<Monomial, std::size_t>> index_;
};

/// Boundary matrix of the degree-d slice of C_*(SP^n X).
inline IntegerMatrix boundary_matrix(const ComplexPresentation& p, unsigned n, unsigned d) {
  return SymmetricProductComplex(p, n).boundary_matrix(d);
}

}  // namespace spx
