#pragma once
// Verifiers for the closed-form cohomology rings of symmetric products of
// surfaces and of S^1 u_m D^2, and the nilpotency statements behind the
// Clifford-type bounds.

#include "spx/cohomring.hpp"
#include "spx/homology.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spx {

// ---------------------------------------------------------------------------
// Free model algebras on degree-1 classes f_0..f_{m-1} and a degree-2 class b.
// A monomial is (set of f's, power of b), f's multiplied in increasing order.

struct ModelMonomial {
  std::uint32_t mask = 0;
  unsigned b_power = 0;

  unsigned degree() const { return static_cast<unsigned>(std::popcount(mask)) + 2 * b_power; }
  unsigned filtration() const { return static_cast<unsigned>(std::popcount(mask)) + b_power; }
  auto operator<=>(const ModelMonomial&) const = default;
};

/// Product of two monomials: nullopt for zero, else (monomial, sign).
using ModelRule = std::function<std::optional<std::pair<ModelMonomial, int>>(ModelMonomial, ModelMonomial)>;

/// E(f_0..f_{m-1}) (x) k[b].
inline ModelRule exterior_rule() {
  return [](ModelMonomial x, ModelMonomial y) -> std::optional<std::pair<ModelMonomial, int>> {
    if (x.mask & y.mask) return std::nullopt;
    // Sign: pairs (a in x, c in y) with a > c.
    unsigned inv = 0;
    for (std::uint32_t m = y.mask; m; m &= m - 1) {
      unsigned c = static_cast<unsigned>(std::countr_zero(m));
      inv += static_cast<unsigned>(std::popcount(x.mask >> (c + 1)));
    }
    return std::pair{ModelMonomial{x.mask | y.mask, x.b_power + y.b_power}, inv % 2 ? -1 : 1};
  };
}

/// F_2[f_0..f_{m-1}, b]/(f_i^2 - b), in normal forms (square-free set, b power).
inline ModelRule squares_to_b_rule() {
  return [](ModelMonomial x, ModelMonomial y) -> std::optional<std::pair<ModelMonomial, int>> {
    unsigned common = static_cast<unsigned>(std::popcount(x.mask & y.mask));
    return std::pair{ModelMonomial{x.mask ^ y.mask, x.b_power + y.b_power + common}, 1};
  };
}

template <class Field>
class ModelAlgebra {
 public:
  using V = typename Field::value_type;
  using Element = std::map<ModelMonomial, V>;

  ModelAlgebra(unsigned generators, ModelRule rule, Field F)
      : m_(generators), rule_(std::move(rule)), F_(std::move(F)) {}

  const Field& field() const { return F_; }
  unsigned generators() const { return m_; }

  Element one() const { return {{ModelMonomial{}, F_.one()}}; }
  Element f(unsigned i) const { return {{ModelMonomial{1u << i, 0}, F_.one()}}; }
  Element b() const { return {{ModelMonomial{0, 1}, F_.one()}}; }

  Element add(Element a, const Element& c, V scale) const {
    for (const auto& [k, v] : c) {
      V nv = F_.add(a.count(k) ? a[k] : F_.zero(), F_.mul(scale, v));
      if (F_.is_zero(nv))
        a.erase(k);
      else
        a[k] = nv;
    }
    return a;
  }
  Element sub(const Element& a, const Element& c) const { return add(a, c, F_.neg(F_.one())); }

  Element mul(const Element& a, const Element& c) const {
    Element out;
    for (const auto& [x, u] : a)
      for (const auto& [y, w] : c) {
        auto r = rule_(x, y);
        if (!r) continue;
        V v = F_.mul(u, w);
        if (r->second < 0) v = F_.neg(v);
        out = add(std::move(out), Element{{r->first, v}}, F_.one());
      }
    return out;
  }

  /// Monomials of a given degree.
  std::vector<ModelMonomial> monomials(unsigned d) const {
    std::vector<ModelMonomial> out;
    for (std::uint32_t mask = 0; mask < (1u << m_); ++mask) {
      unsigned k = static_cast<unsigned>(std::popcount(mask));
      if (k <= d && (d - k) % 2 == 0) out.push_back(ModelMonomial{mask, (d - k) / 2});
    }
    return out;
  }

  /// dim of (A / ideal(relations)) in degree d, by rank of the ideal's degree-d
  /// span {monomial * relation}.
  std::size_t quotient_dimension(unsigned d, const std::vector<Element>& relations) const {
    auto basis = monomials(d);
    std::map<ModelMonomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
    std::vector<std::map<std::size_t, V>> rows;
    for (const auto& rel : relations) {
      if (rel.empty()) continue;
      unsigned rd = rel.begin()->first.degree();
      if (rd > d) continue;
      for (const auto& mono : monomials(d - rd)) {
        Element prod = mul(Element{{mono, F_.one()}}, rel);
        if (prod.empty()) continue;
        std::map<std::size_t, V> row;
        for (const auto& [k, v] : prod) row[idx.at(k)] = v;
        rows.push_back(std::move(row));
      }
    }
    std::size_t rank = rows.empty() ? 0 : field_rank_kernel(rows, basis.size(), F_).rank;
    return basis.size() - rank;
  }

 private:
  unsigned m_;
  ModelRule rule_;
  Field F_;
};

/// Evaluates model monomials in a computed ring through chosen images of the
/// generators (f's cupped in increasing index order, then b powers).
template <class Field>
class ModelEvaluation {
 public:
  using Class = CohomologyClass<Field>;
  using V = typename Field::value_type;

  ModelEvaluation(const CohomologyRing<Field>& R, std::vector<Class> f_images, Class b_image)
      : R_(R), f_(std::move(f_images)), b_(std::move(b_image)) {}

  Class monomial(ModelMonomial m) const {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    Class r = R_.unit();
    for (unsigned i = 0; i < f_.size(); ++i)
      if (m.mask & (1u << i)) r = R_.cup(r, f_[i]);
    for (unsigned t = 0; t < m.b_power; ++t) r = R_.cup(r, b_);
    cache_.emplace(m, r);
    return r;
  }

  Class element(const std::map<ModelMonomial, V>& e, unsigned degree) const {
    Class r = R_.zero(degree);
    for (const auto& [m, v] : e) r = R_.add(r, R_.scale(monomial(m), v));
    return r;
  }

  /// Rank of the images of all degree-d model monomials.
  std::size_t image_rank(const ModelAlgebra<Field>& A, unsigned d) const {
    if (R_.dimension(d) == 0) return 0;
    std::vector<std::map<std::size_t, V>> rows;
    for (const auto& m : A.monomials(d)) {
      Class c = monomial(m);
      std::map<std::size_t, V> row;
      for (std::size_t i = 0; i < c.coords.size(); ++i)
        if (!R_.field().is_zero(c.coords[i])) row[i] = c.coords[i];
      rows.push_back(std::move(row));
    }
    return field_rank_kernel(rows, R_.dimension(d), R_.field()).rank;
  }

 private:
  const CohomologyRing<Field>& R_;
  std::vector<Class> f_;
  Class b_;
  mutable std::map<ModelMonomial, Class> cache_;
};

// ---------------------------------------------------------------------------
// Orientable surfaces

/// One MacDonald relation instance: disjoint index sets (0-based, < g) and q.
struct MacdonaldInstance {
  std::vector<unsigned> i, j, k;
  unsigned q = 0;
  std::string str() const {
    auto list = [](const std::vector<unsigned>& v, unsigned shift) {
      std::string s;
      for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x + 1 + shift);
      return "{" + s + "}";
    };
    return "i=" + list(i, 0) + " j=" + list(j, 0) + " k=" + list(k, 0) + " q=" + std::to_string(q);
  }
};

/// All instances with a + b + 2c + q = n + 1.
inline std::vector<MacdonaldInstance> macdonald_instances(unsigned g, unsigned n) {
  std::vector<MacdonaldInstance> out;
  std::vector<unsigned> role(g, 0);  // 0 unused, 1 i, 2 j, 3 k
  auto rec = [&](auto&& self, unsigned idx) -> void {
    if (idx == g) {
      MacdonaldInstance inst;
      for (unsigned s = 0; s < g; ++s) {
        if (role[s] == 1) inst.i.push_back(s);
        if (role[s] == 2) inst.j.push_back(s);
        if (role[s] == 3) inst.k.push_back(s);
      }
      unsigned used = static_cast<unsigned>(inst.i.size() + inst.j.size() + 2 * inst.k.size());
      if (used > n + 1) return;
      inst.q = n + 1 - used;
      out.push_back(std::move(inst));
      return;
    }
    for (unsigned r = 0; r < 4; ++r) {
      role[idx] = r;
      self(self, idx + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// f_{i..} f_{j+g ..} prod (f_k f_{k+g} - b) b^q in E(f_1..f_2g) (x) k[b].
template <class Field>
typename ModelAlgebra<Field>::Element macdonald_element(const ModelAlgebra<Field>& A, unsigned g,
                                                        const MacdonaldInstance& inst) {
  auto e = A.one();
  for (auto s : inst.i) e = A.mul(e, A.f(s));
  for (auto s : inst.j) e = A.mul(e, A.f(s + g));
  for (auto s : inst.k) e = A.mul(e, A.sub(A.mul(A.f(s), A.f(s + g)), A.b()));
  for (unsigned t = 0; t < inst.q; ++t) e = A.mul(e, A.b());
  return e;
}

template <class Field>
unsigned model_degree(const typename ModelAlgebra<Field>::Element& e) {
  return e.empty() ? 0 : e.begin()->first.degree();
}

inline bool contains_dual_pair(const std::vector<std::size_t>& ext, std::size_t g) {
  for (auto a : ext)
    for (auto c : ext)
      if (c == a + g) return true;
  return false;
}

template <class Field>
CheckReport macdonald_verify(unsigned g, unsigned n, const Field& F) {
  CheckReport r;
  CohomologyRing<Field> R(named::orientable_surface(g), n, F);
  ModelAlgebra<Field> A(2 * g, exterior_rule(), F);
  std::vector<CohomologyClass<Field>> fs;
  for (unsigned i = 0; i < 2 * g; ++i) fs.push_back(R.f(i));
  auto b = R.b();
  ModelEvaluation<Field> ev(R, fs, b);

  // (i) relation instances vanish.
  auto instances = macdonald_instances(g, n);
  std::vector<typename ModelAlgebra<Field>::Element> relations;
  std::size_t nontrivial = 0;
  for (const auto& inst : instances) {
    auto e = macdonald_element(A, g, inst);
    relations.push_back(e);
    if (e.empty()) continue;
    unsigned d = model_degree<Field>(e);
    if (d <= R.top_degree()) ++nontrivial;
    if (!R.is_zero(ev.element(e, d))) r.fail("MacDonald relation " + inst.str() + " is nonzero");
  }
  r.note(std::to_string(instances.size()) + " MacDonald relation instances (" + std::to_string(nontrivial) +
         " in degrees <= " + std::to_string(R.top_degree()) + ") checked");

  // (ii) graded dimensions, (iii) generation by f's and b.
  std::string dims_c, dims_q;
  for (unsigned d = 0; d <= R.top_degree() + 2; ++d) {
    std::size_t qd = A.quotient_dimension(d, relations);
    std::size_t cd = R.dimension(d);
    dims_c += (d ? "," : "") + std::to_string(cd);
    dims_q += (d ? "," : "") + std::to_string(qd);
    if (qd != cd) r.fail("degree " + std::to_string(d) + ": computed dim " + std::to_string(cd) + ", quotient dim " + std::to_string(qd));
    if (d <= R.top_degree() && ev.image_rank(A, d) != cd)
      r.fail("degree " + std::to_string(d) + ": f's and b do not generate");
  }
  r.note("computed dims (" + dims_c + "), quotient dims (" + dims_q + ")");

  // (iv) dual monomials without dual pairs are f_I b^t.
  for (unsigned d = 0; d <= R.top_degree(); ++d)
    for (const auto& x : R.complex().basis(d)) {
      if (contains_dual_pair(x.exterior, g)) continue;
      std::uint32_t mask = 0;
      for (auto i : x.exterior) mask |= 1u << i;
      auto expect = ev.monomial(ModelMonomial{mask, x.power_of(0)});
      if (!R.equal(R.dual_class(x), expect)) r.fail("(" + to_string(x) + ")* differs from f_I b^t");
    }

  // (v) f_i f_{i+g} - (e_i e_{i+g})* = b.
  for (unsigned i = 0; i < g && n >= 1; ++i) {
    auto lhs = R.sub(R.cup(fs[i], fs[i + g]), R.dual_class(Monomial{{i, i + g}, {}}));
    if (!R.equal(lhs, b)) r.fail("f" + std::to_string(i + 1) + " f" + std::to_string(i + g + 1) + " - (e e)* != b");
  }
  return r;
}

/// Smallest e >= 1 with b^e in the ideal (f_1, ..., f_2g) of H^*(SP^n S_g; Q).
inline unsigned clifford_bound(unsigned g, unsigned n) {
  if (g < 1 || n < 1) throw InvalidArgument("clifford_bound needs g >= 1 and n >= 1");
  RationalField Q;
  CohomologyRing<RationalField> R(named::orientable_surface(g), n, Q);
  std::vector<CohomologyClass<RationalField>> fs;
  for (unsigned i = 0; i < 2 * g; ++i) fs.push_back(R.f(i));
  auto b = R.b();
  auto pw = R.unit();
  for (unsigned e = 1; e <= n + 1; ++e) {
    pw = R.cup(pw, b);
    const unsigned d = 2 * e;
    if (d > R.top_degree() || R.is_zero(pw)) return e;
    SpanTracker<RationalField> ideal(R.dimension(d), Q);
    for (std::size_t y = 0; y < R.dimension(d - 1); ++y)
      for (const auto& f : fs) ideal.insert(R.cup(f, R.basis_class(d - 1, y)).coords);
    if (ideal.contains(pw.coords)) return e;
  }
  return n + 1;
}

// ---------------------------------------------------------------------------
// Non-orientable surfaces (F_2)

inline CheckReport nonorientable_verify(unsigned g, unsigned n) {
  if (g < 1) throw InvalidArgument("nonorientable_verify needs g >= 1");
  CheckReport r;
  PrimeField F2(2);
  CohomologyRing<PrimeField> R(named::nonorientable_surface(g), n, F2);
  ModelAlgebra<PrimeField> A(g, squares_to_b_rule(), F2);
  std::vector<CohomologyClass<PrimeField>> fs;
  for (unsigned i = 0; i < g; ++i) fs.push_back(R.f(i));
  auto b = R.b();
  ModelEvaluation<PrimeField> ev(R, fs, b);

  // (i) f_i^2 = b.
  for (unsigned i = 0; i < g; ++i)
    if (n >= 1 && !R.equal(R.cup(fs[i], fs[i]), b)) r.fail("f" + std::to_string(i + 1) + "^2 != b");

  // (ii) f_I b^t = 0 for |I| + t = n + 1.
  std::vector<ModelAlgebra<PrimeField>::Element> relations;
  for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
    unsigned k = static_cast<unsigned>(std::popcount(mask));
    if (k > n + 1) continue;
    ModelMonomial m{mask, n + 1 - k};
    relations.push_back({{m, 1}});
    if (!R.is_zero(ev.monomial(m))) r.fail("truncation relation fails for mask " + std::to_string(mask));
  }
  r.note(std::to_string(relations.size()) + " truncation relations checked");

  std::string dims_c, dims_q;
  for (unsigned d = 0; d <= R.top_degree() + 2; ++d) {
    std::size_t qd = A.quotient_dimension(d, relations);
    std::size_t cd = R.dimension(d);
    dims_c += (d ? "," : "") + std::to_string(cd);
    dims_q += (d ? "," : "") + std::to_string(qd);
    if (qd != cd) r.fail("degree " + std::to_string(d) + ": computed dim " + std::to_string(cd) + ", quotient dim " + std::to_string(qd));
    if (d <= R.top_degree() && ev.image_rank(A, d) != cd) r.fail("degree " + std::to_string(d) + ": f's and b do not generate");
  }
  r.note("computed dims (" + dims_c + "), quotient dims (" + dims_q + ")");

  // (iii) dual classes (e_I SP^t D)* = f_I b^t.
  for (unsigned d = 0; d <= R.top_degree(); ++d)
    for (const auto& x : R.complex().basis(d)) {
      std::uint32_t mask = 0;
      for (auto i : x.exterior) mask |= 1u << i;
      if (!R.equal(R.dual_class(x), ev.monomial(ModelMonomial{mask, x.power_of(0)})))
        r.fail("(" + to_string(x) + ")* differs from f_I b^t");
    }

  // (iv) stable range: h_i = f_1 + f_i, c = f_1 give E(h) (x) F_2[c] in degrees <= n.
  if (n >= 1) {
    std::vector<CohomologyClass<PrimeField>> hs;
    for (unsigned i = 1; i < g; ++i) hs.push_back(R.add(fs[0], fs[i]));
    for (const auto& h : hs)
      if (!R.is_zero(R.cup(h, h))) r.fail("h_i^2 != 0");
    ModelEvaluation<PrimeField> stable(R, hs, fs[0]);  // the "b" slot carries c in degree 1
    for (unsigned d = 0; d <= n; ++d) {
      std::vector<std::map<std::size_t, PrimeField::value_type>> rows;
      std::size_t count = 0;
      for (std::uint32_t mask = 0; mask < (1u << hs.size()); ++mask) {
        unsigned k = static_cast<unsigned>(std::popcount(mask));
        if (k > d) continue;
        ++count;
        auto cls = stable.monomial(ModelMonomial{mask, d - k});
        std::map<std::size_t, PrimeField::value_type> row;
        for (std::size_t i = 0; i < cls.coords.size(); ++i)
          if (cls.coords[i]) row[i] = cls.coords[i];
        rows.push_back(std::move(row));
      }
      std::size_t rank = field_rank_kernel(rows, R.dimension(d), F2).rank;
      if (rank != count || count != R.dimension(d))
        r.fail("stable range degree " + std::to_string(d) + ": E(h) (x) F2[c] does not match");
    }
    r.note("stable range E(h_1..h_" + std::to_string(g - 1) + ") (x) F2[c] checked in degrees <= " + std::to_string(n));
  }
  return r;
}

struct RealCliffordResult {
  unsigned height = 0;            // smallest h with u^h = 0 in the quotient
  bool truncated_polynomial = false;  // quotient is F_2[u]/(u^height)
  long expected_height = 0;       // 2n - g + 2
  bool matches_expected = false;
  std::vector<std::size_t> quotient_dims;
};

/// Quotient of H^*(SP^n U_g; F_2) by the ideal (f_i + f_1, i = 2..g).
inline RealCliffordResult real_clifford_quotient(unsigned g, unsigned n) {
  if (g < 1) throw InvalidArgument("real_clifford_quotient needs g >= 1");
  PrimeField F2(2);
  CohomologyRing<PrimeField> R(named::nonorientable_surface(g), n, F2);
  std::vector<CohomologyClass<PrimeField>> gens;
  auto f1 = R.f(0);
  for (unsigned i = 1; i < g; ++i) gens.push_back(R.add(R.f(i), f1));

  RealCliffordResult out;
  out.expected_height = 2L * n - g + 2;
  std::vector<SpanTracker<PrimeField>> ideal;
  for (unsigned d = 0; d <= R.top_degree(); ++d) {
    ideal.emplace_back(R.dimension(d), F2);
    if (d == 0) continue;
    for (std::size_t y = 0; y < R.dimension(d - 1); ++y)
      for (const auto& gen : gens) ideal[d].insert(R.cup(gen, R.basis_class(d - 1, y)).coords);
  }
  for (unsigned d = 0; d <= R.top_degree(); ++d) out.quotient_dims.push_back(R.dimension(d) - ideal[d].rank());

  auto pw = R.unit();
  unsigned h = 0;
  while (h <= R.top_degree() && !ideal[h].contains(pw.coords)) {
    ++h;
    pw = R.cup(pw, f1);
    if (h > R.top_degree()) break;
  }
  out.height = h;
  out.truncated_polynomial = true;
  for (unsigned d = 0; d <= R.top_degree(); ++d)
    if (out.quotient_dims[d] != (d < h ? 1u : 0u)) out.truncated_polynomial = false;
  out.matches_expected = out.truncated_polynomial && static_cast<long>(h) == out.expected_height;
  return out;
}

// ---------------------------------------------------------------------------
// S^1 u_m D^2 over F_m, m prime

inline CheckReport lens_verify(unsigned m, unsigned n) {
  CheckReport r;
  PrimeField F(m);
  CohomologyRing<PrimeField> R(named::lens_attach(m), n, F);
  for (unsigned d = 0; d <= R.top_degree(); ++d)
    if (R.dimension(d) != 1) r.fail("H^" + std::to_string(d) + " has dimension " + std::to_string(R.dimension(d)));
  if (!r.pass || n == 0) return r;
  auto f = R.f(0);
  auto b = R.b();
  auto expected_sq = m % 2 == 0 ? R.scale(b, F.from(Integer(m / 2))) : R.zero(2);
  if (!R.equal(R.cup(f, f), expected_sq)) r.fail("f^2 = " + R.str(R.cup(f, f)) + ", expected " + R.str(expected_sq));
  // b^i spans H^{2i}, f b^i spans H^{2i+1}, and both are the dual cells.
  auto pw = R.unit();
  for (unsigned i = 0; i <= n; ++i) {
    if (!R.equal(pw, R.dual_class(Monomial::divided(0, i)))) r.fail("b^" + std::to_string(i) + " is not (SP^i D)*");
    Monomial esp{{0}, {}};
    if (i) esp.powers.emplace_back(0, i);
    if (2 * i + 1 <= R.top_degree() && !R.equal(R.cup(f, pw), R.dual_class(esp)))
      r.fail("f b^" + std::to_string(i) + " is not (e SP^i D)*");
    pw = R.cup(pw, b);
  }
  if (!R.is_zero(pw)) r.fail("b^{n+1} != 0");
  if (!R.is_zero(R.cup(f, R.power(b, n)))) r.fail("f b^n != 0");
  r.note("one class per degree 0.." + std::to_string(2 * n) + ", f^2 = " + R.str(R.cup(f, f)));
  return r;
}

}  // namespace spx
