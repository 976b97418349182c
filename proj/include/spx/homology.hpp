#pragma once
// Homology of SP^n X from the reduced cell complex: integral groups via Smith
// normal form, field Betti numbers via elimination, the filtration splitting
// and the stable / Dold-Thom / Dold-Milgram comparisons.

#include "spx/arith.hpp"
#include "spx/linalg.hpp"
#include "spx/presentation.hpp"
#include "spx/spchain.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace spx {

/// Z^free_rank + torsion, torsion in elementary-divisor form (prime powers,
/// ascending).  Over a field only free_rank is used.
struct HomologyGroup {
  unsigned degree = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

using GradedGroup = std::vector<HomologyGroup>;  // index = degree

/// Splits invariant factors into sorted prime powers; drops units.
inline std::vector<Integer> elementary_divisors(const std::vector<Integer>& factors) {
  std::vector<Integer> out;
  for (const auto& f : factors) {
    if (f <= 1) continue;
    for (const auto& [p, e] : factorize(f)) out.push_back(boost::multiprecision::pow(p, e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string to_string(const HomologyGroup& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) parts.push_back("Z");
  if (g.free_rank > 1) parts.push_back("Z^" + std::to_string(g.free_rank));
  for (const auto& t : g.torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " + ") + p;
  return s;
}

/// "H0=Z, H1=Z^2, ..." over the degrees present.
inline std::string to_string(const GradedGroup& gg) {
  std::string s;
  for (std::size_t d = 0; d < gg.size(); ++d) s += (d ? ", H" : "H") + std::to_string(d) + "=" + to_string(gg[d]);
  return s;
}

inline std::string field_group_string(const HomologyGroup& g, const Coefficients& c) {
  if (g.free_rank == 0) return "0";
  std::string base = c.kind == Coefficients::Kind::Q ? "Q" : "F" + std::to_string(c.prime);
  return g.free_rank == 1 ? base : base + "^" + std::to_string(g.free_rank);
}

inline std::set<Integer> torsion_primes(const GradedGroup& h) {
  std::set<Integer> out;
  for (const auto& g : h)
    for (const auto& t : g.torsion)
      for (const auto& [p, e] : factorize(t)) out.insert(p);
  return out;
}

namespace detail {

struct RankData {
  std::size_t rank = 0;
  std::vector<Integer> factors;  // invariant factors (Z only)
};

inline RankData rank_data(const IntegerMatrix& m, const Coefficients& c) {
  if (m.empty()) return {};
  if (c.kind == Coefficients::Kind::Z) {
    auto snf = smith_normal_form(m);
    return {snf.rank(), snf.invariant_factors};
  }
  return with_field(c, [&](const auto& F) { return RankData{field_rank(m, F), {}}; });
}

// Homology of a complex given by dimensions dims[d] and boundary maps
// bd(d) : C_d -> C_{d-1}.
template <class BoundaryFn>
GradedGroup homology_of(const std::vector<std::size_t>& dims, BoundaryFn&& bd, const Coefficients& c) {
  const std::size_t top = dims.size();
  std::vector<RankData> ranks(top + 1);
  for (std::size_t d = 1; d < top; ++d) ranks[d] = rank_data(bd(d), c);
  GradedGroup out(top);
  for (std::size_t d = 0; d < top; ++d) {
    out[d].degree = static_cast<unsigned>(d);
    out[d].free_rank = dims[d] - ranks[d].rank - ranks[d + 1].rank;
    out[d].torsion = elementary_divisors(ranks[d + 1].factors);
  }
  return out;
}

}  // namespace detail

/// H_d(SP^n X; coeff) for d = 0..2n, unreduced.
inline GradedGroup homology(const SymmetricProductComplex& cx, const Coefficients& c) {
  std::vector<std::size_t> dims;
  for (unsigned d = 0; d <= cx.top_degree(); ++d) dims.push_back(cx.dimension(d));
  return detail::homology_of(dims, [&](std::size_t d) { return cx.boundary_matrix(static_cast<unsigned>(d)); }, c);
}

inline GradedGroup homology(const ComplexPresentation& p, unsigned n, const Coefficients& c) {
  return homology(SymmetricProductComplex(p, n), c);
}

/// Homology of the filtration-s block, i.e. H_*(SP^s X, SP^{s-1} X).
inline GradedGroup filtration_block_homology(const SymmetricProductComplex& cx, unsigned s, const Coefficients& c) {
  std::vector<std::size_t> dims;
  for (unsigned d = 0; d <= cx.top_degree(); ++d) dims.push_back(cx.slice(d, s).size());
  return detail::homology_of(
      dims, [&](std::size_t d) { return cx.boundary_matrix(static_cast<unsigned>(d), s); }, c);
}

/// (filtration s, degree d) -> H_d of the filtration-s block, for s <= n and
/// s <= d <= 2s.
struct BigradedTable {
  unsigned n = 0;
  std::map<std::pair<unsigned, unsigned>, HomologyGroup> entries;

  const HomologyGroup& at(unsigned s, unsigned d) const {
    static const HomologyGroup zero{};
    auto it = entries.find({s, d});
    return it == entries.end() ? zero : it->second;
  }
};

inline BigradedTable bigraded_homology(const SymmetricProductComplex& cx, const Coefficients& c) {
  BigradedTable t;
  t.n = cx.filtration_bound();
  for (unsigned s = 0; s <= t.n; ++s) {
    auto block = filtration_block_homology(cx, s, c);
    for (unsigned d = s; d <= 2 * s; ++d) t.entries[{s, d}] = block.at(d);
  }
  return t;
}

inline BigradedTable bigraded_homology(const ComplexPresentation& p, unsigned n, const Coefficients& c) {
  return bigraded_homology(SymmetricProductComplex(p, n), c);
}

/// Direct sum of two groups in the same degree.
inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
  HomologyGroup r{a.degree, a.free_rank + b.free_rank, a.torsion};
  r.torsion.insert(r.torsion.end(), b.torsion.begin(), b.torsion.end());
  std::sort(r.torsion.begin(), r.torsion.end());
  return r;
}

/// Sum over filtrations of the bigraded table, degree by degree.
inline GradedGroup total_of(const BigradedTable& t) {
  GradedGroup out(2 * t.n + 1);
  for (unsigned d = 0; d < out.size(); ++d) out[d].degree = d;
  for (const auto& [key, g] : t.entries) out[key.second] = direct_sum(out[key.second], g);
  return out;
}

// ---------------------------------------------------------------------------
// Kunneth over Z for graded groups of free chain complexes:
//   H(A (x) B)_k = sum_{i+j=k} A_i (x) B_j  +  sum_{i+j=k-1} Tor(A_i, B_j).
// Over a field only the ranks multiply.

inline GradedGroup kunneth(const GradedGroup& a, const GradedGroup& b, std::optional<unsigned> max_degree,
                           const Coefficients& c) {
  std::size_t top = a.empty() || b.empty() ? 0 : a.size() + b.size() - 1;
  if (max_degree) top = std::min<std::size_t>(top, *max_degree + 1);
  GradedGroup out(top);
  for (unsigned d = 0; d < top; ++d) out[d].degree = d;
  auto gcd_terms = [](const std::vector<Integer>& s, const std::vector<Integer>& t, std::vector<Integer>& into) {
    for (const auto& x : s)
      for (const auto& y : t) {
        Integer g = boost::multiprecision::gcd(x, y);
        if (g > 1) into.push_back(g);
      }
  };
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto& A = a[i];
      const auto& B = b[j];
      if (i + j < top) {
        auto& T = out[i + j];
        T.free_rank += A.free_rank * B.free_rank;
        if (c.kind == Coefficients::Kind::Z) {
          for (std::size_t r = 0; r < A.free_rank; ++r) T.torsion.insert(T.torsion.end(), B.torsion.begin(), B.torsion.end());
          for (std::size_t r = 0; r < B.free_rank; ++r) T.torsion.insert(T.torsion.end(), A.torsion.begin(), A.torsion.end());
          gcd_terms(A.torsion, B.torsion, T.torsion);
        }
      }
      if (c.kind == Coefficients::Kind::Z && i + j + 1 < top) gcd_terms(A.torsion, B.torsion, out[i + j + 1].torsion);
    }
  for (auto& g : out) g.torsion = elementary_divisors(g.torsion);
  return out;
}

/// Point homology: the unit for kunneth.
inline GradedGroup point_homology() { return GradedGroup{HomologyGroup{0, 1, {}}}; }

inline GradedGroup truncated(GradedGroup g, unsigned max_degree) {
  if (g.size() > max_degree + 1) g.resize(max_degree + 1);
  while (g.size() < max_degree + 1) g.push_back(HomologyGroup{static_cast<unsigned>(g.size()), 0, {}});
  return g;
}

/// Homology of (S^1)^a x (CP^inf)^b x L_{n_1} x ... x L_{n_r} up to degree N.
inline GradedGroup dold_thom_predict(const HomologyShape& h, unsigned N) {
  const auto Z = Coefficients::integers();
  GradedGroup circle{{0, 1, {}}, {1, 1, {}}};
  GradedGroup cp_inf;
  for (unsigned d = 0; d <= N; ++d) cp_inf.push_back(HomologyGroup{d, d % 2 == 0 ? 1u : 0u, {}});
  GradedGroup acc = point_homology();
  for (std::size_t i = 0; i < h.free_rank_deg1; ++i) acc = kunneth(acc, circle, N, Z);
  for (std::size_t i = 0; i < h.free_rank_deg2; ++i) acc = kunneth(acc, cp_inf, N, Z);
  for (const auto& m : h.torsion_coefficients) {
    GradedGroup lens;
    for (unsigned d = 0; d <= N; ++d) {
      HomologyGroup g{d, d == 0 ? 1u : 0u, {}};
      if (d % 2 == 1) g.torsion = elementary_divisors({m});
      lens.push_back(g);
    }
    acc = kunneth(acc, lens, N, Z);
  }
  return truncated(acc, N);
}

// ---------------------------------------------------------------------------
// Verification reports

struct CheckReport {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void fail(const std::string& s) {
    pass = false;
    lines.push_back("FAIL: " + s);
  }
  std::string text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }
};

inline std::string primes_string(const std::set<Integer>& ps) {
  std::string s = "{";
  for (const auto& p : ps) s += (s.size() > 1 ? "," : "") + p.str();
  return s + "}";
}

inline std::string graded_string(const GradedGroup& g) {
  std::string s;
  for (const auto& h : g) s += (s.empty() ? "" : ", ") + to_string(h);
  return "(" + s + ")";
}

/// Same torsion primes in H_*(SP^n X) and H_*(X).
inline CheckReport torsion_prime_check(const ComplexPresentation& p, unsigned n) {
  CheckReport r;
  const auto Z = Coefficients::integers();
  auto lhs = torsion_primes(homology(p, n, Z));
  auto rhs = torsion_primes(homology(p, 1, Z));
  r.note("torsion primes of SP^" + std::to_string(n) + "X: " + primes_string(lhs));
  r.note("torsion primes of X: " + primes_string(rhs));
  if (n >= 1 && lhs != rhs) r.fail("torsion prime sets differ");
  if (n == 0 && !lhs.empty()) r.fail("SP^0 X has torsion");
  return r;
}

struct StabilityReport {
  CheckReport report;
  GradedGroup stable;  // H_i(SP^inf X) for i <= N
};

/// Checks H_i(SP^n X) is constant for i <= n <= N+1, i <= N.
inline StabilityReport stability_check(const ComplexPresentation& p, unsigned N) {
  StabilityReport out;
  const auto Z = Coefficients::integers();
  std::vector<GradedGroup> by_n;
  for (unsigned n = 0; n <= N + 1; ++n) by_n.push_back(homology(p, n, Z));
  for (unsigned i = 0; i <= N; ++i) {
    const auto& ref = by_n[N + 1][i];
    for (unsigned n = i; n <= N + 1; ++n)
      if (!(by_n[n][i] == ref))
        out.report.fail("H_" + std::to_string(i) + "(SP^" + std::to_string(n) + ") = " + to_string(by_n[n][i]) +
                        " but H_" + std::to_string(i) + "(SP^" + std::to_string(N + 1) + ") = " + to_string(ref));
    out.stable.push_back(ref);
  }
  out.report.note("stable homology: " + graded_string(out.stable));
  return out;
}

/// Compares the stable homology of p with the product of circles, CP^inf and
/// infinite lens spaces predicted from H_*(X).
inline CheckReport dold_thom_check(const ComplexPresentation& p, unsigned N) {
  auto st = stability_check(p, N);
  CheckReport r = st.report;
  auto predicted = dold_thom_predict(moore_decomposition(p), N);
  r.note("predicted:       " + graded_string(predicted));
  if (predicted != st.stable) r.fail("stable homology differs from the Dold-Thom prediction");
  return r;
}

/// Filtration-n block of SP^n X against the sum over compositions of n of
/// tensor products of the blocks of the Moore pieces of X.
inline CheckReport dold_milgram_check(const ComplexPresentation& p, unsigned n, const Coefficients& c) {
  CheckReport r;
  SymmetricProductComplex cx(p, n);
  GradedGroup lhs = filtration_block_homology(cx, n, c);

  auto shape = moore_decomposition(p);
  std::vector<ComplexPresentation> pieces;
  for (std::size_t i = 0; i < shape.free_rank_deg1; ++i) pieces.push_back(named::bouquet(1));
  for (std::size_t i = 0; i < shape.free_rank_deg2; ++i) pieces.push_back(named::sphere());
  for (const auto& m : shape.torsion_coefficients) pieces.push_back(named::moore(static_cast<std::size_t>(m)));

  // blocks[piece][i] = H_*(SP^i M, SP^{i-1} M)
  std::vector<std::vector<GradedGroup>> blocks;
  for (const auto& piece : pieces) {
    SymmetricProductComplex pc(piece, n);
    std::vector<GradedGroup> bl;
    for (unsigned i = 0; i <= n; ++i) bl.push_back(filtration_block_homology(pc, i, c));
    blocks.push_back(std::move(bl));
  }

  GradedGroup rhs(2 * n + 1);
  for (unsigned d = 0; d < rhs.size(); ++d) rhs[d].degree = d;
  std::vector<unsigned> comp(pieces.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, unsigned left) -> void {
    if (idx == pieces.size()) {
      if (left != 0) return;
      GradedGroup acc = point_homology();
      for (std::size_t q = 0; q < pieces.size(); ++q) acc = kunneth(acc, blocks[q][comp[q]], 2 * n, c);
      acc = truncated(acc, 2 * n);
      for (unsigned d = 0; d < rhs.size(); ++d) rhs[d] = direct_sum(rhs[d], acc[d]);
      return;
    }
    for (unsigned i = 0; i <= left; ++i) {
      comp[idx] = i;
      self(self, idx + 1, left - i);
    }
  };
  if (pieces.empty()) {
    if (n == 0) rhs[0].free_rank = 1;
  } else {
    rec(rec, 0, n);
  }
  if (c.is_field())
    for (auto& g : rhs) g.torsion.clear();

  r.note("filtration-" + std::to_string(n) + " block: " + graded_string(lhs));
  r.note("Moore-piece sum:    " + graded_string(rhs));
  if (lhs != rhs) r.fail("relative homology differs from the Moore-piece decomposition");
  return r;
}

/// The filtration blocks sum to the total homology in every degree.
inline CheckReport splitting_check(const ComplexPresentation& p, unsigned n, const Coefficients& c) {
  CheckReport r;
  SymmetricProductComplex cx(p, n);
  auto total = homology(cx, c);
  auto summed = total_of(bigraded_homology(cx, c));
  r.note("homology:         " + graded_string(total));
  r.note("sum over blocks:  " + graded_string(summed));
  if (total != summed) r.fail("filtration blocks do not sum to the total homology");
  return r;
}

}  // namespace spx
