#pragma once
// Cohomology of SP^n X over a field and its cup product, evaluated through
// the chain-level coproduct: (a u b)(x) = sum c * a(u) * b(v) over the terms
// c u(x)v of the coproduct of x.

#include "spx/arith.hpp"
#include "spx/diagonal.hpp"
#include "spx/linalg.hpp"
#include "spx/spchain.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace spx {

/// A homogeneous class: coordinates in the chosen basis of H^degree.
template <class Field>
struct CohomologyClass {
  using V = typename Field::value_type;
  unsigned degree = 0;
  std::vector<V> coords;
};

template <class Field>
class CohomologyRing {
 public:
  using V = typename Field::value_type;
  using Vec = std::vector<V>;
  using Class = CohomologyClass<Field>;

  /// Builds the cohomology basis of SP^n X.  A nonzero perturbation seed adds
  /// a pseudo-random coboundary to every representative (used to check that
  /// products do not depend on the choice).
  CohomologyRing(std::shared_ptr<const SymmetricProductComplex> cx, Field F, unsigned perturbation_seed = 0)
      : cx_(std::move(cx)), F_(std::move(F)), diag_(cx_->presentation()) {
    const unsigned top = cx_->top_degree();
    degrees_.resize(top + 1);
    for (unsigned d = 0; d <= top; ++d) build_degree(d);
    if (perturbation_seed) perturb(perturbation_seed);
    build_coproducts();
  }

  CohomologyRing(const ComplexPresentation& p, unsigned n, Field F, unsigned perturbation_seed = 0)
      : CohomologyRing(std::make_shared<const SymmetricProductComplex>(p, n), std::move(F), perturbation_seed) {}

  const Field& field() const { return F_; }
  const SymmetricProductComplex& complex() const { return *cx_; }
  const Diagonal& diagonal() const { return diag_; }
  unsigned top_degree() const { return cx_->top_degree(); }

  std::size_t dimension(unsigned d) const { return d < degrees_.size() ? degrees_[d].reps.size() : 0; }
  const std::vector<Vec>& representatives(unsigned d) const { return degrees_.at(d).reps; }
  const std::vector<std::string>& labels(unsigned d) const { return degrees_.at(d).labels; }

  Class zero(unsigned d) const { return Class{d, Vec(dimension(d), F_.zero())}; }
  Class basis_class(unsigned d, std::size_t i) const {
    Class c = zero(d);
    c.coords.at(i) = F_.one();
    return c;
  }
  Class unit() const { return basis_class(0, 0); }

  bool is_zero(const Class& c) const {
    for (const auto& v : c.coords)
      if (!F_.is_zero(v)) return false;
    return true;
  }
  bool equal(const Class& a, const Class& b) const {
    if (a.degree != b.degree) return is_zero(a) && is_zero(b);
    for (std::size_t i = 0; i < a.coords.size(); ++i)
      if (!F_.is_zero(F_.sub(a.coords[i], b.coords[i]))) return false;
    return true;
  }

  Class add(const Class& a, const Class& b) const {
    if (a.degree != b.degree) throw InvalidArgument("adding classes of different degrees");
    Class r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = F_.add(r.coords[i], b.coords[i]);
    return r;
  }
  Class sub(const Class& a, const Class& b) const {
    Class r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = F_.sub(r.coords[i], b.coords[i]);
    return r;
  }
  Class scale(const Class& a, const V& s) const {
    Class r = a;
    for (auto& v : r.coords) v = F_.mul(v, s);
    return r;
  }

  /// Cochain representing a class.
  Vec cochain(const Class& c) const {
    Vec out(cx_->dimension(c.degree), F_.zero());
    const auto& reps = degrees_.at(c.degree).reps;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (F_.is_zero(c.coords[i])) continue;
      for (std::size_t x = 0; x < out.size(); ++x) out[x] = F_.add(out[x], F_.mul(c.coords[i], reps[i][x]));
    }
    return out;
  }

  /// Coordinates of a cocycle modulo coboundaries.  Throws if it is not a cocycle.
  Class project(unsigned d, Vec cocycle) const {
    if (d > top_degree()) return Class{d, {}};
    const auto& deg = degrees_.at(d);
    Vec coeffs = deg.tracker->reduce(cocycle);
    for (const auto& v : cocycle)
      if (!F_.is_zero(v)) throw InvalidArgument("cochain in degree " + std::to_string(d) + " is not a cocycle");
    Class c = zero(d);
    for (std::size_t i = 0; i < deg.rep_slots.size(); ++i) c.coords[i] = coeffs.at(deg.rep_slots[i]);
    return c;
  }

  bool is_cocycle(unsigned d, const Vec& v) const {
    auto m = cx_->boundary_matrix(d + 1);
    Vec acc(m.cols(), F_.zero());
    for (const auto& e : m.entries()) acc[e.col] = F_.add(acc[e.col], F_.mul(F_.from(e.value), v[e.row]));
    for (const auto& a : acc)
      if (!F_.is_zero(a)) return false;
    return true;
  }

  /// Class of the dual cochain x* of a basis monomial; x* must be a cocycle.
  Class dual_class(const Monomial& x) const {
    auto idx = cx_->index_of(x);
    unsigned d = x.degree();
    if (!idx) return Class{d, Vec(dimension(d), F_.zero())};  // beyond the filtration bound
    Vec v(cx_->dimension(d), F_.zero());
    v[*idx] = F_.one();
    return project(d, std::move(v));
  }

  /// f_i = e_i^* and b = D_j^* (0-based indices).
  Class f(std::size_t i) const { return dual_class(Monomial::circle(i)); }
  Class b(std::size_t cell = 0) const { return dual_class(Monomial::divided(cell, 1)); }

  /// Cup product of two cochains.
  Vec cup_cochains(unsigned p, const Vec& alpha, unsigned q, const Vec& beta) const {
    const unsigned d = p + q;
    Vec out(cx_->dimension(d), F_.zero());
    if (d > top_degree()) return out;
    const auto& lam = coproducts_.at(d);
    for (std::size_t x = 0; x < lam.size(); ++x) {
      V acc = F_.zero();
      for (const auto& t : lam[x]) {
        if (t.left_degree != p) continue;
        const V& a = alpha[t.left];
        if (F_.is_zero(a)) continue;
        const V& bb = beta[t.right];
        if (F_.is_zero(bb)) continue;
        acc = F_.add(acc, F_.mul(t.coeff, F_.mul(a, bb)));
      }
      out[x] = acc;
    }
    return out;
  }

  Class cup(const Class& a, const Class& b) const {
    const unsigned d = a.degree + b.degree;
    if (d > top_degree()) return Class{d, {}};
    return project(d, cup_cochains(a.degree, cochain(a), b.degree, cochain(b)));
  }

  Class power(const Class& a, unsigned e) const {
    Class r = unit();
    for (unsigned i = 0; i < e; ++i) r = cup(r, a);
    return r;
  }

  /// Cups a list of classes left to right.
  Class product(const std::vector<Class>& factors) const {
    Class r = unit();
    for (const auto& c : factors) r = cup(r, c);
    return r;
  }

  std::string str(const Class& c) const {
    std::string s;
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
      if (F_.is_zero(c.coords[i])) continue;
      if (!s.empty()) s += " + ";
      s += F_.str(c.coords[i]) + "*" + labels(c.degree)[i];
    }
    return s.empty() ? "0" : s;
  }

 private:
  struct CoproductTerm {
    unsigned left_degree;
    std::size_t left;
    std::size_t right;
    V coeff;
  };

  struct Degree {
    std::vector<Vec> reps;
    std::vector<std::string> labels;
    std::vector<std::size_t> rep_slots;        // insertion index of each rep in the tracker
    std::shared_ptr<SpanTracker<Field>> tracker;  // coboundaries first, then reps
  };

  void build_degree(unsigned d) {
    const std::size_t dim = cx_->dimension(d);
    Degree deg;
    deg.tracker = std::make_shared<SpanTracker<Field>>(dim, F_);

    // Coboundaries: rows of d_d.
    if (d > 0) {
      auto bd = cx_->boundary_matrix(d);
      std::vector<Vec> rows(bd.rows(), Vec(dim, F_.zero()));
      for (const auto& e : bd.entries()) rows[e.row][e.col] = F_.from(e.value);
      for (auto& r : rows) deg.tracker->insert(std::move(r));
    }
    const std::size_t coboundary_rank = deg.tracker->rank();

    // Cocycles: kernel of the transpose of d_{d+1}.
    auto next = cx_->boundary_matrix(d + 1);
    auto ech = field_rank_kernel(next.transposed(), F_);
    const std::size_t cocycle_dim = ech.kernel.size();
    const std::size_t target = cocycle_dim - coboundary_rank;

    // Dual monomials that are cocycles come first so classes carry the
    // familiar (monomial)^* names where possible.
    std::vector<bool> row_used(dim, false);
    for (const auto& e : next.entries())
      if (!F_.is_zero(F_.from(e.value))) row_used[e.row] = true;
    auto try_add = [&](Vec v, std::string label) {
      if (deg.reps.size() == target || deg.tracker->contains(v)) return;
      deg.tracker->insert(v);
      deg.rep_slots.push_back(deg.tracker->size() - 1);
      deg.reps.push_back(std::move(v));
      deg.labels.push_back(std::move(label));
    };
    for (std::size_t x = 0; x < dim; ++x) {
      if (row_used[x]) continue;
      Vec v(dim, F_.zero());
      v[x] = F_.one();
      try_add(std::move(v), "(" + to_string(cx_->basis(d)[x]) + ")*");
    }
    for (std::size_t i = 0; i < ech.kernel.size(); ++i)
      try_add(ech.kernel[i], "z" + std::to_string(d) + "_" + std::to_string(i));
    if (deg.reps.size() != target) throw std::logic_error("cohomology basis selection fell short");
    degrees_[d] = std::move(deg);
  }

  // Adds a pseudo-random coboundary to each representative.  The tracker is
  // rebuilt so that projection uses the perturbed representatives.
  void perturb(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coin(-2, 2);
    for (unsigned d = 1; d < degrees_.size(); ++d) {
      auto bd = cx_->boundary_matrix(d);
      if (bd.rows() == 0) continue;
      auto& deg = degrees_[d];
      for (auto& rep : deg.reps) {
        Vec y(bd.rows(), F_.zero());
        for (auto& v : y) v = F_.from(Integer(coin(rng)));
        for (const auto& e : bd.entries()) rep[e.col] = F_.add(rep[e.col], F_.mul(y[e.row], F_.from(e.value)));
      }
      auto tracker = std::make_shared<SpanTracker<Field>>(cx_->dimension(d), F_);
      std::vector<Vec> rows(bd.rows(), Vec(cx_->dimension(d), F_.zero()));
      for (const auto& e : bd.entries()) rows[e.row][e.col] = F_.from(e.value);
      for (auto& r : rows) tracker->insert(std::move(r));
      deg.rep_slots.clear();
      for (const auto& rep : deg.reps) {
        tracker->insert(rep);
        deg.rep_slots.push_back(tracker->size() - 1);
      }
      deg.tracker = std::move(tracker);
    }
  }

  void build_coproducts() {
    const unsigned n = cx_->filtration_bound();
    coproducts_.resize(top_degree() + 1);
    for (unsigned d = 0; d <= top_degree(); ++d) {
      for (const auto& x : cx_->basis(d)) {
        std::vector<CoproductTerm> terms;
        for (const auto& [k, c] : diag_.coproduct(x, n).terms()) {
          V v = F_.from(c);
          if (F_.is_zero(v)) continue;
          auto li = cx_->index_of(k.first);
          auto ri = cx_->index_of(k.second);
          if (!li || !ri) throw std::logic_error("coproduct term outside the truncated basis");
          terms.push_back(CoproductTerm{k.first.degree(), *li, *ri, v});
        }
        coproducts_[d].push_back(std::move(terms));
      }
    }
  }

  std::shared_ptr<const SymmetricProductComplex> cx_;
  Field F_;
  Diagonal diag_;
  std::vector<Degree> degrees_;
  std::vector<std::vector<std::vector<CoproductTerm>>> coproducts_;  // [degree][basis index]
};

// ---------------------------------------------------------------------------
// Structure constants

/// Global class index g <-> (degree, local index); products of every pair.
template <class Field>
struct RingPresentation {
  using V = typename Field::value_type;
  struct Product {
    std::size_t left;
    std::size_t right;
    std::vector<std::pair<std::size_t, V>> result;
  };

  std::vector<unsigned> degree;
  std::vector<std::string> labels;
  std::vector<Product> table;  // all pairs (i, j) with deg i + deg j <= top
  bool associative = false;
  bool graded_commutative = false;
  std::string field_name;
};

template <class Field>
RingPresentation<Field> ring_presentation(const CohomologyRing<Field>& R, std::string field_name = "") {
  using Class = CohomologyClass<Field>;
  const auto& F = R.field();
  RingPresentation<Field> out;
  out.field_name = std::move(field_name);
  std::vector<std::size_t> offset(R.top_degree() + 2, 0);
  for (unsigned d = 0; d <= R.top_degree(); ++d) {
    offset[d + 1] = offset[d] + R.dimension(d);
    for (std::size_t i = 0; i < R.dimension(d); ++i) {
      out.degree.push_back(d);
      out.labels.push_back(R.labels(d)[i]);
    }
  }
  const std::size_t N = out.degree.size();
  auto cls = [&](std::size_t g) { return R.basis_class(out.degree[g], g - offset[out.degree[g]]); };

  std::map<std::pair<std::size_t, std::size_t>, Class> prod;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (out.degree[i] + out.degree[j] > R.top_degree()) continue;
      Class c = R.cup(cls(i), cls(j));
      typename RingPresentation<Field>::Product p{i, j, {}};
      for (std::size_t k = 0; k < c.coords.size(); ++k)
        if (!F.is_zero(c.coords[k])) p.result.emplace_back(offset[c.degree] + k, c.coords[k]);
      out.table.push_back(std::move(p));
      prod.emplace(std::pair{i, j}, std::move(c));
    }

  // Products of a class with a basis element, through the table.
  auto times = [&](const Class& a, std::size_t j) {
    Class r = R.zero(a.degree + out.degree[j]);
    if (a.degree + out.degree[j] > R.top_degree()) return r;
    for (std::size_t k = 0; k < a.coords.size(); ++k) {
      if (F.is_zero(a.coords[k])) continue;
      r = R.add(r, R.scale(prod.at({offset[a.degree] + k, j}), a.coords[k]));
    }
    return r;
  };
  auto times_left = [&](std::size_t i, const Class& b) {
    Class r = R.zero(out.degree[i] + b.degree);
    if (out.degree[i] + b.degree > R.top_degree()) return r;
    for (std::size_t k = 0; k < b.coords.size(); ++k) {
      if (F.is_zero(b.coords[k])) continue;
      r = R.add(r, R.scale(prod.at({i, offset[b.degree] + k}), b.coords[k]));
    }
    return r;
  };

  out.associative = true;
  for (std::size_t i = 0; i < N && out.associative; ++i)
    for (std::size_t j = 0; j < N && out.associative; ++j) {
      if (out.degree[i] + out.degree[j] > R.top_degree()) continue;
      for (std::size_t k = 0; k < N; ++k) {
        if (out.degree[i] + out.degree[j] + out.degree[k] > R.top_degree()) continue;
        Class left = times(prod.at({i, j}), k);
        Class right = times_left(i, prod.at({j, k}));
        if (!R.equal(left, right)) {
          out.associative = false;
          break;
        }
      }
    }

  out.graded_commutative = true;
  for (const auto& [key, c] : prod) {
    const auto [i, j] = key;
    Class other = prod.at({j, i});
    if ((out.degree[i] * out.degree[j]) % 2) other = R.scale(other, F.neg(F.one()));
    if (!R.equal(c, other)) {
      out.graded_commutative = false;
      break;
    }
  }
  return out;
}

template <class Field>
bool same_structure_constants(const RingPresentation<Field>& a, const RingPresentation<Field>& b) {
  if (a.degree != b.degree || a.table.size() != b.table.size()) return false;
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    if (a.table[i].left != b.table[i].left || a.table[i].right != b.table[i].right) return false;
    if (a.table[i].result != b.table[i].result) return false;
  }
  return true;
}

template <class Field>
nlohmann::json to_json(const RingPresentation<Field>& rp, const Field& F) {
  nlohmann::json cup = nlohmann::json::array();
  for (const auto& p : rp.table) {
    if (p.result.empty()) continue;
    nlohmann::json res = nlohmann::json::array();
    for (const auto& [k, c] : p.result) res.push_back({k, F.str(c)});
    cup.push_back({p.left, p.right, res});
  }
  return {{"field", rp.field_name}, {"deg", rp.degree}, {"labels", rp.labels}, {"cup", cup},
          {"associative", rp.associative}, {"graded_commutative", rp.graded_commutative}};
}

/// If the ring is k[x]/(x^h) with x the single class of its lowest positive
/// degree, returns (label of x, h).
template <class Field>
std::optional<std::pair<std::string, unsigned>> truncated_polynomial(const CohomologyRing<Field>& R) {
  unsigned gd = 0;
  for (unsigned d = 1; d <= R.top_degree(); ++d)
    if (R.dimension(d) > 0) {
      gd = d;
      break;
    }
  if (gd == 0 || R.dimension(gd) != 1) return std::nullopt;
  auto x = R.basis_class(gd, 0);
  unsigned h = 1;
  auto pw = x;
  while (!R.is_zero(pw)) {
    ++h;
    pw = R.cup(pw, x);
  }
  // x^i spans H^{i*gd} for i < h and everything else vanishes.
  for (unsigned d = 0; d <= R.top_degree(); ++d) {
    bool expect = d % gd == 0 && d / gd < h;
    if (R.dimension(d) != (expect ? 1u : 0u)) return std::nullopt;
  }
  return std::pair{R.labels(gd)[0], h};
}

/// Plain-text rendering: graded basis and nonzero products.
template <class Field>
std::string render_ring(const CohomologyRing<Field>& R, const RingPresentation<Field>& rp) {
  const auto& F = R.field();
  std::ostringstream os;
  os << "cohomology ring over " << rp.field_name << "\n";
  for (unsigned d = 0; d <= R.top_degree(); ++d) {
    os << "H^" << d << ": dim " << R.dimension(d);
    if (R.dimension(d)) {
      os << "  [";
      for (std::size_t i = 0; i < R.dimension(d); ++i) os << (i ? ", " : "") << R.labels(d)[i];
      os << "]";
    }
    os << "\n";
  }
  if (auto tp = truncated_polynomial(R))
    os << "ring: " << rp.field_name << "[x]/(x^" << tp->second << "), x = " << tp->first << "\n";
  os << "products:\n";
  for (const auto& p : rp.table) {
    if (rp.degree[p.left] == 0 || rp.degree[p.right] == 0 || p.left > p.right) continue;
    os << "  " << rp.labels[p.left] << " u " << rp.labels[p.right] << " = ";
    if (p.result.empty()) os << "0";
    for (std::size_t i = 0; i < p.result.size(); ++i)
      os << (i ? " + " : "") << F.str(p.result[i].second) << "*" << rp.labels[p.result[i].first];
    os << "\n";
  }
  os << "associative: " << (rp.associative ? "yes" : "NO") << "\n";
  os << "graded-commutative: " << (rp.graded_commutative ? "yes" : "NO") << "\n";
  return os.str();
}

}  // namespace spx
