#pragma once
// Two-complexes presented as a bouquet of circles with 2-cells attached
// along words in the circles.

#include "spx/arith.hpp"
#include "spx/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace spx {

/// One letter of an attaching word: circle index (0-based) and exponent +-1.
struct Letter {
  std::size_t circle;
  int exponent;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using AttachingWord = std::vector<Letter>;

struct Cell {
  std::string name;
  AttachingWord word;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A finite 2-complex: k circles and r cells.  Immutable once built; the
/// constructor validates letter ranges and name uniqueness.
class ComplexPresentation {
 public:
  ComplexPresentation() = default;
  ComplexPresentation(std::vector<std::string> circle_names, std::vector<Cell> cells)
      : circles_(std::move(circle_names)), cells_(std::move(cells)) {
    std::set<std::string> seen;
    for (const auto& n : circles_)
      if (!seen.insert(n).second) throw InvalidArgument("duplicate name '" + n + "'");
    for (const auto& c : cells_) {
      if (!seen.insert(c.name).second) throw InvalidArgument("duplicate name '" + c.name + "'");
      for (const auto& l : c.word) {
        if (l.circle >= circles_.size())
          throw InvalidArgument("cell '" + c.name + "' uses circle index " + std::to_string(l.circle + 1) +
                                " out of range");
        if (l.exponent != 1 && l.exponent != -1) throw InvalidArgument("letter exponent must be +1 or -1");
      }
    }
  }

  std::size_t circle_count() const { return circles_.size(); }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<std::string>& circle_names() const { return circles_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t j) const { return cells_.at(j); }
  bool is_point() const { return circles_.empty() && cells_.empty(); }

  friend bool operator==(const ComplexPresentation&, const ComplexPresentation&) = default;

 private:
  std::vector<std::string> circles_;
  std::vector<Cell> cells_;
};

/// Signed letter counts of a word: the cellular boundary of its 2-cell.
inline std::vector<Integer> abelianize(const AttachingWord& w, std::size_t k) {
  std::vector<Integer> v(k, 0);
  for (const auto& l : w) {
    if (l.circle >= k) throw InvalidArgument("letter out of range in abelianize");
    v[l.circle] += l.exponent;
  }
  return v;
}

/// Boundary matrix C_2(X) -> C_1(X): row i = circle, column j = cell.
inline IntegerMatrix boundary_matrix_of(const ComplexPresentation& p) {
  IntegerMatrix m(p.circle_count(), p.cell_count());
  for (std::size_t j = 0; j < p.cell_count(); ++j) {
    auto col = abelianize(p.cell(j).word, p.circle_count());
    for (std::size_t i = 0; i < col.size(); ++i)
      if (col[i] != 0) m.add(i, j, col[i]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   circles a b
//   cell D = a b a^- b^-

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct LineLexer {
  const std::string& text;
  std::size_t line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  std::size_t column() const { return pos + 1; }
  std::string identifier() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) throw ParseError(line, column(), "expected identifier");
    std::size_t b = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return text.substr(b, pos - b);
  }
};

}  // namespace detail

inline ComplexPresentation parse_presentation(const std::string& input) {
  std::vector<std::string> circles;
  std::vector<Cell> cells;
  bool have_circles = false;
  std::set<std::string> names;

  std::istringstream in(input);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string text = raw.substr(0, raw.find('#'));
    detail::LineLexer lex{text, lineno};
    if (lex.at_end()) continue;
    std::size_t kw_col = lex.column();
    std::string kw = lex.identifier();
    if (kw == "circles") {
      if (have_circles) throw ParseError(lineno, kw_col, "circles declared twice");
      if (!cells.empty()) throw ParseError(lineno, kw_col, "circles must be declared before cells");
      have_circles = true;
      while (!lex.at_end()) {
        std::size_t col = lex.column();
        std::string n = lex.identifier();
        if (!names.insert(n).second) throw ParseError(lineno, col, "duplicate name '" + n + "'");
        circles.push_back(n);
      }
    } else if (kw == "cell") {
      std::size_t col = (lex.skip_ws(), lex.column());
      std::string n = lex.identifier();
      if (!names.insert(n).second) throw ParseError(lineno, col, "duplicate cell name '" + n + "'");
      lex.skip_ws();
      if (lex.pos >= text.size() || text[lex.pos] != '=') throw ParseError(lineno, lex.column(), "expected '='");
      ++lex.pos;
      AttachingWord w;
      while (!lex.at_end()) {
        std::size_t lcol = lex.column();
        std::string letter = lex.identifier();
        auto it = std::find(circles.begin(), circles.end(), letter);
        if (it == circles.end()) throw ParseError(lineno, lcol, "unknown circle '" + letter + "'");
        int e = 1;
        if (lex.pos < text.size() && text[lex.pos] == '^') {
          if (lex.pos + 1 < text.size() && text[lex.pos + 1] == '-') {
            e = -1;
            lex.pos += 2;
          } else {
            throw ParseError(lineno, lex.column(), "expected '^-'");
          }
        }
        if (lex.pos < text.size() && !std::isspace(static_cast<unsigned char>(text[lex.pos])))
          throw ParseError(lineno, lex.column(), "unexpected character");
        w.push_back(Letter{static_cast<std::size_t>(it - circles.begin()), e});
      }
      cells.push_back(Cell{n, std::move(w)});
    } else {
      throw ParseError(lineno, kw_col, "unknown statement '" + kw + "'");
    }
  }
  return ComplexPresentation(std::move(circles), std::move(cells));
}

inline std::string render_presentation(const ComplexPresentation& p) {
  std::ostringstream os;
  if (p.circle_count() > 0) {
    os << "circles";
    for (const auto& n : p.circle_names()) os << ' ' << n;
    os << '\n';
  }
  for (const auto& c : p.cells()) {
    os << "cell " << c.name << " =";
    for (const auto& l : c.word) os << ' ' << p.circle_names()[l.circle] << (l.exponent < 0 ? "^-" : "");
    os << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const ComplexPresentation& p) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : p.cells()) {
    nlohmann::json word = nlohmann::json::array();
    for (const auto& l : c.word) word.push_back({l.circle + 1, l.exponent});
    cells.push_back({{"name", c.name}, {"word", word}});
  }
  return {{"circles", p.circle_names()}, {"cells", cells}};
}

inline ComplexPresentation presentation_from_json(const nlohmann::json& j) {
  std::vector<std::string> circles = j.at("circles").get<std::vector<std::string>>();
  std::vector<Cell> cells;
  for (const auto& c : j.at("cells")) {
    AttachingWord w;
    for (const auto& l : c.at("word")) {
      auto idx = l.at(0).get<long long>();
      if (idx < 1) throw InvalidArgument("circle index must be >= 1");
      w.push_back(Letter{static_cast<std::size_t>(idx - 1), l.at(1).get<int>()});
    }
    cells.push_back(Cell{c.at("name").get<std::string>(), std::move(w)});
  }
  return ComplexPresentation(std::move(circles), std::move(cells));
}

// ---------------------------------------------------------------------------
// Named complexes

namespace named {

inline ComplexPresentation point() { return {}; }

/// S^2 as a point with one 2-cell.
inline ComplexPresentation sphere() { return ComplexPresentation({}, {Cell{"D", {}}}); }

/// S^2 as a circle with two discs, boundaries e and -e.
inline ComplexPresentation sphere_two_cells() {
  return ComplexPresentation({"a"}, {Cell{"D1", {{0, 1}}}, Cell{"D2", {{0, -1}}}});
}

/// Genus-g orientable surface: circles a1..ag, b1..bg (b_i has index i+g),
/// one cell on the product of commutators a_i b_i a_i^- b_i^-.
inline ComplexPresentation orientable_surface(std::size_t g) {
  if (g < 1) throw InvalidArgument("orientable_surface needs g >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= g; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= g; ++i) names.push_back("b" + std::to_string(i));
  AttachingWord w;
  for (std::size_t i = 0; i < g; ++i) {
    w.push_back({i, 1});
    w.push_back({i + g, 1});
    w.push_back({i, -1});
    w.push_back({i + g, -1});
  }
  return ComplexPresentation(std::move(names), {Cell{"D", std::move(w)}});
}

/// Connected sum of g projective planes: one cell on a1 a1 a2 a2 ... ag ag.
inline ComplexPresentation nonorientable_surface(std::size_t g) {
  if (g < 1) throw InvalidArgument("nonorientable_surface needs g >= 1");
  std::vector<std::string> names;
  AttachingWord w;
  for (std::size_t i = 0; i < g; ++i) {
    names.push_back("a" + std::to_string(i + 1));
    w.push_back({i, 1});
    w.push_back({i, 1});
  }
  return ComplexPresentation(std::move(names), {Cell{"D", std::move(w)}});
}

/// S^1 with a disc attached along a degree-m map (word a^m).
inline ComplexPresentation lens_attach(std::size_t m) {
  if (m < 1) throw InvalidArgument("lens_attach needs m >= 1");
  return ComplexPresentation({"a"}, {Cell{"D", AttachingWord(m, Letter{0, 1})}});
}

inline ComplexPresentation bouquet(std::size_t k) {
  if (k < 1) throw InvalidArgument("bouquet needs k >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("a" + std::to_string(i));
  return ComplexPresentation(std::move(names), {});
}

/// Moore space M(Z/m, 1); same cells as lens_attach(m).
inline ComplexPresentation moore(std::size_t m) {
  if (m < 2) throw InvalidArgument("moore needs m >= 2");
  return lens_attach(m);
}

}  // namespace named

/// Parses names such as "sphere", "rp2", "torus", "surface:2",
/// "nonorientable:3", "lens:4", "bouquet:3", "moore:5", "sphere2", "point".
inline ComplexPresentation named_complex(const std::string& spec) {
  std::string kind = spec;
  std::size_t param = 0;
  bool has_param = false;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    kind = spec.substr(0, colon);
    std::string num = spec.substr(colon + 1);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InvalidArgument("bad parameter in named complex '" + spec + "'");
    param = std::stoul(num);
    has_param = true;
  }
  auto need = [&] {
    if (!has_param) throw InvalidArgument("named complex '" + kind + "' needs a parameter, e.g. " + kind + ":2");
    return param;
  };
  auto none = [&] {
    if (has_param) throw InvalidArgument("named complex '" + kind + "' takes no parameter");
  };
  if (kind == "point") return none(), named::point();
  if (kind == "sphere") return none(), named::sphere();
  if (kind == "sphere2" || kind == "sphere_two_cells") return none(), named::sphere_two_cells();
  if (kind == "rp2") return none(), named::nonorientable_surface(1);
  if (kind == "torus") return none(), named::orientable_surface(1);
  if (kind == "surface" || kind == "orientable") return named::orientable_surface(need());
  if (kind == "nonorientable") return named::nonorientable_surface(need());
  if (kind == "lens") return named::lens_attach(need());
  if (kind == "bouquet") return named::bouquet(need());
  if (kind == "moore") return named::moore(need());
  throw InvalidArgument("unknown named complex '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Homology of X itself

/// H_1 = Z^a + sum Z/n_j, H_2 = Z^b.
struct HomologyShape {
  std::size_t free_rank_deg1 = 0;
  std::size_t free_rank_deg2 = 0;
  std::vector<Integer> torsion_coefficients;  // invariant factors >= 2
  friend bool operator==(const HomologyShape&, const HomologyShape&) = default;
};

inline HomologyShape moore_decomposition(const ComplexPresentation& p) {
  auto snf = smith_normal_form(boundary_matrix_of(p));
  HomologyShape h;
  h.free_rank_deg1 = p.circle_count() - snf.rank();
  h.free_rank_deg2 = p.cell_count() - snf.rank();
  for (const auto& d : snf.invariant_factors)
    if (d > 1) h.torsion_coefficients.push_back(d);
  return h;
}

}  // namespace spx
