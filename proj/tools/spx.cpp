// spx: homology, cohomology rings and verification suites for symmetric
// products of finite 2-complexes.

#include "spx/spx.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace spx;
using nlohmann::json;

constexpr unsigned kDefaultCap = 6;

enum Exit { kOk = 0, kCheckFailed = 1, kParse = 2, kConfig = 3, kInternal = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string suite;
  std::string named;
  std::string file;
  unsigned n = 1;
  bool n_given = false;
  unsigned max_n = 0;
  unsigned max_degree = 5;
  unsigned genus = 1;
  std::string coeff = "Z";
  std::string format = "table";
  std::string output;
  bool bigraded = false;
  bool allow_large = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexPresentation load(const RunConfig& cfg) {
  if (!cfg.named.empty() && !cfg.file.empty()) throw ConfigError("give either --named or --file, not both");
  if (!cfg.named.empty()) return named_complex(cfg.named);
  if (cfg.file.empty()) throw ConfigError("a complex is required (--named or --file)");
  std::string text = read_file(cfg.file);
  if (cfg.file.size() >= 5 && cfg.file.substr(cfg.file.size() - 5) == ".json") {
    try {
      return presentation_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw ParseError(0, 0, e.what());
    }
  }
  return parse_presentation(text);
}

std::string source_name(const RunConfig& cfg) { return cfg.named.empty() ? cfg.file : cfg.named; }

void check_cap(const RunConfig& cfg, unsigned n, const char* flag) {
  if (n > kDefaultCap && !cfg.allow_large)
    throw ConfigError(std::string(flag) + " " + std::to_string(n) + " exceeds " + std::to_string(kDefaultCap) +
                      "; pass --allow-large to run it anyway");
}

json group_json(const HomologyGroup& g) {
  std::vector<std::string> tors;
  for (const auto& t : g.torsion) tors.push_back(t.str());
  return {{"degree", g.degree}, {"free_rank", g.free_rank}, {"torsion", tors}};
}

std::string group_text(const HomologyGroup& g, const Coefficients& c) {
  return c.kind == Coefficients::Kind::Z ? to_string(g) : field_group_string(g, c);
}

struct Output {
  std::string text;
  int status = kOk;
};

Output cmd_homology(const RunConfig& cfg) {
  auto p = load(cfg);
  check_cap(cfg, cfg.n, "--n");
  auto c = Coefficients::parse(cfg.coeff);
  SymmetricProductComplex cx(p, cfg.n);
  auto h = homology(cx, c);
  std::optional<BigradedTable> table;
  if (cfg.bigraded) table = bigraded_homology(cx, c);

  Output out;
  if (cfg.format == "json") {
    json j{{"complex", source_name(cfg)}, {"n", cfg.n}, {"coeff", c.name()}};
    j["groups"] = json::array();
    for (const auto& g : h) j["groups"].push_back(group_json(g));
    if (table) {
      j["bigraded"] = json::array();
      for (const auto& [key, g] : table->entries) {
        auto e = group_json(g);
        e["filtration"] = key.first;
        j["bigraded"].push_back(e);
      }
    }
    out.text = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream os;
  os << "H_*(SP^" << cfg.n << " " << source_name(cfg) << "; " << c.name() << ")\n";
  for (const auto& g : h) os << "  H" << g.degree << " = " << group_text(g, c) << "\n";
  if (table) {
    os << "bigraded (filtration s, degree d):\n";
    for (const auto& [key, g] : table->entries)
      if (!g.is_zero()) os << "  s=" << key.first << " d=" << key.second << ": " << group_text(g, c) << "\n";
  }
  out.text = os.str();
  return out;
}

Output cmd_ring(const RunConfig& cfg) {
  auto p = load(cfg);
  check_cap(cfg, cfg.n, "--n");
  auto c = Coefficients::parse(cfg.coeff);
  if (!c.is_field()) throw ConfigError("ring needs field coefficients (Q or Fp)");
  Output out;
  with_field(c, [&](auto F) {
    using Field = decltype(F);
    CohomologyRing<Field> R(p, cfg.n, F);
    auto rp = ring_presentation(R, c.name());
    if (cfg.format == "json") {
      json j = to_json(rp, F);
      j["complex"] = source_name(cfg);
      j["n"] = cfg.n;
      out.text = j.dump(2) + "\n";
    } else {
      out.text = "SP^" + std::to_string(cfg.n) + " " + source_name(cfg) + "\n" + render_ring(R, rp);
    }
    if (!rp.associative || !rp.graded_commutative) out.status = kInternal;
  });
  return out;
}

CheckReport run_suite(const RunConfig& cfg) {
  const std::string& s = cfg.suite;
  if (s == "macdonald" || s == "nonorientable") {
    check_cap(cfg, cfg.n, "--n");
    if (s == "nonorientable") return nonorientable_verify(cfg.genus, cfg.n);
    auto c = Coefficients::parse(cfg.coeff == "Z" ? "Q" : cfg.coeff);
    return with_field(c, [&](auto F) { return macdonald_verify(cfg.genus, cfg.n, F); });
  }
  if (s == "clifford" || s == "real-clifford") {
    unsigned top = cfg.max_n ? cfg.max_n : cfg.n;
    check_cap(cfg, top, "--max-n");
    CheckReport r;
    const unsigned g = cfg.genus;
    for (unsigned n = 1; n <= top; ++n) {
      if (s == "clifford") {
        unsigned got = clifford_bound(g, n);
        long stated = std::min<long>(n / 2, static_cast<long>(n) - g) + 1;
        long maxlaw = std::max<long>(n / 2, static_cast<long>(n) - g) + 1;
        std::string line = "g=" + std::to_string(g) + " n=" + std::to_string(n) + ": index " + std::to_string(got) +
                           ", min(n/2, n-g)+1 = " + std::to_string(stated) + ", max(n/2, n-g)+1 = " + std::to_string(maxlaw);
        if (static_cast<long>(got) == stated)
          r.note(line);
        else
          r.fail(line);
      } else {
        auto q = real_clifford_quotient(g, n);
        std::string line = "g=" + std::to_string(g) + " n=" + std::to_string(n) + ": quotient " +
                           (q.truncated_polynomial ? "F2[u]/(u^" + std::to_string(q.height) + ")" : "not a truncated polynomial ring") +
                           ", expected exponent 2n-g+2 = " + std::to_string(q.expected_height);
        if (q.matches_expected)
          r.note(line);
        else
          r.fail(line);
      }
    }
    return r;
  }
  auto p = load(cfg);
  if (s == "dold-thom") return dold_thom_check(p, cfg.max_degree);
  if (s == "torsion") {
    check_cap(cfg, cfg.n, "--n");
    return torsion_prime_check(p, cfg.n);
  }
  if (s == "dold-milgram" || s == "splitting") {
    unsigned lo = cfg.max_n ? 0 : cfg.n, hi = cfg.max_n ? cfg.max_n : cfg.n;
    check_cap(cfg, hi, cfg.max_n ? "--max-n" : "--n");
    auto c = Coefficients::parse(cfg.coeff);
    CheckReport r;
    for (unsigned n = lo; n <= hi; ++n) {
      auto part = s == "splitting" ? splitting_check(p, n, c) : dold_milgram_check(p, n, c);
      r.note("n=" + std::to_string(n));
      for (const auto& l : part.lines) r.lines.push_back("  " + l);
      r.pass = r.pass && part.pass;
    }
    return r;
  }
  throw ConfigError("unknown suite '" + s + "'");
}

Output cmd_verify(const RunConfig& cfg) {
  auto r = run_suite(cfg);
  Output out;
  out.status = r.pass ? kOk : kCheckFailed;
  if (cfg.format == "json") {
    out.text = json{{"suite", cfg.suite}, {"pass", r.pass}, {"lines", r.lines}}.dump(2) + "\n";
  } else {
    out.text = cfg.suite + ": " + (r.pass ? "PASS" : "FAIL") + "\n";
    for (const auto& l : r.lines) out.text += "  " + l + "\n";
  }
  return out;
}

void add_source(CLI::App* app, RunConfig& cfg) {
  app->add_option("--named", cfg.named, "named complex: point, sphere, sphere2, rp2, torus, surface:g, nonorientable:g, lens:m, bouquet:k, moore:m");
  app->add_option("--file", cfg.file, "presentation file (grammar or .json)");
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app->add_option("--output", cfg.output, "write the report here instead of stdout");
  app->add_flag("--allow-large", cfg.allow_large, "lift the n <= 6 guard");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"spx: symmetric products of 2-complexes"};
  app.require_subcommand(1);

  auto* hom = app.add_subcommand("homology", "homology of SP^n X");
  add_source(hom, cfg);
  hom->add_option("--n", cfg.n, "filtration bound")->required();
  hom->add_option("--coeff", cfg.coeff, "Z, Q or Fp");
  hom->add_flag("--bigraded", cfg.bigraded, "also print the filtration blocks");
  add_common(hom, cfg);

  auto* ring = app.add_subcommand("ring", "cohomology ring of SP^n X over a field");
  add_source(ring, cfg);
  ring->add_option("--n", cfg.n, "filtration bound")->required();
  ring->add_option("--coeff", cfg.coeff, "Q or Fp")->required();
  add_common(ring, cfg);

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", cfg.suite, "macdonald, nonorientable, clifford, real-clifford, dold-thom, dold-milgram, splitting, torsion")
      ->required()
      ->check(CLI::IsMember({"macdonald", "nonorientable", "clifford", "real-clifford", "dold-thom", "dold-milgram", "splitting", "torsion"}));
  add_source(ver, cfg);
  ver->add_option("--n", cfg.n, "filtration bound");
  ver->add_option("--max-n", cfg.max_n, "largest n for range suites");
  ver->add_option("--max-degree", cfg.max_degree, "stable degree bound for dold-thom");
  ver->add_option("--genus", cfg.genus, "surface genus");
  ver->add_option("--coeff", cfg.coeff, "Z, Q or Fp");
  add_common(ver, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "spx: " << e.what() << "\n";
    return kConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  Output out;
  try {
    if (cfg.command == "homology") out = cmd_homology(cfg);
    if (cfg.command == "ring") out = cmd_ring(cfg);
    if (cfg.command == "verify") out = cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "spx: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    std::cerr << "spx: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "spx: " << e.what() << "\n";
    return kConfig;
  } catch (const InexactDivision& e) {
    std::cerr << "spx: internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "spx: internal error: " << e.what() << "\n";
    return kInternal;
  }

  if (cfg.output.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      std::cerr << "spx: cannot write '" << cfg.output << "'\n";
      return kConfig;
    }
    f << out.text;
  }
  return out.status;
}
