#include "spx/spx.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace spx;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run spx_run(const std::string& args) {
  std::string cmd = std::string(SPX_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("spx_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(path) << content;
  return path;
}

GradedGroup groups_from_json(const json& j) {
  GradedGroup out;
  for (const auto& g : j["groups"]) {
    HomologyGroup h{g["degree"].get<unsigned>(), g["free_rank"].get<std::size_t>(), {}};
    for (const auto& t : g["torsion"]) h.torsion.emplace_back(t.get<std::string>());
    out.push_back(h);
  }
  return out;
}

}  // namespace

TEST(Cli, HomologyJsonRoundTrip) {
  for (const char* name : {"rp2", "torus", "lens:6", "nonorientable:2"}) {
    auto r = spx_run(std::string("homology --named ") + name + " --n 3 --coeff Z --format json");
    ASSERT_EQ(r.status, 0) << name;
    auto j = json::parse(r.out);
    EXPECT_EQ(groups_from_json(j), homology(named_complex(name), 3, Coefficients::integers())) << name;
  }
}

TEST(Cli, BouquetBetti) {
  auto r = spx_run("homology --named bouquet:3 --n 2 --coeff Z --format json");
  ASSERT_EQ(r.status, 0);
  auto h = groups_from_json(json::parse(r.out));
  ASSERT_EQ(h.size(), 5u);
  EXPECT_EQ(h[0].free_rank, 1u);
  EXPECT_EQ(h[1].free_rank, 3u);
  EXPECT_EQ(h[2].free_rank, 3u);
}

TEST(Cli, FileInputAtFiltrationZero) {
  auto path = temp_file("torus.spx", "circles a b\ncell D = a b a^- b^-\n");
  auto r = spx_run("homology --file " + path.string() + " --n 0 --coeff Z --format json");
  std::filesystem::remove(path);
  ASSERT_EQ(r.status, 0);
  auto h = groups_from_json(json::parse(r.out));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].free_rank, 1u);
}

TEST(Cli, JsonPresentationFile) {
  auto path = temp_file("k.json", to_json(named::nonorientable_surface(2)).dump());
  auto r = spx_run("homology --file " + path.string() + " --n 2 --format json");
  std::filesystem::remove(path);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(groups_from_json(json::parse(r.out)), homology(named::nonorientable_surface(2), 2, Coefficients::integers()));
}

TEST(Cli, RingJsonMatchesLibrary) {
  auto r = spx_run("ring --named rp2 --n 2 --coeff F2 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  PrimeField F2(2);
  CohomologyRing<PrimeField> R(named::nonorientable_surface(1), 2, F2);
  EXPECT_EQ(j, [&] {
    json e = to_json(ring_presentation(R, "F2"), F2);
    e["complex"] = "rp2";
    e["n"] = 2;
    return e;
  }());
  auto text = spx_run("ring --named rp2 --n 2 --coeff F2");
  EXPECT_NE(text.out.find("F2[x]/(x^5)"), std::string::npos);
  auto sphere = spx_run("ring --named sphere --n 4 --coeff Q");
  EXPECT_NE(sphere.out.find("Q[x]/(x^5)"), std::string::npos);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(spx_run("verify macdonald --genus 2 --n 3 --coeff Q").status, 0);
  EXPECT_EQ(spx_run("verify nonorientable --genus 2 --n 2").status, 0);
  EXPECT_EQ(spx_run("verify dold-thom --named nonorientable:3 --max-degree 6").status, 0);
  EXPECT_EQ(spx_run("verify dold-milgram --named torus --max-n 3").status, 0);
  EXPECT_EQ(spx_run("verify splitting --named lens:4 --n 3").status, 0);
  EXPECT_EQ(spx_run("verify torsion --named lens:6 --n 2").status, 0);
  EXPECT_EQ(spx_run("verify real-clifford --genus 2 --max-n 3").status, 0);
  auto j = json::parse(spx_run("verify clifford --genus 2 --max-n 4 --format json").out);
  EXPECT_EQ(j["suite"], "clifford");
  EXPECT_EQ(j["lines"].size(), 4u);
}

TEST(Cli, ExitCodes) {
  auto bad = temp_file("bad.spx", "circles a\ncell D = a q\n");
  EXPECT_EQ(spx_run("homology --file " + bad.string() + " --n 1").status, 2);
  std::filesystem::remove(bad);
  EXPECT_EQ(spx_run("homology --named torus --n 7").status, 3);
  EXPECT_EQ(spx_run("homology --named torus --n 7 --allow-large --coeff Q").status, 0);
  EXPECT_EQ(spx_run("homology --named klein --n 1").status, 3);
  EXPECT_EQ(spx_run("homology --named torus --n 1 --coeff F4").status, 3);
  EXPECT_EQ(spx_run("ring --named torus --n 1 --coeff Z").status, 3);
  EXPECT_EQ(spx_run("homology --n 1").status, 3);
  EXPECT_EQ(spx_run("homology --file /nonexistent/x.spx --n 1").status, 3);
  EXPECT_EQ(spx_run("verify nosuch --named torus").status, 3);
  EXPECT_EQ(spx_run("--help").status, 0);
}

TEST(Cli, DeterministicOutput) {
  auto a = spx_run("ring --named surface:2 --n 2 --coeff Q --format json");
  auto b = spx_run("ring --named surface:2 --n 2 --coeff Q --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFile) {
  auto path = std::filesystem::temp_directory_path() / ("spx_cli_out_" + std::to_string(::getpid()));
  auto r = spx_run("homology --named sphere --n 2 --output " + path.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "H_*(SP^2 sphere; Z)");
  std::filesystem::remove(path);
}
