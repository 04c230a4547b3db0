#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "ramlab/builders.hpp"
#include "ramlab/error.hpp"
#include "ramlab/spectral.hpp"

using namespace ramlab;

namespace {

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Usage;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ramlab_test_builders";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("lps parameters") {
  CHECK(code_of([] { build::build_lps({7, 29}); }) == Errc::BadParams);   // 7 is 3 mod 4
  CHECK(code_of([] { build::build_lps({5, 5}); }) == Errc::BadParams);
  CHECK(code_of([] { build::build_lps({5, 21}); }) == Errc::BadParams);   // not prime
  CHECK(code_of([] { build::build_lps({13, 5}); }) == Errc::BadParams);   // q < 2 sqrt(p)
  const auto info = build::lps_info({5, 29});
  CHECK(info.psl);
  CHECK(info.expected_order == 12180);
  CHECK(info.quaternions.size() == 6);
  CHECK_FALSE(build::lps_info({5, 13}).psl);
  CHECK_FALSE(build::lps_info({5, 17}).psl);
}

TEST_CASE("lps graphs") {
  const auto& g29 = fixtures::lps29();
  CHECK(g29.n() == 12180);
  CHECK(g29.d() == 6);
  CHECK_FALSE(g29.bipartite());
  CHECK(g29.provenance().params["group"] == "PSL");

  const auto& g13 = fixtures::lps13();
  CHECK(g13.n() == 2184);
  CHECK(g13.d() == 6);
  CHECK(g13.bipartite());

  const auto g17 = build::build_lps({5, 17});
  CHECK(g17.n() == 4896);
  CHECK(g17.bipartite());
}

TEST_CASE("lps generators are closed under inversion") {
  for (int q : {13, 17, 29}) {
    const auto gens = build::lps_generators({5, q});
    CHECK(gens.size() == 6);
    // In PGL(2, q) the inverse of [[a,b],[c,d]] is [[d,-b],[-c,a]] up to scale.
    auto canonical = [q](std::array<long, 4> m) {
      for (auto& x : m) x = ((x % q) + q) % q;
      long lead = 0;
      for (long x : m) {
        if (x) {
          lead = x;
          break;
        }
      }
      long inv = 1;
      while (lead * inv % q != 1) ++inv;
      for (auto& x : m) x = x * inv % q;
      return m;
    };
    std::set<std::array<long, 4>> set;
    for (const auto& s : gens) set.insert(canonical({s[0], s[1], s[2], s[3]}));
    CHECK(set.size() == 6);
    for (const auto& s : gens) CHECK(set.count(canonical({s[3], -s[1], -s[2], s[0]})) == 1);
  }
}

TEST_CASE("lps graph looks vertex-transitive") {
  const auto& g = fixtures::lps13();
  const auto ref = distance_profile(g, 0, 1.0).histogram;
  for (Vertex x : {17u, 100u, 555u, 1000u, 1500u, 2000u, 2183u, 7u, 300u, 901u}) {
    CHECK(distance_profile(g, x, 1.0).histogram == ref);
  }
}

TEST_CASE("random regular graphs") {
  const auto k4 = build::build_random_regular(4, 3, 99);
  CHECK(k4 == fixtures::k4());

  const auto g = build::build_random_regular(100, 3, 1);
  CHECK(g.n() == 100);
  CHECK(g.d() == 3);
  CHECK(build::build_random_regular(100, 3, 1) == g);
  CHECK_FALSE(build::build_random_regular(100, 3, 2) == g);
  CHECK(g.provenance().seed == 1u);

  CHECK(code_of([] { build::build_random_regular(5, 3, 0); }) == Errc::BadParams);
  CHECK(code_of([] { build::build_random_regular(10, 2, 0); }) == Errc::DegreeTooSmall);
  // With no attempts allowed the sampler gives up at once.
  CHECK(code_of([] { build::build_random_regular(4, 3, 0, 0); }) == Errc::SamplingExhausted);
}

TEST_CASE("random 4-regular graph on 1000 vertices is weakly Ramanujan") {
  // Typical rather than guaranteed, so a few seeds are tried.
  bool certified = false;
  for (std::uint64_t seed = 7; seed < 12 && !certified; ++seed) {
    const auto g = build::build_random_regular(1000, 4, seed);
    const auto c = spectral::certify(spectral::adjacency_spectrum(g));
    certified = c.kind == spectral::Certification::Ramanujan ||
                (c.kind == spectral::Certification::WeaklyRamanujan && c.delta < 0.3);
  }
  CHECK(certified);
}

TEST_CASE("random lifts") {
  const auto id = build::build_random_lift({&fixtures::k4(), 1, 5});
  CHECK(id == fixtures::k4());

  const auto two = build::build_random_lift({&fixtures::k4(), 2, 0});
  CHECK(two.n() == 8);
  CHECK(two.d() == 3);
  std::vector<Vertex> phi(8);
  for (Vertex v = 0; v < 8; ++v) phi[v] = v / 2;
  CHECK(build::is_covering_map(two, fixtures::k4(), phi));
  phi[0] = 1;
  CHECK_FALSE(build::is_covering_map(two, fixtures::k4(), phi));

  const auto& big = fixtures::petersen_lift20();
  std::vector<Vertex> proj(big.n());
  for (Vertex v = 0; v < big.n(); ++v) proj[v] = v / 20;
  CHECK(build::is_covering_map(big, fixtures::petersen(), proj));

  const auto huge = build::build_random_lift({&fixtures::petersen(), 1000, 3});
  CHECK(huge.n() == 10000);
  CHECK(huge.d() == 3);
  CHECK(code_of([] { build::build_random_lift({nullptr, 3, 0}); }) == Errc::BadParams);
}

TEST_CASE("named graphs") {
  CHECK(fixtures::k4().d() == 3);
  CHECK(fixtures::petersen().n() == 10);
  CHECK(girth(fixtures::petersen()) == 5);
  CHECK(build::build_named("complete_bipartite(4)").d() == 4);
  CHECK(code_of([] { build::build_named("cycle"); }) == Errc::DegreeTooSmall);
  CHECK(code_of([] { build::build_named("cycle(7)"); }) == Errc::DegreeTooSmall);
  CHECK(code_of([] { build::build_named("heawood"); }) == Errc::UnknownName);
  CHECK(code_of([] { build::build_named("complete(3)"); }) == Errc::DegreeTooSmall);
}

TEST_CASE("edge-list round trip") {
  const auto path = scratch("k4.edges");
  build::save_graph(fixtures::k4(), path);
  const auto back = build::load_graph(path);
  CHECK(back == fixtures::k4());
  CHECK(back.provenance() == fixtures::k4().provenance());

  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(build::to_edge_list(back) == text);
}

TEST_CASE("edge-list parse errors") {
  try {
    build::parse_edge_list("four three\n0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    build::parse_edge_list("4 3\n0 1\n0 2\n0 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK(code_of([] { build::parse_edge_list("4 3\n0 1\n0 2\n"); }) == Errc::InvariantViolation);
}

TEST_CASE("lps file round trip keeps the bipartite flag") {
  const auto path = scratch("lps13.edges");
  build::save_graph(fixtures::lps13(), path);
  const auto back = build::load_graph(path);
  CHECK(back.bipartite());
  CHECK(back.provenance().params["bipartite"] == true);

  // A sidecar that lies about bipartiteness is rejected.
  auto prov = fixtures::lps13().provenance();
  prov.params["bipartite"] = false;
  std::ofstream(build::provenance_path(path)) << prov.to_json().dump();
  CHECK(code_of([&] { build::load_graph(path); }) == Errc::InvariantViolation);
}
