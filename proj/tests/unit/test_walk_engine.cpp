#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ramlab/error.hpp"
#include "ramlab/theory.hpp"
#include "ramlab/tree.hpp"
#include "ramlab/walk.hpp"

using namespace ramlab;
using namespace ramlab::walk;

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

std::vector<std::size_t> all_states(std::size_t n) { return select_starts(n, 0, n, 0); }

}  // namespace

TEST_CASE("stationary measures") {
  const auto& k4 = fixtures::k4();
  auto v = stationary(Space::Vertices, k4);
  CHECK(v.values == std::vector<double>(4, 0.25));
  auto e = stationary(Space::DirectedEdges, k4);
  CHECK(e.values.size() == 12);
  for (double x : e.values) CHECK(x == doctest::Approx(1.0 / 12));

  auto side0 = stationary(Space::Vertices, fixtures::k33(), 0);
  CHECK(side0.values == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 0});
  auto edges1 = stationary(Space::DirectedEdges, fixtures::k33(), 1);
  CHECK(edges1.total() == doctest::Approx(1.0));
  for (std::size_t i = 0; i < 9; ++i) CHECK(edges1.values[i] == 0.0);

  CHECK(code_of([&] { stationary(Space::Vertices, k4, 0); }) == Errc::ParityOnNonBipartite);
}

TEST_CASE("kernel steps") {
  const auto& k4 = fixtures::k4();
  const auto e = validate_and_index(k4);
  auto s = step(k4, e, Kernel::Srw, point_mass(Space::Vertices, 4, 0));
  CHECK(s.values[0] == 0.0);
  for (int i = 1; i < 4; ++i) CHECK(s.values[i] == doctest::Approx(1.0 / 3));

  const EdgeId e01 = e.id(0, *k4.neighbor_rank(0, 1));
  auto nb = step(k4, e, Kernel::Nbrw, point_mass(Space::DirectedEdges, 12, e01));
  CHECK(nb.values[e.id(1, *k4.neighbor_rank(1, 2))] == 0.5);
  CHECK(nb.values[e.id(1, *k4.neighbor_rank(1, 3))] == 0.5);
  CHECK(nb.total() == 1.0);

  for (const auto* g : {&fixtures::k4(), &fixtures::petersen(), &fixtures::lps13()}) {
    const auto ge = validate_and_index(*g);
    const auto u = stationary(Space::DirectedEdges, *g);
    const auto next = step(*g, ge, Kernel::Nbrw, u);
    for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(std::abs(next.values[i] - u.values[i]) <= 1e-16);
  }
  CHECK(code_of([&] { step(k4, e, Kernel::Nbrw, point_mass(Space::Vertices, 4, 0)); }) == Errc::SpaceMismatch);
}

TEST_CASE("mass is conserved step by step") {
  const auto& g = fixtures::petersen_lift20();
  const auto e = validate_and_index(g);
  auto srw = point_mass(Space::Vertices, g.n(), 3);
  auto nbrw = point_mass(Space::DirectedEdges, e.size(), 11);
  for (int t = 0; t < 60; ++t) {
    srw = step(g, e, Kernel::Srw, srw);
    nbrw = step(g, e, Kernel::Nbrw, nbrw);
    CHECK(std::abs(srw.total() - 1.0) <= 1e-14 * (t + 1));
    CHECK(std::abs(nbrw.total() - 1.0) <= 1e-14 * (t + 1));
    CHECK(*std::min_element(nbrw.values.begin(), nbrw.values.end()) >= 0.0);
  }
}

TEST_CASE("distances to stationarity") {
  const auto& k4 = fixtures::k4();
  const auto e = validate_and_index(k4);
  const auto pi = stationary(Space::Vertices, k4);
  const auto delta = point_mass(Space::Vertices, 4, 0);
  CHECK(distance_to_stationarity(delta, pi, 1.0) == doctest::Approx(1.5));
  CHECK(total_variation(delta, pi) == doctest::Approx(0.75));
  const auto one = step(k4, e, Kernel::Srw, delta);
  CHECK(distance_to_stationarity(one, pi, 1.0) == doctest::Approx(0.5));
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) CHECK(distance_to_stationarity(pi, pi, p) == 0.0);
  CHECK(distance_to_stationarity(delta, pi, kInfinity) == doctest::Approx(3.0));

  // L^2 through the expansion matches the direct sum.
  const auto& g = fixtures::petersen();
  const auto ge = validate_and_index(g);
  auto mu = point_mass(Space::DirectedEdges, ge.size(), 4);
  const auto ref = stationary(Space::DirectedEdges, g);
  for (int t = 0; t < 8; ++t) {
    CHECK(l2_distance_by_expansion(mu, ref) ==
          doctest::Approx(distance_to_stationarity(mu, ref, 2.0)).epsilon(1e-9));
    mu = step(g, ge, Kernel::Nbrw, mu);
  }

  const auto side1 = stationary(Space::Vertices, fixtures::k33(), 1);
  const auto at0 = point_mass(Space::Vertices, 6, 0);
  CHECK(code_of([&] { distance_to_stationarity(at0, side1, 2.0); }) == Errc::SupportViolation);
}

TEST_CASE("mixing curves") {
  const auto& k4 = fixtures::k4();
  const auto e = validate_and_index(k4);
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  for (std::size_t s = 0; s < 12; ++s) {
    CHECK(mixing_curve(k4, e, Kernel::Nbrw, s, 0, ps).tv[0] == doctest::Approx(11.0 / 12));
  }

  const auto& pet = fixtures::petersen();
  const auto pe = validate_and_index(pet);
  const auto c = worst_case_curve(pet, pe, Kernel::Srw, all_states(10), 50, ps);
  CHECK(c.t_max() == 50);
  for (std::size_t t = 0; t <= 50; ++t) {
    if (t > 0) CHECK(c.tv[t] <= c.tv[t - 1] + 1e-15);
    CHECK(c.lp[0][t] == doctest::Approx(2 * c.tv[t]));
    CHECK(c.lp[0][t] <= c.lp[1][t] + 1e-12);
    CHECK(c.lp[1][t] <= c.lp[2][t] + 1e-12);
    CHECK(c.lp[2][t] <= c.lp[3][t] + 1e-12);
    CHECK(c.lp[3][t] <= c.linf[t] + 1e-12);
    CHECK(c.reference[t] == -1);
  }
}

TEST_CASE("bipartite curves alternate the reference") {
  const auto& g = fixtures::k33();
  const auto e = validate_and_index(g);
  const auto pure = mixing_curve(g, e, Kernel::Srw, 0, 6, {});
  for (std::size_t t = 0; t <= 6; ++t) CHECK(pure.reference[t] == static_cast<int>(t % 2));
  // On K_{3,3} the walk is exactly uniform on the opposite side after one step.
  for (std::size_t t = 1; t <= 6; ++t) CHECK(pure.tv[t] == doctest::Approx(0.0));

  const auto lazy = mixing_curve(g, e, Kernel::Srw, 0, 6, {}, true);
  for (std::size_t t = 0; t <= 6; ++t) CHECK(lazy.reference[t] == -1);
  // Half at the start, 1/6 on each opposite vertex.
  CHECK(lazy.tv[0] == doctest::Approx(1.0 / 3));
  CHECK(lazy.tv[1] == doctest::Approx(0.0));

  const auto nb = worst_case_curve(g, e, Kernel::Nbrw, all_states(18), 10, {});
  // Nonbacktracking eigenvalues of modulus sqrt(2) give decay like 2^{-t/2}.
  for (std::size_t t = 1; t + 2 <= 10; ++t) CHECK(nb.tv[t + 2] <= 0.75 * nb.tv[t]);
  CHECK(nb.tv[10] < 0.05);
}

TEST_CASE("nbrw L2 bound on LPS(5,29) for t <= 30") {
  const auto& g = fixtures::lps29();
  const auto e = validate_and_index(g);
  const double ps[] = {2.0};
  const auto c = worst_case_curve(g, e, Kernel::Nbrw, select_starts(e.size(), 3, kExactStartCap, 4), 30, ps);
  CHECK(c.starts.size() == 4);
  for (std::size_t t = 1; t <= 30; ++t) {
    CHECK(c.lp[0][t] * c.lp[0][t] <= theory::nbrw_l2_bound(g.n(), 6, t));
  }
}

TEST_CASE("mixing time extraction") {
  MixingCurve c;
  c.tv = {0.9, 0.4, 0.05};
  c.linf = c.tv;
  c.reference = {-1, -1, -1};
  CHECK(mixing_time(c, 0.1, Norm::tv()) == 2);
  CHECK(mixing_time(c, 0.95, Norm::tv()) == 0);
  CHECK(code_of([&] { mixing_time(c, 0.01, Norm::tv()); }) == Errc::NotReached);
  CHECK(code_of([&] { mixing_time(c, 0.1, Norm::lp(3.0)); }) == Errc::BadParams);
  CHECK(mixing_time(c, 0.1, Norm::lp(kInfinity)) == 2);

  const auto& g = fixtures::lps29();
  const auto e = validate_and_index(g);
  const double ps[] = {1.0};
  const auto curve = worst_case_curve(g, e, Kernel::Nbrw, select_starts(e.size(), 9, kExactStartCap, 4), 20, ps);
  CHECK(mixing_time(curve, 0.2, Norm::lp(1.0)) >= 6);
}

TEST_CASE("start selection") {
  CHECK(select_starts(5, 1) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  const auto a = select_starts(73080, 11);
  CHECK(a.size() == kSampledStarts);
  CHECK(a == select_starts(73080, 11));
  CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("projected nonbacktracking laws") {
  const auto& k4 = fixtures::k4();
  const auto e = validate_and_index(k4);
  CHECK(nbrw_projected(k4, e, 0, 0).values == std::vector<double>{1, 0, 0, 0});
  const auto k1 = nbrw_projected(k4, e, 0, 1);
  CHECK(k1.values[0] == 0.0);
  for (int i = 1; i < 4; ++i) CHECK(k1.values[i] == doctest::Approx(1.0 / 3));

  const auto& pet = fixtures::petersen();
  const auto pe = validate_and_index(pet);
  const auto mu = nbrw_projected(pet, pe, 0, 2);
  const auto dist = bfs_distances(pet, 0);
  for (Vertex y = 0; y < 10; ++y) {
    CHECK(mu.values[y] == doctest::Approx(dist[y] == 2 ? 1.0 / 6 : 0.0));
  }
}

TEST_CASE("srw is a radial mixture of nonbacktracking laws") {
  const auto& k4 = fixtures::k4();
  CHECK(srw_mixture_residual(k4, validate_and_index(k4), 0, 3) <= 1e-12);
  const auto& pet = fixtures::petersen();
  CHECK(srw_mixture_residual(pet, validate_and_index(pet), 0, 10) <= 1e-12);
  const auto& lps = fixtures::lps13();
  CHECK(srw_mixture_residual(lps, validate_and_index(lps), 0, 15) <= 1e-11);
}

TEST_CASE("tree radial table") {
  const auto t3 = tree_radial(3, 12);
  CHECK(t3.probability(1, 1) == 1.0);
  CHECK(t3.probability(2, 0) == doctest::Approx(1.0 / 3));
  CHECK(t3.probability(2, 2) == doctest::Approx(2.0 / 3));
  for (int d : {3, 4, 6, 10}) {
    const auto t = tree_radial(d, 40);
    CHECK(t.return_probability(2) == doctest::Approx(1.0 / d).epsilon(1e-15));
    CHECK(t.return_probability(4) == doctest::Approx((2.0 * d - 1) / (1.0 * d * d * d)).epsilon(1e-15));
    for (std::size_t s = 0; s <= 40; ++s) {
      double sum = 0;
      for (std::size_t k = 0; k <= s; ++k) {
        sum += t.probability(s, k);
        if ((k + s) % 2 == 1) CHECK(t.probability(s, k) == 0.0);
      }
      CHECK(t.probability(s, s + 1) == 0.0);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(t.lp_norm(s, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
      if (s > 0) {
        // Recursion: into k from k-1 (up) and k+1 (down).
        for (std::size_t k = 1; k + 1 <= s; ++k) {
          const double up_from = k - 1 == 0 ? 1.0 : (d - 1.0) / d;
          const double want = t.probability(s - 1, k - 1) * up_from + t.probability(s - 1, k + 1) / d;
          CHECK(t.probability(s, k) == doctest::Approx(want).epsilon(1e-13));
        }
      }
    }
  }
  CHECK(tree_radial_row(4, 40) == tree_radial(4, 40).rows[40]);
}

TEST_CASE("normalized return probability") {
  for (int d : {3, 4, 6}) {
    const auto t = tree_radial(d, 60);
    const double rho = 2.0 * std::sqrt(d - 1.0) / d;
    for (std::size_t s : {1u, 5u, 30u}) {
      CHECK(normalized_return(d, s) ==
            doctest::Approx(t.return_probability(2 * s) / std::pow(rho, 2.0 * s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cutoff profile samples") {
  const auto& g = fixtures::petersen();
  const Vertex starts[] = {0};
  const double grid[] = {-50.0, 0.0, 50.0};
  const auto samples = empirical_cutoff_profile(g, starts, grid);
  CHECK(samples[0].predicted == doctest::Approx(1.0));
  CHECK(samples[0].t == 0);
  CHECK(samples[0].empirical == doctest::Approx(0.9));
  CHECK(samples[1].predicted == doctest::Approx(0.5));
  CHECK(samples[2].predicted == doctest::Approx(0.0));
}

TEST_CASE("infinity distance is dominated by L2 products for the nbrw") {
  std::vector<RegularGraph> graphs{fixtures::k4(), fixtures::petersen(), fixtures::random3(5)};
  for (const auto& g : graphs) {
    const auto e = validate_and_index(g);
    const double ps[] = {2.0};
    const auto c = worst_case_curve(g, e, Kernel::Nbrw, all_states(e.size()), 20, ps);
    for (std::size_t s = 0; s <= 10; ++s) {
      for (std::size_t t = 0; t <= 10; ++t) {
        CHECK(c.linf[s + t] <= c.lp[0][s] * c.lp[0][t] * (1 + 1e-9) + 1e-12);
      }
    }
  }
}
