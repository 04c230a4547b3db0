#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ramlab/builders.hpp"
#include "ramlab/error.hpp"

namespace ramlab::build {

bool is_prime(int v) {
  if (v < 2) return false;
  for (int k = 2; k * k <= v; ++k) {
    if (v % k == 0) return false;
  }
  return true;
}

bool is_quadratic_residue(int a, int q) {
  int r = ((a % q) + q) % q;
  for (int x = 1; x < q; ++x) {
    if (static_cast<long>(x) * x % q == r) return true;
  }
  return false;
}

LpsInfo lps_info(const LpsParams& params) {
  const int p = params.p;
  const int q = params.q;
  if (!is_prime(p) || !is_prime(q)) throw Error(Errc::BadParams, "p and q must be prime");
  if (p % 4 != 1 || q % 4 != 1) throw Error(Errc::BadParams, "p and q must be 1 mod 4");
  if (p == q) throw Error(Errc::BadParams, "p and q must differ");
  if (static_cast<long>(q) * q <= 4L * p) throw Error(Errc::BadParams, "need q > 2 sqrt(p)");
  if (q > 1000) throw Error(Errc::BadParams, "q too large for exhaustive construction");

  LpsInfo info;
  info.psl = is_quadratic_residue(p, q);
  const std::size_t qq = static_cast<std::size_t>(q);
  info.expected_order = info.psl ? qq * (qq * qq - 1) / 2 : qq * (qq * qq - 1);

  const int bound = static_cast<int>(std::sqrt(static_cast<double>(p))) + 1;
  for (int a0 = 1; a0 <= bound; a0 += 2) {
    for (int a1 = -bound; a1 <= bound; ++a1) {
      if (a1 % 2 != 0) continue;
      for (int a2 = -bound; a2 <= bound; ++a2) {
        if (a2 % 2 != 0) continue;
        for (int a3 = -bound; a3 <= bound; ++a3) {
          if (a3 % 2 != 0) continue;
          if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) info.quaternions.push_back({a0, a1, a2, a3});
        }
      }
    }
  }
  if (info.quaternions.size() != static_cast<std::size_t>(p) + 1) {
    throw Error(Errc::BadParams, "expected p+1 quaternion solutions");
  }
  return info;
}

namespace {

// Arithmetic in PGL(2, F_q); matrices are row-major (a, b, c, d) scaled so the
// first nonzero entry is 1.
class Pgl2 {
 public:
  using Mat = std::array<int, 4>;

  explicit Pgl2(int q) : q_(q), inverse_(static_cast<std::size_t>(q), 0) {
    for (int x = 1; x < q; ++x) {
      for (int y = 1; y < q; ++y) {
        if (static_cast<long>(x) * y % q == 1) {
          inverse_[static_cast<std::size_t>(x)] = y;
          break;
        }
      }
    }
  }

  int mod(long v) const { return static_cast<int>(((v % q_) + q_) % q_); }

  Mat canonical(Mat m) const {
    for (auto& e : m) e = mod(e);
    int lead = 0;
    for (int e : m) {
      if (e != 0) {
        lead = e;
        break;
      }
    }
    int s = inverse_[static_cast<std::size_t>(lead)];
    for (auto& e : m) e = mod(static_cast<long>(e) * s);
    return m;
  }

  Mat mul(const Mat& x, const Mat& y) const {
    return canonical({mod(static_cast<long>(x[0]) * y[0] + static_cast<long>(x[1]) * y[2]),
                      mod(static_cast<long>(x[0]) * y[1] + static_cast<long>(x[1]) * y[3]),
                      mod(static_cast<long>(x[2]) * y[0] + static_cast<long>(x[3]) * y[2]),
                      mod(static_cast<long>(x[2]) * y[1] + static_cast<long>(x[3]) * y[3])});
  }

  std::uint64_t code(const Mat& m) const {
    std::uint64_t c = 0;
    for (int e : m) c = c * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(e);
    return c;
  }

 private:
  int q_;
  std::vector<int> inverse_;
};

int sqrt_minus_one(int q) {
  for (int x = 1; x < q; ++x) {
    if (static_cast<long>(x) * x % q == q - 1) return x;
  }
  throw Error(Errc::BadParams, "-1 is not a square mod q");
}

}  // namespace

std::vector<std::array<int, 4>> lps_generators(const LpsParams& params) {
  LpsInfo info = lps_info(params);
  Pgl2 group(params.q);
  const long i = sqrt_minus_one(params.q);
  std::vector<std::array<int, 4>> gens;
  gens.reserve(info.quaternions.size());
  for (const auto& a : info.quaternions) {
    gens.push_back(group.canonical({static_cast<int>(a[0] + i * a[1]), static_cast<int>(a[2] + i * a[3]),
                                    static_cast<int>(-a[2] + i * a[3]), static_cast<int>(a[0] - i * a[1])}));
  }
  return gens;
}

RegularGraph build_lps(const LpsParams& params) {
  LpsInfo info = lps_info(params);
  auto gens = lps_generators(params);
  Pgl2 group(params.q);
  const int d = params.p + 1;

  // Breadth-first enumeration of the group generated by S from the identity;
  // vertex ids are discovery order, neighbors of g are g*s in generator order.
  std::vector<Pgl2::Mat> elements;
  elements.reserve(info.expected_order);
  std::unordered_map<std::uint64_t, Vertex> index;
  index.reserve(info.expected_order * 2);
  Pgl2::Mat identity{1, 0, 0, 1};
  elements.push_back(identity);
  index.emplace(group.code(identity), 0);

  std::vector<Vertex> adjacency;
  adjacency.reserve(info.expected_order * static_cast<std::size_t>(d));
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : gens) {
      Pgl2::Mat next = group.mul(elements[head], s);
      auto [it, inserted] = index.emplace(group.code(next), static_cast<Vertex>(elements.size()));
      if (inserted) elements.push_back(next);
      adjacency.push_back(it->second);
    }
  }
  if (elements.size() != info.expected_order) {
    throw Error(Errc::InvariantViolation, "generated group has order " +
                                              std::to_string(elements.size()) + ", expected " +
                                              std::to_string(info.expected_order));
  }

  Provenance prov;
  prov.family = "lps";
  prov.params["p"] = params.p;
  prov.params["q"] = params.q;
  prov.params["group"] = info.psl ? "PSL" : "PGL";
  prov.params["bipartite"] = !info.psl;

  RegularGraph g = [&] {
    try {
      return RegularGraph::from_adjacency(elements.size(), d, std::move(adjacency), prov);
    } catch (const Error& e) {
      if (e.code() == Errc::SelfLoop || e.code() == Errc::NonSimple) {
        throw Error(Errc::NonSimple, std::string("LPS Cayley graph is not simple: ") + e.what());
      }
      throw;
    }
  }();
  if (g.bipartite() == info.psl) {
    throw Error(Errc::InvariantViolation, "bipartiteness disagrees with the group type");
  }
  return g;
}

}  // namespace ramlab::build
