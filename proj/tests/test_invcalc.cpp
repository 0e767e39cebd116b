#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qpv/invcalc.hpp"

using namespace qpv;

namespace {

int gid(const Layout& ly, int site, int chir, int idx) { return gen_id(ly, Gen{site, chir, idx}); }

MultiVec gen1(const Layout& ly, int site, int chir, int idx) {
  MultiVec m(1);
  m.add_term({gid(ly, site, chir, idx)}, Rat(1));
  return m;
}

// Action of g + bar(g) on G x G with both sites glued at both signs:
// (u, v) acts by u^{L,0} + u^{L,1} - v^{R,0} - v^{R,1}.
Action two_site_action(const Layout& ly) {
  Action rho;
  int n = ly.dim();
  for (int i = 0; i < n; ++i) rho.push_back(gen1(ly, 0, 0, i) + gen1(ly, 1, 0, i));
  for (int i = 0; i < n; ++i)
    rho.push_back((gen1(ly, 0, 1, i) + gen1(ly, 1, 1, i)).scaled(Rat(-1)));
  return rho;
}

// The bivector produced by the two pair-of-pants gluings of two disks:
// -1/2 (rho_x ^ rho_y)(t) at the plus corners, then at the minus corners
// with the sign of t flipped for the barred copies.
MultiVec two_site_pi(const Layout& ly) {
  Action plus0{}, plus1{}, minus0{}, minus1{};
  int n = ly.dim();
  for (int i = 0; i < n; ++i) {
    plus0.push_back(gen1(ly, 0, 0, i));
    plus1.push_back(gen1(ly, 1, 0, i));
    minus0.push_back(gen1(ly, 0, 1, i).scaled(Rat(-1)));
    minus1.push_back(gen1(ly, 1, 1, i).scaled(Rat(-1)));
  }
  const Mat& t = ly.alg->t;
  MultiVec pi(2);
  pi = pi - action_wedge(plus0, plus1, t).scaled(Rat(1, 2));
  pi = pi - action_wedge(minus0, minus1, t.scaled(Rat(-1))).scaled(Rat(1, 2));
  return pi;
}

AlgTensor t_tensor(const QuadraticLieAlgebra& d) {
  AlgTensor T(d.dim, 2, AlgTensor::Sym::symmetric);
  for (int i = 0; i < d.dim; ++i)
    for (int j = 0; j < d.dim; ++j) T.at({i, j}) = d.t.at(i, j);
  return T;
}

MultiVec random_multivec(const Layout& ly, int degree, Rng& rng, int nterms) {
  MultiVec m(degree);
  for (int k = 0; k < nterms; ++k) {
    std::vector<int> ids(degree);
    for (int s = 0; s < degree; ++s) ids[s] = static_cast<int>(rng.below(ly.gens()));
    m.add_term(ids, rng.small());
  }
  return m;
}

}  // namespace

TEST_CASE("canonical form") {
  auto g = alg_sl2();
  Layout ly{&g, 2};
  MultiVec m(2);
  m.add_term({gid(ly, 1, 0, 1), gid(ly, 0, 0, 0)}, Rat(3));
  m.add_term({gid(ly, 0, 0, 0), gid(ly, 1, 0, 1)}, Rat(3));  // cancels by sign
  CHECK(m.is_zero());
  m.add_term({gid(ly, 0, 0, 0), gid(ly, 0, 0, 0)}, Rat(5));  // repeat drops
  CHECK(m.is_zero());

  MultiVec a = gen1(ly, 0, 0, 0), b = gen1(ly, 1, 1, 2);
  CHECK(MultiVec::wedge(a, b) == MultiVec::wedge(b, a).scaled(Rat(-1)));
  // linearity of canonicalization
  MultiVec s = a.scaled(Rat(2, 3)) + b;
  CHECK(s - b == a.scaled(Rat(2, 3)));
}

TEST_CASE("generator brackets") {
  auto g = alg_sl2();
  Layout ly{&g, 2};
  // [e^L, f^L] = h^L
  CHECK(schouten(ly, gen1(ly, 0, 0, 0), gen1(ly, 0, 0, 1)) == gen1(ly, 0, 0, 2));
  // [e^R, f^R] = -h^R
  CHECK(schouten(ly, gen1(ly, 0, 1, 0), gen1(ly, 0, 1, 1)) == gen1(ly, 0, 1, 2).scaled(Rat(-1)));
  // mixed chirality and different sites commute
  CHECK(schouten(ly, gen1(ly, 0, 0, 0), gen1(ly, 0, 1, 1)).is_zero());
  CHECK(schouten(ly, gen1(ly, 0, 0, 0), gen1(ly, 1, 0, 1)).is_zero());
}

TEST_CASE("graded antisymmetry and Jacobi") {
  auto g = alg_sl2();
  Layout ly{&g, 1};
  Rng rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    int p = rng.range(1, 2), q = rng.range(1, 2), r = rng.range(1, 2);
    MultiVec A = random_multivec(ly, p, rng, 3);
    MultiVec B = random_multivec(ly, q, rng, 3);
    MultiVec C = random_multivec(ly, r, rng, 3);
    int sAB = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
    CHECK(schouten(ly, A, B) == schouten(ly, B, A).scaled(Rat(-sAB)));
    // graded Jacobi: [A,[B,C]] = [[A,B],C] + (-1)^{(p-1)(q-1)} [B,[A,C]]
    MultiVec lhs = schouten(ly, A, schouten(ly, B, C));
    MultiVec rhs =
        schouten(ly, schouten(ly, A, B), C) + schouten(ly, B, schouten(ly, A, C)).scaled(Rat(sAB));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("frame evaluation") {
  auto g = alg_sl2();
  Layout ly{&g, 1};
  GroupPoint p;
  Mat shear = Mat::identity(2);
  shear.at(0, 1) = 1;
  p.site = {shear};

  // e^R at [[1,1],[0,1]]: conjugation fixes e
  PointTensor pe = evaluate_at(ly, gen1(ly, 0, 1, 0), p);
  CHECK(pe.at({0}) == 1);
  CHECK(pe.at({1}) == 0);
  CHECK(pe.at({2}) == 0);
  // h^R: g^{-1} h g = h + 2e
  PointTensor ph = evaluate_at(ly, gen1(ly, 0, 1, 2), p);
  CHECK(ph.at({0}) == 2);
  CHECK(ph.at({1}) == 0);
  CHECK(ph.at({2}) == 1);
  // L and R coincide at the identity
  for (int i = 0; i < 3; ++i) {
    MultiVec diff = gen1(ly, 0, 0, i) - gen1(ly, 0, 1, i);
    CHECK(evaluate_at(ly, diff, identity_point(ly)).is_zero());
  }
}

TEST_CASE("evaluation is linear and intertwines wedge") {
  auto g = alg_sl2();
  Layout ly{&g, 2};
  Rng rng(11);
  MultiVec A = random_multivec(ly, 1, rng, 4);
  MultiVec B = random_multivec(ly, 2, rng, 4);
  GroupPoint p = random_point(ly, rng);
  CHECK(evaluate_at(ly, A + A.scaled(Rat(1, 2)), p) == evaluate_at(ly, A, p).scaled(Rat(3, 2)));
  CHECK(evaluate_at(ly, MultiVec::wedge(A, B), p) ==
        point_wedge(evaluate_at(ly, A, p), evaluate_at(ly, B, p)));
}

TEST_CASE("two-site model: pi, sigma, quasi-Poisson identity") {
  auto g = alg_sl2();
  auto d = compose(g, bar(g), ComposeMode::direct_sum);
  Layout ly{&g, 2};
  Action rho = two_site_action(ly);
  MultiVec pi = two_site_pi(ly);

  SUBCASE("pi matches the displayed formula term by term") {
    // pi = 1/2 sum t^{ij} (e_i^{L,1} ^ e_j^{L,0} - e_i^{R,1} ^ e_j^{R,0})
    MultiVec golden(2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rat tij = g.t.at(i, j);
        if (tij == 0) continue;
        golden.add_term({gid(ly, 1, 0, i), gid(ly, 0, 0, j)}, tij / 2);
        golden.add_term({gid(ly, 1, 1, i), gid(ly, 0, 1, j)}, -tij / 2);
      }
    CHECK(pi == golden);
  }

  SUBCASE("sigma agrees with the displayed tensor at sampled points") {
    GenTensor sigma = sigma_of(pi, rho, t_tensor(d));
    GenTensor golden(2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rat tij = g.t.at(i, j);
        if (tij == 0) continue;
        golden.add_term({gid(ly, 1, 0, i), gid(ly, 0, 0, j)}, tij);
        golden.add_term({gid(ly, 1, 1, i), gid(ly, 0, 1, j)}, -tij);
      }
    CHECK_FALSE(sigma == golden);  // formally distinct ...
    CHECK(equal_at_points(ly, sigma, golden, 77));  // ... pointwise equal
    CHECK(skew_half(sigma) == pi);

    // formal coefficient blocks of the displayed tensor are +-t
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto it = golden.terms().find({gid(ly, 1, 0, i), gid(ly, 0, 0, j)});
        Rat v = it == golden.terms().end() ? Rat(0) : it->second;
        CHECK(v == g.t.at(i, j));
        it = golden.terms().find({gid(ly, 1, 1, i), gid(ly, 0, 1, j)});
        v = it == golden.terms().end() ? Rat(0) : it->second;
        CHECK(v == -g.t.at(i, j));
      }
  }

  SUBCASE("invariance: [rho(u), pi] vanishes pointwise") {
    for (int i = 0; i < 6; ++i)
      CHECK(equal_at_points(ly, schouten(ly, rho[i], pi), MultiVec(2), 31 + i, 3));
  }

  SUBCASE("[pi,pi] = 2 rho(phi_d) at sampled points") {
    MultiVec lhs = schouten(ly, pi, pi);
    MultiVec rhs = action_extend(rho, cartan_trivector(d)).scaled(Rat(2));
    CHECK(equal_at_points(ly, lhs, rhs, 505));
  }
}

TEST_CASE("one-site model: sigma vanishes identically") {
  auto g = alg_sl2();
  Layout ly{&g, 1};
  Action rho;
  for (int i = 0; i < 3; ++i) rho.push_back(gen1(ly, 0, 0, i));
  for (int i = 0; i < 3; ++i) rho.push_back(gen1(ly, 0, 1, i).scaled(Rat(-1)));
  auto d = compose(g, bar(g), ComposeMode::direct_sum);
  GenTensor sigma = sigma_of(MultiVec(2), rho, t_tensor(d));
  CHECK(equal_at_points(ly, sigma, GenTensor(2), 99));
  // and the quasi-Poisson identity holds with pi = 0
  MultiVec rhs = action_extend(rho, cartan_trivector(d));
  CHECK(equal_at_points(ly, MultiVec(3), rhs, 98));
}

TEST_CASE("pairing matrix") {
  auto g = alg_sl2();
  Layout ly{&g, 2};
  auto d = compose(g, bar(g), ComposeMode::direct_sum);
  GenTensor sigma = sigma_of(two_site_pi(ly), two_site_action(ly), t_tensor(d));
  Rng rng(8);
  GroupPoint p = random_point(ly, rng);
  Mat full = Mat::identity(6);
  Mat pm = pairing_matrix(ly, sigma, p, full, full);
  CHECK(pm == evaluate_at(ly, sigma, p).as_matrix());
  CHECK(pairing_matrix(ly, GenTensor(2), p, full, full) == Mat(6, 6));
}
