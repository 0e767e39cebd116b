#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qpv/qla.hpp"

using namespace qpv;

namespace {

// Brute-force trivector oracle: (1/4) gamma([t#alpha, t#beta]) over all
// dual-coordinate triples.  Independent of the production formula.
AlgTensor phi_oracle(const QuadraticLieAlgebra& L) {
  int n = L.dim;
  AlgTensor out(n, 3, AlgTensor::Sym::none);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<Rat> ta(n), tb(n);
      for (int j = 0; j < n; ++j) {
        ta[j] = L.t.at(a, j);
        tb[j] = L.t.at(b, j);
      }
      auto br = L.bracket(ta, tb);
      for (int c = 0; c < n; ++c) out.at({a, b, c}) = br[c] / 4;
    }
  return out;
}

}  // namespace

TEST_CASE("catalog validates clean") {
  for (const char* name : {"abelian3", "sl2", "gl2", "sl2+sl2", "bar(sl2)"}) {
    auto L = algebra_by_name(name);
    auto rep = validate_algebra(L);
    INFO(name);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("ad-invariance catches a wrong t") {
  auto L = alg_sl2();
  L.t = Mat::identity(3);
  auto rep = validate_algebra(L);
  bool inv_failed = false;
  for (const auto& it : rep.items)
    if (it.name == "t_ad_invariant") {
      inv_failed = !it.pass;
      CHECK(it.detail != "");
    }
  CHECK(inv_failed);
}

TEST_CASE("trivector of sl2 and the oracle") {
  auto L = alg_sl2();
  auto phi = cartan_trivector(L);
  CHECK(phi.sym_ok());
  // phi = -1/4 e^f^h: component on the ordered triple (e,f,h)
  CHECK(phi.at({0, 1, 2}) == Rat(-1, 4));
  CHECK(phi.at({1, 0, 2}) == Rat(1, 4));
  CHECK(phi.comp == phi_oracle(L).comp);
  CHECK(cartan_trivector(alg_abelian(3)).is_zero());
  CHECK(cartan_trivector(alg_gl2()).comp == phi_oracle(alg_gl2()).comp);
}

TEST_CASE("trivector is ad-invariant") {
  for (const char* name : {"sl2", "gl2", "sl2+sl2"}) {
    auto L = algebra_by_name(name);
    auto phi = cartan_trivector(L);
    int n = L.dim;
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            Rat s = 0;
            for (int m = 0; m < n; ++m)
              s += L.c[k][m][a] * phi.at({m, b, c}) + L.c[k][m][b] * phi.at({a, m, c}) +
                   L.c[k][m][c] * phi.at({a, b, m});
            CHECK(s == 0);
          }
  }
}

TEST_CASE("bar and direct sum") {
  auto L = alg_sl2();
  CHECK(bar(bar(L)).t == L.t);
  CHECK(cartan_trivector(bar(L)) == cartan_trivector(L));
  auto d = compose(L, bar(L), ComposeMode::direct_sum);
  CHECK(d.dim == 6);
  CHECK(d.t.at(2, 2) == Rat(1, 2));
  CHECK(d.t.at(5, 5) == Rat(-1, 2));
  auto phid = cartan_trivector(d);
  auto phig = cartan_trivector(L);
  // block structure: each summand carries phi of sl2, no cross terms
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        CHECK(phid.at({a, b, c}) == phig.at({a, b, c}));
        CHECK(phid.at({a + 3, b + 3, c + 3}) == phig.at({a, b, c}));
        CHECK(phid.at({a, b, c + 3}) == 0);
        CHECK(phid.at({a, b + 3, c + 3}) == 0);
      }
  CHECK(validate_algebra(d).all_pass());
}

static std::vector<Rat> unit(int n, int i) {
  std::vector<Rat> v(n);
  v[i] = 1;
  return v;
}

TEST_CASE("coisotropy reports") {
  auto g = alg_sl2();
  auto d = compose(g, bar(g), ComposeMode::direct_sum);

  SUBCASE("diagonal is Lagrangian") {
    Mat rows(3, 6);
    for (int i = 0; i < 3; ++i) {
      rows.at(i, i) = 1;
      rows.at(i, i + 3) = 1;
    }
    Subalgebra diag{&d, rows};
    CHECK(diag.closed_under_bracket());
    auto rep = coisotropy_report(diag);
    CHECK(rep.is_coisotropic);
    CHECK(rep.t_nondegenerate);
    CHECK(rep.is_lagrangian);
    CHECK(2 * row_space_canon(rows).rows() == d.dim);
  }

  SUBCASE("two Borels: coisotropic with nilpotent perp") {
    // b = span{e, h} in each summand
    Mat rows = Mat::from_rows({unit(6, 0), unit(6, 2), unit(6, 3), unit(6, 5)});
    Subalgebra bb{&d, rows};
    CHECK(bb.closed_under_bracket());
    auto rep = coisotropy_report(bb);
    CHECK(rep.is_coisotropic);
    CHECK_FALSE(rep.is_lagrangian);
    Mat nn = Mat::from_rows({unit(6, 0), unit(6, 3)});
    CHECK(same_row_space(rep.perp, nn));
  }

  SUBCASE("full algebra is coisotropic") {
    Subalgebra full{&d, Mat::identity(6)};
    auto rep = coisotropy_report(full);
    CHECK(rep.is_coisotropic);
    CHECK(rep.perp.rows() == 0);
  }
}

TEST_CASE("descent to the subquotient") {
  auto g = alg_sl2();
  auto d = compose(g, bar(g), ComposeMode::direct_sum);

  SUBCASE("Lagrangian: zero quotient") {
    Mat rows(3, 6);
    for (int i = 0; i < 3; ++i) {
      rows.at(i, i) = 1;
      rows.at(i, i + 3) = 1;
    }
    Subalgebra diag{&d, rows};
    auto dd = descend_data(diag, diag);
    CHECK(dd.quotient.dim == 0);
    CHECK(dd.phi_mod_vanishes);
  }

  SUBCASE("two Borels over two nilpotents: abelian rank-2 quotient") {
    Mat crows = Mat::from_rows({unit(6, 0), unit(6, 2), unit(6, 3), unit(6, 5)});
    Mat hrows = Mat::from_rows({unit(6, 0), unit(6, 3)});
    auto dd = descend_data(Subalgebra{&d, crows}, Subalgebra{&d, hrows});
    CHECK(dd.quotient.dim == 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) CHECK(dd.quotient.c[i][j][k] == 0);
    CHECK(dd.phi_prime.is_zero());
    CHECK(dd.quotient.t.at(0, 0) == Rat(1, 2));
    CHECK(dd.quotient.t.at(1, 1) == Rat(-1, 2));
    CHECK(dd.quotient.t.at(0, 1) == 0);
    CHECK(dd.phi_mod_vanishes);
    CHECK(validate_algebra(dd.quotient).all_pass());
  }

  SUBCASE("hypothesis violations are named") {
    Mat crows = Mat::identity(6);
    Mat hrows = Mat::from_rows({unit(6, 0)});  // span{e}: not an ideal of d
    CHECK_THROWS_WITH_AS(descend_data(Subalgebra{&d, crows}, Subalgebra{&d, hrows}),
                         "h not an ideal of c", std::invalid_argument);
    // perp of b+b is n+n, not contained in the Cartan part
    Mat brows = Mat::from_rows({unit(6, 0), unit(6, 2), unit(6, 3), unit(6, 5)});
    Mat trows = Mat::from_rows({unit(6, 2), unit(6, 5)});
    CHECK_THROWS_WITH_AS(descend_data(Subalgebra{&d, brows}, Subalgebra{&d, trows}),
                         "perp not contained in h", std::invalid_argument);
  }
}

TEST_CASE("json round trip") {
  auto L = alg_sl2();
  auto text = qla_to_json_text(L);
  auto back = qla_from_json_text(text);
  CHECK(back.dim == L.dim);
  CHECK(back.t == L.t);
  CHECK(back.c == L.c);
  CHECK(back.model.size() == L.model.size());
  for (size_t i = 0; i < L.model.size(); ++i) CHECK(back.model[i] == L.model[i]);
  CHECK_THROWS(qla_from_json_text("{\"dim\": 2, \"brackets\": [[0,5,0,\"1\"]], \"t\": []}"));
  CHECK_THROWS(qla_from_json_text("{\"dim\": 1, \"brackets\": [], \"t\": [[0,0,\"1/0\"]]}"));
}

TEST_CASE("seeded group points") {
  auto L = alg_sl2();
  Rng r1(42), r2(42);
  Mat g1 = L.random_group_element(r1);
  Mat g2 = L.random_group_element(r2);
  CHECK(g1 == g2);
  CHECK(g1.det() == 1);
  CHECK(L.group_element_ok(g1));
  // Ad is a Lie algebra automorphism
  Rng r3(7);
  for (int trial = 0; trial < 3; ++trial) {
    Mat g = L.random_group_element(r3);
    std::vector<Rat> u{Rat(1), Rat(0), Rat(2)};
    std::vector<Rat> v{Rat(0), Rat(1, 3), Rat(-1)};
    CHECK(L.Ad(g, L.bracket(u, v)) == L.bracket(L.Ad(g, u), L.Ad(g, v)));
  }
  auto d2 = alg_sl2_sl2();
  Rng r4(9);
  Mat h = d2.random_group_element(r4);
  CHECK(d2.group_element_ok(h));
}
