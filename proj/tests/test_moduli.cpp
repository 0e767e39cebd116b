#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qpv/moduli.hpp"

using namespace qpv;

namespace {

SurfaceRecipe recipe(int disks, std::initializer_list<RecipeStep> steps) {
  SurfaceRecipe r;
  r.disks = disks;
  r.steps.assign(steps);
  return r;
}
RecipeStep glue(const char* x, const char* y) {
  return RecipeStep{RecipeStep::Op::glue, x, y};
}
RecipeStep forget(const char* x) { return RecipeStep{RecipeStep::Op::forget, x, ""}; }

const SurfaceRecipe r_disk = recipe(1, {});
const SurfaceRecipe r_three = recipe(2, {glue("0+", "1+")});
const SurfaceRecipe r_annulus = recipe(2, {glue("0+", "1+"), glue("0-", "1-")});
const SurfaceRecipe r_square = recipe(3, {glue("0+", "1+"), glue("0-", "2-")});
const SurfaceRecipe r_pants = recipe(
    3, {glue("0+", "1+"), glue("0+", "2+"), glue("0-", "1-"), glue("0-", "2-")});
const SurfaceRecipe r_genus1 = recipe(
    3, {glue("0+", "1+"), glue("0+", "2+"), glue("0-", "2-"), glue("0-", "1-"),
        forget("0-")});

// (rho_b x rho_a)(t) as a plain tensor, the fusion increment of sigma
GenTensor tensor_pair(const Action& rho_b, const Action& rho_a, const Mat& t) {
  GenTensor out(2);
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) {
      if (t.at(i, j) == 0) continue;
      for (const auto& [ka, ca] : rho_b[static_cast<size_t>(i)].terms())
        for (const auto& [kb, cb] : rho_a[static_cast<size_t>(j)].terms())
          out.add_term({ka[0], kb[0]}, t.at(i, j) * ca * cb);
    }
  return out;
}

}  // namespace

TEST_CASE("disk moduli") {
  auto M = build(r_disk, alg_sl2());
  CHECK(M.edge_sites == std::vector<int>{0});
  CHECK(M.pi.is_zero());
  CHECK(M.copies.size() == 2);
  Layout ly = M.layout();
  GenTensor sg = M.sigma();
  Rng rng(11);
  for (int k = 0; k < 3; ++k) {
    auto p = random_point(ly, rng);
    CHECK(evaluate_at(ly, sg, p).is_zero());
    auto rep = check_centrality(M, p);
    CHECK(rep.ok());
    auto lr = leaf_ranks(M, p);
    CHECK(lr.rank_TL == 0);
    CHECK(lr.rank_TR == 0);
    CHECK(lr.rank_Tbig == lr.rank_action);
    CHECK(lr.comparison_holds);
    auto pr = sigma_inverse_on_leaves(M, p, rng);
    CHECK(pr.matrix.rows() == 0);
    CHECK(pr.nondegenerate);
  }
  auto cm = central_maps(M);
  CHECK(cm.mu_L.size() == 1);
  CHECK(cm.mu_R.size() == 1);
  CHECK(cm.uncut.empty());
  CHECK(quasi_poisson_identity(M, 21, 3));
}

TEST_CASE("annulus bivector golden") {
  auto alg = alg_sl2();
  auto M = build(r_annulus, alg);
  CHECK(M.copies.size() == 2);
  Layout ly{&alg, 2};
  Action plus0, plus1, minus0, minus1;
  for (int i = 0; i < 3; ++i) {
    MultiVec a(1), b(1), c(1), d(1);
    a.add_term({gen_id(ly, Gen{0, 0, i})}, 1);
    b.add_term({gen_id(ly, Gen{1, 0, i})}, 1);
    c.add_term({gen_id(ly, Gen{0, 1, i})}, -1);
    d.add_term({gen_id(ly, Gen{1, 1, i})}, -1);
    plus0.push_back(a);
    plus1.push_back(b);
    minus0.push_back(c);
    minus1.push_back(d);
  }
  MultiVec expect = action_wedge(plus0, plus1, alg.t).scaled(Rat(-1, 2)) +
                    action_wedge(minus0, minus1, alg.t.scaled(-1)).scaled(Rat(-1, 2));
  CHECK(M.pi == expect);
  CHECK(quasi_poisson_identity(M, 23, 3));
}

TEST_CASE("external fusion of two disks") {
  auto alg = alg_sl2();
  auto M = build(recipe(2, {}), alg);
  GenTensor before = M.sigma();
  Action rho_a = M.copies[0].rho, rho_b = M.copies[2].rho;
  MultiVec expect_pi = action_wedge(rho_a, rho_b, alg.t).scaled(Rat(-1, 2));
  internal_fusion(M, 0, 2);
  CHECK(M.pi == expect_pi);
  CHECK(M.copies.size() == 3);
  GenTensor after = M.sigma();
  CHECK(after == before + tensor_pair(rho_b, rho_a, alg.t));

  // zero t contributes nothing to the wedge correction
  CHECK(action_wedge(rho_a, rho_b, Mat(3, 3)).is_zero());
  // mixed-sign fusion rejected
  CHECK_THROWS_AS(internal_fusion(M, 0, 1), std::invalid_argument);
}

TEST_CASE("annulus central maps and centrality") {
  auto M = build(r_annulus, alg_sl2());
  auto cm = central_maps(M);
  REQUIRE(cm.mu_L.size() == 1);
  REQUIRE(cm.mu_R.size() == 1);
  REQUIRE(cm.uncut.size() == 1);
  CHECK(cm.mu_L[0].size() == 1);
  CHECK(cm.mu_R[0].size() == 1);
  CHECK(cm.uncut[0].size() == 2);

  Layout ly = M.layout();
  Rng rng(31);
  for (int k = 0; k < 5; ++k) {
    auto p = random_point(ly, rng);
    CHECK(check_centrality(M, p).ok());
  }

  // negative control: wrong-sign symmetric part is not annihilated
  auto p = random_point(ly, rng);
  GenTensor wrong = sigma_of(M.pi, M.full_action(), M.acting_t().scaled(-1));
  Mat Tw = evaluate_at(ly, wrong, p).as_matrix().transpose();
  Mat R = word_differential(M, cm.mu_L[0], p);
  Mat prod = R * Tw;
  bool zero = true;
  for (int i = 0; i < prod.rows(); ++i)
    for (int j = 0; j < prod.cols(); ++j)
      if (prod.at(i, j) != 0) zero = false;
  CHECK_FALSE(zero);
}

TEST_CASE("annulus leaf ranks and pairing") {
  auto M = build(r_annulus, alg_sl2());
  Layout ly = M.layout();
  Rng rng(41);
  for (int k = 0; k < 3; ++k) {
    auto p = random_point(ly, rng);
    auto lr = leaf_ranks(M, p);
    CHECK(lr.rank_TL == lr.rank_TR);
    CHECK(lr.sum_identity);
    if (!lr.generic) continue;  // seeded shears are generically regular
    CHECK(lr.rank_TL == 2);
    CHECK(lr.uncut_class_rank == 1);
    CHECK(lr.comparison_holds);
    auto pr = sigma_inverse_on_leaves(M, p, rng);
    CHECK(pr.matrix.rows() == 2);
    CHECK(pr.matrix.cols() == 2);
    CHECK(pr.nondegenerate);
    CHECK(pr.choice_independent);
  }
}

TEST_CASE("three-marked disk") {
  auto M = build(r_three, alg_sl2());
  CHECK(M.edge_sites.size() == 2);
  CHECK(M.copies.size() == 3);
  CHECK(quasi_poisson_identity(M, 51, 5));
  Rng rng(52);
  auto p = random_point(M.layout(), rng);
  CHECK(check_centrality(M, p).ok());
}

TEST_CASE("alternating square: split symplectic") {
  auto M = build(r_square, alg_sl2());
  CHECK(M.copies.size() == 4);
  CHECK(quasi_poisson_identity(M, 61, 2));
  Layout ly = M.layout();
  Rng rng(62);
  auto p = random_point(ly, rng);
  CHECK(check_centrality(M, p).ok());
  auto lr = leaf_ranks(M, p);
  int dim_d = 4 * 3;
  CHECK(lr.rank_TL == ly.sites * ly.dim() - dim_d / 2);  // 9 - 6
  CHECK(lr.uncut_class_rank == 0);
  CHECK(lr.comparison_holds);

  auto st = left_stabilizer_check(M, p);
  CHECK(st.dim_stab == dim_d / 2);
  CHECK(st.half_dim);
  CHECK(st.coisotropic);
  CHECK(st.lagrangian);
}

TEST_CASE("pants with two uncut circles") {
  auto M = build(r_pants, alg_sl2());
  CHECK(M.copies.size() == 2);
  CHECK(M.edge_sites.size() == 3);
  CHECK(quasi_poisson_identity(M, 71, 2));
  auto cm = central_maps(M);
  CHECK(cm.uncut.size() == 2);
  Rng rng(72);
  auto p = random_point(M.layout(), rng);
  CHECK(check_centrality(M, p).ok());
  auto lr = leaf_ranks(M, p);
  CHECK(lr.sum_identity);
  if (lr.generic) {
    CHECK(lr.uncut_class_rank == 2);
    CHECK(lr.rank_TL == 9 - 3 - 2);
    CHECK(lr.comparison_holds);
  }
}

TEST_CASE("forgetting reduces the glued pair back to a disk") {
  auto M = build(recipe(2, {glue("0+", "1+"), forget("1-")}), alg_sl2());
  auto D = build(r_disk, alg_sl2());
  CHECK(M.edge_sites.size() == 1);
  CHECK(M.pi.is_zero());
  REQUIRE(M.copies.size() == 2);
  CHECK(M.copies[0].sign == 1);
  CHECK(M.copies[1].sign == -1);
  CHECK(M.copies[0].rho == D.copies[0].rho);
  CHECK(M.copies[1].rho == D.copies[1].rho);
}

TEST_CASE("genus one, one marked point") {
  auto M = build(r_genus1, alg_sl2());
  CHECK(M.edge_sites.size() == 2);
  CHECK(M.surface.alive_vertices() == 1);
  CHECK(M.copies.size() == 1);
  auto an = analyze(M.surface);
  CHECK(an.genus == std::vector<int>{1});
  CHECK(quasi_poisson_identity(M, 81, 3));
  Rng rng(82);
  for (int k = 0; k < 3; ++k) {
    auto p = random_point(M.layout(), rng);
    CHECK(check_centrality(M, p).ok());
    auto lr = leaf_ranks(M, p);
    CHECK(lr.sum_identity);
    CHECK(lr.rank_TL == lr.rank_TR);
  }
}
