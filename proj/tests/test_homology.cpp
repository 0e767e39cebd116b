#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qpv/homology.hpp"
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

// invariant-calculus sigma evaluated at p, in pairing (row = first argument) order
Mat ref_sigma(const ModuliSpace& M, const GroupPoint& p) {
  return evaluate_at(M.layout(), M.sigma(), p).as_matrix().transpose();
}

std::vector<int> split_signs(const MarkedSurface& s, int flip) {
  std::vector<int> split(s.verts.size(), 0);
  for (size_t v = 0; v < s.verts.size(); ++v)
    if (s.verts[v].alive) split[v] = flip * s.verts[v].sign;
  return split;
}

bool is_zero(const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!(m.at(i, j) == Rat(0))) return false;
  return true;
}

}  // namespace

TEST_CASE("intersection pairing matches the invariant-calculus sigma") {
  const SurfaceRecipe* suite[] = {&r_disk,  &r_three, &r_annulus,
                                  &r_square, &r_pants, &r_genus1};
  for (const SurfaceRecipe* r : suite) {
    ModuliSpace M = build(*r, alg_sl2());
    for (unsigned seed : {97u, 7u, 12345u}) {
      Rng rng(seed);
      GroupPoint p = random_point(M.layout(), rng);
      LocalSystem L = local_system(M.alg, M.surface, p);
      CHECK(intersection_sigma(M.surface, L) == ref_sigma(M, p));
    }
  }
}

TEST_CASE("pairing over gl2 agrees as well") {
  ModuliSpace M = build(r_annulus, alg_gl2());
  Rng rng(5);
  GroupPoint p = random_point(M.layout(), rng);
  LocalSystem L = local_system(M.alg, M.surface, p);
  CHECK(intersection_sigma(M.surface, L) == ref_sigma(M, p));
}

TEST_CASE("sign conventions are pinned: every other knob setting fails") {
  ModuliSpace M = build(r_annulus, alg_sl2());
  ModuliSpace Mg = build(r_genus1, alg_sl2());
  for (ModuliSpace* Mp : {&M, &Mg}) {
    Rng rng(97);
    GroupPoint p = random_point(Mp->layout(), rng);
    Mat S = ref_sigma(*Mp, p);
    LocalSystem L = local_system(Mp->alg, Mp->surface, p);
    for (int dp : {1, -1})
      for (int ti : {0, 1})
        for (int gs : {1, -1}) {
          bool match = intersection_sigma(Mp->surface, L,
                                          IntersectionOptions{dp, ti, gs}) == S;
          CHECK(match == (dp == 1 && ti == 0 && gs == 1));
        }
  }
}

TEST_CASE("flipping the split transposes and negates the pairing") {
  for (const SurfaceRecipe* r : {&r_annulus, &r_square, &r_genus1}) {
    ModuliSpace M = build(*r, alg_sl2());
    Rng rng(11);
    GroupPoint p = random_point(M.layout(), rng);
    LocalSystem L = local_system(M.alg, M.surface, p);
    Mat a = intersection_sigma(M.surface, L, split_signs(M.surface, 1), {});
    Mat b = intersection_sigma(M.surface, L, split_signs(M.surface, -1), {});
    CHECK(b == a.transpose().scaled(Rat(-1)));
  }
}

TEST_CASE("skew part recovers the bivector and is split independent") {
  for (const SurfaceRecipe* r : {&r_annulus, &r_pants, &r_genus1}) {
    ModuliSpace M = build(*r, alg_sl2());
    Rng rng(23);
    GroupPoint p = random_point(M.layout(), rng);
    Mat P = evaluate_at(M.layout(), M.pi, p).as_matrix().transpose();
    LocalSystem L = local_system(M.alg, M.surface, p);
    Mat k1 = skew_pi(M.surface, L);
    CHECK(k1 == P);
    CHECK(k1 == skew_pi(M.surface, L, split_signs(M.surface, -1), {}));
    CHECK(k1.transpose() == k1.scaled(Rat(-1)));
  }
}

TEST_CASE("boundary rows span the left kernel of the pairing") {
  // arc count |L|*dim plus invariant coefficients on uncut circles
  struct Case {
    const SurfaceRecipe* r;
    int left_arcs;
    int uncut;
  } cases[] = {{&r_disk, 1, 0},  {&r_three, 1, 0},  {&r_annulus, 1, 1},
               {&r_square, 2, 0}, {&r_pants, 1, 2}, {&r_genus1, 0, 0}};
  for (const Case& c : cases) {
    ModuliSpace M = build(*c.r, alg_sl2());
    Rng rng(41);
    GroupPoint p = random_point(M.layout(), rng);
    Mat S = ref_sigma(M, p);
    LocalSystem L = local_system(M.alg, M.surface, p);
    Mat R = annihilator_image(M.surface, L);
    CHECK(is_zero(R * S));
    CHECK(R.rank() == S.rows() - S.rank());
    // a random regular semisimple holonomy on an uncut circle fixes a line
    CHECK(R.rank() == c.left_arcs * M.alg.dim + c.uncut);
  }
}

TEST_CASE("edge transport composes along words") {
  ModuliSpace M = build(r_pants, alg_sl2());
  Rng rng(3);
  GroupPoint p = random_point(M.layout(), rng);
  LocalSystem L = local_system(M.alg, M.surface, p);
  std::vector<std::pair<int, int>> w = {{0, 1}, {2, -1}, {1, 1}, {0, -1}};
  Mat expect = Mat::identity(M.alg.dim);
  for (auto [e, exp] : w) {
    Mat T = L.transport_edge(e);
    expect = (exp == 1 ? T : T.inverse().value()) * expect;
  }
  CHECK(L.transport_word(w) == expect);
  std::vector<std::pair<int, int>> cancel = {{1, 1}, {1, -1}};
  CHECK(L.transport_word(cancel) == Mat::identity(M.alg.dim));
}

TEST_CASE("degenerate t is rejected by the annihilator construction") {
  QuadraticLieAlgebra a = alg_sl2();
  a.t = Mat(a.dim, a.dim);  // zero pairing
  ModuliSpace M = build(r_annulus, alg_sl2());
  Rng rng(9);
  GroupPoint p = random_point(M.layout(), rng);
  LocalSystem L = local_system(a, M.surface, p);
  CHECK_THROWS_AS(annihilator_image(M.surface, L), std::invalid_argument);
}
