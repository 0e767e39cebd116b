#pragma once

#include "qpv/moduli.hpp"

namespace qpv {

// Rows: the evaluated action vector fields rho(u_i) at p, one per basis
// element of the acting algebra (or per row of `vectors` in the overload).
Mat action_rows(const ModuliSpace& M, const GroupPoint& p);
Mat action_rows(const ModuliSpace& M, const GroupPoint& p, const Mat& vectors);

// Columns: covectors annihilating every row of `tangent_rows`.
Mat annihilating_covectors(const Mat& tangent_rows);

// Pointwise reduction data shared by the reduction operations.  `cotangent`
// columns are covectors of M at the base point; `matrix` is the bivector on
// that basis; `dimension` counts the basis after quotienting out the
// recorded kernel directions.
struct ReducedPointData {
  Mat cotangent;  // m x a, columns = invariant covector basis
  Mat matrix;     // a x a bivector matrix on the basis
  int dimension = 0;
  bool skew_ok = false;
  bool pi_sigma_agree = false;     // pi and sigma coincide on the basis
  bool phi_mod_vanishes = false;   // image of phi in wedge^3(d/c) is zero
};

// Bivector (= sigma) on the c-invariant covectors at p.  Throws
// std::invalid_argument("not coisotropic") when c fails the coisotropy test.
ReducedPointData reduced_bivector_at(const ModuliSpace& M, const Subalgebra& c,
                                     const GroupPoint& p);

// A central pair: moduli space plus the left/right central boundary words.
struct CentralPairModel {
  const ModuliSpace* M = nullptr;
  std::vector<HolonomyWord> mu_L, mu_R;
  std::vector<HolonomyWord> uncut;  // uncut-circle words (class constraints)
};
// Words taken from the boundary; centrality verified at a seeded point.
CentralPairModel make_central_pair(const ModuliSpace& M, std::uint64_t seed);

// One point-level reduction instance: the base point plus which boundary
// words are constrained.  Left/right words are constrained to the c-orbit of
// their value; class words to the full conjugacy class of their value.
struct ConstraintInstance {
  GroupPoint p;
  bool use_left = true;
  bool use_right = true;
  std::vector<int> uncut_select;  // indices into CentralPairModel::uncut
};

struct CentralReduction {
  bool transverse = false;
  int rank_obtained = 0;   // rank of (joint differential image + orbit tangents)
  int rank_needed = 0;     // dim of the joint target tangent
  bool conormals_in_kernel = false;  // pulled-back conormals are Casimir
  ReducedPointData data;   // on the c-invariant covectors
  Mat conormals;           // m x k columns inside data.cotangent's span
  Mat reduced_matrix;      // bivector on a complement of the conormals
  int reduced_dim = 0;
  bool reduced_nondegenerate = false;
};
// Throws "transversality fails at p" (with the rank certificate in the
// returned struct when throwing is suppressed by `require_transverse`).
CentralReduction central_reduction_at(const CentralPairModel& pair, const Subalgebra& c,
                                      const ConstraintInstance& inst,
                                      bool require_transverse = true);

struct LeafCheck {
  bool split_symplectic = false;  // T^big = TM and Lagrangian leaf stabilizers
  bool c_lagrangian = false;
  bool hypotheses_ok = false;     // quadratic identity and V_L cap ker f = 0
  Mat kernel_formula;             // canonical rows
  Mat kernel_oracle;
  bool formula_equals_oracle = false;
  int reduced_dim = 0;
  bool nondegenerate = false;     // reduced skew form has full rank
};
// Kernel of sigma on the c-invariant covectors, by the direct-sum formula
// and by brute-force nullspace.  Throws on named hypothesis failures.
LeafCheck symplectic_leaf_check(const CentralPairModel& pair, const Subalgebra& c,
                                const GroupPoint& p);

struct PartialReduction {
  Mat cotangent;        // h-invariant covectors at p
  Mat matrix;           // bivector on them
  Mat residual_action;  // rows: the residual c/h action vectors at p
  DescendData descended;
  bool skew_ok = false;
  // [pi,pi](a,b,c) = 2 phi'(f a, f b, f c) on the h-invariant covectors
  bool quasi_jacobi_ok = false;
};
PartialReduction partial_reduction_at(const ModuliSpace& M, const Subalgebra& c,
                                      const Subalgebra& h, const GroupPoint& p);

struct FusionCheck {
  bool on_fibre = false;         // the point satisfies mu_R = nu_L
  bool transverse = false;
  bool identity_ok = false;      // sigma(mu_R* g - nu_L* g, .) = 0
  bool outer_central = false;    // mu_L left, nu_R right central on the fusion
};
// Evaluated sigma of the fusion at p: sigma of the product plus the cross
// coupling of the two factors' copies through t.
Mat fused_sigma_matrix(const ModuliSpace& M, std::pair<int, int> factor1,
                       std::pair<int, int> factor2, const GroupPoint& p);
// `M` is the unfused product moduli of the two factors.  `factor1` and
// `factor2` give each factor's (plus, minus) marked vertices; the fused
// sigma couples the second factor's copies with the first factor's
// opposite-sign copies through t.  Checks the fibre-product identities at p.
FusionCheck fuse_central_pairs(const ModuliSpace& M,
                               std::pair<int, int> factor1, std::pair<int, int> factor2,
                               const HolonomyWord& mu_R, const HolonomyWord& nu_L,
                               const std::vector<HolonomyWord>& outer_L,
                               const std::vector<HolonomyWord>& outer_R,
                               const GroupPoint& p);

// Kernel of the restricted skew pairing on a doubled space U + U', by the
// direct-sum formula and by brute-force nullspace.
struct PropA1Result {
  bool lagrangian_ok = false;
  Mat formula;  // canonical rows
  Mat oracle;
  bool agree = false;
};
// `pairing`: n x n matrix of <u, beta>; `L_rows`: rows in K^{2n}.
// Throws std::invalid_argument("L not Lagrangian").
PropA1Result prop_a1_kernel(int U_dim, const Mat& pairing, const Mat& L_rows);

struct PropA2Result {
  bool quadratic_ok = false;   // sigma(v,v) = t(f v, f v)/2
  bool vl_ker_f_ok = false;    // V_L cap ker f = 0
  bool c_lagrangian = false;
  // Image of the preimage of C inside V/V_L + V/V_R must be Lagrangian for
  // the doubled symmetric pairing; generic (sigma, t, f, C) can violate this
  // even when the other hypotheses hold, and the formula then fails.
  bool image_lagrangian = false;
  Mat formula;  // canonical rows
  Mat oracle;
  bool agree = false;
};
// Throws naming the violated hypothesis.
PropA2Result prop_a2_kernel(const Mat& sigma, const Mat& t, const Mat& f, const Mat& C_rows);

}  // namespace qpv
