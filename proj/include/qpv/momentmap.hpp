#pragma once

#include "qpv/reduction.hpp"

namespace qpv {

// Manin pair (d, h) with a chosen Lagrangian complement.  The stored t matrix
// is the invariant element extended through rho^2; isotropy and duality use
// the pairing t^-1, so the dual basis satisfies (e^i, e_j) = delta_ij.  The
// cobracket and the trivector are the h* and h components of the bracket on
// h*.
struct ManinPair {
  const QuadraticLieAlgebra* d = nullptr;
  Mat h;       // rows e_i, a Lagrangian subalgebra
  Mat h_dual;  // rows e^i spanning the complement, dual-normalized
  AlgTensor delta_h;      // degree 3 over h: slice at last index k = delta(e_k)
  AlgTensor phi_h;        // degree 3 alternating over h
  AlgTensor tau;          // degree 2 alternating over d: sum e_i x e^i - t/2
  AlgTensor pairing_sum;  // sum_i e_i x e^i = t/2 + tau, over d
};

// Throws std::invalid_argument: "h not a subalgebra", "h not Lagrangian",
// "h_star not Lagrangian", "not complementary".
ManinPair manin_pair_data(const QuadraticLieAlgebra& d, const Mat& h_rows,
                          const Mat& h_star_rows);

// Standard pairs inside g (+) gbar (coordinates: plus copy then minus copy).
Mat diag_rows_of(const QuadraticLieAlgebra& g);         // rows (e_i, e_i)
Mat antidiag_complement(const QuadraticLieAlgebra& g);  // rows (t e_i, -t e_i)/2
// Bruhat complement of the diagonal in sl2 (+) sl2bar: pairs of an upper and
// a lower triangular matrix with opposite diagonal parts.  A subalgebra, so
// the pair is a Manin triple and restricted structures are Poisson.
Mat sl2_triple_complement();

// pi' = pi - rho^2(tau) together with the h-action, checked against the
// generalized quasi-Poisson identities at seeded points.
struct RestrictedStructure {
  MultiVec pi_prime{2};
  Action rho_h;
  bool jacobi_ok = false;        // [pi',pi']/2 = rho^3(phi_h)
  bool equivariance_ok = false;  // [rho(u),pi'] = -rho^2(delta_h(u)), u in h
  bool sigma_match = false;      // pi' + rho^2(sum e_i x e^i) = sigma
};
RestrictedStructure restrict_structure(const Layout& ly, const MultiVec& pi,
                                       const Action& rho_d, const GenTensor& sigma,
                                       const ManinPair& pair, std::uint64_t seed);
// Throws "algebra mismatch" when pair.d does not match the acting algebra.
RestrictedStructure restrict_structure(const ModuliSpace& M, const ManinPair& pair,
                                       std::uint64_t seed);

// Tangency of pi' to the left leaf through p and the single-leaf span
// condition: rho(h) and pi'(T*) together give exactly the leaf tangent.
struct LeafStructure {
  bool tangent = false;
  bool spans = false;
};
LeafStructure leaf_structure_check(const ModuliSpace& M, const ManinPair& pair,
                                   const MultiVec& pi_prime, const GroupPoint& p);

// Left-trivialized differential rows of the word holonomies at p, one block
// of alg.dim rows per word.
Mat moment_differential(const ModuliSpace& M, const std::vector<HolonomyWord>& mu,
                        const GroupPoint& p);

struct MomentCheck {
  bool stabilizer_coisotropic = false;
  bool moment_identity = false;  // (1 x mu_*)(pi') = -(rho x 1)(Z_N)
  bool sigma_invertible = false;  // sigma of the slice through p, group-valued case
  bool qham_identity = false;  // sym part of sigma^-1 = mu* s / 2; only when invertible
};
// Moment identity at p; when p lies on the slice mu_L^-1(1) and the slice
// sigma is invertible there, also the symmetric-part decomposition of its
// inverse.  Throws "stabilizer not coisotropic at mu(p)".
MomentCheck moment_condition_check(const ModuliSpace& M, const ManinPair& pair,
                                   const MultiVec& pi_prime,
                                   const std::vector<HolonomyWord>& mu_L,
                                   const std::vector<HolonomyWord>& mu, const GroupPoint& p);

// Point model of the slice X = mu_L^-1(1) with its moment map data.
struct SlicePointData {
  Mat basis;     // rows: tangent of the slice inside T_p M
  Mat pi_prime;  // bivector in slice coordinates
  Mat rho_h;     // rows: h-action in slice coordinates
  Mat mu_value;  // holonomy of the moment word at p
  Mat dmu;       // left-trivialized moment differential in slice coordinates
};
// Throws "point not on the slice", "pi_prime not tangent to the slice".
SlicePointData slice_at(const ModuliSpace& M, const ManinPair& pair,
                        const MultiVec& pi_prime, const std::vector<HolonomyWord>& mu_L,
                        const HolonomyWord& mu_R, const GroupPoint& p);

// The induced central pair over (G x G, G_diag) realized on G x X at the
// slice point: coordinates are g followed by the slice coordinates.
struct InducedPoint {
  Mat rho;    // rows over the d = g (+) gbar basis
  Mat pi;     // pi' extended by rho^2(tau)
  Mat sigma;  // pi + rho^2(t)/2
  Mat dmu_L;  // differential of the a-coordinate
  Mat dmu_R;  // differential of a . mu(y)
  bool left_central = false;
  bool right_central = false;
  bool slice_recovers = false;   // removing rho^2(tau) restores pi' on X
  bool moment_identity = false;  // the induced mu_R satisfies the moment identity
};
InducedPoint induce_central_pair(const QuadraticLieAlgebra& g, const SlicePointData& X);

// Round trip: slice an ambient central pair at p, induce, and compare with
// the ambient tangent data through the canonical identification T_p M =
// g (+) T_x X (the g part through d mu_L, the complement through the
// plus-copy action).
bool induced_matches(const ModuliSpace& M, const ManinPair& pair, const MultiVec& pi_prime,
                     const std::vector<HolonomyWord>& mu_L, const HolonomyWord& mu_R,
                     const GroupPoint& p);

// Fusion of two D/H-valued moment maps through the ambient fibre product:
// the fused slice lives in mu_L^-1(1) inside M1 x_{D/H} M2.
struct FusedMoment {
  Mat basis;     // rows: tangent of the fused slice in the product coordinates
  Mat pi_prime;  // fused sigma minus sum rho(e_i) x rho(e^i), full coordinates
  bool on_fibre = false;
  bool tangent = false;          // fused pi' is tangent to the fused slice
  bool moment_identity = false;  // for the outer right word
};
FusedMoment fuse_moment_maps(const ModuliSpace& M, std::pair<int, int> factor1,
                             std::pair<int, int> factor2, const HolonomyWord& mu_R,
                             const HolonomyWord& nu_L, const std::vector<HolonomyWord>& mu_L,
                             const HolonomyWord& nu_R, const ManinPair& outer_pair,
                             const Mat& outer_action_rows, const GroupPoint& p);

// Conjugate moment map: pi -> -pi turns sigma into its transpose, swapping
// left- and right-centrality; the conjugate slice sits over mu_R = 1.
SlicePointData conjugate_slice(const ModuliSpace& M, const ManinPair& pair,
                               const MultiVec& pi_prime, const HolonomyWord& mu_L,
                               const std::vector<HolonomyWord>& mu_R, const GroupPoint& p);

}  // namespace qpv
