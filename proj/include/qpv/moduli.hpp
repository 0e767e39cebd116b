#pragma once

#include "qpv/invcalc.hpp"
#include "qpv/surface.hpp"

namespace qpv {

// Holonomy word in edge generators: (edge, exponent) in traversal order; the
// holonomy is the left-to-right product of the edge matrices.
using HolonomyWord = std::vector<std::pair<int, int>>;

// One copy of the site algebra (or its bar) acting at a marked vertex.
struct ActingCopy {
  int vertex;  // surface vertex carrying this copy
  int sign;    // +1 plain, -1 barred (t negated)
  Action rho;  // one degree-1 multivector per basis element
};

// Moduli space of groupoid representations of a marked surface: one group
// coordinate per surviving edge.  pi is the fused bivector; the acting
// algebra is the direct sum of the copies.
struct ModuliSpace {
  MarkedSurface surface;  // forgotten vertices already contracted away
  QuadraticLieAlgebra alg;
  std::vector<int> edge_sites;  // site index -> edge id
  std::vector<ActingCopy> copies;
  MultiVec pi{2};

  Layout layout() const { return Layout{&alg, static_cast<int>(edge_sites.size())}; }
  int site_of_edge(int e) const;
  int copy_at(int vertex) const;  // index into copies; -1 if none

  QuadraticLieAlgebra acting_algebra() const;  // direct sum, bars applied
  Action full_action() const;                  // copies' rho concatenated
  AlgTensor acting_t() const;                  // block diagonal sign * t
  GenTensor sigma() const;
};

ModuliSpace build(const SurfaceRecipe& recipe, const QuadraticLieAlgebra& alg);

// Fuse copy b into copy a (same sign required): pi gains the wedge
// correction -1/2 (rho_a ^ rho_b)(sign * t) and the copies merge.
void internal_fusion(ModuliSpace& M, int a, int b);

struct CentralMaps {
  std::vector<HolonomyWord> mu_L, mu_R, uncut;
};
CentralMaps central_maps(const ModuliSpace& M);

Mat word_holonomy(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p);
// Rows: matrix entries (a,b) of the word holonomy, flattened; columns: the
// left-trivialized tangent coordinates of M at p.  Exact.
Mat word_differential(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p);
// Rows d tr(W^k), k = 1..kmax, in the same coordinates.
Mat class_function_differentials(const ModuliSpace& M, const HolonomyWord& w,
                                 const GroupPoint& p, int kmax);

struct CentralityReport {
  bool left_ok = false;   // sigma(d(mu_L entries), .) = 0
  bool right_ok = false;  // sigma(., d(mu_R entries)) = 0
  bool ok() const { return left_ok && right_ok; }
};
CentralityReport check_centrality(const ModuliSpace& M, const GroupPoint& p);

struct LeafRanks {
  int rank_TL = 0;
  int rank_TR = 0;
  int rank_Tbig = 0;
  int rank_action = 0;       // rank of rho(d) at the point
  int uncut_class_rank = 0;  // rank of d tr(hol^k) over the uncut circles
  bool sum_identity = false; // T^L + rho(d) = T^big = T^R + rho(d)
  bool generic = false;      // uncut holonomies have minimal centralizers
  bool comparison_holds = false;  // rank T^L = dim M - |L| dim g - class rank
};
LeafRanks leaf_ranks(const ModuliSpace& M, const GroupPoint& p);

struct LeafPairing {
  Mat matrix;  // pairing T^L x T^R through preimage covectors
  bool nondegenerate = false;
  bool choice_independent = false;  // stable under shifting preimages by kernels
};
LeafPairing sigma_inverse_on_leaves(const ModuliSpace& M, const GroupPoint& p, Rng& rng);

struct StabilizerReport {
  int dim_stab = 0;
  bool half_dim = false;
  bool coisotropic = false;
  bool lagrangian = false;
};
// Stabilizer of the image point under the induced action on the left target.
StabilizerReport left_stabilizer_check(const ModuliSpace& M, const GroupPoint& p);

// [pi,pi] = 2 rho^3(phi_d) and [rho(u),pi] = 0, at seeded points.
bool quasi_poisson_identity(const ModuliSpace& M, std::uint64_t seed, int npoints = 5);

}  // namespace qpv
