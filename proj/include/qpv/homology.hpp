#pragma once

#include "qpv/invcalc.hpp"
#include "qpv/surface.hpp"

namespace qpv {

// Flat g*-coefficient system on a marked surface: one holonomy per edge,
// coefficients based at the edge tail, transported by the coadjoint action.
struct LocalSystem {
  const QuadraticLieAlgebra* alg = nullptr;
  std::vector<int> edge_sites;  // site -> edge id, ascending
  std::vector<Mat> holonomy;    // per site

  int site_of_edge(int e) const;
  Mat ad_star(const Mat& g) const;  // matrix of the coadjoint action on g*
  Mat transport_edge(int e) const;  // tail -> head
  // Transport along a traversal word (tail->head steps for exponent +1).
  Mat transport_word(const std::vector<std::pair<int, int>>& w) const;
};

LocalSystem local_system(const QuadraticLieAlgebra& alg, const MarkedSurface& s,
                         const GroupPoint& p);

// Sign conventions of the shifted intersection pairing.  The defaults are
// locked against the invariant-calculus sigma (see docs/conventions.md); the
// knobs stay visible so the golden tests can show the lock is tight.
struct IntersectionOptions {
  int dir_plus = 1;       // shift direction of + points around their vertex
  int transport_inv = 0;  // 1: transport by the inverse holonomy
  int global_sign = 1;
};

// Pairing matrix on (g*)^E: first argument fixed, second argument's
// endpoints shifted off the marked points by the split directions.
Mat intersection_sigma(const MarkedSurface& s, const LocalSystem& L,
                       const std::vector<int>& split_of_vertex,
                       const IntersectionOptions& opt = {});
// Split taken from the vertex signs.
Mat intersection_sigma(const MarkedSurface& s, const LocalSystem& L,
                       const IntersectionOptions& opt = {});

// Skew part (sigma(split) + sigma(-split))/2; independent of the split.
Mat skew_pi(const MarkedSurface& s, const LocalSystem& L,
            const std::vector<int>& split_of_vertex, const IntersectionOptions& opt = {});
Mat skew_pi(const MarkedSurface& s, const LocalSystem& L, const IntersectionOptions& opt = {});

// Rows spanning the boundary-supported subspace: left-arc cycles plus
// uncut-circle cycles with holonomy-invariant coefficients.  Equals the left
// kernel of intersection_sigma when t is nondegenerate.
Mat annihilator_image(const MarkedSurface& s, const LocalSystem& L);

}  // namespace qpv
