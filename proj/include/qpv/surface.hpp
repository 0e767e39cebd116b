#pragma once

#include <string>
#include <vector>

#include "qpv/rational.hpp"

namespace qpv {

// Oriented marked surface, represented by an embedded ribbon graph that is a
// deformation retract.  One edge per atomic disk; edge e owns half-edges 2e
// (tail end) and 2e+1 (head end).  Edges run from the + point of their disk
// (tail) to the - point (head).
//
// Each vertex stores its incident half-edges in counterclockwise order.  The
// list is anchored at the boundary corner carrying the marked point: that
// corner is the gap between fan.back() and fan.front().  Corner gluing and
// edge contraction splice fans in place, which keeps every surviving corner's
// identity stable.
struct MarkedSurface {
  struct Vertex {
    bool alive = false;
    int sign = 0;           // +1 or -1
    bool marked = false;
    std::vector<int> fan;   // half-edges, CCW, wrap gap = marked corner
  };

  int edges = 0;
  std::vector<bool> edge_alive;
  std::vector<int> vert_of_half;  // per half-edge; -1 when dead
  std::vector<Vertex> verts;
  // point naming: disk k has points "k+" (id 2k) and "k-" (id 2k+1)
  std::vector<int> point_vertex;  // point id -> current vertex, -1 once contracted away

  static MarkedSurface disjoint_disks(int k);

  int half_tail(int e) const { return 2 * e; }
  int half_head(int e) const { return 2 * e + 1; }
  int twin(int h) const { return h ^ 1; }
  int edge_of(int h) const { return h / 2; }
  bool head_end(int h) const { return (h & 1) != 0; }

  int point_id(const std::string& name) const;     // parses "k+"/"k-"
  int vertex_of_point(const std::string& name) const;
  int nextcc(int v, int h) const;                  // cyclic successor in the fan

  // Merge the marked corners of x and y (same sign, distinct vertices).
  void corner_glue(const std::string& x, const std::string& y);
  // Unmark x.  The surface is unchanged; arcs merge across the old corner.
  void forget_point(const std::string& x);
  // Remove an unmarked vertex by contracting one incident non-loop edge.
  // Returns the contracted edge.  Used by the moduli gauge fixing.
  int contract_unmarked(int v);

  int alive_edges() const;
  int alive_vertices() const;
  int chi() const { return alive_vertices() - alive_edges(); }
};

enum class ArcKind { left, right, neither };

struct Arc {
  int from_vertex;
  int to_vertex;
  std::vector<std::pair<int, int>> word;  // (edge, +-1) in traversal order
  ArcKind kind;
};

struct BoundaryCircle {
  std::vector<int> arrivals;   // arrival half-edges along the walk
  bool uncut;                  // no marked corner on this circle
  std::vector<std::pair<int, int>> word;  // traversal word (uncut circles)
};

struct SurfaceAnalysis {
  std::vector<BoundaryCircle> circles;
  std::vector<Arc> arcs;
  int uncut_count = 0;
  int chi = 0;
  int components = 0;
  std::vector<int> genus;  // per component
  int n_left = 0, n_right = 0, n_neither = 0;
  bool valid = false;      // every component marked; #left == #right
  std::string problem;
};

SurfaceAnalysis analyze(const MarkedSurface& s);

struct RecipeStep {
  enum class Op { glue, forget } op;
  std::string x, y;  // y unused for forget
};

struct SurfaceRecipe {
  int disks = 0;
  std::vector<RecipeStep> steps;
};

SurfaceRecipe recipe_from_json_text(const std::string& text);
std::string recipe_to_json_text(const SurfaceRecipe& r);
// Surface-level replay (forget = unmark; no contraction).
MarkedSurface replay(const SurfaceRecipe& r);

}  // namespace qpv
