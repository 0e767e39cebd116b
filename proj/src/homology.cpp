#include "qpv/homology.hpp"

#include <stdexcept>

namespace qpv {

int LocalSystem::site_of_edge(int e) const {
  for (size_t s = 0; s < edge_sites.size(); ++s)
    if (edge_sites[s] == e) return static_cast<int>(s);
  throw std::invalid_argument("LocalSystem: edge not alive");
}

Mat LocalSystem::ad_star(const Mat& g) const {
  int n = alg->dim;
  Mat A(n, n);  // Ad_{g^-1} columnwise, then transpose: <Ad* xi, u> = <xi, Ad_{g^-1} u>
  Mat gi = g.inverse().value();
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(static_cast<size_t>(n), Rat(0));
    e[static_cast<size_t>(i)] = 1;
    std::vector<Rat> v = alg->Ad(gi, e);
    for (int j = 0; j < n; ++j) A.at(i, j) = v[static_cast<size_t>(j)];
  }
  return A;  // row i = coords of Ad_{g^-1} e_i, i.e. the transposed Ad matrix
}

Mat LocalSystem::transport_edge(int e) const { return ad_star(holonomy[static_cast<size_t>(site_of_edge(e))]); }

Mat LocalSystem::transport_word(const std::vector<std::pair<int, int>>& w) const {
  int n = alg->dim;
  Mat C = Mat::identity(n);
  for (auto [e, exp] : w) {
    Mat T = transport_edge(e);
    C = (exp == 1 ? T : T.inverse().value()) * C;
  }
  return C;
}

LocalSystem local_system(const QuadraticLieAlgebra& alg, const MarkedSurface& s,
                         const GroupPoint& p) {
  LocalSystem L;
  L.alg = &alg;
  for (int e = 0; e < s.edges; ++e)
    if (s.edge_alive[static_cast<size_t>(e)]) L.edge_sites.push_back(e);
  if (p.site.size() != L.edge_sites.size())
    throw std::invalid_argument("local_system: point/edge count mismatch");
  L.holonomy = p.site;
  return L;
}

Mat intersection_sigma(const MarkedSurface& s, const LocalSystem& L,
                       const std::vector<int>& split_of_vertex, const IntersectionOptions& opt) {
  int dim = L.alg->dim;
  int m = static_cast<int>(L.edge_sites.size()) * dim;
  Mat out(m, m);
  auto add_block = [&](int sa, int sb, const Mat& B, const Rat& c) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out.at(sa * dim + i, sb * dim + j) += c * B.at(i, j);
  };
  auto end_transport = [&](int h) {
    return s.head_end(h) ? (opt.transport_inv
                                ? L.transport_edge(s.edge_of(h)).inverse().value()
                                : L.transport_edge(s.edge_of(h)))
                         : Mat::identity(dim);
  };

  auto dir_of = [&](int v) {
    if (!s.verts[static_cast<size_t>(v)].marked)
      throw std::invalid_argument("intersection_sigma: unmarked vertex");
    return split_of_vertex[static_cast<size_t>(v)] == 1 ? opt.dir_plus : -opt.dir_plus;
  };

  // All crossings live inside the vertex discs once the second argument's
  // parallel copy runs on a fixed side of its edge: chord crossings between
  // the first chain's rays (to the marked corner point) and the shifted
  // chain's rays (attachment displaced a quarter step, endpoint at the
  // shifted corner point).  Rays are directed by the edge orientation, which
  // flips the sign at tail ends; same-end pairs resolve by the displacement.
  for (size_t v = 0; v < s.verts.size(); ++v) {
    if (!s.verts[v].alive) continue;
    int dir = dir_of(static_cast<int>(v));
    const auto& fan = s.verts[v].fan;
    int K = static_cast<int>(fan.size());
    int mod = 4 * (K + 1);  // positions scaled by 4 to fit the quarter shifts
    auto in_open_arc = [&](int x, int a, int b) {
      int xa = ((x - a) % mod + mod) % mod;
      int ba = ((b - a) % mod + mod) % mod;
      return xa > 0 && xa < ba;
    };
    int vpos = 4 * K;
    int vhat = (vpos + dir + mod) % mod;
    for (int pa = 0; pa < K; ++pa)
      for (int pb = 0; pb < K; ++pb) {
        bool head_a = s.head_end(fan[static_cast<size_t>(pa)]);
        bool head_b = s.head_end(fan[static_cast<size_t>(pb)]);
        int A = head_a ? 4 * pa : vpos;
        int B = head_a ? vpos : 4 * pa;
        int base = (4 * pb + (head_b ? -1 : 1) + mod) % mod;
        int C = head_b ? base : vhat;
        int D = head_b ? vhat : base;
        bool cin = in_open_arc(C, A, B), din = in_open_arc(D, A, B);
        if (cin == din) continue;  // chords disjoint
        int eps = cin ? 1 : -1;    // crossing order A,C,B,D is positive
        Mat Aa = end_transport(fan[static_cast<size_t>(pa)]);
        Mat Ab = end_transport(fan[static_cast<size_t>(pb)]);
        Mat Blk = Aa.transpose() * L.alg->t * Ab;
        add_block(L.site_of_edge(s.edge_of(fan[static_cast<size_t>(pa)])),
                  L.site_of_edge(s.edge_of(fan[static_cast<size_t>(pb)])), Blk,
                  Rat(eps * opt.global_sign));
      }
  }
  return out;
}

namespace {
std::vector<int> sign_split(const MarkedSurface& s) {
  std::vector<int> split(s.verts.size(), 0);
  for (size_t v = 0; v < s.verts.size(); ++v)
    if (s.verts[v].alive) split[v] = s.verts[v].sign;
  return split;
}
}  // namespace

Mat intersection_sigma(const MarkedSurface& s, const LocalSystem& L,
                       const IntersectionOptions& opt) {
  return intersection_sigma(s, L, sign_split(s), opt);
}

Mat skew_pi(const MarkedSurface& s, const LocalSystem& L, const std::vector<int>& split_of_vertex,
            const IntersectionOptions& opt) {
  std::vector<int> flip = split_of_vertex;
  for (auto& x : flip) x = -x;
  // flipping the split swaps the arguments and the crossing orientations,
  // so the opposite-split pairing is minus the transpose of the original
  Mat a = intersection_sigma(s, L, split_of_vertex, opt);
  Mat b = intersection_sigma(s, L, flip, opt);
  return (a + b).scaled(Rat(1, 2));
}

Mat skew_pi(const MarkedSurface& s, const LocalSystem& L, const IntersectionOptions& opt) {
  return skew_pi(s, L, sign_split(s), opt);
}

Mat annihilator_image(const MarkedSurface& s, const LocalSystem& L) {
  if (L.alg->t.rank() != L.alg->dim)
    throw std::invalid_argument("annihilator_image: degenerate t");
  int dim = L.alg->dim;
  int m = static_cast<int>(L.edge_sites.size()) * dim;
  SurfaceAnalysis an = analyze(s);

  std::vector<std::vector<Rat>> rows;
  // chain of a boundary word carrying the covectors of `basis` (columns)
  auto push_word = [&](const std::vector<std::pair<int, int>>& w, const Mat& basis) {
    for (int c = 0; c < basis.cols(); ++c) {
      std::vector<Rat> row(static_cast<size_t>(m), Rat(0));
      Mat C = Mat::identity(dim);
      for (auto [e, exp] : w) {
        if (exp == -1) C = L.transport_edge(e).inverse().value() * C;
        int off = L.site_of_edge(e) * dim;
        for (int i = 0; i < dim; ++i) {
          Rat val = 0;
          for (int j = 0; j < dim; ++j) val += C.at(i, j) * basis.at(j, c);
          row[static_cast<size_t>(off + i)] += Rat(exp) * val;
        }
        if (exp == 1) C = L.transport_edge(e) * C;
      }
      rows.push_back(row);
    }
  };

  for (const auto& a : an.arcs)
    if (a.kind == ArcKind::left) push_word(a.word, Mat::identity(dim));
  for (const auto& c : an.circles) {
    if (!c.uncut) continue;
    Mat hol = L.transport_word(c.word);
    Mat inv = (hol - Mat::identity(dim)).nullspace();  // invariant coefficients
    if (inv.cols() > 0) push_word(c.word, inv);
  }
  if (rows.empty()) return Mat(0, m);
  return row_space_canon(Mat::from_rows(rows));
}

}  // namespace qpv
