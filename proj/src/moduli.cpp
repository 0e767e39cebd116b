#include "qpv/moduli.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpv {

namespace {

bool mat_is_zero(const Mat& A) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A.at(i, j) != 0) return false;
  return true;
}

Rat trace_prod(const Mat& P, const Mat& D) {
  Rat s = 0;
  for (int a = 0; a < P.rows(); ++a)
    for (int c = 0; c < P.cols(); ++c) s += P.at(a, c) * D.at(c, a);
  return s;
}

// Linear substitution on generators; images are degree-1 multivectors over
// the target layout.  Extended to higher degrees by wedge.
MultiVec substitute(const MultiVec& a, const std::vector<MultiVec>& image) {
  MultiVec out(a.degree());
  for (const auto& [ids, coeff] : a.terms()) {
    MultiVec prod;
    bool first = true;
    for (int id : ids) {
      prod = first ? image[static_cast<size_t>(id)]
                   : MultiVec::wedge(prod, image[static_cast<size_t>(id)]);
      first = false;
    }
    out = out + prod.scaled(coeff);
  }
  return out;
}

}  // namespace

int ModuliSpace::site_of_edge(int e) const {
  for (size_t s = 0; s < edge_sites.size(); ++s)
    if (edge_sites[s] == e) return static_cast<int>(s);
  throw std::invalid_argument("site_of_edge: edge not alive");
}

int ModuliSpace::copy_at(int vertex) const {
  for (size_t i = 0; i < copies.size(); ++i)
    if (copies[i].vertex == vertex) return static_cast<int>(i);
  return -1;
}

QuadraticLieAlgebra ModuliSpace::acting_algebra() const {
  if (copies.empty()) throw std::logic_error("acting_algebra: no copies");
  QuadraticLieAlgebra d;
  bool first = true;
  for (const auto& c : copies) {
    QuadraticLieAlgebra part = c.sign > 0 ? alg : bar(alg);
    d = first ? part : compose(d, part, ComposeMode::direct_sum);
    first = false;
  }
  return d;
}

Action ModuliSpace::full_action() const {
  Action rho;
  for (const auto& c : copies) rho.insert(rho.end(), c.rho.begin(), c.rho.end());
  return rho;
}

AlgTensor ModuliSpace::acting_t() const {
  int n = alg.dim;
  int nd = n * static_cast<int>(copies.size());
  AlgTensor T(nd, 2, AlgTensor::Sym::symmetric);
  for (size_t k = 0; k < copies.size(); ++k) {
    int off = static_cast<int>(k) * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        T.at({off + i, off + j}) = alg.t.at(i, j) * copies[k].sign;
  }
  return T;
}

GenTensor ModuliSpace::sigma() const { return sigma_of(pi, full_action(), acting_t()); }

void internal_fusion(ModuliSpace& M, int a, int b) {
  if (a < 0 || b < 0 || a == b || a >= static_cast<int>(M.copies.size()) ||
      b >= static_cast<int>(M.copies.size()))
    throw std::invalid_argument("internal_fusion: bad copy indices");
  ActingCopy& ca = M.copies[static_cast<size_t>(a)];
  ActingCopy& cb = M.copies[static_cast<size_t>(b)];
  if (ca.sign != cb.sign) throw std::invalid_argument("internal_fusion: incompatible copies");
  Mat ts = M.alg.t.scaled(Rat(ca.sign));
  M.pi = M.pi + action_wedge(ca.rho, cb.rho, ts).scaled(Rat(-1, 2));
  for (int i = 0; i < M.alg.dim; ++i) ca.rho[static_cast<size_t>(i)] =
      ca.rho[static_cast<size_t>(i)] + cb.rho[static_cast<size_t>(i)];
  M.copies.erase(M.copies.begin() + b);
}

namespace {

// Gauge fix after dropping the copy at vertex xv: contract one incident
// non-loop edge and rewrite all stored multivectors through the slice
// identification.  Both chiralities of the contracted site map to minus the
// unmarked vertex's residual action, which reattaches x's other ends to the
// far vertex with the standard end rule.
void gauge_fix_forget(ModuliSpace& M, int xv) {
  std::vector<int> fan = M.surface.verts[static_cast<size_t>(xv)].fan;
  int e0 = M.surface.contract_unmarked(xv);
  int h0x = -1;
  for (int h : fan)
    if (M.surface.edge_of(h) == e0) h0x = h;
  int eps_x = M.surface.head_end(h0x) ? -1 : 1;

  Layout oldly = M.layout();
  std::vector<int> new_sites;
  for (int e : M.edge_sites)
    if (e != e0) new_sites.push_back(e);
  Layout newly{&M.alg, static_cast<int>(new_sites.size())};
  auto new_site_of = [&](int e) {
    for (size_t s = 0; s < new_sites.size(); ++s)
      if (new_sites[s] == e) return static_cast<int>(s);
    throw std::logic_error("gauge_fix_forget: dead edge");
  };

  int dim = M.alg.dim;
  std::vector<MultiVec> resid(static_cast<size_t>(dim), MultiVec(1));
  for (int h : fan) {
    if (h == h0x) continue;
    int ns = new_site_of(M.surface.edge_of(h));
    bool head = M.surface.head_end(h);
    for (int i = 0; i < dim; ++i)
      resid[static_cast<size_t>(i)].add_term({gen_id(newly, Gen{ns, head ? 1 : 0, i})},
                                             Rat(head ? -1 : 1));
  }

  std::vector<MultiVec> image(static_cast<size_t>(oldly.gens()));
  for (int id = 0; id < oldly.gens(); ++id) {
    Gen g = gen_of(oldly, id);
    int e = M.edge_sites[static_cast<size_t>(g.site)];
    if (e == e0) {
      image[static_cast<size_t>(id)] = resid[static_cast<size_t>(g.idx)].scaled(Rat(-eps_x));
    } else {
      MultiVec one(1);
      one.add_term({gen_id(newly, Gen{new_site_of(e), g.chir, g.idx})}, Rat(1));
      image[static_cast<size_t>(id)] = one;
    }
  }

  M.pi = substitute(M.pi, image);
  for (auto& c : M.copies)
    for (auto& r : c.rho) r = substitute(r, image);
  M.edge_sites = new_sites;
}

}  // namespace

ModuliSpace build(const SurfaceRecipe& recipe, const QuadraticLieAlgebra& alg) {
  if (!alg.has_model()) throw std::invalid_argument("build: algebra needs a matrix model");
  ModuliSpace M;
  M.surface = MarkedSurface::disjoint_disks(recipe.disks);
  M.alg = alg;
  M.pi = MultiVec(2);
  for (int d = 0; d < recipe.disks; ++d) {
    M.edge_sites.push_back(d);
    ActingCopy plus{M.surface.vert_of_half[static_cast<size_t>(M.surface.half_tail(d))], 1, {}};
    ActingCopy minus{M.surface.vert_of_half[static_cast<size_t>(M.surface.half_head(d))], -1, {}};
    Layout ly{&alg, recipe.disks};
    for (int i = 0; i < alg.dim; ++i) {
      MultiVec l(1), r(1);
      l.add_term({gen_id(ly, Gen{d, 0, i})}, Rat(1));
      r.add_term({gen_id(ly, Gen{d, 1, i})}, Rat(-1));
      plus.rho.push_back(l);
      minus.rho.push_back(r);
    }
    M.copies.push_back(plus);
    M.copies.push_back(minus);
  }
  for (const auto& step : recipe.steps) {
    if (step.op == RecipeStep::Op::glue) {
      int vx = M.surface.vertex_of_point(step.x);
      int vy = M.surface.vertex_of_point(step.y);
      M.surface.corner_glue(step.x, step.y);
      internal_fusion(M, M.copy_at(vx), M.copy_at(vy));
    } else {
      int xv = M.surface.vertex_of_point(step.x);
      M.surface.forget_point(step.x);
      int ci = M.copy_at(xv);
      if (ci < 0) throw std::logic_error("build: forgotten vertex has no copy");
      M.copies.erase(M.copies.begin() + ci);
      gauge_fix_forget(M, xv);
    }
  }
  return M;
}

CentralMaps central_maps(const ModuliSpace& M) {
  CentralMaps cm;
  SurfaceAnalysis an = analyze(M.surface);
  for (const auto& a : an.arcs) {
    if (a.kind == ArcKind::left) cm.mu_L.push_back(a.word);
    else if (a.kind == ArcKind::right) cm.mu_R.push_back(a.word);
  }
  for (const auto& c : an.circles)
    if (c.uncut) cm.uncut.push_back(c.word);
  return cm;
}

Mat word_holonomy(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p) {
  int n = M.alg.model_size();
  // paths compose like maps: a later step multiplies from the left
  Mat W = Mat::identity(n);
  for (auto [e, eps] : w) {
    const Mat& g = p.site[static_cast<size_t>(M.site_of_edge(e))];
    W = (eps == 1 ? g : g.inverse().value()) * W;
  }
  return W;
}

Mat word_differential(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p) {
  int n = M.alg.model_size();
  int dim = M.alg.dim;
  int m = static_cast<int>(M.edge_sites.size()) * dim;
  size_t len = w.size();
  // W = s_{len-1} ... s_0; before[k] = s_{k-1}...s_0, after[k] = s_{len-1}...s_{k+1}
  std::vector<Mat> steps(len), before(len + 1);
  before[0] = Mat::identity(n);
  for (size_t k = 0; k < len; ++k) {
    const Mat& g = p.site[static_cast<size_t>(M.site_of_edge(w[k].first))];
    steps[k] = w[k].second == 1 ? g : g.inverse().value();
    before[k + 1] = steps[k] * before[k];
  }
  std::vector<Mat> after(len + 1);
  after[len] = Mat::identity(n);
  for (size_t k = len; k-- > 0;) after[k] = after[k + 1] * steps[k];

  Mat out(n * n, m);
  for (size_t k = 0; k < len; ++k) {
    const Mat& g = p.site[static_cast<size_t>(M.site_of_edge(w[k].first))];
    int col0 = M.site_of_edge(w[k].first) * dim;
    for (int i = 0; i < dim; ++i) {
      // left frame: the site coordinate moves as g exp(s X); a negative
      // exponent differentiates the inverse.
      Mat mid = w[k].second == 1 ? g * M.alg.model[static_cast<size_t>(i)]
                                 : (M.alg.model[static_cast<size_t>(i)] * steps[k]).scaled(Rat(-1));
      Mat C = after[k + 1] * mid * before[k];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.at(a * n + b, col0 + i) += C.at(a, b);
    }
  }
  return out;
}

Mat class_function_differentials(const ModuliSpace& M, const HolonomyWord& w,
                                 const GroupPoint& p, int kmax) {
  int n = M.alg.model_size();
  int m = static_cast<int>(M.edge_sites.size()) * M.alg.dim;
  Mat W = word_holonomy(M, w, p);
  Mat D = word_differential(M, w, p);
  Mat out(kmax, m);
  Mat P = Mat::identity(n);  // W^{k-1}
  for (int k = 1; k <= kmax; ++k) {
    for (int j = 0; j < m; ++j) {
      Mat Dj(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Dj.at(a, b) = D.at(a * n + b, j);
      out.at(k - 1, j) = Rat(k) * trace_prod(P, Dj);
    }
    P = P * W;
  }
  return out;
}

// evaluate_at fills components in the opposite slot order from the pairing
// sigma(alpha, beta); the transpose is the definitional matrix.
static Mat sigma_matrix(const ModuliSpace& M, const GroupPoint& p) {
  return evaluate_at(M.layout(), M.sigma(), p).as_matrix().transpose();
}

CentralityReport check_centrality(const ModuliSpace& M, const GroupPoint& p) {
  Mat T = sigma_matrix(M, p);
  CentralMaps cm = central_maps(M);
  CentralityReport rep;
  rep.left_ok = rep.right_ok = true;
  for (const auto& w : cm.mu_L)
    if (!mat_is_zero(word_differential(M, w, p) * T)) rep.left_ok = false;
  for (const auto& w : cm.mu_R)
    if (!mat_is_zero(T * word_differential(M, w, p).transpose())) rep.right_ok = false;
  return rep;
}

namespace {

int centralizer_dim(const QuadraticLieAlgebra& alg, const Mat& g) {
  int n = alg.dim;
  Mat K(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(static_cast<size_t>(n), Rat(0));
    e[static_cast<size_t>(i)] = 1;
    std::vector<Rat> v = alg.Ad(g, e);
    for (int j = 0; j < n; ++j) K.at(j, i) = v[static_cast<size_t>(j)] - e[static_cast<size_t>(j)];
  }
  return n - K.rank();
}

int generic_centralizer_dim(const QuadraticLieAlgebra& alg) {
  Rng rng(0x6c656166u);
  int best = alg.dim;
  for (int k = 0; k < 5; ++k)
    best = std::min(best, centralizer_dim(alg, alg.random_group_element(rng)));
  return best;
}

Mat rho_rows(const ModuliSpace& M, const GroupPoint& p) {
  Layout ly = M.layout();
  int m = ly.sites * ly.dim();
  std::vector<std::vector<Rat>> rows;
  for (const auto& c : M.copies)
    for (const auto& r : c.rho) {
      PointTensor pt = evaluate_at(ly, r, p);
      std::vector<Rat> row(static_cast<size_t>(m));
      for (int j = 0; j < m; ++j) row[static_cast<size_t>(j)] = pt.at({j});
      rows.push_back(row);
    }
  return Mat::from_rows(rows);
}

}  // namespace

LeafRanks leaf_ranks(const ModuliSpace& M, const GroupPoint& p) {
  Layout ly = M.layout();
  int m = ly.sites * ly.dim();
  Mat T = sigma_matrix(M, p);
  LeafRanks lr;
  lr.rank_TL = T.rank();
  lr.rank_TR = T.transpose().rank();

  Mat TL = row_space_canon(T.transpose());  // column space of T, as rows
  Mat TR = row_space_canon(T);
  Mat A = rho_rows(M, p);
  lr.rank_action = A.rank();
  Mat big1 = row_space_sum(TL, A);
  Mat big2 = row_space_sum(TR, A);
  lr.sum_identity = same_row_space(big1, big2);
  lr.rank_Tbig = big1.rank();

  CentralMaps cm = central_maps(M);
  Mat cls(0, m);
  for (const auto& w : cm.uncut)
    cls = cls.vstack(class_function_differentials(M, w, p, M.alg.model_size()));
  lr.uncut_class_rank = cls.rows() ? cls.rank() : 0;

  int gmin = generic_centralizer_dim(M.alg);
  lr.generic = true;
  for (const auto& w : cm.uncut)
    if (centralizer_dim(M.alg, word_holonomy(M, w, p)) != gmin) lr.generic = false;
  lr.comparison_holds =
      lr.generic &&
      lr.rank_TL == m - static_cast<int>(cm.mu_L.size()) * ly.dim() - lr.uncut_class_rank;
  return lr;
}

LeafPairing sigma_inverse_on_leaves(const ModuliSpace& M, const GroupPoint& p, Rng& rng) {
  Mat T = sigma_matrix(M, p);
  Mat R1 = T;
  std::vector<int> piv_a = R1.rref();  // alpha choices: T alpha spans T^L
  Mat R2 = T.transpose();
  std::vector<int> piv_b = R2.rref();  // beta choices: T^t beta spans T^R

  // pairing of u = T alpha with v = T^t beta is <alpha, v> = <u, beta>,
  // which kills the preimage ambiguity on both sides
  int r = static_cast<int>(piv_a.size());
  int rc = static_cast<int>(piv_b.size());
  LeafPairing out;
  out.matrix = Mat(r, rc);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < rc; ++j)
      out.matrix.at(i, j) = T.at(piv_b[static_cast<size_t>(j)], piv_a[static_cast<size_t>(i)]);
  out.nondegenerate = r == rc && out.matrix.rank() == r;

  Mat kerL = T.nullspace();  // alpha freedom
  Mat kerR = T.transpose().nullspace();
  int m = T.rows();
  auto shifted = [&](int a, const Mat& ker) {
    std::vector<Rat> v(static_cast<size_t>(m), Rat(0));
    v[static_cast<size_t>(a)] = 1;
    for (int c = 0; c < ker.cols(); ++c) {
      Rat s = rng.small();
      for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] += s * ker.at(i, c);
    }
    return v;
  };
  out.choice_independent = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < rc; ++j) {
      std::vector<Rat> al = shifted(piv_a[static_cast<size_t>(i)], kerL);
      std::vector<Rat> be = shifted(piv_b[static_cast<size_t>(j)], kerR);
      std::vector<Rat> Ta = T.apply(al);
      Rat val = 0;
      for (int a = 0; a < m; ++a) val += be[static_cast<size_t>(a)] * Ta[static_cast<size_t>(a)];
      if (val != out.matrix.at(i, j)) out.choice_independent = false;
    }
  return out;
}

StabilizerReport left_stabilizer_check(const ModuliSpace& M, const GroupPoint& p) {
  CentralMaps cm = central_maps(M);
  int m = static_cast<int>(M.edge_sites.size()) * M.alg.dim;
  Mat J(0, m);
  for (const auto& w : cm.mu_L) J = J.vstack(word_differential(M, w, p));
  Mat P = rho_rows(M, p);  // dim d x m
  Mat K = J * P.transpose();
  Mat stab = K.nullspace();  // columns: stabilizer basis in d coordinates

  StabilizerReport rep;
  rep.dim_stab = stab.cols();
  QuadraticLieAlgebra d = M.acting_algebra();
  rep.half_dim = 2 * rep.dim_stab == d.dim;
  Subalgebra sub{&d, row_space_canon(stab.transpose())};
  CoisotropyReport cr = coisotropy_report(sub);
  rep.coisotropic = cr.is_coisotropic;
  rep.lagrangian = cr.is_lagrangian;
  return rep;
}

bool quasi_poisson_identity(const ModuliSpace& M, std::uint64_t seed, int npoints) {
  Layout ly = M.layout();
  MultiVec lhs = schouten(ly, M.pi, M.pi);
  QuadraticLieAlgebra d = M.acting_algebra();
  AlgTensor phi = cartan_trivector(d);
  Action rho = M.full_action();
  MultiVec rhs = action_extend(rho, phi).scaled(Rat(2));
  if (!equal_at_points(ly, lhs, rhs, seed, npoints)) return false;
  MultiVec zero(2);
  for (const auto& r : rho)
    if (!equal_at_points(ly, schouten(ly, r, M.pi), zero, seed + 1, npoints)) return false;
  return true;
}

}  // namespace qpv
