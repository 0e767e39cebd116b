#include "qpv/reduction.hpp"

#include <stdexcept>

namespace qpv {

namespace {

// rows = first argument of the pairing
Mat eval2(const ModuliSpace& M, const GenTensor& T, const GroupPoint& p) {
  return evaluate_at(M.layout(), T, p).as_matrix().transpose();
}
Mat eval2(const ModuliSpace& M, const MultiVec& T, const GroupPoint& p) {
  return evaluate_at(M.layout(), T, p).as_matrix().transpose();
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Mat out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

bool is_zero(const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!(m.at(i, j) == Rat(0))) return false;
  return true;
}

std::vector<Rat> col_of(const Mat& m, int j) {
  std::vector<Rat> v(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) v[static_cast<size_t>(i)] = m.at(i, j);
  return v;
}

Mat flatten_rows(const std::vector<Mat>& mats) {
  std::vector<std::vector<Rat>> rows;
  for (const Mat& g : mats) {
    std::vector<Rat> r;
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) r.push_back(g.at(i, j));
    rows.push_back(r);
  }
  return Mat::from_rows(rows);
}

// bivector value matrix on a covector column basis
Mat form_on_basis(const Mat& P, const Mat& basis) {
  return basis.transpose() * P * basis;
}

bool skew(const Mat& m) { return m.transpose() == m.scaled(Rat(-1)); }

}  // namespace

Mat action_rows(const ModuliSpace& M, const GroupPoint& p) {
  Layout ly = M.layout();
  Action rho = M.full_action();
  std::vector<std::vector<Rat>> rows;
  for (const MultiVec& v : rho) rows.push_back(evaluate_at(ly, v, p).comp);
  return Mat::from_rows(rows);
}

Mat action_rows(const ModuliSpace& M, const GroupPoint& p, const Mat& vectors) {
  return vectors * action_rows(M, p);
}

Mat annihilating_covectors(const Mat& tangent_rows) { return tangent_rows.nullspace(); }

ReducedPointData reduced_bivector_at(const ModuliSpace& M, const Subalgebra& c,
                                     const GroupPoint& p) {
  CoisotropyReport rep = coisotropy_report(c);
  if (!rep.is_coisotropic) throw std::invalid_argument("not coisotropic");

  ReducedPointData out;
  out.cotangent = annihilating_covectors(action_rows(M, p, c.basis));
  Mat Pm = eval2(M, M.pi, p);
  Mat Ts = eval2(M, M.sigma(), p);
  out.matrix = form_on_basis(Pm, out.cotangent);
  out.pi_sigma_agree = out.matrix == form_on_basis(Ts, out.cotangent);
  out.dimension = out.cotangent.cols();
  out.skew_ok = skew(out.matrix);
  Subalgebra perp{c.parent, rep.perp};
  out.phi_mod_vanishes = descend_data(c, perp).phi_mod_vanishes;
  return out;
}

CentralPairModel make_central_pair(const ModuliSpace& M, std::uint64_t seed) {
  CentralPairModel out;
  out.M = &M;
  CentralMaps cm = central_maps(M);
  out.mu_L = cm.mu_L;
  out.mu_R = cm.mu_R;
  out.uncut = cm.uncut;
  Rng rng(seed);
  GroupPoint p = random_point(M.layout(), rng);
  if (!check_centrality(M, p).ok()) throw std::runtime_error("central pair: centrality fails");
  return out;
}

namespace {

struct WordBlock {
  Mat D;            // model_size^2 x m, rows = d(entries)
  Mat orbit_rows;   // orbit tangents at the value, in entry coordinates
  Mat target_rows;  // tangent of the group at the value
};

WordBlock orbit_block(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p,
                      const Mat& c_rows) {
  WordBlock b;
  b.D = word_differential(M, w, p);
  b.orbit_rows = c_rows * b.D.transpose();
  Mat z = word_holonomy(M, w, p);
  std::vector<Mat> tans;
  for (int i = 0; i < M.alg.dim; ++i) tans.push_back(M.alg.model[static_cast<size_t>(i)] * z);
  b.target_rows = flatten_rows(tans);
  return b;
}

WordBlock class_block(const ModuliSpace& M, const HolonomyWord& w, const GroupPoint& p) {
  WordBlock b;
  b.D = word_differential(M, w, p);
  Mat z = word_holonomy(M, w, p);
  std::vector<Mat> orb, tans;
  for (int i = 0; i < M.alg.dim; ++i) {
    const Mat& e = M.alg.model[static_cast<size_t>(i)];
    orb.push_back(e * z - z * e);  // conjugation directions
    tans.push_back(e * z);
  }
  b.orbit_rows = flatten_rows(orb);
  b.target_rows = flatten_rows(tans);
  return b;
}

}  // namespace

CentralReduction central_reduction_at(const CentralPairModel& pair, const Subalgebra& c,
                                      const ConstraintInstance& inst, bool require_transverse) {
  const ModuliSpace& M = *pair.M;
  const GroupPoint& p = inst.p;
  CoisotropyReport rep = coisotropy_report(c);
  if (!rep.is_coisotropic) throw std::invalid_argument("not coisotropic");
  Mat Rc = action_rows(M, p, c.basis);

  std::vector<WordBlock> blocks;
  if (inst.use_left)
    for (const auto& w : pair.mu_L) blocks.push_back(orbit_block(M, w, p, Rc));
  if (inst.use_right)
    for (const auto& w : pair.mu_R) blocks.push_back(orbit_block(M, w, p, Rc));
  for (int k : inst.uncut_select) {
    if (k < 0 || static_cast<size_t>(k) >= pair.uncut.size())
      throw std::invalid_argument("uncut index out of range");
    blocks.push_back(class_block(M, pair.uncut[static_cast<size_t>(k)], p));
  }

  CentralReduction out;
  // joint transversality: image of the joint differential plus the orbit
  // tangents must span the joint target tangent
  int m = M.layout().gens() / 2;
  Mat image(m, 0);
  int total_cols = 0;
  for (const auto& b : blocks) total_cols += b.D.rows();
  for (const auto& b : blocks) image = hstack(image, b.D.transpose());
  Mat span = image;
  int off = 0;
  for (const auto& b : blocks) {
    Mat padded(b.orbit_rows.rows(), total_cols);
    for (int i = 0; i < b.orbit_rows.rows(); ++i)
      for (int j = 0; j < b.orbit_rows.cols(); ++j) padded.at(i, off + j) = b.orbit_rows.at(i, j);
    span = span.vstack(padded);
    off += b.D.rows();
  }
  out.rank_obtained = span.rank();
  out.rank_needed = 0;
  for (const auto& b : blocks) out.rank_needed += b.target_rows.rank();
  out.transverse = out.rank_obtained == out.rank_needed;
  if (!out.transverse && require_transverse)
    throw std::runtime_error("transversality fails at p");

  out.data = reduced_bivector_at(M, c, p);
  const Mat& A = out.data.cotangent;

  // conormal pullbacks of the constrained orbits
  std::vector<std::vector<Rat>> con_cols;
  for (const auto& b : blocks) {
    Mat gamma = b.orbit_rows.rows() == 0 ? Mat::identity(b.D.rows()) : b.orbit_rows.nullspace();
    Mat cb = b.D.transpose() * gamma;
    for (int j = 0; j < cb.cols(); ++j) con_cols.push_back(col_of(cb, j));
  }
  Mat con_rows = row_space_canon(Mat::from_rows(con_cols));
  out.conormals = con_rows.transpose();

  out.conormals_in_kernel = true;
  for (int i = 0; i < con_rows.rows(); ++i) {
    auto x = A.solve(con_rows.row(i));
    if (!x) {
      out.conormals_in_kernel = false;  // conormal not c-invariant
      continue;
    }
    std::vector<Rat> img = out.data.matrix.apply(*x);
    for (const Rat& v : img)
      if (v != 0) out.conormals_in_kernel = false;
  }

  // complement of the conormal span inside the invariant covectors
  Mat span_rows = con_rows;
  std::vector<int> keep;
  for (int j = 0; j < A.cols(); ++j) {
    std::vector<Rat> cand = col_of(A, j);
    if (row_space_contains(span_rows, cand)) continue;
    span_rows = span_rows.vstack(Mat::from_rows({cand}));
    keep.push_back(j);
  }
  Mat B(A.rows(), static_cast<int>(keep.size()));
  for (int j = 0; j < B.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i) B.at(i, j) = A.at(i, keep[static_cast<size_t>(j)]);
  Mat Pm = eval2(M, M.pi, p);
  out.reduced_matrix = form_on_basis(Pm, B);
  out.reduced_dim = B.cols();
  out.reduced_nondegenerate = out.reduced_matrix.rank() == out.reduced_dim;
  return out;
}

LeafCheck symplectic_leaf_check(const CentralPairModel& pair, const Subalgebra& c,
                                const GroupPoint& p) {
  const ModuliSpace& M = *pair.M;
  LeafCheck out;
  QuadraticLieAlgebra D = M.acting_algebra();
  if (D.t.rank() != D.dim) throw std::invalid_argument("acting t degenerate");

  int m = M.layout().gens() / 2;
  LeafRanks lr = leaf_ranks(M, p);
  StabilizerReport st = left_stabilizer_check(M, p);
  // split-symplectic on the big leaf: the uncut classes cut out the leaf
  out.split_symplectic =
      lr.sum_identity && st.lagrangian && lr.rank_Tbig == m - lr.uncut_class_rank;
  if (!out.split_symplectic) throw std::invalid_argument("pair not split-symplectic at p");

  CoisotropyReport rep = coisotropy_report(c);
  out.c_lagrangian = rep.is_lagrangian;
  if (!out.c_lagrangian) throw std::invalid_argument("c not Lagrangian");

  // big-leaf cotangent model: quotient T*M by the uncut class covectors
  std::vector<std::vector<Rat>> cls;
  for (const auto& w : pair.uncut) {
    Mat rows = class_function_differentials(M, w, p, M.alg.model_size());
    for (int i = 0; i < rows.rows(); ++i) cls.push_back(rows.row(i));
  }
  Mat U = row_space_canon(Mat::from_rows(cls));  // rows, rank = class rank
  Mat span = U;
  std::vector<std::vector<Rat>> comp;
  for (int j = 0; j < m; ++j) {
    std::vector<Rat> e(static_cast<size_t>(m), Rat(0));
    e[static_cast<size_t>(j)] = 1;
    if (row_space_contains(span, e)) continue;
    span = span.vstack(Mat::from_rows({e}));
    comp.push_back(e);
  }
  Mat Vb = Mat::from_rows(comp).transpose();  // m x v complement columns

  Mat R = action_rows(M, p);  // f on the ambient cotangent: alpha -> R alpha
  if (!is_zero(R * U.transpose()))
    throw std::invalid_argument("class covectors not action-invariant");

  Mat Ts = eval2(M, M.sigma(), p);
  Mat Sq = Vb.transpose() * Ts * Vb;
  Mat Fq = R * Vb;

  out.hypotheses_ok = (Sq + Sq.transpose()) == Fq.transpose() * D.t * Fq;
  Mat VL = Sq.transpose().nullspace();
  Mat VR = Sq.nullspace();
  Mat ker_f = Fq.nullspace();
  if (row_space_intersect(row_space_canon(VL.transpose()), row_space_canon(ker_f.transpose()))
          .rows() != 0)
    out.hypotheses_ok = false;
  if (!out.hypotheses_ok) throw std::invalid_argument("kernel formula hypotheses fail");

  // C = Ann c, Lagrangian in the dual of the acting algebra
  Mat C = c.basis.nullspace();  // columns, dim d x (d/2)
  Mat NC = C.transpose().nullspace();
  Mat F = (NC.transpose() * Fq).nullspace();  // f^{-1}(C) in quotient coords

  Mat Fr = row_space_canon(F.transpose());
  Mat formula = row_space_canon(
      row_space_sum(row_space_intersect(row_space_canon(VL.transpose()), Fr),
                    row_space_intersect(row_space_canon(VR.transpose()), Fr)));
  Mat SF = F.transpose() * Sq * F;
  if (!skew(SF)) throw std::invalid_argument("restricted form not skew");
  Mat oracle = row_space_canon((F * SF.nullspace()).transpose());
  out.kernel_formula = formula;
  out.kernel_oracle = oracle;
  out.formula_equals_oracle = same_row_space(formula, oracle);
  out.reduced_dim = F.cols() - oracle.rows();
  out.nondegenerate = SF.rank() == out.reduced_dim;
  return out;
}

PartialReduction partial_reduction_at(const ModuliSpace& M, const Subalgebra& c,
                                      const Subalgebra& h, const GroupPoint& p) {
  PartialReduction out;
  out.descended = descend_data(c, h);  // validates all the subalgebra hypotheses

  out.cotangent = annihilating_covectors(action_rows(M, p, h.basis));
  Mat Pm = eval2(M, M.pi, p);
  out.matrix = form_on_basis(Pm, out.cotangent);
  out.skew_ok = skew(out.matrix);

  // lift of the quotient basis: canonical rows of c independent of h
  Mat C = row_space_canon(c.basis);
  Mat H = row_space_canon(h.basis);
  Mat span = H;
  std::vector<std::vector<Rat>> lift;
  for (int i = 0; i < C.rows(); ++i) {
    if (row_space_contains(span, C.row(i))) continue;
    span = span.vstack(Mat::from_rows({C.row(i)}));
    lift.push_back(C.row(i));
  }
  Mat L = lift.empty() ? Mat(0, c.parent->dim) : Mat::from_rows(lift);
  out.residual_action = action_rows(M, p, L);

  // quasi-Jacobi on the h-invariant covectors:
  // [pi,pi](a,b,c) = 2 phi'(f a, f b, f c) with f = the residual action dual
  Layout ly = M.layout();
  PointTensor lhs = evaluate_at(ly, schouten(ly, M.pi, M.pi), p);
  Action res;
  Action full = M.full_action();
  for (int i = 0; i < L.rows(); ++i) {
    MultiVec v(1);
    for (int j = 0; j < L.cols(); ++j)
      if (L.at(i, j) != 0) v = v + full[static_cast<size_t>(j)].scaled(L.at(i, j));
    res.push_back(v);
  }
  PointTensor rhs = evaluate_at(ly, action_extend(res, out.descended.phi_prime), p).scaled(2);
  out.quasi_jacobi_ok = true;
  const Mat& A = out.cotangent;
  for (int a = 0; a < A.cols() && out.quasi_jacobi_ok; ++a)
    for (int b = 0; b < A.cols() && out.quasi_jacobi_ok; ++b)
      for (int cc = 0; cc < A.cols() && out.quasi_jacobi_ok; ++cc) {
        Rat l = 0, r = 0;
        int mm = A.rows();
        for (int i = 0; i < mm; ++i) {
          if (A.at(i, a) == 0) continue;
          for (int j = 0; j < mm; ++j) {
            if (A.at(j, b) == 0) continue;
            for (int k = 0; k < mm; ++k) {
              if (A.at(k, cc) == 0) continue;
              Rat w = A.at(i, a) * A.at(j, b) * A.at(k, cc);
              l += w * lhs.at({i, j, k});
              r += w * rhs.at({i, j, k});
            }
          }
        }
        if (l != r) out.quasi_jacobi_ok = false;
      }
  return out;
}

Mat fused_sigma_matrix(const ModuliSpace& M, std::pair<int, int> factor1,
                       std::pair<int, int> factor2, const GroupPoint& p) {
  Layout ly = M.layout();
  int m = ly.gens() / 2;
  auto rows_of = [&](int vertex) {
    int c = M.copy_at(vertex);
    if (c < 0) throw std::invalid_argument("no acting copy at vertex");
    std::vector<std::vector<Rat>> rows;
    for (const MultiVec& v : M.copies[static_cast<size_t>(c)].rho)
      rows.push_back(evaluate_at(ly, v, p).comp);
    return Mat::from_rows(rows);
  };
  Mat r1p = rows_of(factor1.first), r1m = rows_of(factor1.second);
  Mat r2p = rows_of(factor2.first), r2m = rows_of(factor2.second);

  // sigma of the fusion: sigma + (rho2 . flip (x) rho1)(t_d), i.e. the second
  // factor's copies enter with their boundary components swapped
  Mat C(m, m);
  const Mat& t = M.alg.t;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) {
      if (t.at(i, j) == 0) continue;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          C.at(a, b) += t.at(i, j) * (r2m.at(i, a) * r1p.at(j, b) - r2p.at(i, a) * r1m.at(j, b));
    }
  return eval2(M, M.sigma(), p) + C;
}

FusionCheck fuse_central_pairs(const ModuliSpace& M, std::pair<int, int> factor1,
                               std::pair<int, int> factor2, const HolonomyWord& mu_R,
                               const HolonomyWord& nu_L,
                               const std::vector<HolonomyWord>& outer_L,
                               const std::vector<HolonomyWord>& outer_R, const GroupPoint& p) {
  Mat Ts = fused_sigma_matrix(M, factor1, factor2, p);

  FusionCheck out;
  out.on_fibre = word_holonomy(M, mu_R, p) == word_holonomy(M, nu_L, p);
  Mat Da = word_differential(M, mu_R, p);
  Mat Db = word_differential(M, nu_L, p);
  // transverse to the diagonal: the two images jointly span the target tangent
  out.transverse = Da.transpose().vstack(Db.transpose()).rank() == M.alg.dim;
  out.identity_ok = is_zero((Da - Db) * Ts);
  out.outer_central = true;
  for (const auto& w : outer_L)
    if (!is_zero(word_differential(M, w, p) * Ts)) out.outer_central = false;
  for (const auto& w : outer_R)
    if (!is_zero(Ts * word_differential(M, w, p).transpose())) out.outer_central = false;
  return out;
}

PropA1Result prop_a1_kernel(int U_dim, const Mat& pairing, const Mat& L_rows) {
  int n = U_dim;
  if (pairing.rank() != n) throw std::invalid_argument("pairing degenerate");
  Mat F(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) F.at(i, n + j) = pairing.at(i, j);
  Mat Fs = F + F.transpose();
  Mat Fk = F - F.transpose();

  PropA1Result out;
  Mat Lc = row_space_canon(L_rows);
  Mat perp = (Lc * Fs).nullspace();  // { x : (x,y)_sym = 0 for all y in L }
  out.lagrangian_ok = same_row_space(row_space_canon(perp.transpose()), Lc);
  if (!out.lagrangian_ok) throw std::invalid_argument("L not Lagrangian");

  Mat Urows(n, 2 * n), Vrows(n, 2 * n);
  for (int i = 0; i < n; ++i) Urows.at(i, i) = 1;
  for (int i = 0; i < n; ++i) Vrows.at(i, n + i) = 1;
  out.formula = row_space_canon(
      row_space_sum(row_space_intersect(Lc, Urows), row_space_intersect(Lc, Vrows)));

  Mat SL = Lc * Fk * Lc.transpose();
  out.oracle = row_space_canon((Lc.transpose() * SL.nullspace()).transpose());
  out.agree = same_row_space(out.formula, out.oracle);
  return out;
}

PropA2Result prop_a2_kernel(const Mat& sigma, const Mat& t, const Mat& f, const Mat& C_rows) {
  PropA2Result out;
  int w = t.rows();
  if (t != t.transpose() || t.rank() != w) throw std::invalid_argument("t not symmetric nondegenerate");
  out.quadratic_ok = (sigma + sigma.transpose()) == f.transpose() * t * f;
  if (!out.quadratic_ok) throw std::invalid_argument("quadratic identity fails");

  Mat VL = row_space_canon(sigma.transpose().nullspace().transpose());
  Mat VR = row_space_canon(sigma.nullspace().transpose());
  Mat kf = row_space_canon(f.nullspace().transpose());
  out.vl_ker_f_ok = row_space_intersect(VL, kf).rows() == 0;
  if (!out.vl_ker_f_ok) throw std::invalid_argument("V_L meets ker f");

  Mat Cc = row_space_canon(C_rows);
  out.c_lagrangian = is_zero(Cc * t * Cc.transpose()) && 2 * Cc.rows() == w;
  if (!out.c_lagrangian) throw std::invalid_argument("C not Lagrangian");

  Mat Z = Cc.nullspace();  // annihilator directions of C
  Mat F = (Z.transpose() * f).nullspace();
  Mat Fr = row_space_canon(F.transpose());

  // implicit hypothesis of the proof: the image of f^{-1}(C) in
  // V/V_L (+) V/V_R must be Lagrangian for the doubled symmetric pairing
  int v = sigma.rows();
  auto complement_cols = [&](const Mat& ker_rows) {
    Mat span = ker_rows;
    std::vector<std::vector<Rat>> comp;
    for (int j = 0; j < v; ++j) {
      std::vector<Rat> e(static_cast<size_t>(v), Rat(0));
      e[static_cast<size_t>(j)] = 1;
      if (row_space_contains(span, e)) continue;
      span = span.vstack(Mat::from_rows({e}));
      comp.push_back(e);
    }
    return comp.empty() ? Mat(v, 0) : Mat::from_rows(comp).transpose();
  };
  auto proj_rows = [&](const Mat& ker_rows, const Mat& comp) {
    // coordinates along `comp` of the projection modulo the kernel rows
    Mat basis(v, v);
    for (int i = 0; i < ker_rows.rows(); ++i)
      for (int j = 0; j < v; ++j) basis.at(j, i) = ker_rows.at(i, j);
    for (int c2 = 0; c2 < comp.cols(); ++c2)
      for (int j = 0; j < v; ++j) basis.at(j, ker_rows.rows() + c2) = comp.at(j, c2);
    Mat inv = basis.inverse().value();
    Mat out(comp.cols(), v);
    for (int i = 0; i < comp.cols(); ++i)
      for (int j = 0; j < v; ++j) out.at(i, j) = inv.at(ker_rows.rows() + i, j);
    return out;
  };
  Mat CLc = complement_cols(VL), CRc = complement_cols(VR);
  Mat PL = proj_rows(VL, CLc), PR = proj_rows(VR, CRc);
  Mat G = CLc.transpose() * sigma * CRc;
  int ql = G.rows(), qr = G.cols();
  Mat Fsym(ql + qr, ql + qr);
  for (int i = 0; i < ql; ++i)
    for (int j = 0; j < qr; ++j) {
      Fsym.at(i, ql + j) = G.at(i, j);
      Fsym.at(ql + j, i) = G.at(i, j);
    }
  Mat Y((PL * F).transpose().rows(), ql + qr);
  {
    Mat YL = (PL * F).transpose(), YR = (PR * F).transpose();
    for (int i = 0; i < Y.rows(); ++i) {
      for (int j = 0; j < ql; ++j) Y.at(i, j) = YL.at(i, j);
      for (int j = 0; j < qr; ++j) Y.at(i, ql + j) = YR.at(i, j);
    }
  }
  Mat Yperp = (Y * Fsym).nullspace();
  out.image_lagrangian = same_row_space(row_space_canon(Yperp.transpose()), row_space_canon(Y));
  if (!out.image_lagrangian) throw std::invalid_argument("image not Lagrangian");
  out.formula = row_space_canon(
      row_space_sum(row_space_intersect(VL, Fr), row_space_intersect(VR, Fr)));
  Mat SF = F.transpose() * sigma * F;
  if (!skew(SF)) throw std::invalid_argument("restricted form not skew");
  out.oracle = row_space_canon((F * SF.nullspace()).transpose());
  out.agree = same_row_space(out.formula, out.oracle);
  return out;
}

}  // namespace qpv
