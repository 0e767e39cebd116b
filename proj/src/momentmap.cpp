#include "qpv/momentmap.hpp"

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

bool is_zero(const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!(m.at(i, j) == Rat(0))) return false;
  return true;
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

bool lagrangian_rows(const Mat& B, const Mat& t, int dim) {
  if (2 * row_space_canon(B).rows() != dim) return false;
  return is_zero(B * t * B.transpose());
}

std::vector<Rat> row_times(const std::vector<Rat>& r, const Mat& t) {
  std::vector<Rat> out(static_cast<size_t>(t.cols()), Rat(0));
  for (int j = 0; j < t.cols(); ++j)
    for (int i = 0; i < t.rows(); ++i) out[static_cast<size_t>(j)] += r[static_cast<size_t>(i)] * t.at(i, j);
  return out;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// coordinates x with x^T B = r, for independent rows B; empty if r is not in
// the row space
std::optional<std::vector<Rat>> row_coords(const Mat& B, const std::vector<Rat>& r) {
  Mat G = B * B.transpose();
  std::vector<Rat> rhs = B.apply(r);
  auto x = G.solve(rhs);
  if (!x) return std::nullopt;
  std::vector<Rat> back(r.size(), Rat(0));
  for (int i = 0; i < B.rows(); ++i)
    for (size_t j = 0; j < r.size(); ++j) back[j] += (*x)[static_cast<size_t>(i)] * B.at(i, static_cast<int>(j));
  if (back != r) return std::nullopt;
  return x;
}

MultiVec combine(const Action& rho, const std::vector<Rat>& coeffs) {
  MultiVec out(1);
  for (size_t a = 0; a < rho.size(); ++a)
    if (coeffs[a] != 0) out = out + rho[a].scaled(coeffs[a]);
  return out;
}

}  // namespace

ManinPair manin_pair_data(const QuadraticLieAlgebra& d, const Mat& h_rows,
                          const Mat& h_star_rows) {
  // d.t stores the invariant element (the tensor fed to rho^2 in sigma); the
  // pairing that measures isotropy and duality is its inverse.
  auto tfo = d.t.inverse();
  if (!tfo) throw std::invalid_argument("t degenerate");
  Mat tf = *tfo;
  Subalgebra hs{&d, h_rows};
  if (!hs.closed_under_bracket()) throw std::invalid_argument("h not a subalgebra");
  if (!lagrangian_rows(h_rows, tf, d.dim)) throw std::invalid_argument("h not Lagrangian");
  if (!lagrangian_rows(h_star_rows, tf, d.dim))
    throw std::invalid_argument("h_star not Lagrangian");
  if (h_rows.vstack(h_star_rows).rank() != d.dim)
    throw std::invalid_argument("not complementary");

  ManinPair mp;
  mp.d = &d;
  mp.h = h_rows;
  // dual-normalize the complement: (e^i, e_j) = delta
  Mat G = h_star_rows * tf * h_rows.transpose();
  auto Ginv = G.inverse();
  if (!Ginv) throw std::invalid_argument("not complementary");
  mp.h_dual = *Ginv * h_star_rows;

  int k = h_rows.rows();
  mp.delta_h = AlgTensor(k, 3, AlgTensor::Sym::none);
  mp.phi_h = AlgTensor(k, 3, AlgTensor::Sym::alternating);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      std::vector<Rat> u = d.bracket(mp.h_dual.row(a), mp.h_dual.row(b));
      std::vector<Rat> ut = row_times(u, tf);
      std::vector<Rat> rebuilt(static_cast<size_t>(d.dim), Rat(0));
      for (int c = 0; c < k; ++c) {
        // (e_j, e^c) = delta picks the h component, (e^j, e_c) the h* one
        Rat hc = dot(ut, mp.h_dual.row(c));
        Rat hsc = dot(ut, mp.h.row(c));
        mp.phi_h.at({a, b, c}) = hc;
        mp.delta_h.at({a, b, c}) = hsc;
        for (int j = 0; j < d.dim; ++j) {
          rebuilt[static_cast<size_t>(j)] +=
              hc * mp.h.at(c, j) + hsc * mp.h_dual.at(c, j);
        }
      }
      if (rebuilt != u) throw std::invalid_argument("not complementary");
    }

  Mat E(d.dim, d.dim);
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < d.dim; ++x)
      for (int y = 0; y < d.dim; ++y) E.at(x, y) += mp.h.at(i, x) * mp.h_dual.at(i, y);
  if (!(E + E.transpose() == d.t)) throw std::invalid_argument("not complementary");
  // The evaluation of rho^2 pairs the second tensor index with the row slot,
  // so the stored components are the transpose of E.
  mp.pairing_sum = AlgTensor(d.dim, 2, AlgTensor::Sym::none);
  mp.tau = AlgTensor(d.dim, 2, AlgTensor::Sym::alternating);
  for (int x = 0; x < d.dim; ++x)
    for (int y = 0; y < d.dim; ++y) {
      mp.pairing_sum.at({x, y}) = E.at(y, x);
      mp.tau.at({x, y}) = E.at(y, x) - d.t.at(x, y) / Rat(2);
    }
  return mp;
}

Mat diag_rows_of(const QuadraticLieAlgebra& g) {
  Mat d(g.dim, 2 * g.dim);
  for (int i = 0; i < g.dim; ++i) {
    d.at(i, i) = 1;
    d.at(i, g.dim + i) = 1;
  }
  return d;
}

Mat antidiag_complement(const QuadraticLieAlgebra& g) {
  Mat d(g.dim, 2 * g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      Rat x = g.t.at(j, i) / Rat(2);
      d.at(i, j) = x;
      d.at(i, g.dim + j) = -x;
    }
  return d;
}

Mat sl2_triple_complement() {
  // sl2 basis order e, f, h; rows (e, 0), (0, f), (h, -h)/2
  Mat r(3, 6);
  r.at(0, 0) = 1;
  r.at(1, 4) = 1;
  r.at(2, 2) = Rat(1, 2);
  r.at(2, 5) = Rat(-1, 2);
  return r;
}

RestrictedStructure restrict_structure(const Layout& ly, const MultiVec& pi,
                                       const Action& rho_d, const GenTensor& sigma,
                                       const ManinPair& pair, std::uint64_t seed) {
  if (static_cast<int>(rho_d.size()) != pair.d->dim)
    throw std::invalid_argument("algebra mismatch");
  RestrictedStructure rs;
  rs.pi_prime = pi - action_extend(rho_d, pair.tau);
  int k = pair.h.rows();
  for (int i = 0; i < k; ++i) rs.rho_h.push_back(combine(rho_d, pair.h.row(i)));

  MultiVec lhs = schouten(ly, rs.pi_prime, rs.pi_prime);
  MultiVec rhs = action_extend(rs.rho_h, pair.phi_h).scaled(2);
  rs.jacobi_ok = equal_at_points(ly, lhs, rhs, seed);

  rs.equivariance_ok = true;
  for (int u = 0; u < k; ++u) {
    AlgTensor du(k, 2, AlgTensor::Sym::alternating);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) du.at({a, b}) = pair.delta_h.at({a, b, u});
    // the evaluation pairing transposes the two-tensor slot, which absorbs
    // the sign of the cobracket term
    MultiVec l = schouten(ly, rs.rho_h[static_cast<size_t>(u)], rs.pi_prime);
    MultiVec r = action_extend(rs.rho_h, du);
    if (!equal_at_points(ly, l, r, seed + static_cast<std::uint64_t>(u)))
      rs.equivariance_ok = false;
  }

  GenTensor recon = to_general(rs.pi_prime) + action_extend_general(rho_d, pair.pairing_sum);
  rs.sigma_match = equal_at_points(ly, recon, sigma, seed);
  return rs;
}

RestrictedStructure restrict_structure(const ModuliSpace& M, const ManinPair& pair,
                                       std::uint64_t seed) {
  QuadraticLieAlgebra D = M.acting_algebra();
  if (D.dim != pair.d->dim || !(D.t == pair.d->t) || D.c != pair.d->c)
    throw std::invalid_argument("algebra mismatch");
  return restrict_structure(M.layout(), M.pi, M.full_action(), M.sigma(), pair, seed);
}

LeafStructure leaf_structure_check(const ModuliSpace& M, const ManinPair& pair,
                                   const MultiVec& pi_prime, const GroupPoint& p) {
  Mat Ts = eval2(M, M.sigma(), p);
  Mat TX = row_space_canon(Ts.transpose());  // leaf tangent: column space of sigma
  Mat P = eval2(M, pi_prime, p);
  Mat Rh = pair.h * action_rows(M, p);

  LeafStructure out;
  out.tangent = true;
  for (int i = 0; i < P.rows(); ++i)
    if (!row_space_contains(TX, P.row(i))) out.tangent = false;
  for (int i = 0; i < Rh.rows(); ++i)
    if (!row_space_contains(TX, Rh.row(i))) out.tangent = false;
  out.spans = same_row_space(Rh.vstack(P), TX);
  return out;
}

Mat moment_differential(const ModuliSpace& M, const std::vector<HolonomyWord>& mu,
                        const GroupPoint& p) {
  int n = M.alg.model_size();
  int m = M.layout().gens() / 2;
  std::vector<std::vector<Rat>> rows;
  for (const auto& w : mu) {
    Mat W = word_holonomy(M, w, p);
    Mat D = word_differential(M, w, p);
    Mat E(n * n, M.alg.dim);
    for (int k = 0; k < M.alg.dim; ++k) {
      Mat WE = W * M.alg.model[static_cast<size_t>(k)];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) E.at(a * n + b, k) = WE.at(a, b);
    }
    std::vector<std::vector<Rat>> block(static_cast<size_t>(M.alg.dim),
                                        std::vector<Rat>(static_cast<size_t>(m)));
    for (int c = 0; c < m; ++c) {
      std::vector<Rat> col(static_cast<size_t>(n * n));
      for (int i = 0; i < n * n; ++i) col[static_cast<size_t>(i)] = D.at(i, c);
      auto x = E.solve(col);
      if (!x) throw std::invalid_argument("holonomy differential outside the frame");
      for (int k = 0; k < M.alg.dim; ++k) block[static_cast<size_t>(k)][static_cast<size_t>(c)] = (*x)[static_cast<size_t>(k)];
    }
    for (auto& r : block) rows.push_back(r);
  }
  return Mat::from_rows(rows);
}

MomentCheck moment_condition_check(const ModuliSpace& M, const ManinPair& pair,
                                   const MultiVec& pi_prime,
                                   const std::vector<HolonomyWord>& mu_L,
                                   const std::vector<HolonomyWord>& mu, const GroupPoint& p) {
  Mat Dtriv = moment_differential(M, mu, p);
  Mat Ra = action_rows(M, p);

  MomentCheck out;
  Mat stab = (Dtriv * Ra.transpose()).nullspace();
  Subalgebra st{pair.d, row_space_canon(stab.transpose())};
  out.stabilizer_coisotropic = coisotropy_report(st).is_coisotropic;
  if (!out.stabilizer_coisotropic)
    throw std::invalid_argument("stabilizer not coisotropic at mu(p)");

  Mat P = eval2(M, pi_prime, p);
  Mat Vh = pair.h * Ra;
  Mat Vhs = pair.h_dual * Ra;
  Mat lhs = P * Dtriv.transpose();
  Mat rhs = (Vh.transpose() * Vhs * Dtriv.transpose()).scaled(Rat(-1));
  out.moment_identity = (lhs == rhs);

  // group-valued decomposition of sigma^-1: only on the slice mu_L^-1(1),
  // where the restricted structure is quasi-Poisson for h = g
  int n = M.alg.model_size();
  for (const auto& w : mu_L)
    if (!(word_holonomy(M, w, p) == Mat::identity(n))) return out;

  Mat DL = moment_differential(M, mu_L, p);
  Mat B = row_space_canon(DL.nullspace().transpose());
  if (B.rows() == 0) return out;
  Mat G = B * B.transpose();
  Mat Gi = G.inverse().value();
  Mat Q = Gi * B * P * B.transpose() * Gi;
  if (!(B.transpose() * Q * B == P)) return out;
  Mat Rh = Vh;
  std::vector<std::vector<Rat>> hr;
  for (int i = 0; i < Rh.rows(); ++i) {
    auto x = row_coords(B, Rh.row(i));
    if (!x) return out;
    hr.push_back(*x);
  }
  Mat RhX = Mat::from_rows(hr);
  Mat sigma_X = Q + (RhX.transpose() * M.alg.t * RhX).scaled(Rat(1, 2));
  auto Si = sigma_X.inverse();
  out.sigma_invertible = Si.has_value();
  if (Si) {
    Mat sym = (*Si + Si->transpose()).scaled(Rat(1, 2));
    Mat dmuX = Dtriv * B.transpose();
    int nw = static_cast<int>(mu.size());
    Mat ti = M.alg.t.inverse().value();
    Mat S(nw * M.alg.dim, nw * M.alg.dim);
    for (int w = 0; w < nw; ++w)
      for (int i = 0; i < M.alg.dim; ++i)
        for (int j = 0; j < M.alg.dim; ++j) S.at(w * M.alg.dim + i, w * M.alg.dim + j) = ti.at(i, j);
    Mat pullback = (dmuX.transpose() * S * dmuX).scaled(Rat(1, 2));
    out.qham_identity = (sym == pullback);
  }
  return out;
}

SlicePointData slice_at(const ModuliSpace& M, const ManinPair& pair,
                        const MultiVec& pi_prime, const std::vector<HolonomyWord>& mu_L,
                        const HolonomyWord& mu_R, const GroupPoint& p) {
  int n = M.alg.model_size();
  for (const auto& w : mu_L)
    if (!(word_holonomy(M, w, p) == Mat::identity(n)))
      throw std::invalid_argument("point not on the slice");

  Mat DL = moment_differential(M, mu_L, p);
  Mat B = row_space_canon(DL.nullspace().transpose());

  SlicePointData X;
  X.basis = B;
  Mat P = eval2(M, pi_prime, p);
  Mat G = B * B.transpose();
  Mat Gi = G.inverse().value();
  Mat Q = Gi * B * P * B.transpose() * Gi;
  if (!(B.transpose() * Q * B == P))
    throw std::invalid_argument("pi_prime not tangent to the slice");
  X.pi_prime = Q;

  Mat Rh = pair.h * action_rows(M, p);
  std::vector<std::vector<Rat>> hr;
  for (int i = 0; i < Rh.rows(); ++i) {
    auto x = row_coords(B, Rh.row(i));
    if (!x) throw std::invalid_argument("h-action not tangent to the slice");
    hr.push_back(*x);
  }
  X.rho_h = Mat::from_rows(hr);

  X.mu_value = word_holonomy(M, mu_R, p);
  X.dmu = moment_differential(M, {mu_R}, p) * B.transpose();
  return X;
}

InducedPoint induce_central_pair(const QuadraticLieAlgebra& g, const SlicePointData& X) {
  int n = g.dim;
  int k = X.basis.rows();
  int m2 = n + k;
  QuadraticLieAlgebra d2 = compose(g, bar(g), ComposeMode::direct_sum);
  ManinPair mp = manin_pair_data(d2, diag_rows_of(g), antidiag_complement(g));

  InducedPoint ind;
  ind.rho = Mat(2 * n, m2);
  for (int i = 0; i < n; ++i) {
    ind.rho.at(i, i) = -1;  // plus copy translates the a coordinate
    ind.rho.at(n + i, i) = 1;
    for (int j = 0; j < k; ++j) ind.rho.at(n + i, n + j) = X.rho_h.at(i, j);
  }

  // transposed back to plain coordinates; see the note in manin_pair_data
  Mat taumat(2 * n, 2 * n), tmat = d2.t;
  for (int x = 0; x < 2 * n; ++x)
    for (int y = 0; y < 2 * n; ++y) taumat.at(x, y) = mp.tau.at({y, x});

  Mat P0(m2, m2);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) P0.at(n + i, n + j) = X.pi_prime.at(i, j);
  Mat corr = ind.rho.transpose() * taumat * ind.rho;
  ind.pi = P0 + corr;
  ind.sigma = ind.pi + (ind.rho.transpose() * tmat * ind.rho).scaled(Rat(1, 2));

  ind.dmu_L = Mat(n, m2);
  for (int i = 0; i < n; ++i) ind.dmu_L.at(i, i) = 1;

  // mu_R differentials are taken in the left frame of mu_L, where the a
  // coordinate enters with a minus sign and no adjoint twist
  Mat NI(n, n);
  for (int i = 0; i < n; ++i) NI.at(i, i) = -1;
  ind.dmu_R = hstack(NI, X.dmu);

  ind.left_central = is_zero(ind.dmu_L * ind.sigma);
  ind.right_central = is_zero(ind.sigma * ind.dmu_R.transpose());
  ind.slice_recovers = (ind.pi - corr == P0);

  Mat Vh = mp.h * ind.rho;
  Mat Vhs = mp.h_dual * ind.rho;
  Mat lhs = P0 * ind.dmu_R.transpose();
  Mat rhs = (Vh.transpose() * Vhs * ind.dmu_R.transpose()).scaled(Rat(-1));
  ind.moment_identity = (lhs == rhs);
  return ind;
}

bool induced_matches(const ModuliSpace& M, const ManinPair& pair, const MultiVec& pi_prime,
                     const std::vector<HolonomyWord>& mu_L, const HolonomyWord& mu_R,
                     const GroupPoint& p) {
  SlicePointData X = slice_at(M, pair, pi_prime, mu_L, mu_R, p);
  InducedPoint ind = induce_central_pair(M.alg, X);
  int n = M.alg.dim;
  int m = M.layout().gens() / 2;
  int k = X.basis.rows();

  Mat J1 = moment_differential(M, mu_L, p);
  Mat Ra = action_rows(M, p);
  Mat Cspan(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) Cspan.at(i, j) = Ra.at(i, j);  // plus copy rows
  Mat K = X.basis.vstack(Cspan);
  auto KT = K.transpose().inverse();
  if (!KT) return false;
  Mat J2(k, m);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) J2.at(i, j) = KT->at(i, j);
  Mat J = J1.vstack(J2);

  Mat P = eval2(M, M.pi, p);
  Mat Ts = eval2(M, M.sigma(), p);
  Mat DR = moment_differential(M, {mu_R}, p);

  bool ok = true;
  ok = ok && (Ra * J.transpose() == ind.rho);
  ok = ok && (J * P * J.transpose() == ind.pi);
  ok = ok && (J * Ts * J.transpose() == ind.sigma);
  ok = ok && (ind.dmu_R * J == DR);
  ok = ok && (ind.dmu_L * J == J1);
  (void)pair;
  return ok;
}

FusedMoment fuse_moment_maps(const ModuliSpace& M, std::pair<int, int> factor1,
                             std::pair<int, int> factor2, const HolonomyWord& mu_R,
                             const HolonomyWord& nu_L, const std::vector<HolonomyWord>& mu_L,
                             const HolonomyWord& nu_R, const ManinPair& outer_pair,
                             const Mat& outer_action_rows, const GroupPoint& p) {
  int n = M.alg.model_size();
  FusedMoment out;
  out.on_fibre = word_holonomy(M, mu_R, p) == word_holonomy(M, nu_L, p);
  for (const auto& w : mu_L)
    if (!(word_holonomy(M, w, p) == Mat::identity(n))) out.on_fibre = false;

  Mat Ts = fused_sigma_matrix(M, factor1, factor2, p);
  Mat Vh = outer_pair.h * outer_action_rows;
  Mat Vhs = outer_pair.h_dual * outer_action_rows;
  out.pi_prime = Ts - Vh.transpose() * Vhs;

  Mat Da = word_differential(M, mu_R, p);
  Mat Db = word_differential(M, nu_L, p);
  Mat constraints = (Da - Db).vstack(moment_differential(M, mu_L, p));
  out.basis = row_space_canon(constraints.nullspace().transpose());

  out.tangent = true;
  Mat Pc = out.pi_prime.transpose();  // columns carry the tangent vectors
  for (int i = 0; i < Pc.rows(); ++i)
    if (!row_space_contains(out.basis, Pc.row(i))) out.tangent = false;

  Mat DR = moment_differential(M, {nu_R}, p);
  Mat lhs = out.pi_prime * DR.transpose();
  Mat rhs = (Vh.transpose() * Vhs * DR.transpose()).scaled(Rat(-1));
  out.moment_identity = (lhs == rhs);
  return out;
}

SlicePointData conjugate_slice(const ModuliSpace& M, const ManinPair& pair,
                               const MultiVec& pi_prime, const HolonomyWord& mu_L,
                               const std::vector<HolonomyWord>& mu_R, const GroupPoint& p) {
  // the conjugate model swaps the two central maps and reverses the surface
  // orientation, so slicing happens over the right words and the moment map
  // is the reversed left word
  HolonomyWord rev;
  for (auto it = mu_L.rbegin(); it != mu_L.rend(); ++it) rev.push_back({it->first, -it->second});
  return slice_at(M, pair, pi_prime, mu_R, rev, p);
}

}  // namespace qpv
