#include "qpv/qla.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qpv {

namespace {

std::string tuple_str(std::initializer_list<int> idx) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int i : idx) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

AlgTensor::AlgTensor(int dim_, int degree_, Sym s) : dim(dim_), degree(degree_), sym(s) {
  size_t n = 1;
  for (int k = 0; k < degree_; ++k) n *= static_cast<size_t>(dim_);
  comp.assign(n, Rat(0));
}

static size_t flat_index(int dim, const std::vector<int>& idx) {
  size_t f = 0;
  for (int i : idx) f = f * static_cast<size_t>(dim) + static_cast<size_t>(i);
  return f;
}

Rat& AlgTensor::at(const std::vector<int>& idx) { return comp[flat_index(dim, idx)]; }
const Rat& AlgTensor::at(const std::vector<int>& idx) const { return comp[flat_index(dim, idx)]; }

bool AlgTensor::is_zero() const {
  for (const auto& x : comp)
    if (x != 0) return false;
  return true;
}

AlgTensor AlgTensor::scaled(const Rat& s) const {
  AlgTensor out = *this;
  for (auto& x : out.comp) x *= s;
  return out;
}

bool AlgTensor::sym_ok() const {
  if (sym == Sym::none || degree < 2) return true;
  std::vector<int> idx(degree, 0);
  size_t total = comp.size();
  for (size_t f = 0; f < total; ++f) {
    size_t rem = f;
    for (int k = degree - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    // compare against the adjacent-transposition images
    for (int k = 0; k + 1 < degree; ++k) {
      std::vector<int> sw = idx;
      std::swap(sw[k], sw[k + 1]);
      const Rat& a = comp[f];
      const Rat& b = comp[flat_index(dim, sw)];
      if (sym == Sym::symmetric && a != b) return false;
      if (sym == Sym::alternating && a != -b) return false;
    }
  }
  return true;
}

std::vector<Rat> QuadraticLieAlgebra::bracket(const std::vector<Rat>& u,
                                              const std::vector<Rat>& v) const {
  std::vector<Rat> out(dim);
  for (int i = 0; i < dim; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (v[j] == 0) continue;
      for (int k = 0; k < dim; ++k)
        if (c[i][j][k] != 0) out[k] += u[i] * v[j] * c[i][j][k];
    }
  }
  return out;
}

Mat QuadraticLieAlgebra::ad(int i) const {
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) m.at(k, j) = c[i][j][k];
  return m;
}

Mat QuadraticLieAlgebra::matrix_of(const std::vector<Rat>& u) const {
  if (!has_model()) throw std::runtime_error("no matrix model");
  int n = model_size();
  Mat m(n, n);
  for (int i = 0; i < dim; ++i)
    if (u[i] != 0) m = m + model[i].scaled(u[i]);
  return m;
}

std::vector<Rat> QuadraticLieAlgebra::coords_of(const Mat& m) const {
  if (!has_model()) throw std::runtime_error("no matrix model");
  int n = model_size();
  Mat basis(n * n, dim);
  for (int b = 0; b < dim; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) basis.at(i * n + j, b) = model[b].at(i, j);
  std::vector<Rat> vec(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vec[static_cast<size_t>(i) * n + j] = m.at(i, j);
  auto x = basis.solve(vec);
  if (!x) throw std::runtime_error("matrix not in the model span");
  return *x;
}

std::vector<Rat> QuadraticLieAlgebra::Ad(const Mat& g, const std::vector<Rat>& u) const {
  auto gi = g.inverse();
  if (!gi) throw std::runtime_error("singular group element");
  return coords_of(g * matrix_of(u) * *gi);
}

static Mat shear2(Rng& rng) {
  Mat s = Mat::identity(2);
  if (rng.flip())
    s.at(0, 1) = rng.small_nonzero();
  else
    s.at(1, 0) = rng.small_nonzero();
  return s;
}

Mat QuadraticLieAlgebra::random_group_element(Rng& rng) const {
  if (!has_model()) throw std::runtime_error("no matrix model");
  int n = model_size();
  Mat g(n, n);
  for (const auto& f : factors) {
    Mat b = Mat::identity(f.size);
    int steps = rng.range(4, 8);
    switch (f.kind) {
      case PointKind::sl_shears:
        for (int s = 0; s < steps; ++s) b = b * shear2(rng);
        break;
      case PointKind::gl2_units:
        for (int s = 0; s < steps; ++s) {
          if (rng.below(3) == 0) {
            Mat d = Mat::identity(2);
            int which = rng.flip() ? 0 : 1;
            d.at(which, which) = rng.small_nonzero();
            b = b * d;
          } else {
            b = b * shear2(rng);
          }
        }
        break;
      case PointKind::diag_units:
        for (int i = 0; i < f.size; ++i) b.at(i, i) = rng.small_nonzero();
        break;
    }
    for (int i = 0; i < f.size; ++i)
      for (int j = 0; j < f.size; ++j) g.at(f.offset + i, f.offset + j) = b.at(i, j);
  }
  return g;
}

bool QuadraticLieAlgebra::group_element_ok(const Mat& g) const {
  if (!has_model()) return false;
  int n = model_size();
  if (g.rows() != n || g.cols() != n) return false;
  // block-diagonal with respect to the factor decomposition
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool same_block = false;
      for (const auto& f : factors)
        if (i >= f.offset && i < f.offset + f.size && j >= f.offset && j < f.offset + f.size)
          same_block = true;
      if (!same_block && g.at(i, j) != 0) return false;
    }
  for (const auto& f : factors) {
    Mat b(f.size, f.size);
    for (int i = 0; i < f.size; ++i)
      for (int j = 0; j < f.size; ++j) b.at(i, j) = g.at(f.offset + i, f.offset + j);
    Rat d = b.det();
    if (d == 0) return false;
    if (f.kind == PointKind::sl_shears && d != 1) return false;
    if (f.kind == PointKind::diag_units)
      for (int i = 0; i < f.size; ++i)
        for (int j = 0; j < f.size; ++j)
          if (i != j && b.at(i, j) != 0) return false;
  }
  return true;
}

bool ValidationReport::all_pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

ValidationReport validate_algebra(const QuadraticLieAlgebra& L) {
  ValidationReport rep;
  int n = L.dim;

  {
    CheckItem it{"antisymmetry", true, ""};
    for (int i = 0; i < n && it.pass; ++i)
      for (int j = 0; j < n && it.pass; ++j)
        for (int k = 0; k < n && it.pass; ++k)
          if (L.c[i][j][k] != -L.c[j][i][k]) {
            it.pass = false;
            it.detail = tuple_str({i, j, k});
          }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"jacobi", true, ""};
    for (int i = 0; i < n && it.pass; ++i)
      for (int j = 0; j < n && it.pass; ++j)
        for (int k = 0; k < n && it.pass; ++k)
          for (int l = 0; l < n && it.pass; ++l) {
            Rat s = 0;
            for (int m = 0; m < n; ++m)
              s += L.c[i][j][m] * L.c[m][k][l] + L.c[j][k][m] * L.c[m][i][l] +
                   L.c[k][i][m] * L.c[m][j][l];
            if (s != 0) {
              it.pass = false;
              it.detail = tuple_str({i, j, k, l});
            }
          }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"t_symmetric", true, ""};
    for (int i = 0; i < n && it.pass; ++i)
      for (int j = 0; j < n && it.pass; ++j)
        if (L.t.at(i, j) != L.t.at(j, i)) {
          it.pass = false;
          it.detail = tuple_str({i, j});
        }
    rep.items.push_back(it);
  }
  {
    CheckItem it{"t_ad_invariant", true, ""};
    for (int k = 0; k < n && it.pass; ++k)
      for (int i = 0; i < n && it.pass; ++i)
        for (int j = 0; j < n && it.pass; ++j) {
          Rat s = 0;
          for (int m = 0; m < n; ++m)
            s += L.c[k][m][i] * L.t.at(m, j) + L.c[k][m][j] * L.t.at(i, m);
          if (s != 0) {
            it.pass = false;
            it.detail = tuple_str({k, i, j});
          }
        }
    rep.items.push_back(it);
  }
  if (L.has_model()) {
    CheckItem it{"model_brackets", true, ""};
    for (int i = 0; i < n && it.pass; ++i)
      for (int j = 0; j < n && it.pass; ++j) {
        Mat comm = L.model[i] * L.model[j] - L.model[j] * L.model[i];
        Mat expect(L.model_size(), L.model_size());
        for (int k = 0; k < n; ++k)
          if (L.c[i][j][k] != 0) expect = expect + L.model[k].scaled(L.c[i][j][k]);
        if (!(comm == expect)) {
          it.pass = false;
          it.detail = tuple_str({i, j});
        }
      }
    rep.items.push_back(it);

    CheckItem ind{"model_independent", true, ""};
    int m = L.model_size();
    Mat basis(n, m * m);
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) basis.at(b, i * m + j) = L.model[b].at(i, j);
    if (basis.rank() != n) ind.pass = false;
    rep.items.push_back(ind);
  }
  return rep;
}

AlgTensor cartan_trivector(const QuadraticLieAlgebra& L) {
  int n = L.dim;
  AlgTensor phi(n, 3, AlgTensor::Sym::alternating);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        Rat s = 0;
        for (int j = 0; j < n; ++j) {
          if (L.t.at(a, j) == 0) continue;
          for (int k = 0; k < n; ++k)
            if (L.c[j][k][b] != 0 && L.t.at(k, cc) != 0)
              s += L.t.at(a, j) * L.c[j][k][b] * L.t.at(k, cc);
        }
        phi.at({a, b, cc}) = -s / 4;
      }
  return phi;
}

QuadraticLieAlgebra compose(const QuadraticLieAlgebra& a, const QuadraticLieAlgebra& b,
                            ComposeMode mode) {
  if (mode == ComposeMode::bar) {
    (void)b;
    return bar(a);
  }
  QuadraticLieAlgebra s;
  s.dim = a.dim + b.dim;
  s.labels = a.labels;
  for (const auto& lb : b.labels) {
    std::string name = lb;
    while (std::find(s.labels.begin(), s.labels.end(), name) != s.labels.end()) name += "'";
    s.labels.push_back(name);
  }
  s.c.assign(s.dim, std::vector<std::vector<Rat>>(s.dim, std::vector<Rat>(s.dim, Rat(0))));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) s.c[i][j][k] = a.c[i][j][k];
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j)
      for (int k = 0; k < b.dim; ++k) s.c[a.dim + i][a.dim + j][a.dim + k] = b.c[i][j][k];
  s.t = Mat(s.dim, s.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) s.t.at(i, j) = a.t.at(i, j);
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) s.t.at(a.dim + i, a.dim + j) = b.t.at(i, j);
  if (a.has_model() && b.has_model()) {
    int na = a.model_size(), nb = b.model_size();
    for (const auto& m : a.model) {
      Mat big(na + nb, na + nb);
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) big.at(i, j) = m.at(i, j);
      s.model.push_back(big);
    }
    for (const auto& m : b.model) {
      Mat big(na + nb, na + nb);
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) big.at(na + i, na + j) = m.at(i, j);
      s.model.push_back(big);
    }
    s.factors = a.factors;
    for (auto f : b.factors) {
      f.offset += na;
      s.factors.push_back(f);
    }
  }
  return s;
}

QuadraticLieAlgebra bar(const QuadraticLieAlgebra& a) {
  QuadraticLieAlgebra s = a;
  s.t = a.t.scaled(Rat(-1));
  return s;
}

bool Subalgebra::closed_under_bracket() const {
  Mat canon = row_space_canon(basis);
  for (int i = 0; i < canon.rows(); ++i)
    for (int j = 0; j < canon.rows(); ++j) {
      auto br = parent->bracket(canon.row(i), canon.row(j));
      if (!row_space_contains(canon, br)) return false;
    }
  return true;
}

CoisotropyReport coisotropy_report(const Subalgebra& S) {
  CoisotropyReport rep;
  const auto& L = *S.parent;
  Mat span = row_space_canon(S.basis);
  Mat ann = span.nullspace().transpose();  // rows = covectors vanishing on span
  // perp = t#(Ann c): rows alpha -> alpha * t (t symmetric)
  rep.perp = row_space_canon(ann * L.t);
  Mat pair = ann * L.t * ann.transpose();
  rep.is_coisotropic = true;
  for (int i = 0; i < pair.rows(); ++i)
    for (int j = 0; j < pair.cols(); ++j)
      if (pair.at(i, j) != 0) rep.is_coisotropic = false;
  rep.t_nondegenerate = (L.t.rank() == L.dim);
  rep.is_lagrangian = rep.t_nondegenerate && rep.is_coisotropic && same_row_space(rep.perp, span);
  return rep;
}

// Extends `rows` to a basis of Q^dim by greedily appending standard vectors.
static Mat extend_to_basis(const Mat& rows, int dim) {
  Mat cur = rows;
  for (int i = 0; i < dim && cur.rows() < dim; ++i) {
    std::vector<Rat> e(dim);
    e[i] = 1;
    if (!row_space_contains(cur, e)) {
      Mat nxt(cur.rows() + 1, dim);
      for (int r = 0; r < cur.rows(); ++r) nxt.set_row(r, cur.row(r));
      nxt.set_row(cur.rows(), e);
      cur = nxt;
    }
  }
  if (cur.rows() != dim) throw std::runtime_error("basis extension failed");
  return cur;
}

DescendData descend_data(const Subalgebra& c, const Subalgebra& h) {
  const auto& L = *c.parent;
  if (h.parent != c.parent) throw std::invalid_argument("different parent algebras");
  Mat C = row_space_canon(c.basis);
  Mat H = row_space_canon(h.basis);
  if (!c.closed_under_bracket()) throw std::invalid_argument("c not a subalgebra");
  if (!h.closed_under_bracket()) throw std::invalid_argument("h not a subalgebra");
  CoisotropyReport crep = coisotropy_report(c);
  if (!crep.is_coisotropic) throw std::invalid_argument("c not coisotropic");
  if (row_space_sum(C, H).rows() != C.rows()) throw std::invalid_argument("h not contained in c");
  if (row_space_sum(H, crep.perp).rows() != H.rows())
    throw std::invalid_argument("perp not contained in h");
  // ideal: [c, h] <= h
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < H.rows(); ++j)
      if (!row_space_contains(H, L.bracket(C.row(i), H.row(j))))
        throw std::invalid_argument("h not an ideal of c");

  // complement D of H inside C
  Mat stack = H;
  std::vector<int> comp_rows;
  for (int i = 0; i < C.rows(); ++i) {
    if (row_space_contains(stack, C.row(i))) continue;
    Mat nxt(stack.rows() + 1, L.dim);
    for (int r = 0; r < stack.rows(); ++r) nxt.set_row(r, stack.row(r));
    nxt.set_row(stack.rows(), C.row(i));
    stack = nxt;
    comp_rows.push_back(i);
  }
  int q = static_cast<int>(comp_rows.size());
  Mat D(q, L.dim);
  for (int i = 0; i < q; ++i) D.set_row(i, C.row(comp_rows[i]));

  // full basis [H; D; extension], dual covectors = columns of P^{-1}
  Mat P = extend_to_basis(H.vstack(D), L.dim);
  Mat duals = P.transpose().inverse().value();  // duals rows? see below
  // alpha_a with alpha_a . P_row_b = delta_ab: rows of (P^T)^{-1} transposed...
  // (P duals^T = I) => duals = (P^{-1})^T; rows of duals are the dual covectors.
  duals = P.inverse().value().transpose();

  DescendData out;
  out.quotient.dim = q;
  for (int i = 0; i < q; ++i) out.quotient.labels.push_back("q" + std::to_string(i));
  out.quotient.c.assign(q, std::vector<std::vector<Rat>>(q, std::vector<Rat>(q, Rat(0))));
  Mat full_basis = P;  // rows: H (0..p-1), D (p..p+q-1), ext
  int p = H.rows();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      auto br = L.bracket(D.row(i), D.row(j));
      // express in the P basis: solve P^T x = br
      auto x = P.transpose().solve(br);
      if (!x) throw std::runtime_error("bracket outside span");
      for (int k = 0; k < q; ++k) out.quotient.c[i][j][k] = (*x)[p + k];
      // classes beyond c would be a logic error; brackets of c stay in c
      for (int k = p + q; k < L.dim; ++k)
        if ((*x)[k] != 0) throw std::runtime_error("bracket escaped c");
    }
  (void)full_basis;
  out.quotient.t = Mat(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      // t'(class_i, class_j) = t(alpha_i, alpha_j) for any extensions of the
      // dual functionals; well defined because perp(c) <= h.
      Rat s = 0;
      for (int x = 0; x < L.dim; ++x)
        for (int y = 0; y < L.dim; ++y)
          s += duals.at(p + i, x) * L.t.at(x, y) * duals.at(p + j, y);
      out.quotient.t.at(i, j) = s;
    }
  out.t_prime = AlgTensor(q, 2, AlgTensor::Sym::symmetric);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) out.t_prime.at({i, j}) = out.quotient.t.at(i, j);
  out.phi_prime = cartan_trivector(out.quotient);

  // image of phi in /\3(g/c): contract phi with the dual covectors of the
  // complement of c inside g.
  AlgTensor phi = cartan_trivector(L);
  Mat Pg = extend_to_basis(C, L.dim);
  Mat dualsg = Pg.inverse().value().transpose();
  int r = C.rows();
  out.phi_mod_vanishes = true;
  int m = L.dim - r;
  for (int a = 0; a < m && out.phi_mod_vanishes; ++a)
    for (int b = 0; b < m && out.phi_mod_vanishes; ++b)
      for (int cc = 0; cc < m && out.phi_mod_vanishes; ++cc) {
        Rat s = 0;
        for (int i = 0; i < L.dim; ++i)
          for (int j = 0; j < L.dim; ++j)
            for (int k = 0; k < L.dim; ++k) {
              const Rat& ph = phi.at({i, j, k});
              if (ph != 0)
                s += ph * dualsg.at(r + a, i) * dualsg.at(r + b, j) * dualsg.at(r + cc, k);
            }
        if (s != 0) out.phi_mod_vanishes = false;
      }
  return out;
}

QuadraticLieAlgebra alg_abelian(int n) {
  QuadraticLieAlgebra L;
  L.dim = n;
  for (int i = 0; i < n; ++i) L.labels.push_back("a" + std::to_string(i));
  L.c.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
  L.t = Mat::identity(n);
  for (int i = 0; i < n; ++i) {
    Mat m(n, n);
    m.at(i, i) = 1;
    L.model.push_back(m);
  }
  L.factors.push_back({0, n, PointKind::diag_units});
  return L;
}

QuadraticLieAlgebra alg_sl2() {
  QuadraticLieAlgebra L;
  L.dim = 3;
  L.labels = {"e", "f", "h"};
  L.c.assign(3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
  // [e,f]=h, [h,e]=2e, [h,f]=-2f
  L.c[0][1][2] = 1;
  L.c[1][0][2] = -1;
  L.c[2][0][0] = 2;
  L.c[0][2][0] = -2;
  L.c[2][1][1] = -2;
  L.c[1][2][1] = 2;
  L.t = Mat(3, 3);
  L.t.at(0, 1) = 1;
  L.t.at(1, 0) = 1;
  L.t.at(2, 2) = Rat(1, 2);
  Mat e(2, 2), f(2, 2), h(2, 2);
  e.at(0, 1) = 1;
  f.at(1, 0) = 1;
  h.at(0, 0) = 1;
  h.at(1, 1) = -1;
  L.model = {e, f, h};
  L.factors.push_back({0, 2, PointKind::sl_shears});
  return L;
}

QuadraticLieAlgebra alg_gl2() {
  QuadraticLieAlgebra L;
  L.dim = 4;
  L.labels = {"E11", "E12", "E21", "E22"};
  std::vector<Mat> m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Mat x(2, 2);
      x.at(a, b) = 1;
      m.push_back(x);
    }
  L.model = m;
  L.c.assign(4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4, Rat(0))));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat comm = m[i] * m[j] - m[j] * m[i];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) L.c[i][j][2 * a + b] = comm.at(a, b);
    }
  // inverse of the trace form tr(xy): swaps E12 <-> E21, fixes diagonal units
  L.t = Mat(4, 4);
  L.t.at(0, 0) = 1;
  L.t.at(3, 3) = 1;
  L.t.at(1, 2) = 1;
  L.t.at(2, 1) = 1;
  L.factors.push_back({0, 2, PointKind::gl2_units});
  return L;
}

QuadraticLieAlgebra alg_sl2_sl2() { return compose(alg_sl2(), alg_sl2(), ComposeMode::direct_sum); }

QuadraticLieAlgebra algebra_by_name(const std::string& name) {
  if (name == "sl2") return alg_sl2();
  if (name == "gl2") return alg_gl2();
  if (name == "sl2+sl2") return alg_sl2_sl2();
  if (name.rfind("abelian", 0) == 0) {
    int n = std::stoi(name.substr(7));
    if (n < 1 || n > 8) throw std::invalid_argument("abelian dimension out of range");
    return alg_abelian(n);
  }
  if (name.rfind("bar(", 0) == 0 && name.back() == ')')
    return bar(algebra_by_name(name.substr(4, name.size() - 5)));
  throw std::invalid_argument("unknown algebra: " + name);
}

QuadraticLieAlgebra qla_from_json_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  QuadraticLieAlgebra L;
  L.dim = j.at("dim").get<int>();
  if (L.dim <= 0) throw std::invalid_argument("dim must be positive");
  if (j.contains("labels"))
    L.labels = j.at("labels").get<std::vector<std::string>>();
  else
    for (int i = 0; i < L.dim; ++i) L.labels.push_back("x" + std::to_string(i));
  if (static_cast<int>(L.labels.size()) != L.dim) throw std::invalid_argument("labels size");
  L.c.assign(L.dim, std::vector<std::vector<Rat>>(L.dim, std::vector<Rat>(L.dim, Rat(0))));
  for (const auto& tr : j.at("brackets")) {
    int i = tr.at(0).get<int>(), jj = tr.at(1).get<int>(), k = tr.at(2).get<int>();
    if (i < 0 || i >= L.dim || jj < 0 || jj >= L.dim || k < 0 || k >= L.dim)
      throw std::invalid_argument("bracket index out of range");
    L.c[i][jj][k] = rat_parse(tr.at(3).get<std::string>());
  }
  L.t = Mat(L.dim, L.dim);
  for (const auto& pr : j.at("t")) {
    int i = pr.at(0).get<int>(), jj = pr.at(1).get<int>();
    if (i < 0 || i >= L.dim || jj < 0 || jj >= L.dim)
      throw std::invalid_argument("t index out of range");
    L.t.at(i, jj) = rat_parse(pr.at(2).get<std::string>());
  }
  if (j.contains("matrix_model")) {
    for (const auto& jm : j.at("matrix_model")) {
      int n = static_cast<int>(jm.size());
      Mat m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m.at(a, b) = rat_parse(jm.at(a).at(b).get<std::string>());
      L.model.push_back(m);
    }
    if (static_cast<int>(L.model.size()) != L.dim) throw std::invalid_argument("model size");
  }
  return L;
}

std::string qla_to_json_text(const QuadraticLieAlgebra& L) {
  nlohmann::ordered_json j;
  j["dim"] = L.dim;
  j["labels"] = L.labels;
  auto brackets = nlohmann::ordered_json::array();
  for (int i = 0; i < L.dim; ++i)
    for (int jj = 0; jj < L.dim; ++jj)
      for (int k = 0; k < L.dim; ++k)
        if (L.c[i][jj][k] != 0)
          brackets.push_back({i, jj, k, rat_str(L.c[i][jj][k])});
  j["brackets"] = brackets;
  auto t = nlohmann::ordered_json::array();
  for (int i = 0; i < L.dim; ++i)
    for (int jj = 0; jj < L.dim; ++jj)
      if (L.t.at(i, jj) != 0) t.push_back({i, jj, rat_str(L.t.at(i, jj))});
  j["t"] = t;
  if (L.has_model()) {
    auto mm = nlohmann::ordered_json::array();
    for (const auto& m : L.model) {
      auto rows = nlohmann::ordered_json::array();
      for (int a = 0; a < m.rows(); ++a) {
        auto row = nlohmann::ordered_json::array();
        for (int b = 0; b < m.cols(); ++b) row.push_back(rat_str(m.at(a, b)));
        rows.push_back(row);
      }
      mm.push_back(rows);
    }
    j["matrix_model"] = mm;
  }
  return j.dump(2);
}

}  // namespace qpv
