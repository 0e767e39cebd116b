#include "qpv/invcalc.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpv {

std::string gen_name(const Layout& ly, int id) {
  Gen g = gen_of(ly, id);
  return ly.alg->labels[g.idx] + (g.chir == 0 ? "^L" : "^R") + std::to_string(g.site);
}

namespace {

// Sorts ids in place; returns 0 if a repeat occurs, else the permutation sign.
int sort_sign(std::vector<int>& ids) {
  int sign = 1;
  for (size_t i = 1; i < ids.size(); ++i)
    for (size_t j = i; j > 0 && ids[j - 1] >= ids[j]; --j) {
      if (ids[j - 1] == ids[j]) return 0;
      std::swap(ids[j - 1], ids[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

void MultiVec::add_term(std::vector<int> ids, Rat coeff) {
  if (static_cast<int>(ids.size()) != degree_) throw std::invalid_argument("degree mismatch");
  if (coeff == 0) return;
  int s = sort_sign(ids);
  if (s == 0) return;
  Rat& slot = terms_[ids];
  slot += (s > 0 ? coeff : -coeff);
  if (slot == 0) terms_.erase(ids);
}

MultiVec MultiVec::operator+(const MultiVec& o) const {
  if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
  MultiVec out = *this;
  for (const auto& [k, v] : o.terms_) {
    Rat& slot = out.terms_[k];
    slot += v;
    if (slot == 0) out.terms_.erase(k);
  }
  return out;
}

MultiVec MultiVec::operator-(const MultiVec& o) const { return *this + o.scaled(Rat(-1)); }

MultiVec MultiVec::scaled(const Rat& s) const {
  MultiVec out(degree_);
  if (s == 0) return out;
  for (const auto& [k, v] : terms_) out.terms_[k] = v * s;
  return out;
}

MultiVec MultiVec::wedge(const MultiVec& a, const MultiVec& b) {
  MultiVec out(a.degree_ + b.degree_);
  for (const auto& [ka, va] : a.terms_)
    for (const auto& [kb, vb] : b.terms_) {
      std::vector<int> ids = ka;
      ids.insert(ids.end(), kb.begin(), kb.end());
      out.add_term(std::move(ids), va * vb);
    }
  return out;
}

void GenTensor::add_term(std::vector<int> ids, Rat coeff) {
  if (static_cast<int>(ids.size()) != degree_) throw std::invalid_argument("degree mismatch");
  if (coeff == 0) return;
  Rat& slot = terms_[ids];
  slot += coeff;
  if (slot == 0) terms_.erase(ids);
}

GenTensor GenTensor::operator+(const GenTensor& o) const {
  if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
  GenTensor out = *this;
  for (const auto& [k, v] : o.terms_) out.add_term(k, v);
  return out;
}

GenTensor GenTensor::operator-(const GenTensor& o) const { return *this + o.scaled(Rat(-1)); }

GenTensor GenTensor::scaled(const Rat& s) const {
  GenTensor out(degree_);
  if (s == 0) return out;
  for (const auto& [k, v] : terms_) out.terms_[k] = v * s;
  return out;
}

GenTensor GenTensor::swap01() const {
  if (degree_ != 2) throw std::invalid_argument("swap01: degree 2 only");
  GenTensor out(2);
  for (const auto& [k, v] : terms_) out.add_term({k[1], k[0]}, v);
  return out;
}

GenTensor to_general(const MultiVec& a) {
  GenTensor out(a.degree());
  for (const auto& [k, v] : a.terms()) {
    // run over all permutations of the key with signs
    std::vector<int> idx(a.degree());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    do {
      std::vector<int> ids(a.degree());
      int inv = 0;
      for (size_t i = 0; i < idx.size(); ++i) {
        ids[i] = k[idx[i]];
        for (size_t j = 0; j < i; ++j)
          if (idx[j] > idx[i]) ++inv;
      }
      out.add_term(ids, (inv % 2 == 0) ? v : -v);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return out;
}

MultiVec alternating_part_strict(const GenTensor& g) {
  MultiVec out(g.degree());
  for (const auto& [k, v] : g.terms()) {
    std::vector<int> sorted = k;
    int s = sort_sign(sorted);
    if (s == 0) throw std::invalid_argument("not antisymmetric: diagonal term");
    if (sorted == k) out.add_term(k, v);
  }
  if (!(to_general(out) == g)) throw std::invalid_argument("not antisymmetric");
  return out;
}

MultiVec skew_half(const GenTensor& g) {
  GenTensor s = (g - g.swap01()).scaled(Rat(1, 2));
  MultiVec out(2);
  for (const auto& [k, v] : s.terms())
    if (k[0] < k[1]) out.add_term(k, v);
  return out;
}

MultiVec action_extend(const Action& rho, const AlgTensor& T) {
  GenTensor g = action_extend_general(rho, T);
  return alternating_part_strict(g);
}

GenTensor action_extend_general(const Action& rho, const AlgTensor& T) {
  GenTensor out(T.degree);
  std::vector<int> idx(T.degree, 0);
  size_t total = T.comp.size();
  for (size_t f = 0; f < total; ++f) {
    size_t rem = f;
    for (int k = T.degree - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % T.dim);
      rem /= T.dim;
    }
    const Rat& coeff = T.comp[f];
    if (coeff == 0) continue;
    // product over slots of rho(e_{idx[slot]}), each a sparse degree-1 vector
    std::vector<std::vector<std::pair<int, Rat>>> fac(T.degree);
    bool dead = false;
    for (int s = 0; s < T.degree; ++s) {
      for (const auto& [k, v] : rho[idx[s]].terms()) fac[s].push_back({k[0], v});
      if (fac[s].empty()) dead = true;
    }
    if (dead) continue;
    std::vector<int> pick(T.degree, 0);
    while (true) {
      std::vector<int> ids(T.degree);
      Rat c = coeff;
      for (int s = 0; s < T.degree; ++s) {
        ids[s] = fac[s][pick[s]].first;
        c *= fac[s][pick[s]].second;
      }
      out.add_term(std::move(ids), c);
      int s = T.degree - 1;
      while (s >= 0 && ++pick[s] == static_cast<int>(fac[s].size())) pick[s--] = 0;
      if (s < 0) break;
    }
  }
  return out;
}

MultiVec action_wedge(const Action& rho1, const Action& rho2, const Mat& t) {
  MultiVec out(2);
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) {
      if (t.at(i, j) == 0) continue;
      out = out + MultiVec::wedge(rho1[i], rho2[j]).scaled(t.at(i, j));
    }
  return out;
}

GenTensor sigma_of(const MultiVec& pi, const Action& rho, const AlgTensor& t) {
  if (pi.degree() != 2) throw std::invalid_argument("pi must have degree 2");
  return to_general(pi) + action_extend_general(rho, t).scaled(Rat(1, 2));
}

namespace {

// [gen a, gen b] as a sparse degree-1 list.  Different sites commute.
// [u^L, v^L] = [u,v]^L, [u^R, v^R] = -[u,v]^R, [u^L, v^R] = 0.
std::vector<std::pair<int, Rat>> gen_bracket(const Layout& ly, int a, int b) {
  Gen ga = gen_of(ly, a), gb = gen_of(ly, b);
  std::vector<std::pair<int, Rat>> out;
  if (ga.site != gb.site || ga.chir != gb.chir) return out;
  const auto& c = ly.alg->c[ga.idx][gb.idx];
  for (int k = 0; k < ly.dim(); ++k)
    if (c[k] != 0) {
      Rat v = c[k];
      if (ga.chir == 1) v = -v;
      out.push_back({gen_id(ly, Gen{ga.site, ga.chir, k}), v});
    }
  return out;
}

}  // namespace

MultiVec schouten(const Layout& ly, const MultiVec& a, const MultiVec& b) {
  int p = a.degree(), q = b.degree();
  MultiVec out(p + q - 1);
  for (const auto& [ka, va] : a.terms())
    for (const auto& [kb, vb] : b.terms())
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
          auto br = gen_bracket(ly, ka[i], kb[j]);
          if (br.empty()) continue;
          int sgn = ((i + j) % 2 == 0) ? 1 : -1;  // (-1)^{i+j}, 1-based cancels
          std::vector<int> rest;
          rest.reserve(p + q - 2);
          for (int x = 0; x < p; ++x)
            if (x != i) rest.push_back(ka[x]);
          for (int x = 0; x < q; ++x)
            if (x != j) rest.push_back(kb[x]);
          for (const auto& [g, coef] : br) {
            std::vector<int> ids;
            ids.reserve(p + q - 1);
            ids.push_back(g);
            ids.insert(ids.end(), rest.begin(), rest.end());
            out.add_term(std::move(ids), va * vb * coef * sgn);
          }
        }
  return out;
}

GroupPoint random_point(const Layout& ly, Rng& rng) {
  GroupPoint p;
  for (int s = 0; s < ly.sites; ++s) p.site.push_back(ly.alg->random_group_element(rng));
  return p;
}

GroupPoint identity_point(const Layout& ly) {
  GroupPoint p;
  for (int s = 0; s < ly.sites; ++s) p.site.push_back(Mat::identity(ly.alg->model_size()));
  return p;
}

PointTensor::PointTensor(int degree_, int m_) : degree(degree_), m(m_) {
  size_t n = 1;
  for (int k = 0; k < degree_; ++k) n *= static_cast<size_t>(m_);
  comp.assign(n, Rat(0));
}

static size_t pt_flat(int m, const std::vector<int>& idx) {
  size_t f = 0;
  for (int i : idx) f = f * static_cast<size_t>(m) + static_cast<size_t>(i);
  return f;
}

Rat& PointTensor::at(const std::vector<int>& idx) { return comp[pt_flat(m, idx)]; }
const Rat& PointTensor::at(const std::vector<int>& idx) const { return comp[pt_flat(m, idx)]; }

bool PointTensor::is_zero() const {
  for (const auto& x : comp)
    if (x != 0) return false;
  return true;
}

PointTensor PointTensor::operator+(const PointTensor& o) const {
  if (degree != o.degree || m != o.m) throw std::invalid_argument("shape mismatch");
  PointTensor out = *this;
  for (size_t i = 0; i < comp.size(); ++i) out.comp[i] += o.comp[i];
  return out;
}

PointTensor PointTensor::scaled(const Rat& s) const {
  PointTensor out = *this;
  for (auto& x : out.comp) x *= s;
  return out;
}

Mat PointTensor::as_matrix() const {
  if (degree != 2) throw std::invalid_argument("as_matrix: degree 2 only");
  Mat out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.at(i, j) = comp[static_cast<size_t>(i) * m + j];
  return out;
}

namespace {

// Frame image of one generator at a point, as a sparse coordinate vector.
// Left frame: u^L -> u at its site.  Right frame: u^R -> Ad_{g^{-1}} u.
std::vector<std::pair<int, Rat>> frame_vec(const Layout& ly, const GroupPoint& p, int id) {
  Gen g = gen_of(ly, id);
  int d = ly.dim();
  std::vector<std::pair<int, Rat>> out;
  if (g.chir == 0) {
    out.push_back({g.site * d + g.idx, Rat(1)});
  } else {
    auto gi = p.site[g.site].inverse();
    if (!gi) throw std::runtime_error("singular site matrix");
    std::vector<Rat> u(d);
    u[g.idx] = 1;
    auto ad = ly.alg->coords_of(*gi * ly.alg->matrix_of(u) * p.site[g.site]);
    for (int k = 0; k < d; ++k)
      if (ad[k] != 0) out.push_back({g.site * d + k, ad[k]});
  }
  return out;
}

}  // namespace

PointTensor evaluate_at(const Layout& ly, const GenTensor& a, const GroupPoint& p) {
  int m = ly.sites * ly.dim();
  PointTensor out(a.degree(), m);
  // cache frame vectors per generator id
  std::vector<std::vector<std::pair<int, Rat>>> cache(ly.gens());
  std::vector<bool> have(ly.gens(), false);
  for (const auto& [k, v] : a.terms()) {
    for (int id : k)
      if (!have[id]) {
        cache[id] = frame_vec(ly, p, id);
        have[id] = true;
      }
    int deg = a.degree();
    std::vector<int> pick(deg, 0);
    if (deg == 0) {
      out.comp[0] += v;
      continue;
    }
    while (true) {
      std::vector<int> idx(deg);
      Rat c = v;
      for (int s = 0; s < deg; ++s) {
        idx[s] = cache[k[s]][pick[s]].first;
        c *= cache[k[s]][pick[s]].second;
      }
      out.at(idx) += c;
      int s = deg - 1;
      while (s >= 0 && ++pick[s] == static_cast<int>(cache[k[s]].size())) pick[s--] = 0;
      if (s < 0) break;
    }
  }
  return out;
}

PointTensor evaluate_at(const Layout& ly, const MultiVec& a, const GroupPoint& p) {
  return evaluate_at(ly, to_general(a), p);
}

PointTensor point_wedge(const PointTensor& a, const PointTensor& b) {
  if (a.m != b.m) throw std::invalid_argument("shape mismatch");
  int p = a.degree, q = b.degree, m = a.m;
  PointTensor out(p + q, m);
  // sum over (p,q)-shuffles with sign
  std::vector<int> comb(p);
  for (int i = 0; i < p; ++i) comb[i] = i;
  auto next_comb = [&]() {
    int i = p - 1;
    while (i >= 0 && comb[i] == i + (p + q) - p) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  do {
    std::vector<bool> ina(p + q, false);
    for (int i : comb) ina[i] = true;
    int inv = 0;  // sign of the shuffle
    {
      int seen_b = 0;
      for (int pos = 0; pos < p + q; ++pos) {
        if (ina[pos])
          inv += seen_b;
        else
          ++seen_b;
      }
    }
    // positions comb get a-indices, the rest b-indices
    std::vector<int> idx(p + q, 0);
    std::vector<int> apos(comb), bpos;
    for (int pos = 0; pos < p + q; ++pos)
      if (!ina[pos]) bpos.push_back(pos);
    // iterate over all index tuples of a and b
    std::vector<int> ia(p, 0), ib(q, 0);
    auto bump = [m](std::vector<int>& v) {
      int s = static_cast<int>(v.size()) - 1;
      while (s >= 0 && ++v[s] == m) v[s--] = 0;
      return s >= 0;
    };
    // dense double loop; sizes are small
    while (true) {
      const Rat& av = a.comp[pt_flat(m, ia)];
      if (av != 0) {
        std::fill(ib.begin(), ib.end(), 0);
        while (true) {
          const Rat& bv = b.comp[pt_flat(m, ib)];
          if (bv != 0) {
            for (int s = 0; s < p; ++s) idx[apos[s]] = ia[s];
            for (int s = 0; s < q; ++s) idx[bpos[s]] = ib[s];
            Rat c = av * bv;
            out.at(idx) += (inv % 2 == 0) ? c : -c;
          }
          if (!bump(ib)) break;
        }
      }
      if (!bump(ia)) break;
    }
  } while (next_comb());
  return out;
}

Mat pairing_matrix(const Layout& ly, const GenTensor& S, const GroupPoint& p, const Mat& covA,
                   const Mat& covB) {
  int m = ly.sites * ly.dim();
  if (covA.cols() != m || covB.cols() != m) throw std::invalid_argument("covector length");
  Mat sm = evaluate_at(ly, S, p).as_matrix();
  return covA * sm * covB.transpose();
}

bool equal_at_points(const Layout& ly, const GenTensor& a, const GenTensor& b, std::uint64_t seed,
                     int npoints) {
  if (a.degree() != b.degree()) return false;
  if (a == b) return true;  // formal fast path
  Rng rng(seed);
  for (int i = 0; i < npoints; ++i) {
    GroupPoint p = random_point(ly, rng);
    if (!(evaluate_at(ly, a, p) == evaluate_at(ly, b, p))) return false;
  }
  return true;
}

bool equal_at_points(const Layout& ly, const MultiVec& a, const MultiVec& b, std::uint64_t seed,
                     int npoints) {
  return equal_at_points(ly, to_general(a), to_general(b), seed, npoints);
}

}  // namespace qpv
