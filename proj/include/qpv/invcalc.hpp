#pragma once

#include <map>
#include <vector>

#include "qpv/qla.hpp"

namespace qpv {

// Product of `sites` copies of one matrix group; every site carries the same
// quadratic Lie algebra.  Generators are the left/right invariant frame
// fields of the factors.
struct Layout {
  const QuadraticLieAlgebra* alg = nullptr;
  int sites = 0;

  int dim() const { return alg->dim; }
  int gens() const { return sites * 2 * alg->dim; }
  bool operator==(const Layout& o) const { return alg == o.alg && sites == o.sites; }
};

struct Gen {
  int site;
  int chir;  // 0 = L, 1 = R
  int idx;   // basis index in the site algebra
};

inline int gen_id(const Layout& ly, Gen g) {
  return (g.site * 2 + g.chir) * ly.dim() + g.idx;
}
inline Gen gen_of(const Layout& ly, int id) {
  int d = ly.dim();
  return Gen{id / (2 * d), (id / d) % 2, id % d};
}
std::string gen_name(const Layout& ly, int id);

// Alternating invariant multivector.  A term (a1 < ... < ak) -> x denotes the
// tensor x * sum over permutations with sign of the generator product, one
// unit of x per permutation (so the degree-2 key (a,b) is x(a o b - b o a)).
class MultiVec {
 public:
  MultiVec() : degree_(0) {}
  explicit MultiVec(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Inserts ids (any order) with the sorting sign; drops repeats and zeros.
  void add_term(std::vector<int> ids, Rat coeff);
  MultiVec operator+(const MultiVec& o) const;
  MultiVec operator-(const MultiVec& o) const;
  MultiVec scaled(const Rat& s) const;
  bool operator==(const MultiVec& o) const = default;

  static MultiVec wedge(const MultiVec& a, const MultiVec& b);

 private:
  int degree_;
  std::map<std::vector<int>, Rat> terms_;
};

// General (not necessarily alternating) invariant tensor; houses sigma.
class GenTensor {
 public:
  GenTensor() : degree_(0) {}
  explicit GenTensor(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::vector<int> ids, Rat coeff);
  GenTensor operator+(const GenTensor& o) const;
  GenTensor operator-(const GenTensor& o) const;
  GenTensor scaled(const Rat& s) const;
  GenTensor swap01() const;  // degree 2: arguments exchanged
  bool operator==(const GenTensor& o) const = default;

 private:
  int degree_;
  std::map<std::vector<int>, Rat> terms_;
};

GenTensor to_general(const MultiVec& a);
// Requires the tensor to be antisymmetric (checked); inverse of to_general.
MultiVec alternating_part_strict(const GenTensor& g);
// Skew part (g - g^T)/2 of a degree-2 tensor, as a MultiVec.
MultiVec skew_half(const GenTensor& g);

// Action of an auxiliary Lie algebra: one degree-1 multivector per basis
// element of the acting algebra.
using Action = std::vector<MultiVec>;

// Multilinear push of T through rho.  T alternating -> MultiVec.
MultiVec action_extend(const Action& rho, const AlgTensor& T);
GenTensor action_extend_general(const Action& rho, const AlgTensor& T);
// sum t^{ij} rho1(e_i) ^ rho2(e_j), the fusion correction shape.
MultiVec action_wedge(const Action& rho1, const Action& rho2, const Mat& t);

// sigma = pi + (1/2) rho x rho (t)
GenTensor sigma_of(const MultiVec& pi, const Action& rho, const AlgTensor& t);

// Schouten bracket of alternating multivectors over one layout.
MultiVec schouten(const Layout& ly, const MultiVec& a, const MultiVec& b);

struct GroupPoint {
  std::vector<Mat> site;  // one invertible model-sized matrix per site
};

GroupPoint random_point(const Layout& ly, Rng& rng);
GroupPoint identity_point(const Layout& ly);

// Dense exact tensor in the left-trivialized coordinate frame at a point.
struct PointTensor {
  int degree = 0;
  int m = 0;  // sites * dim
  std::vector<Rat> comp;

  PointTensor() = default;
  PointTensor(int degree_, int m_);
  Rat& at(const std::vector<int>& idx);
  const Rat& at(const std::vector<int>& idx) const;
  bool operator==(const PointTensor& o) const = default;
  bool is_zero() const;
  PointTensor operator+(const PointTensor& o) const;
  PointTensor scaled(const Rat& s) const;
  Mat as_matrix() const;  // degree 2
};

PointTensor evaluate_at(const Layout& ly, const GenTensor& a, const GroupPoint& p);
PointTensor evaluate_at(const Layout& ly, const MultiVec& a, const GroupPoint& p);
// Shuffle antisymmetrization of the product; matches MultiVec::wedge under
// evaluate_at.
PointTensor point_wedge(const PointTensor& a, const PointTensor& b);

// Matrix of S(alpha, beta) over rows of covectors (dual left frame coords).
Mat pairing_matrix(const Layout& ly, const GenTensor& S, const GroupPoint& p, const Mat& covA,
                   const Mat& covB);

// Exact identity check by evaluation at N seeded points (plus formal fast path).
bool equal_at_points(const Layout& ly, const GenTensor& a, const GenTensor& b, std::uint64_t seed,
                     int npoints = 5);
bool equal_at_points(const Layout& ly, const MultiVec& a, const MultiVec& b, std::uint64_t seed,
                     int npoints = 5);

}  // namespace qpv
