#pragma once

#include <string>
#include <vector>

#include "qpv/matrix.hpp"
#include "qpv/rng.hpp"

namespace qpv {

// Dense tensor over the basis of a quadratic Lie algebra (or a direct sum).
// Components indexed by ordered tuples; the tag records which symmetry the
// components satisfy (checked by validate(), not enforced by construction).
struct AlgTensor {
  enum class Sym { none, alternating, symmetric };
  int dim = 0;
  int degree = 0;
  Sym sym = Sym::none;
  std::vector<Rat> comp;  // size dim^degree, row-major over the tuple

  AlgTensor() = default;
  AlgTensor(int dim_, int degree_, Sym s);
  Rat& at(const std::vector<int>& idx);
  const Rat& at(const std::vector<int>& idx) const;
  bool is_zero() const;
  bool sym_ok() const;  // components consistent with the tag
  AlgTensor scaled(const Rat& s) const;
  bool operator==(const AlgTensor& o) const = default;
};

// How seeded random group elements are produced for a matrix-model block.
enum class PointKind {
  sl_shears,   // 2x2, products of elementary shears, det = 1
  gl2_units,   // 2x2, shears plus unit diagonal factors
  diag_units,  // n x n invertible diagonal matrices
};

struct GroupFactor {
  int offset;  // block position in the matrix model
  int size;    // block is size x size
  PointKind kind;
};

struct QuadraticLieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  // c[i][j][k]: [e_i, e_j] = sum_k c[i][j][k] e_k
  std::vector<std::vector<std::vector<Rat>>> c;
  Mat t;  // dim x dim, symmetric; the primary datum (may be degenerate)
  std::vector<Mat> model;  // optional; model[i] = matrix of e_i
  std::vector<GroupFactor> factors;  // group sampling recipe (with model)

  bool has_model() const { return !model.empty(); }
  int model_size() const { return model.empty() ? 0 : model[0].rows(); }

  std::vector<Rat> bracket(const std::vector<Rat>& u, const std::vector<Rat>& v) const;
  Mat ad(int i) const;  // matrix of ad_{e_i}
  Mat matrix_of(const std::vector<Rat>& u) const;
  // Expand a model-sized matrix in the basis; throws if not in the span.
  std::vector<Rat> coords_of(const Mat& m) const;
  // Ad_g(u) in coordinates, g a group element in the model.
  std::vector<Rat> Ad(const Mat& g, const std::vector<Rat>& u) const;

  // Random group element for the model (products of shears etc.), exact.
  Mat random_group_element(Rng& rng) const;
  bool group_element_ok(const Mat& g) const;
};

struct CheckItem {
  std::string name;
  bool pass;
  std::string detail;  // first violating index tuple on failure
};

struct ValidationReport {
  std::vector<CheckItem> items;
  bool all_pass() const;
};

ValidationReport validate_algebra(const QuadraticLieAlgebra& L);

// phi = -[t^{12}, t^{23}]/4, degree-3 alternating.
AlgTensor cartan_trivector(const QuadraticLieAlgebra& L);

enum class ComposeMode { direct_sum, bar };
QuadraticLieAlgebra compose(const QuadraticLieAlgebra& a, const QuadraticLieAlgebra& b,
                            ComposeMode mode);
QuadraticLieAlgebra bar(const QuadraticLieAlgebra& a);

struct Subalgebra {
  const QuadraticLieAlgebra* parent = nullptr;
  Mat basis;  // rows span the subspace
  bool closed_under_bracket() const;
};

struct CoisotropyReport {
  bool is_coisotropic = false;
  Mat perp;  // canonical rows spanning t#(Ann c)
  bool t_nondegenerate = false;
  bool is_lagrangian = false;  // meaningful only when t_nondegenerate
};

CoisotropyReport coisotropy_report(const Subalgebra& S);

struct DescendData {
  QuadraticLieAlgebra quotient;  // c/h with descended t
  AlgTensor t_prime;
  AlgTensor phi_prime;
  bool phi_mod_vanishes = false;  // image of parent phi in /\3(g/c) is zero
};

// Requires: c coisotropic, h an ideal of c, perp(c) <= h <= c.  Throws
// std::invalid_argument naming the violated hypothesis.
DescendData descend_data(const Subalgebra& c, const Subalgebra& h);

// Catalog
QuadraticLieAlgebra alg_abelian(int n);
QuadraticLieAlgebra alg_sl2();
QuadraticLieAlgebra alg_gl2();
QuadraticLieAlgebra alg_sl2_sl2();
// Lookup by name ("abelian2", "sl2", "gl2", "sl2+sl2"); throws on unknown.
QuadraticLieAlgebra algebra_by_name(const std::string& name);

// JSON round trip: {dim, labels, brackets: [[i,j,k,"p/q"],...],
// t: [[i,j,"p/q"],...], matrix_model?: [[["p/q",...],...],...]}
QuadraticLieAlgebra qla_from_json_text(const std::string& text);
std::string qla_to_json_text(const QuadraticLieAlgebra& L);

}  // namespace qpv
