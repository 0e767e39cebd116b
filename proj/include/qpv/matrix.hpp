#pragma once

#include <optional>
#include <vector>

#include "qpv/rational.hpp"

namespace qpv {

// Dense matrix over Q.  Row-major.  Small sizes (tangent spaces of moduli
// spaces, typically < 40 rows), so plain Gaussian elimination is fine.
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<Rat>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Rat& s) const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  std::vector<Rat> apply(const std::vector<Rat>& v) const;  // this * v
  std::vector<Rat> row(int i) const;
  void set_row(int i, const std::vector<Rat>& v);
  Mat vstack(const Mat& o) const;

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rref();
  int rank() const;
  Rat det() const;  // square only

  // Basis of { x : A x = 0 }, one vector per column of the result.
  Mat nullspace() const;
  // Solve A x = b; empty optional if inconsistent.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;
  std::optional<Mat> inverse() const;

 private:
  int r_, c_;
  std::vector<Rat> a_;
};

// Subspaces of Q^n are represented by spanning sets (rows of a Mat) and
// compared through their RREF canonical form.
Mat row_space_canon(const Mat& spanning_rows);
bool same_row_space(const Mat& a, const Mat& b);
bool row_space_contains(const Mat& space_rows, const std::vector<Rat>& v);
// Intersection of two row spaces, canonical rows.
Mat row_space_intersect(const Mat& a, const Mat& b);
Mat row_space_sum(const Mat& a, const Mat& b);

}  // namespace qpv
