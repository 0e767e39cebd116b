#include "qpv/matrix.hpp"

#include <stdexcept>

namespace qpv {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transpose() const {
  Mat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("mul shape");
  Mat m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
    }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("add shape");
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("sub shape");
  Mat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

Mat Mat::scaled(const Rat& s) const {
  Mat m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("apply shape");
  std::vector<Rat> out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * v[j];
  return out;
}

std::vector<Rat> Mat::row(int i) const {
  std::vector<Rat> v(c_);
  for (int j = 0; j < c_; ++j) v[j] = at(i, j);
  return v;
}

void Mat::set_row(int i, const std::vector<Rat>& v) {
  if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("set_row shape");
  for (int j = 0; j < c_; ++j) at(i, j) = v[j];
}

Mat Mat::vstack(const Mat& o) const {
  if (r_ == 0 && c_ == 0) return o;
  if (o.r_ == 0 && o.c_ == 0) return *this;
  if (c_ != o.c_) throw std::invalid_argument("vstack shape");
  Mat m(r_ + o.r_, c_);
  m.a_ = a_;
  m.a_.insert(m.a_.end(), o.a_.begin(), o.a_.end());
  return m;
}

std::vector<int> Mat::rref() {
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < c_ && lead < r_; ++col) {
    int piv = -1;
    for (int i = lead; i < r_; ++i)
      if (at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < c_; ++j) std::swap(at(piv, j), at(lead, j));
    Rat inv = Rat(1) / at(lead, col);
    for (int j = col; j < c_; ++j) at(lead, j) *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == lead || at(i, col) == 0) continue;
      Rat f = at(i, col);
      for (int j = col; j < c_; ++j) at(i, j) -= f * at(lead, j);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

int Mat::rank() const {
  Mat m = *this;
  return static_cast<int>(m.rref().size());
}

Rat Mat::det() const {
  if (r_ != c_) throw std::invalid_argument("det: not square");
  Mat m = *this;
  Rat d = 1;
  for (int col = 0; col < c_; ++col) {
    int piv = -1;
    for (int i = col; i < r_; ++i)
      if (m.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    Rat inv = Rat(1) / m.at(col, col);
    for (int i = col + 1; i < r_; ++i) {
      if (m.at(i, col) == 0) continue;
      Rat f = m.at(i, col) * inv;
      for (int j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

Mat Mat::nullspace() const {
  Mat m = *this;
  std::vector<int> pivots = m.rref();
  std::vector<bool> is_pivot(c_, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < c_; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat ns(c_, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ns.at(fc, static_cast<int>(k)) = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      ns.at(pivots[pi], static_cast<int>(k)) = -m.at(static_cast<int>(pi), fc);
  }
  return ns;
}

std::optional<std::vector<Rat>> Mat::solve(const std::vector<Rat>& b) const {
  if (static_cast<int>(b.size()) != r_) throw std::invalid_argument("solve shape");
  Mat aug(r_, c_ + 1);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, c_) = b[i];
  }
  std::vector<int> pivots = aug.rref();
  for (int p : pivots)
    if (p == c_) return std::nullopt;
  std::vector<Rat> x(c_);
  for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(static_cast<int>(pi), c_);
  return x;
}

std::optional<Mat> Mat::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse: not square");
  Mat aug(r_, 2 * c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, c_ + i) = 1;
  }
  std::vector<int> pivots = aug.rref();
  if (static_cast<int>(pivots.size()) != r_ || pivots.back() != c_ - 1) return std::nullopt;
  Mat inv(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
  return inv;
}

Mat row_space_canon(const Mat& spanning_rows) {
  Mat m = spanning_rows;
  std::vector<int> pivots = m.rref();
  Mat out(static_cast<int>(pivots.size()), m.cols());
  for (size_t i = 0; i < pivots.size(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(static_cast<int>(i), j) = m.at(static_cast<int>(i), j);
  return out;
}

bool same_row_space(const Mat& a, const Mat& b) {
  return row_space_canon(a) == row_space_canon(b);
}

bool row_space_contains(const Mat& space_rows, const std::vector<Rat>& v) {
  Mat canon = row_space_canon(space_rows);
  Mat with(canon.rows() + 1, canon.cols() ? canon.cols() : static_cast<int>(v.size()));
  for (int i = 0; i < canon.rows(); ++i)
    for (int j = 0; j < canon.cols(); ++j) with.at(i, j) = canon.at(i, j);
  with.set_row(canon.rows(), v);
  return with.rank() == canon.rows();
}

Mat row_space_sum(const Mat& a, const Mat& b) { return row_space_canon(a.vstack(b)); }

Mat row_space_intersect(const Mat& a, const Mat& b) {
  // x in both spaces iff x = u^T a = v^T b; solve [a^T | -b^T] on coefficients.
  Mat ca = row_space_canon(a), cb = row_space_canon(b);
  if (ca.rows() == 0 || cb.rows() == 0) return Mat(0, ca.cols() ? ca.cols() : cb.cols());
  Mat stacked(ca.cols(), ca.rows() + cb.rows());
  for (int j = 0; j < ca.cols(); ++j) {
    for (int i = 0; i < ca.rows(); ++i) stacked.at(j, i) = ca.at(i, j);
    for (int i = 0; i < cb.rows(); ++i) stacked.at(j, ca.rows() + i) = -cb.at(i, j);
  }
  Mat ns = stacked.nullspace();  // columns: (u, v) pairs
  Mat gens(ns.cols(), ca.cols());
  for (int k = 0; k < ns.cols(); ++k)
    for (int j = 0; j < ca.cols(); ++j) {
      Rat s = 0;
      for (int i = 0; i < ca.rows(); ++i) s += ns.at(i, k) * ca.at(i, j);
      gens.at(k, j) = s;
    }
  return row_space_canon(gens);
}

}  // namespace qpv
