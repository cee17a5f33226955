#pragma once

#include <stdexcept>
#include <vector>

namespace tclab {

/// Small dense matrix over an exact field K (Gaussian elimination, no pivots
/// by magnitude -- exact arithmetic makes any nonzero pivot valid).
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, const K& fill = K(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  K& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Mat r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k)
        for (size_t j = 0; j < b.cols_; ++j)
          r(i, j) = r(i, j) + a(i, k) * b(k, j);
    return r;
  }
  friend Mat operator*(const K& k, const Mat& a) {
    Mat r = a;
    for (auto& v : r.data_) v = k * v;
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == K(0))) return false;
    return true;
  }

  K det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    Mat m = *this;
    K d = K(1);
    for (size_t col = 0; col < cols_; ++col) {
      size_t pivot = col;
      while (pivot < rows_ && m(pivot, col) == K(0)) ++pivot;
      if (pivot == rows_) return K(0);
      if (pivot != col) {
        for (size_t j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(col, j));
        d = K(0) - d;
      }
      d = d * m(col, col);
      for (size_t i = col + 1; i < rows_; ++i) {
        K f = m(i, col) / m(col, col);
        for (size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
      }
    }
    return d;
  }

  /// Solve A x = b; throws on singular A.
  std::vector<K> solve(std::vector<K> b) const {
    if (rows_ != cols_ || b.size() != rows_) throw std::invalid_argument("solve shape mismatch");
    Mat m = *this;
    for (size_t col = 0; col < cols_; ++col) {
      size_t pivot = col;
      while (pivot < rows_ && m(pivot, col) == K(0)) ++pivot;
      if (pivot == rows_) throw std::domain_error("singular linear system");
      if (pivot != col) {
        for (size_t j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(col, j));
        std::swap(b[pivot], b[col]);
      }
      for (size_t i = col + 1; i < rows_; ++i) {
        K f = m(i, col) / m(col, col);
        for (size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
        b[i] = b[i] - f * b[col];
      }
    }
    std::vector<K> x(rows_, K(0));
    for (size_t i = rows_; i-- > 0;) {
      K acc = b[i];
      for (size_t j = i + 1; j < cols_; ++j) acc = acc - m(i, j) * x[j];
      x[i] = acc / m(i, i);
    }
    return x;
  }

  Mat inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    Mat m = *this, inv = identity(rows_);
    for (size_t col = 0; col < cols_; ++col) {
      size_t pivot = col;
      while (pivot < rows_ && m(pivot, col) == K(0)) ++pivot;
      if (pivot == rows_) throw std::domain_error("singular matrix");
      if (pivot != col)
        for (size_t j = 0; j < cols_; ++j) {
          std::swap(m(pivot, j), m(col, j));
          std::swap(inv(pivot, j), inv(col, j));
        }
      K p = m(col, col);
      for (size_t j = 0; j < cols_; ++j) {
        m(col, j) = m(col, j) / p;
        inv(col, j) = inv(col, j) / p;
      }
      for (size_t i = 0; i < rows_; ++i) {
        if (i == col || m(i, col) == K(0)) continue;
        K f = m(i, col);
        for (size_t j = 0; j < cols_; ++j) {
          m(i, j) = m(i, j) - f * m(col, j);
          inv(i, j) = inv(i, j) - f * inv(col, j);
        }
      }
    }
    return inv;
  }

  size_t rank() const {
    Mat m = *this;
    size_t r = 0;
    for (size_t col = 0; col < cols_ && r < rows_; ++col) {
      size_t pivot = r;
      while (pivot < rows_ && m(pivot, col) == K(0)) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != r)
        for (size_t j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(r, j));
      for (size_t i = r + 1; i < rows_; ++i) {
        K f = m(i, col) / m(r, col);
        for (size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(r, j);
      }
      ++r;
    }
    return r;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

}  // namespace tclab
