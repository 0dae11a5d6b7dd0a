#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace ht {

// Dense row-major matrix over double or complex<double>.
template <class S>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols, S value = S{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Dense identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  S* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const S* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<S>& data() { return data_; }
  const std::vector<S>& data() const { return data_; }

  double frobenius_norm() const {
    double s = 0.0;
    for (const S& v : data_) s += std::norm(std::complex<double>(v));
    return std::sqrt(s);
  }

  double trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i)
      t += std::real(std::complex<double>((*this)(i, i)));
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using Matrix = Dense<double>;
using ComplexMatrix = Dense<std::complex<double>>;
using Vector = std::vector<double>;
using ComplexVector = std::vector<std::complex<double>>;

inline bool is_symmetric(const Matrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

inline bool is_hermitian(const ComplexMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i).imag() != 0.0) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != std::conj(m(j, i))) return false;
  }
  return true;
}

template <class S>
Dense<S> matmul(const Dense<S>& a, const Dense<S>& b) {
  Dense<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      S aik = a(i, k);
      if (aik == S{}) continue;
      const S* brow = b.row_ptr(k);
      S* crow = c.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

template <class S>
std::vector<S> matvec(const Dense<S>& a, const std::vector<S>& x) {
  std::vector<S> y(a.rows(), S{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    S acc{};
    const S* row = a.row_ptr(i);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

inline double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ht
