#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lls/exactalg/field.hpp"

namespace lls::exactalg {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
  static Matrix identity(FieldSpec field, std::size_t n);
  /// Rows given explicitly; every row must have length `cols`.
  static Matrix from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_ints(FieldSpec field, const std::vector<std::vector<long>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  std::vector<Vector> row_list() const;
  void append_row(const Vector& v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vector apply(const Vector& v) const;
  /// Rows of *this followed by rows of `below`.
  Matrix stack(const Matrix& below) const;
  /// Columns of *this followed by columns of `right`.
  Matrix hstack(const Matrix& right) const;
  Matrix scaled(const Scalar& c) const;

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form in place: leading entries 1, pivot columns
/// cleared. Returns the pivot column of each nonzero row, in order; rows
/// beyond the rank are zero.
std::vector<std::size_t> rref_in_place(Matrix& m);

struct RankKernel {
  std::size_t rank = 0;
  /// Basis of {x : m x = 0}, itself in reduced row echelon form.
  std::vector<Vector> kernel_basis;
};

RankKernel rank_and_kernel(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Canonical (RREF) basis of the span of `vectors`, all of length `dim`.
std::vector<Vector> span_basis(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& vectors);
Matrix span_matrix(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& vectors);

/// Canonical basis of span(a) ∩ span(b).
std::vector<Vector> subspace_intersect(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                                       const std::vector<Vector>& b);
std::vector<Vector> subspace_sum(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                                 const std::vector<Vector>& b);

/// Rows spanning the annihilator of span(basis): a matrix Q with ker Q = span(basis).
Matrix annihilator(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& basis);

/// Coordinates of v with respect to an RREF basis (rows `basis` with the
/// given pivots), or nothing when v is not in the span.
bool coordinates_in_rref(const std::vector<Vector>& basis, const std::vector<std::size_t>& pivots, const Vector& v,
                         Vector& coords);

/// True iff every vector of `a` lies in span(b).
bool contained_in(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                  const std::vector<Vector>& b);

/// Solve m x = rhs; returns false when inconsistent.
bool solve(const Matrix& m, const Vector& rhs, Vector& x);

Vector zero_vector(const FieldSpec& field, std::size_t n);
bool is_zero_vector(const Vector& v);

}  // namespace lls::exactalg

namespace lls::exactalg {

/// Every k-dimensional subspace of F_p^n, each as its RREF basis rows.
std::vector<std::vector<Vector>> enumerate_subspaces(const FieldSpec& field, std::size_t n, std::size_t k);

/// A uniformly random k-dimensional subspace (rejection sampling on random rows).
std::vector<Vector> random_subspace(const FieldSpec& field, std::size_t n, std::size_t k, std::mt19937_64& rng);

}  // namespace lls::exactalg

namespace lls::exactalg {

/// Inverse of a square matrix, or empty when it is singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Column space of m as an RREF basis (vectors of length m.rows()).
std::vector<Vector> column_space(const Matrix& m);

/// Kernel of m (vectors of length m.cols()).
std::vector<Vector> kernel(const Matrix& m);

}  // namespace lls::exactalg
