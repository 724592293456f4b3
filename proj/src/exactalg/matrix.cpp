#include "lls/exactalg/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace lls::exactalg {

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(field, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Matrix Matrix::from_ints(FieldSpec field, const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

std::vector<Vector> Matrix::row_list() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void Matrix::append_row(const Vector& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix p(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) p.at(i, j) += a * b;
      }
    }
  return p;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector out(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !at(i, j).is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

Matrix Matrix::stack(const Matrix& below) const {
  if (cols_ != below.cols_) throw std::invalid_argument("stack: column mismatch");
  Matrix m = *this;
  m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
  m.rows_ += below.rows_;
  return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
  if (rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
  Matrix m(field_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m.at(i, cols_ + j) = right.at(i, j);
  }
  return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= c;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar factor = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m.at(r, j).is_zero()) m.at(i, j) -= factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RankKernel rank_and_kernel(const Matrix& m) {
  Matrix work = m;
  auto pivots = rref_in_place(work);
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> raw;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), m.field().zero());
    v[f] = m.field().one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work.at(i, f);
    raw.push_back(std::move(v));
  }
  out.kernel_basis = span_basis(m.field(), m.cols(), raw);
  return out;
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return rref_in_place(work).size();
}

Matrix span_matrix(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& vectors) {
  Matrix m = Matrix::from_rows(field, dim, vectors);
  auto pivots = rref_in_place(m);
  Matrix out(field, 0, dim);
  for (std::size_t i = 0; i < pivots.size(); ++i) out.append_row(m.row(i));
  return out;
}

std::vector<Vector> span_basis(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& vectors) {
  return span_matrix(field, dim, vectors).row_list();
}

std::vector<Vector> subspace_sum(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                                 const std::vector<Vector>& b) {
  std::vector<Vector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return span_basis(field, dim, all);
}

std::vector<Vector> subspace_intersect(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                                       const std::vector<Vector>& b) {
  auto ba = span_basis(field, dim, a);
  auto bb = span_basis(field, dim, b);
  if (ba.empty() || bb.empty()) return {};
  // x in span(a) ∩ span(b) iff x = A^T y = B^T z; solve [A^T | -B^T] (y,z) = 0.
  Matrix sys(field, dim, ba.size() + bb.size());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < ba.size(); ++k) sys.at(i, k) = ba[k][i];
    for (std::size_t k = 0; k < bb.size(); ++k) sys.at(i, ba.size() + k) = -bb[k][i];
  }
  auto rk = rank_and_kernel(sys);
  std::vector<Vector> out;
  for (const auto& yz : rk.kernel_basis) {
    Vector x(dim, field.zero());
    for (std::size_t k = 0; k < ba.size(); ++k)
      if (!yz[k].is_zero())
        for (std::size_t i = 0; i < dim; ++i) x[i] += yz[k] * ba[k][i];
    out.push_back(std::move(x));
  }
  return span_basis(field, dim, out);
}

Matrix annihilator(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& basis) {
  Matrix m = Matrix::from_rows(field, dim, basis);
  auto rk = rank_and_kernel(m);
  return Matrix::from_rows(field, dim, rk.kernel_basis);
}

bool coordinates_in_rref(const std::vector<Vector>& basis, const std::vector<std::size_t>& pivots, const Vector& v,
                         Vector& coords) {
  coords.clear();
  if (basis.empty()) return is_zero_vector(v);
  const FieldSpec field = [&] {
    return basis.front().front().is_rational() ? FieldSpec::rationals()
                                               : FieldSpec::prime(basis.front().front().modulus());
  }();
  Vector residual = v;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Scalar c = v[pivots[i]];
    coords.push_back(c);
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!basis[i][j].is_zero()) residual[j] -= c * basis[i][j];
  }
  (void)field;
  return is_zero_vector(residual);
}

bool contained_in(const FieldSpec& field, std::size_t dim, const std::vector<Vector>& a,
                  const std::vector<Vector>& b) {
  auto bb = span_basis(field, dim, b);
  return subspace_sum(field, dim, bb, a).size() == bb.size();
}

bool solve(const Matrix& m, const Vector& rhs, Vector& x) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug = m.hstack(Matrix::from_rows(m.field(), 1, [&] {
    std::vector<Vector> col;
    for (const auto& r : rhs) col.push_back(Vector{r});
    return col;
  }()));
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return false;
  x.assign(m.cols(), m.field().zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return true;
}

Vector zero_vector(const FieldSpec& field, std::size_t n) { return Vector(n, field.zero()); }

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace lls::exactalg

namespace lls::exactalg {

std::vector<std::vector<Vector>> enumerate_subspaces(const FieldSpec& field, std::size_t n, std::size_t k) {
  if (!field.is_prime()) throw FieldError("subspace enumeration needs a prime field");
  std::vector<std::vector<Vector>> out;
  if (k > n) return out;
  const std::uint32_t p = field.characteristic();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free slots: row i, column c > piv[i] that is not a pivot column.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = piv[i] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) slots.emplace_back(i, c);
    std::vector<std::uint32_t> digits(slots.size(), 0);
    while (true) {
      std::vector<Vector> rows(k, Vector(n, field.zero()));
      for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = field.one();
      for (std::size_t s = 0; s < slots.size(); ++s) rows[slots[s].first][slots[s].second] = field.element(digits[s]);
      out.push_back(std::move(rows));
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == p) digits[s++] = 0;
      if (s == digits.size()) break;
    }
    // Next pivot combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<Vector> random_subspace(const FieldSpec& field, std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (k > n) throw std::invalid_argument("random_subspace: dimension exceeds ambient dimension");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < k; ++i) {
      Vector v;
      for (std::size_t j = 0; j < n; ++j) v.push_back(field.random(rng));
      rows.push_back(std::move(v));
    }
    auto b = span_basis(field, n, rows);
    if (b.size() == k) return b;
  }
  throw std::runtime_error("random_subspace: no independent rows found");
}

}  // namespace lls::exactalg

namespace lls::exactalg {

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  std::size_t n = m.rows();
  Matrix aug = m.hstack(Matrix::identity(m.field(), n));
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots.back() >= n)) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

std::vector<Vector> column_space(const Matrix& m) {
  return span_basis(m.field(), m.rows(), m.transpose().row_list());
}

std::vector<Vector> kernel(const Matrix& m) { return rank_and_kernel(m).kernel_basis; }

}  // namespace lls::exactalg
