#include "conicmin/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "conicmin/error.hpp"

namespace conicmin {

namespace {

void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) throw Error(code, message);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw Error(ErrorCode::kParseError, "empty rational literal");
  auto digits_only = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) {
      return std::isdigit(c);
    });
  };
  bool negative = false;
  std::string_view body(s);
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Scalar value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) {
      throw Error(ErrorCode::kParseError, "bad rational literal '" + s + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + s + "'");
    value = Scalar(Integer(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !digits_only(whole)) ||
        (!frac.empty() && !digits_only(frac)) || (whole.empty() && frac.empty())) {
      throw Error(ErrorCode::kParseError, "bad decimal literal '" + s + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole), 10);
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac), 10);
    value = Scalar(w * scale + f, scale);
  } else {
    if (!digits_only(body)) {
      throw Error(ErrorCode::kParseError, "bad integer literal '" + s + "'");
    }
    value = Scalar(Integer(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Scalar(-value) : value;
}

std::string format_scalar(const Scalar& value) { return value.get_str(); }

Integer floor_of(const Scalar& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Scalar& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer round_of(const Scalar& value) { return floor_of(value + Scalar(1, 2)); }

Scalar from_double(double value) {
  require(std::isfinite(value), ErrorCode::kInvalidArgument,
          "non-finite double cannot be made exact");
  return Scalar(value);
}

double to_double(const Scalar& value) { return value.get_d(); }

std::optional<std::pair<Integer, Integer>> integer_interval(
    const Scalar& center, const Scalar& radius_sq) {
  if (sgn(radius_sq) < 0) return std::nullopt;
  auto inside = [&](const Integer& m) {
    Scalar d = Scalar(m) - center;
    return d * d <= radius_sq;
  };
  double approx = std::sqrt(radius_sq.get_d());
  Scalar s = std::isfinite(approx) ? Scalar(approx) : radius_sq;
  Integer lo = floor_of(center - s);
  Integer hi = ceil_of(center + s);
  // The approximation is within a few ulps; walk to the exact endpoints.
  while (inside(lo)) --lo;
  while (lo <= hi && !inside(lo)) ++lo;
  if (lo > hi) return std::nullopt;
  while (inside(hi + 1)) ++hi;
  while (!inside(hi)) --hi;
  return std::make_pair(lo, hi);
}

Scalar sqrt_upper(const Scalar& value, unsigned bits) {
  require(sgn(value) >= 0, ErrorCode::kInvalidArgument, "sqrt of negative value");
  Integer scale = Integer(1) << (2 * bits);
  Integer scaled = floor_of(value * Scalar(scale));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = Integer(1) << bits;
  Scalar candidate(root, den);
  while (candidate * candidate < value) {
    ++root;
    candidate = Scalar(root, den);
  }
  candidate.canonicalize();
  return candidate;
}

// ---------------------------------------------------------------- Vector

Vector Vector::unit(std::size_t dim, std::size_t index) {
  Vector v(dim);
  v[index] = 1;
  return v;
}

Vector& Vector::operator+=(const Vector& other) {
  require(size() == other.size(), ErrorCode::kShapeMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require(size() == other.size(), ErrorCode::kShapeMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& factor) {
  for (auto& e : entries_) e *= factor;
  return *this;
}

Scalar Vector::dot(const Vector& other) const {
  require(size() == other.size(), ErrorCode::kShapeMismatch, "vector sizes differ");
  Scalar sum = 0;
  for (std::size_t i = 0; i < size(); ++i) sum += entries_[i] * other.entries_[i];
  return sum;
}

bool Vector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& e) { return sgn(e) == 0; });
}

bool Vector::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& e) { return e.get_den() == 1; });
}

std::vector<double> Vector::to_doubles() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& e : entries_) out.push_back(e.get_d());
  return out;
}

Vector Vector::from_doubles(const std::vector<double>& values) {
  Vector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = from_double(values[i]);
  return v;
}

std::string Vector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].get_str();
  }
  return out + ")";
}

bool operator<(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                      b.entries_.begin(), b.entries_.end());
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= Scalar(-1); }
Vector operator*(const Scalar& factor, Vector v) { return v *= factor; }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorCode::kShapeMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const Vector& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorCode::kShapeMismatch, "row size mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  require(v.size() == rows_, ErrorCode::kShapeMismatch, "column size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
  require(first + count <= cols_, ErrorCode::kShapeMismatch, "column block out of range");
  Matrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& e) { return e.get_den() == 1; });
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& e) { return sgn(e) == 0; });
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ", ";
    out += row(i).to_string();
  }
  return out + "]";
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::kShapeMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require(a.cols() == v.size(), ErrorCode::kShapeMismatch, "matrix-vector shape");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar sum = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

Matrix operator*(const Scalar& factor, Matrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kShapeMismatch,
          "matrix sum shape");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return a + Scalar(-1) * b;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Scalar determinant(const Matrix& a) {
  require(a.is_square(), ErrorCode::kShapeMismatch, "determinant of non-square matrix");
  Matrix m = a;
  const std::size_t n = m.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Scalar f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  return rref(m, m.cols()).size();
}

Matrix invert(const Matrix& a) {
  require(a.is_square(), ErrorCode::kShapeMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  if (rref(aug, n).size() != n) throw Error(ErrorCode::kSingular, "matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

LinearSolution solve_linear(const Matrix& a, const Vector& b) {
  require(a.rows() == b.size(), ErrorCode::kShapeMismatch, "rhs size mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref(aug, n + 1);
  LinearSolution out;
  bool infeasible = !pivots.empty() && pivots.back() == n;
  if (infeasible) pivots.pop_back();

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector k(n);
    k[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, f);
    kernel.push_back(std::move(k));
  }
  out.kernel = Matrix::from_columns(kernel, n);
  if (!infeasible) {
    Vector x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
    out.particular = std::move(x);
  }
  return out;
}

namespace {

// cols (p, q) <- (s*p + t*q, -(b/g)*p + (a/g)*q), a unimodular 2x2 step.
void combine_columns(Matrix& m, std::size_t p, std::size_t q, const Integer& s,
                     const Integer& t, const Integer& bg, const Integer& ag) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Scalar x = m(i, p);
    Scalar y = m(i, q);
    m(i, p) = Scalar(s) * x + Scalar(t) * y;
    m(i, q) = -Scalar(bg) * x + Scalar(ag) * y;
  }
}

void add_column_multiple(Matrix& m, std::size_t target, std::size_t source,
                         const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += Scalar(factor) * m(i, source);
}

void negate_column(Matrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

void swap_columns(Matrix& m, std::size_t p, std::size_t q) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, p), m(i, q));
}

}  // namespace

HermiteForm hnf(const Matrix& m) {
  require(m.is_integral(), ErrorCode::kInvalidArgument, "hnf needs an integer matrix");
  HermiteForm out{m, Matrix::identity(m.cols()), 0};
  Matrix& h = out.h;
  Matrix& u = out.u;
  const std::size_t k = m.cols();
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m.rows() && pc < k; ++i) {
    for (std::size_t j = pc + 1; j < k; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      if (sgn(h(i, pc)) == 0) {
        swap_columns(h, pc, j);
        swap_columns(u, pc, j);
        continue;
      }
      Integer a = h(i, pc).get_num();
      Integer b = h(i, j).get_num();
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Integer ag = a / g;
      Integer bg = b / g;
      combine_columns(h, pc, j, s, t, bg, ag);
      combine_columns(u, pc, j, s, t, bg, ag);
    }
    if (sgn(h(i, pc)) == 0) continue;
    if (sgn(h(i, pc)) < 0) {
      negate_column(h, pc);
      negate_column(u, pc);
    }
    Integer pivot = h(i, pc).get_num();
    for (std::size_t l = 0; l < pc; ++l) {
      Integer q;
      Integer entry = h(i, l).get_num();
      mpz_fdiv_q(q.get_mpz_t(), entry.get_mpz_t(), pivot.get_mpz_t());
      add_column_multiple(h, l, pc, -q);
      add_column_multiple(u, l, pc, -q);
    }
    ++pc;
  }
  out.rank = pc;
  return out;
}

std::pair<Matrix, Vector> integral_rows(const Matrix& a, const Vector& b) {
  require(a.rows() == b.size(), ErrorCode::kShapeMismatch, "rhs size mismatch");
  Matrix ai = a;
  Vector bi = b;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = b[i].get_den();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    }
    Scalar f(l);
    for (std::size_t j = 0; j < a.cols(); ++j) ai(i, j) *= f;
    bi[i] *= f;
  }
  return {ai, bi};
}

}  // namespace conicmin
