#include "equitor/exact_linear.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "equitor/error.hpp"

namespace equitor {

namespace {

bool is_integer_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Int v;
  if (v.set_str(s, 10) != 0) throw InputError("invalid integer '" + s + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den))
    throw InputError("invalid rational '" + raw + "'");
  Int d = parse_int(den);
  if (d == 0) throw InputError("zero denominator in '" + raw + "'");
  Rational q(parse_int(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& value) { return value.get_str(); }
std::string to_string(const Rational& value) { return value.get_str(); }

Rational frac(const Rational& value) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  Rational r = value - Rational(f);
  r.canonicalize();
  return r;
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

Int lcm_of_denominators(const RationalVector& values) {
  Int l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  if (!columns.empty()) rows = columns[0].size();
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InputError("ragged matrix");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_row(std::size_t r, const IntVector& values) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = values[c];
}

void IntMatrix::set_column(std::size_t c, const IntVector& values) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  IntMatrix s(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) s(r, c) = (*this)(r0 + r, c0 + c);
  return s;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& indices) const {
  IntMatrix s(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) s(r, c) = (*this)(indices[r], c);
  return s;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& indices) const {
  IntMatrix s(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) s(r, c) = (*this)(r, indices[c]);
  return s;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("matrix product dimension mismatch");
  IntMatrix p(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Int& b = other(k, c);
        if (b != 0) mpz_addmul(p(r, c).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum dimension mismatch");
  IntMatrix s(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += other.data_[i];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix difference dimension mismatch");
  IntMatrix s(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= other.data_[i];
  return s;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix s(*this);
  for (auto& v : s.data_) v = -v;
  return s;
}

IntMatrix IntMatrix::scaled(const Int& factor) const {
  IntMatrix s(*this);
  for (auto& v : s.data_) v *= factor;
  return s;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Int& a = (*this)(r, c);
      if (a != 0 && v[c] != 0) mpz_addmul(out[r].get_mpz_t(), a.get_mpz_t(), v[c].get_mpz_t());
    }
  return out;
}

RationalVector IntMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Int& a = (*this)(r, c);
      if (a != 0 && v[c] != 0) out[r] += a * v[c];
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) m(a.rows() + r, c) = b(r, c);
  }
  return m;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

Int determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw InputError("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("inverse of non-square matrix");
  SmithForm s(a);
  if (s.rank() != a.rows() || !s.image_saturated())
    throw ValidationError("linear algebra", "matrix is not invertible over Z");
  // U A V = I, so A^{-1} = V U.
  return s.V() * s.U();
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

Rational dot(const RationalVector& a, const IntVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) s += a[i] * b[i];
  return s;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

IntVector to_integral(const RationalVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) throw SelfCheckError("expected an integral vector");
    r[i] = v[i].get_num();
  }
  return r;
}

// -------------------------------------------------------------- QmodZVector

QmodZVector::QmodZVector(RationalVector values) : values_(std::move(values)) {
  for (auto& v : values_) v = frac(v);
}

bool QmodZVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

Int QmodZVector::order() const { return lcm_of_denominators(values_); }

QmodZVector QmodZVector::operator+(const QmodZVector& other) const {
  QmodZVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.values_[i] = frac(values_[i] + other.values_[i]);
  return r;
}

QmodZVector QmodZVector::operator-(const QmodZVector& other) const {
  QmodZVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.values_[i] = frac(values_[i] - other.values_[i]);
  return r;
}

QmodZVector QmodZVector::operator-() const {
  QmodZVector r(*this);
  for (auto& v : r.values_) v = frac(-v);
  return r;
}

QmodZVector QmodZVector::scaled(const Int& factor) const {
  QmodZVector r(*this);
  for (auto& v : r.values_) v = frac(v * factor);
  return r;
}

std::string QmodZVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) os << (i ? ", " : "") << values_[i].get_str();
  os << ')';
  return os.str();
}

QmodZVector operator*(const IntMatrix& m, const QmodZVector& v) {
  return QmodZVector(m * v.values());
}

// ---------------------------------------------------------------- SmithForm

SmithForm::SmithForm(const IntMatrix& input)
    : rows_(input.rows()),
      cols_(input.cols()),
      v_(IntMatrix::identity(input.cols())),
      v_inv_(IntMatrix::identity(input.cols())) {
  IntMatrix a = input;
  const std::size_t m = rows_, n = cols_;
  const std::size_t steps = std::min(m, n);
  diagonal_.assign(steps, Int(0));

  auto swap_rows = [&](std::size_t i, std::size_t j, std::size_t from) {
    for (std::size_t c = from; c < n; ++c) std::swap(a(i, c), a(j, c));
    ops_.push_back({RowOp::Swap, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Int(0)});
  };
  auto swap_cols = [&](std::size_t i, std::size_t j, std::size_t from) {
    for (std::size_t r = from; r < m; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(v_(r, i), v_(r, j));
    for (std::size_t c = 0; c < n; ++c) std::swap(v_inv_(i, c), v_inv_(j, c));
  };
  // row_i += q row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Int& q, std::size_t from) {
    for (std::size_t c = from; c < n; ++c)
      if (a(j, c) != 0) mpz_addmul(a(i, c).get_mpz_t(), q.get_mpz_t(), a(j, c).get_mpz_t());
    ops_.push_back({RowOp::AddMul, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), q});
  };
  // col_i += q col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Int& q, std::size_t from) {
    for (std::size_t r = from; r < m; ++r)
      if (a(r, j) != 0) mpz_addmul(a(r, i).get_mpz_t(), q.get_mpz_t(), a(r, j).get_mpz_t());
    for (std::size_t r = 0; r < n; ++r)
      if (v_(r, j) != 0) mpz_addmul(v_(r, i).get_mpz_t(), q.get_mpz_t(), v_(r, j).get_mpz_t());
    for (std::size_t c = 0; c < n; ++c)
      if (v_inv_(i, c) != 0) mpz_submul(v_inv_(j, c).get_mpz_t(), q.get_mpz_t(), v_inv_(i, c).get_mpz_t());
  };

  std::size_t t = 0;
  for (; t < steps; ++t) {
    bool found = true;
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m && !(pi < m && mpz_cmpabs_ui(a(pi, pj).get_mpz_t(), 1) == 0); ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = a(i, j);
          if (x == 0) continue;
          if (pi == m || mpz_cmpabs(x.get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) break;
          }
        }
      if (pi == m) {
        found = false;
        break;
      }
      if (pi != t) swap_rows(t, pi, t);
      if (pj != t) swap_cols(t, pj, t);
      bool dirty = false;
      Int q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (q != 0) add_row(i, t, -q, t);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (q != 0) add_col(j, t, -q, t);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      if (mpz_cmpabs_ui(a(t, t).get_mpz_t(), 1) != 0) {
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad != m) {
          add_row(t, bad, Int(1), t);
          continue;
        }
      }
      break;
    }
    if (!found) break;
    if (a(t, t) < 0) {
      a(t, t) = -a(t, t);
      ops_.push_back({RowOp::Negate, static_cast<std::uint32_t>(t), 0, Int(0)});
    }
    diagonal_[t] = a(t, t);
  }
  rank_ = t;
}

template <class T>
void SmithForm::replay(std::vector<T>& v) const {
  if (v.size() != rows_) throw InputError("vector length does not match matrix rows");
  for (const auto& op : ops_) {
    switch (op.kind) {
      case RowOp::Swap: std::swap(v[op.i], v[op.j]); break;
      case RowOp::AddMul:
        if (v[op.j] != 0) v[op.i] += op.q * v[op.j];
        break;
      case RowOp::Negate: v[op.i] = -v[op.i]; break;
    }
  }
}

template <class T>
void SmithForm::replay_inverse(std::vector<T>& v) const {
  if (v.size() != rows_) throw InputError("vector length does not match matrix rows");
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    const auto& op = *it;
    switch (op.kind) {
      case RowOp::Swap: std::swap(v[op.i], v[op.j]); break;
      case RowOp::AddMul:
        if (v[op.j] != 0) v[op.i] -= op.q * v[op.j];
        break;
      case RowOp::Negate: v[op.i] = -v[op.i]; break;
    }
  }
}

void SmithForm::apply_U(IntVector& v) const { replay(v); }
void SmithForm::apply_U(RationalVector& v) const { replay(v); }
void SmithForm::apply_U_inverse(IntVector& v) const { replay_inverse(v); }
void SmithForm::apply_U_inverse(RationalVector& v) const { replay_inverse(v); }

IntMatrix SmithForm::U() const {
  IntMatrix u(rows_, rows_);
  for (std::size_t c = 0; c < rows_; ++c) {
    IntVector e(rows_);
    e[c] = 1;
    replay(e);
    u.set_column(c, e);
  }
  return u;
}

IntMatrix SmithForm::U_inverse() const {
  IntMatrix u(rows_, rows_);
  for (std::size_t c = 0; c < rows_; ++c) {
    IntVector e(rows_);
    e[c] = 1;
    replay_inverse(e);
    u.set_column(c, e);
  }
  return u;
}

IntMatrix SmithForm::D() const {
  IntMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < diagonal_.size(); ++i) d(i, i) = diagonal_[i];
  return d;
}

bool SmithForm::image_saturated() const {
  for (std::size_t i = 0; i < rank_; ++i)
    if (diagonal_[i] != 1) return false;
  return true;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithForm s(a);
  return {s.U(), s.D(), s.V()};
}

std::optional<RationalVector> solve_linear(const SmithForm& s, const RationalVector& b,
                                           SolveMode mode) {
  if (b.size() != s.rows()) throw InputError("right-hand side has wrong length");
  if (mode == SolveMode::Integer)
    for (const auto& x : b)
      if (!is_integral(x)) return std::nullopt;
  RationalVector c = b;
  s.apply_U(c);
  RationalVector y(s.cols());
  for (std::size_t k = 0; k < s.rank(); ++k) {
    Rational v = c[k] / s.diagonal()[k];
    v.canonicalize();
    if (mode == SolveMode::Integer && !is_integral(v)) return std::nullopt;
    y[k] = v;
  }
  for (std::size_t k = s.rank(); k < s.rows(); ++k) {
    if (mode == SolveMode::ModOne) {
      if (!is_integral(c[k])) return std::nullopt;
    } else if (c[k] != 0) {
      return std::nullopt;
    }
  }
  RationalVector x = s.V() * y;
  if (mode == SolveMode::ModOne)
    for (auto& v : x) v = frac(v);
  return x;
}

std::optional<RationalVector> solve_linear(const IntMatrix& a, const RationalVector& b,
                                           SolveMode mode) {
  return solve_linear(SmithForm(a), b, mode);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm s(a);
  std::vector<std::size_t> cols;
  for (std::size_t k = s.rank(); k < a.cols(); ++k) cols.push_back(k);
  return s.V().select_columns(cols);
}

IntMatrix left_inverse(const IntMatrix& a) {
  SmithForm s(a);
  if (s.rank() != a.cols() || !s.image_saturated())
    throw ValidationError("linear algebra", "map is not a split injection over Z");
  IntMatrix u = s.U();
  std::vector<std::size_t> top(a.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return s.V() * u.select_rows(top);
}

IntMatrix right_inverse(const IntMatrix& a) {
  SmithForm s(a);
  if (s.rank() != a.rows() || !s.image_saturated())
    throw ValidationError("linear algebra", "map is not surjective over Z");
  std::vector<std::size_t> left(a.rows());
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = i;
  return s.V().select_columns(left) * s.U();
}

// --------------------------------------------------------------- FinAbGroup

bool FinAbGroup::is_cyclic() const {
  return (free_rank == 0 && torsion.size() <= 1) || (free_rank == 1 && torsion.empty());
}

Int FinAbGroup::order() const {
  if (free_rank) throw InputError("order of an infinite group");
  Int o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

Int FinAbGroup::exponent() const {
  if (free_rank) return 0;
  return torsion.empty() ? Int(1) : torsion.back();
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  if (free_rank == 1) s = "Z";
  else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const auto& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

AbelianPresentation::AbelianPresentation(const IntMatrix& relations, std::size_t n) : n_(n) {
  if (relations.rows() > 0 && relations.cols() != n)
    throw InputError("relation vectors have wrong length");
  IntMatrix rel = relations.rows() ? relations : IntMatrix(0, n);
  SmithForm s(rel);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < s.rank(); ++k)
    if (s.diagonal()[k] != 1) {
      keep.push_back(k);
      moduli_.push_back(s.diagonal()[k]);
      group_.torsion.push_back(s.diagonal()[k]);
    }
  for (std::size_t k = s.rank(); k < n; ++k) {
    keep.push_back(k);
    moduli_.push_back(0);
    ++group_.free_rank;
  }
  projection_ = s.V().select_columns(keep).transpose();
  lift_ = s.V_inverse().select_rows(keep);
}

IntVector AbelianPresentation::reduce(const IntVector& v) const {
  IntVector y = projection_ * v;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (moduli_[i] != 0) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), moduli_[i].get_mpz_t());
  return y;
}

IntVector AbelianPresentation::generator(std::size_t i) const { return lift_.row(i); }

FinAbGroup fg_group_from_presentation(const IntMatrix& relations, std::size_t n) {
  return AbelianPresentation(relations, n).group();
}

FinAbGroup subgroup_structure(const std::vector<IntVector>& elements, const IntVector& moduli) {
  const std::size_t k = elements.size();
  if (k == 0) return {};
  const std::size_t q = moduli.size();
  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < q; ++i)
    if (moduli[i] != 0) torsion_rows.push_back(i);
  IntMatrix m(q, k + torsion_rows.size());
  for (std::size_t j = 0; j < k; ++j) {
    if (elements[j].size() != q) throw InputError("element coordinates have wrong length");
    for (std::size_t i = 0; i < q; ++i) m(i, j) = elements[j][i];
  }
  for (std::size_t t = 0; t < torsion_rows.size(); ++t)
    m(torsion_rows[t], k + t) = moduli[torsion_rows[t]];
  IntMatrix ker = kernel_basis(m);
  IntMatrix rel(ker.cols(), k);
  for (std::size_t c = 0; c < ker.cols(); ++c)
    for (std::size_t j = 0; j < k; ++j) rel(c, j) = ker(j, c);
  return fg_group_from_presentation(rel, k);
}

FinAbGroup subgroup_structure(const std::vector<QmodZVector>& elements) {
  if (elements.empty()) return {};
  Int n = 1;
  for (const auto& e : elements) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), e.order().get_mpz_t());
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < elements[0].size(); ++i)
    for (const auto& e : elements)
      if (e[i] != 0) {
        support.push_back(i);
        break;
      }
  std::vector<IntVector> coords;
  for (const auto& e : elements) {
    IntVector c;
    for (std::size_t i : support) {
      Rational s = e[i] * n;
      s.canonicalize();
      c.push_back(s.get_num());
    }
    coords.push_back(std::move(c));
  }
  return subgroup_structure(coords, IntVector(support.size(), n));
}

// ------------------------------------------------------------- LatticeBasis

IntVector& LatticeBasis::load(const IntVector& v) const {
  if (v.size() != ambient_) throw InputError("lattice vector has wrong length");
  if (work_.size() != ambient_) {
    work_.assign(ambient_, Int(0));
    tmp_row_.assign(ambient_, Int(0));
    tmp_v_.assign(ambient_, Int(0));
  }
  for (std::size_t k = 0; k < ambient_; ++k) mpz_set(work_[k].get_mpz_t(), v[k].get_mpz_t());
  return work_;
}

bool LatticeBasis::contains(const IntVector& input) const {
  IntVector& v = load(input);
  std::size_t r = 0;
  Int q;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (v[c] == 0) continue;
    while (r < rows_.size() && pivots_[r] < c) ++r;
    if (r == rows_.size() || pivots_[r] != c) return false;
    const IntVector& row = rows_[r];
    if (!mpz_divisible_p(v[c].get_mpz_t(), row[c].get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), v[c].get_mpz_t(), row[c].get_mpz_t());
    for (std::size_t k = c; k < ambient_; ++k)
      if (row[k] != 0) mpz_submul(v[k].get_mpz_t(), q.get_mpz_t(), row[k].get_mpz_t());
  }
  return true;
}

bool LatticeBasis::add(const IntVector& input) {
  IntVector& v = load(input);
  bool changed = false;
  std::size_t r = 0;
  Int q, g, s, t, a_g, b_g;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (v[c] == 0) continue;
    while (r < rows_.size() && pivots_[r] < c) ++r;
    if (r == rows_.size() || pivots_[r] != c) {
      IntVector fresh(v);
      if (fresh[c] < 0)
        for (auto& x : fresh) x = -x;
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(r), std::move(fresh));
      pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(r), c);
      return true;
    }
    IntVector& row = rows_[r];
    if (mpz_divisible_p(v[c].get_mpz_t(), row[c].get_mpz_t())) {
      mpz_divexact(q.get_mpz_t(), v[c].get_mpz_t(), row[c].get_mpz_t());
      for (std::size_t k = c; k < ambient_; ++k)
        if (row[k] != 0) mpz_submul(v[k].get_mpz_t(), q.get_mpz_t(), row[k].get_mpz_t());
      continue;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
    mpz_divexact(a_g.get_mpz_t(), row[c].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_g.get_mpz_t(), v[c].get_mpz_t(), g.get_mpz_t());
    for (std::size_t k = c; k < ambient_; ++k) {
      mpz_mul(tmp_row_[k].get_mpz_t(), s.get_mpz_t(), row[k].get_mpz_t());
      mpz_addmul(tmp_row_[k].get_mpz_t(), t.get_mpz_t(), v[k].get_mpz_t());
      mpz_mul(tmp_v_[k].get_mpz_t(), a_g.get_mpz_t(), v[k].get_mpz_t());
      mpz_submul(tmp_v_[k].get_mpz_t(), b_g.get_mpz_t(), row[k].get_mpz_t());
    }
    const bool negate = tmp_row_[c] < 0;
    for (std::size_t k = c; k < ambient_; ++k) {
      mpz_swap(row[k].get_mpz_t(), tmp_row_[k].get_mpz_t());
      if (negate) mpz_neg(row[k].get_mpz_t(), row[k].get_mpz_t());
      mpz_swap(v[k].get_mpz_t(), tmp_v_[k].get_mpz_t());
    }
    changed = true;
  }
  return changed;
}

IntMatrix LatticeBasis::basis() const { return IntMatrix::from_rows(rows_, ambient_); }

}  // namespace equitor
