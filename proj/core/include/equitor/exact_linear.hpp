#pragma once

// Exact integer and rational linear algebra: dense matrices over Z, Smith
// normal form with transformation tracking, solving over Z, Q and Q/Z, and
// finitely generated abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace equitor {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

// Parses "3", "-2/5" etc.; throws InputError on garbage or zero denominator.
Rational parse_rational(const std::string& text);
std::string to_string(const Int& value);
std::string to_string(const Rational& value);

// Representative in [0, 1).
Rational frac(const Rational& value);
bool is_integral(const Rational& value);
Int lcm_of_denominators(const RationalVector& values);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows = 0);
  static IntMatrix diagonal(const IntVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_row(std::size_t r, const IntVector& values);
  void set_column(std::size_t c, const IntVector& values);

  IntMatrix transpose() const;
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix select_rows(const std::vector<std::size_t>& indices) const;
  IntMatrix select_columns(const std::vector<std::size_t>& indices) const;
  bool is_zero() const;
  bool is_identity() const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Int& factor) const;
  IntVector operator*(const IntVector& v) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
Int determinant(const IntMatrix& a);
// Inverse of a unimodular matrix; throws if the matrix is not invertible over Z.
IntMatrix unimodular_inverse(const IntMatrix& a);

Int dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const IntVector& b);
RationalVector to_rational(const IntVector& v);
// Throws if some entry is not integral.
IntVector to_integral(const RationalVector& v);

// Element of (Q/Z)^n with entries kept in [0, 1).
class QmodZVector {
 public:
  QmodZVector() = default;
  explicit QmodZVector(std::size_t n) : values_(n) {}
  explicit QmodZVector(RationalVector values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, const Rational& value) { values_[i] = frac(value); }
  const RationalVector& values() const { return values_; }

  bool is_zero() const;
  Int order() const;
  QmodZVector operator+(const QmodZVector& other) const;
  QmodZVector operator-(const QmodZVector& other) const;
  QmodZVector operator-() const;
  QmodZVector scaled(const Int& factor) const;
  bool operator==(const QmodZVector& other) const = default;
  std::string to_string() const;

 private:
  RationalVector values_;
};

QmodZVector operator*(const IntMatrix& m, const QmodZVector& v);

// Smith normal form U A V = D. The row transformation is stored as an
// operation log so tall matrices do not require a dense U; V and V^{-1} are
// materialised. Pivot rule: entry of least nonzero absolute value, ties broken
// by lowest (row, column).
class SmithForm {
 public:
  explicit SmithForm(const IntMatrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }
  // Length min(rows, cols); positive for index < rank, zero afterwards.
  const IntVector& diagonal() const { return diagonal_; }
  const IntMatrix& V() const { return v_; }
  const IntMatrix& V_inverse() const { return v_inv_; }
  IntMatrix U() const;
  IntMatrix U_inverse() const;
  IntMatrix D() const;

  void apply_U(IntVector& v) const;
  void apply_U(RationalVector& v) const;
  void apply_U_inverse(IntVector& v) const;
  void apply_U_inverse(RationalVector& v) const;

  // True when every nonzero invariant factor is 1, i.e. the column span is
  // saturated in Z^rows.
  bool image_saturated() const;

 private:
  struct RowOp {
    enum Kind : std::uint8_t { Swap, AddMul, Negate } kind;
    std::uint32_t i;
    std::uint32_t j;
    Int q;  // AddMul: row_i += q * row_j
  };
  template <class T>
  void replay(std::vector<T>& v) const;
  template <class T>
  void replay_inverse(std::vector<T>& v) const;

  std::size_t rows_;
  std::size_t cols_;
  std::size_t rank_ = 0;
  IntVector diagonal_;
  IntMatrix v_;
  IntMatrix v_inv_;
  std::vector<RowOp> ops_;
};

struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

enum class SolveMode { Integer, Rational, ModOne };

// Solves A x = b. Integer: x in Z^n. Rational: x in Q^n. ModOne: x in Q^n
// with A x - b in Z^m, returned reduced into [0, 1).
std::optional<RationalVector> solve_linear(const IntMatrix& a, const RationalVector& b,
                                           SolveMode mode);
std::optional<RationalVector> solve_linear(const SmithForm& smith, const RationalVector& b,
                                           SolveMode mode);

// Columns form a basis of the integer kernel; the basis spans a saturated sublattice.
IntMatrix kernel_basis(const IntMatrix& a);
// X with X A = I for A with saturated image of full column rank; throws otherwise.
IntMatrix left_inverse(const IntMatrix& a);
// X with A X = I for surjective A; throws otherwise.
IntMatrix right_inverse(const IntMatrix& a);

// Z^r + Z/d1 + ... + Z/dk with 1 < d1 | d2 | ... | dk.
struct FinAbGroup {
  std::size_t free_rank = 0;
  IntVector torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  bool is_cyclic() const;
  // Order of a finite group; throws for infinite groups.
  Int order() const;
  Int exponent() const;
  std::string to_string() const;
  bool operator==(const FinAbGroup& other) const = default;
};

// The abelian group Z^n / (row span of relations), with a projection onto
// canonical coordinates. A coordinate with modulus 0 is free.
class AbelianPresentation {
 public:
  AbelianPresentation(const IntMatrix& relations, std::size_t n);

  const FinAbGroup& group() const { return group_; }
  std::size_t ambient_rank() const { return n_; }
  const IntVector& moduli() const { return moduli_; }
  // Canonical coordinates of the class of v in Z^n.
  IntVector reduce(const IntVector& v) const;
  // Preimage in Z^n of the i-th canonical generator.
  IntVector generator(std::size_t i) const;

 private:
  std::size_t n_;
  FinAbGroup group_;
  IntMatrix projection_;
  IntMatrix lift_;
  IntVector moduli_;
};

FinAbGroup fg_group_from_presentation(const IntMatrix& relations, std::size_t n);

// Structure of the subgroup generated by elements given by coordinates in
// a product of cyclic groups with the given moduli (0 = free coordinate).
FinAbGroup subgroup_structure(const std::vector<IntVector>& elements, const IntVector& moduli);
// Same for elements of (Q/Z)^n.
FinAbGroup subgroup_structure(const std::vector<QmodZVector>& elements);

// Incrementally maintained integer row echelon basis of a sublattice of Z^n.
class LatticeBasis {
 public:
  explicit LatticeBasis(std::size_t ambient) : ambient_(ambient) {}
  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  bool contains(const IntVector& v) const;
  // Returns false when v already lies in the lattice.
  bool add(const IntVector& v);
  IntMatrix basis() const;

 private:
  // Loads v into the reduction buffer without reallocating its entries.
  IntVector& load(const IntVector& v) const;

  std::size_t ambient_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
  mutable IntVector work_, tmp_row_, tmp_v_;
};

}  // namespace equitor
