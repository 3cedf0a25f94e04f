#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic over prime-power finite fields GF(p^e), dense matrices,
// and canonical subspace algebra.
//
// Field elements are stored as integer codes in [0, q): the code of an
// element with coefficient vector (c_0, ..., c_{e-1}) over GF(p) is
// sum c_i * p^i (low-degree coefficient first).

namespace gcn {

struct NotAPrimePower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AmbientMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Gf;
using FieldPtr = std::shared_ptr<const Gf>;

/// A finite field GF(p^e). Construct through Gf::make(q); the modulus is the
/// lexicographically smallest monic irreducible polynomial of degree e over
/// GF(p), coefficients compared low-degree-first, so two fields of the same
/// order are always represented identically.
class Gf {
  public:
    static FieldPtr make(uint64_t order);

    uint32_t characteristic() const { return p_; }
    uint32_t extension_degree() const { return e_; }
    uint32_t order() const { return q_; }
    /// Modulus coefficients, low degree first, length e+1, monic.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool same_field(const Gf& other) const { return p_ == other.p_ && e_ == other.e_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t n) const;

    /// Coefficient vector (length e) of an element code, low degree first.
    std::vector<uint32_t> coefficients(uint32_t a) const;
    uint32_t from_coefficients(std::span<const uint32_t> c) const;

  private:
    Gf(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);
    void build_tables();
    uint32_t mul_nocache(uint32_t a, uint32_t b) const;

    uint32_t p_ = 0;
    uint32_t e_ = 0;
    uint32_t q_ = 0;
    std::vector<uint32_t> modulus_;
    // discrete-log tables for extension fields (empty for prime fields)
    std::vector<uint32_t> exp_;
    std::vector<uint32_t> log_;
};

struct MatrixEchelon;

/// Dense matrix over a finite field, row-major entry codes.
class Matrix {
  public:
    Matrix(FieldPtr field, int64_t rows, int64_t cols);  // zero-filled
    static Matrix identity(FieldPtr field, int64_t n);
    static Matrix from_rows(FieldPtr field, const std::vector<std::vector<uint32_t>>& rows);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    uint32_t at(int64_t i, int64_t j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }
    void set(int64_t i, int64_t j, uint32_t v) { a_[static_cast<size_t>(i * cols_ + j)] = v; }
    const std::vector<uint32_t>& data() const { return a_; }
    std::vector<uint32_t>& data() { return a_; }

    bool operator==(const Matrix& other) const;

    Matrix operator*(const Matrix& other) const;
    std::vector<uint32_t> apply(std::span<const uint32_t> x) const;
    Matrix transposed() const;
    Matrix row_slice(int64_t first, int64_t count) const;
    static Matrix vstack(std::span<const Matrix> blocks);

    /// Reduced row echelon form. Deterministic: pivots are the first nonzero
    /// column entries scanning columns left to right, rows top-down.
    MatrixEchelon rref() const;
    int64_t rank() const;

  private:
    FieldPtr field_;
    int64_t rows_;
    int64_t cols_;
    std::vector<uint32_t> a_;
};

struct MatrixEchelon {
    Matrix reduced;
    int64_t rank;
    std::vector<int64_t> pivot_cols;
};

struct LinearSystemSolution {
    std::vector<uint32_t> x;
    bool unique;  // rank == cols
};

/// Solve A x = y. Returns std::nullopt when inconsistent. The returned x is
/// the particular solution with all free variables set to zero.
std::optional<LinearSystemSolution> solve_linear(const Matrix& a, std::span<const uint32_t> y);

/// A subspace of F_q^n held as its unique RREF basis (k x n, full row rank).
/// Equality of subspaces is equality of bases.
class Subspace {
  public:
    static Subspace zero(FieldPtr field, int64_t ambient);
    static Subspace from_rows(const Matrix& m);

    int64_t ambient_dim() const { return basis_.cols(); }
    int64_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const FieldPtr& field() const { return basis_.field(); }

    bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
    /// Total order: by dimension, then basis entries row-major.
    bool operator<(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;  // throws AmbientMismatch
    Subspace dual() const;
    int64_t intersection_dim(const Subspace& other) const;
    bool contains(std::span<const uint32_t> v) const;

  private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

/// Enumerates every k-dimensional subspace of F_q^n exactly once, in a fixed
/// deterministic order: RREF pivot-column sets in colexicographic order, and
/// for each pivot set the free entries counted as base-q integers (row-major
/// free cell order, first cell most significant). The callback may return
/// false to stop early.
void grassmannian_for_each(const FieldPtr& field, int64_t n, int64_t k,
                           const std::function<bool(const Subspace&)>& fn);

std::vector<Subspace> grassmannian(const FieldPtr& field, int64_t n, int64_t k);

}  // namespace gcn
