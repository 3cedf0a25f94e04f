#include "gcn/gf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace gcn {

namespace {

// --- polynomial helpers over GF(p), coefficients low degree first ---

using Poly = std::vector<uint32_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
    // p prime, a != 0 (mod p); Fermat
    uint64_t r = 1, b = a % p, n = p - 2;
    while (n) {
        if (n & 1) r = r * b % p;
        b = b * b % p;
        n >>= 1;
    }
    return static_cast<uint32_t>(r);
}

// remainder of a / b over GF(p); b monic-normalized internally
Poly poly_mod(Poly a, const Poly& b, uint32_t p) {
    poly_trim(a);
    const size_t db = b.size() - 1;
    const uint32_t lead_inv = mod_inverse(b.back(), p);
    while (a.size() > db) {
        const uint64_t c = static_cast<uint64_t>(a.back()) * lead_inv % p;
        if (c != 0) {
            const size_t shift = a.size() - 1 - db;
            for (size_t i = 0; i <= db; ++i) {
                uint64_t v = a[shift + i] + static_cast<uint64_t>(p) -
                             static_cast<uint64_t>(c) * b[i] % p;
                a[shift + i] = static_cast<uint32_t>(v % p);
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

// Irreducibility by trial division against all monic polynomials of degree
// 1..deg/2 over GF(p).
bool poly_irreducible(const Poly& f, uint32_t p) {
    const size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (size_t d = 1; d <= deg / 2; ++d) {
        // all monic divisor candidates of degree d: p^d of them
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        Poly g(d + 1, 0);
        g[d] = 1;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t v = idx;
            for (size_t i = 0; i < d; ++i) {
                g[i] = static_cast<uint32_t>(v % p);
                v /= p;
            }
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

// Lexicographically smallest (coefficients compared low-degree-first) monic
// irreducible polynomial of degree e over GF(p).
Poly smallest_irreducible(uint32_t p, uint32_t e) {
    Poly f(e + 1, 0);
    f[e] = 1;
    if (e == 1) return f;  // x itself
    uint64_t count = 1;
    for (uint32_t i = 0; i < e; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
        // idx encodes (c_0, ..., c_{e-1}) with c_0 as the most significant
        // digit, so increasing idx is increasing low-degree-first lex order.
        uint64_t v = idx;
        for (uint32_t i = e; i-- > 0;) {
            f[i] = static_cast<uint32_t>(v % p);
            v /= p;
        }
        if (poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

bool factor_prime_power(uint64_t q, uint32_t& p, uint32_t& e) {
    if (q < 2) return false;
    uint64_t n = q;
    uint64_t base = 0;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            base = d;
            break;
        }
    }
    if (base == 0) base = n;  // q prime
    uint32_t exp = 0;
    while (n % base == 0) {
        n /= base;
        ++exp;
    }
    if (n != 1) return false;  // second prime factor remains
    p = static_cast<uint32_t>(base);
    e = exp;
    return true;
}

}  // namespace

Gf::Gf(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < e_; ++i) q *= p_;
    q_ = static_cast<uint32_t>(q);
    if (e_ > 1) build_tables();
}

FieldPtr Gf::make(uint64_t order) {
    if (order < 2) throw NotAPrimePower("field order must be at least 2");
    if (order > (1u << 20))
        throw std::invalid_argument("field order above 2^20 is unsupported");
    uint32_t p = 0, e = 0;
    if (!factor_prime_power(order, p, e))
        throw NotAPrimePower("field order " + std::to_string(order) + " is not a prime power");
    return FieldPtr(new Gf(p, e, smallest_irreducible(p, e)));
}

std::vector<uint32_t> Gf::coefficients(uint32_t a) const {
    std::vector<uint32_t> c(e_);
    for (uint32_t i = 0; i < e_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

uint32_t Gf::from_coefficients(std::span<const uint32_t> c) const {
    uint32_t a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * p_ + c[i] % p_;
    return a;
}

uint32_t Gf::add(uint32_t a, uint32_t b) const {
    if (e_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    uint32_t r = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        r += (a % p_ + b % p_) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

uint32_t Gf::neg(uint32_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    uint32_t r = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint32_t c = a % p_;
        r += (c == 0 ? 0 : p_ - c) * mul;
        a /= p_;
        mul *= p_;
    }
    return r;
}

uint32_t Gf::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Gf::mul_nocache(uint32_t a, uint32_t b) const {
    // schoolbook product of coefficient vectors, reduced by the modulus
    std::vector<uint32_t> prod(2 * e_ - 1, 0);
    const auto ca = coefficients(a);
    const auto cb = coefficients(b);
    for (uint32_t i = 0; i < e_; ++i) {
        if (ca[i] == 0) continue;
        for (uint32_t j = 0; j < e_; ++j)
            prod[i + j] = static_cast<uint32_t>(
                (prod[i + j] + static_cast<uint64_t>(ca[i]) * cb[j]) % p_);
    }
    Poly rem = poly_mod(prod, modulus_, p_);
    rem.resize(e_, 0);
    return from_coefficients(rem);
}

void Gf::build_tables() {
    // factor q-1 for multiplicative-order tests
    std::vector<uint32_t> prime_factors;
    {
        uint32_t n = q_ - 1;
        for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) prime_factors.push_back(n);
    }
    auto pow_nocache = [&](uint32_t a, uint32_t n) {
        uint32_t r = 1;
        while (n) {
            if (n & 1) r = mul_nocache(r, a);
            a = mul_nocache(a, a);
            n >>= 1;
        }
        return r;
    };
    uint32_t gen = 0;
    for (uint32_t g = 1; g < q_; ++g) {
        bool primitive = true;
        for (uint32_t f : prime_factors) {
            if (pow_nocache(g, (q_ - 1) / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = g;
            break;
        }
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    uint32_t cur = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = mul_nocache(cur, gen);
    }
}

uint32_t Gf::mul(uint32_t a, uint32_t b) const {
    if (e_ == 1) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

uint32_t Gf::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (e_ == 1) return mod_inverse(a, p_);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Gf::pow(uint32_t a, uint64_t n) const {
    uint32_t r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldPtr field, int64_t rows, int64_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows * cols), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

Matrix Matrix::identity(FieldPtr field, int64_t n) {
    Matrix m(std::move(field), n, n);
    for (int64_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<uint32_t>>& rows) {
    const int64_t r = static_cast<int64_t>(rows.size());
    const int64_t c = r == 0 ? 0 : static_cast<int64_t>(rows[0].size());
    Matrix m(std::move(field), r, c);
    for (int64_t i = 0; i < r; ++i) {
        if (static_cast<int64_t>(rows[i].size()) != c)
            throw std::invalid_argument("ragged rows");
        for (int64_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           field_->same_field(*other.field_) && a_ == other.a_;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
    if (!field_->same_field(*other.field_)) throw FieldMismatch("matrix product field mismatch");
    const Gf& f = *field_;
    Matrix out(field_, rows_, other.cols_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t k = 0; k < cols_; ++k) {
            const uint32_t aik = at(i, k);
            if (aik == 0) continue;
            for (int64_t j = 0; j < other.cols_; ++j) {
                const uint32_t v = f.mul(aik, other.at(k, j));
                if (v) out.set(i, j, f.add(out.at(i, j), v));
            }
        }
    return out;
}

std::vector<uint32_t> Matrix::apply(std::span<const uint32_t> x) const {
    if (static_cast<int64_t>(x.size()) != cols_)
        throw std::invalid_argument("vector length mismatch");
    const Gf& f = *field_;
    std::vector<uint32_t> y(static_cast<size_t>(rows_), 0);
    for (int64_t i = 0; i < rows_; ++i) {
        uint32_t acc = 0;
        for (int64_t j = 0; j < cols_; ++j) acc = f.add(acc, f.mul(at(i, j), x[j]));
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

Matrix Matrix::row_slice(int64_t first, int64_t count) const {
    Matrix out(field_, count, cols_);
    for (int64_t i = 0; i < count; ++i)
        for (int64_t j = 0; j < cols_; ++j) out.set(i, j, at(first + i, j));
    return out;
}

Matrix Matrix::vstack(std::span<const Matrix> blocks) {
    if (blocks.empty()) throw std::invalid_argument("vstack of nothing");
    int64_t rows = 0;
    for (const Matrix& b : blocks) {
        rows += b.rows();
        if (b.cols() != blocks[0].cols()) throw std::invalid_argument("vstack width mismatch");
        if (!b.field()->same_field(*blocks[0].field())) throw FieldMismatch("vstack field mismatch");
    }
    Matrix out(blocks[0].field(), rows, blocks[0].cols());
    int64_t r = 0;
    for (const Matrix& b : blocks) {
        std::copy(b.data().begin(), b.data().end(),
                  out.data().begin() + static_cast<size_t>(r * out.cols()));
        r += b.rows();
    }
    return out;
}

MatrixEchelon Matrix::rref() const {
    const Gf& f = *field_;
    Matrix m = *this;
    std::vector<int64_t> pivots;
    int64_t rank = 0;
    for (int64_t col = 0; col < cols_ && rank < rows_; ++col) {
        int64_t piv = -1;
        for (int64_t i = rank; i < rows_; ++i) {
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            for (int64_t j = 0; j < cols_; ++j) {
                const uint32_t tmp = m.at(rank, j);
                m.set(rank, j, m.at(piv, j));
                m.set(piv, j, tmp);
            }
        const uint32_t s = f.inv(m.at(rank, col));
        if (s != 1)
            for (int64_t j = col; j < cols_; ++j) m.set(rank, j, f.mul(s, m.at(rank, j)));
        for (int64_t i = 0; i < rows_; ++i) {
            if (i == rank) continue;
            const uint32_t c = m.at(i, col);
            if (c == 0) continue;
            for (int64_t j = col; j < cols_; ++j)
                m.set(i, j, f.sub(m.at(i, j), f.mul(c, m.at(rank, j))));
        }
        pivots.push_back(col);
        ++rank;
    }
    return MatrixEchelon{std::move(m), rank, std::move(pivots)};
}

int64_t Matrix::rank() const { return rref().rank; }

std::optional<LinearSystemSolution> solve_linear(const Matrix& a, std::span<const uint32_t> y) {
    if (static_cast<int64_t>(y.size()) != a.rows())
        throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (int64_t i = 0; i < a.rows(); ++i) {
        for (int64_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols(), y[static_cast<size_t>(i)]);
    }
    const MatrixEchelon e = aug.rref();
    for (int64_t p : e.pivot_cols)
        if (p == a.cols()) return std::nullopt;  // pivot in RHS column: inconsistent
    std::vector<uint32_t> x(static_cast<size_t>(a.cols()), 0);
    for (size_t i = 0; i < e.pivot_cols.size(); ++i)
        x[static_cast<size_t>(e.pivot_cols[i])] = e.reduced.at(static_cast<int64_t>(i), a.cols());
    return LinearSystemSolution{std::move(x), e.rank == a.cols()};
}

// -------------------------------------------------------------- Subspace

Subspace Subspace::zero(FieldPtr field, int64_t ambient) {
    return Subspace(Matrix(std::move(field), 0, ambient));
}

Subspace Subspace::from_rows(const Matrix& m) {
    const MatrixEchelon e = m.rref();
    return Subspace(e.reduced.row_slice(0, e.rank));
}

bool Subspace::operator<(const Subspace& other) const {
    if (dim() != other.dim()) return dim() < other.dim();
    return basis_.data() < other.basis_.data();
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_dim() != other.ambient_dim())
        throw AmbientMismatch("subspace sum: ambient dimensions differ");
    const Matrix stacked[] = {basis_, other.basis_};
    return from_rows(Matrix::vstack(stacked));
}

Subspace Subspace::dual() const {
    // kernel of the basis matrix under the standard bilinear form
    const MatrixEchelon e = basis_.rref();  // basis is already RREF; reuse pivots
    const int64_t n = ambient_dim();
    const int64_t k = dim();
    const Gf& f = *field();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int64_t p : e.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
    Matrix ker(field(), n - k, n);
    int64_t row = 0;
    for (int64_t j = 0; j < n; ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        ker.set(row, j, 1);
        for (int64_t i = 0; i < k; ++i)
            ker.set(row, e.pivot_cols[static_cast<size_t>(i)], f.neg(e.reduced.at(i, j)));
        ++row;
    }
    return from_rows(ker);
}

int64_t Subspace::intersection_dim(const Subspace& other) const {
    return dim() + other.dim() - sum(other).dim();
}

bool Subspace::contains(std::span<const uint32_t> v) const {
    if (static_cast<int64_t>(v.size()) != ambient_dim())
        throw std::invalid_argument("vector length mismatch");
    const Gf& f = *field();
    std::vector<uint32_t> rem(v.begin(), v.end());
    const MatrixEchelon e = basis_.rref();
    for (size_t i = 0; i < e.pivot_cols.size(); ++i) {
        const uint32_t c = rem[static_cast<size_t>(e.pivot_cols[i])];
        if (c == 0) continue;
        for (int64_t j = 0; j < ambient_dim(); ++j)
            rem[static_cast<size_t>(j)] =
                f.sub(rem[static_cast<size_t>(j)], f.mul(c, basis_.at(static_cast<int64_t>(i), j)));
    }
    return std::all_of(rem.begin(), rem.end(), [](uint32_t c) { return c == 0; });
}

// --------------------------------------------------- Grassmannian stream

void grassmannian_for_each(const FieldPtr& field, int64_t n, int64_t k,
                           const std::function<bool(const Subspace&)>& fn) {
    if (k < 0 || k > n) throw std::invalid_argument("grassmannian: need 0 <= k <= n");
    if (n >= 63) throw std::invalid_argument("grassmannian: ambient dimension too large");
    if (k == 0) {
        fn(Subspace::zero(field, n));
        return;
    }
    const uint32_t q = field->order();
    // colex order on pivot sets == increasing characteristic bitmask
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
        if (std::popcount(mask) != static_cast<int>(k)) continue;
        std::vector<int64_t> pivots;
        for (int64_t j = 0; j < n; ++j)
            if (mask >> j & 1) pivots.push_back(j);
        // free cells: (i, j) with j > pivots[i], j not a pivot column
        std::vector<std::pair<int64_t, int64_t>> free_cells;
        for (int64_t i = 0; i < k; ++i)
            for (int64_t j = pivots[static_cast<size_t>(i)] + 1; j < n; ++j)
                if (!(mask >> j & 1)) free_cells.emplace_back(i, j);
        uint64_t total = 1;
        for (size_t i = 0; i < free_cells.size(); ++i) total *= q;
        for (uint64_t code = 0; code < total; ++code) {
            Matrix m(field, k, n);
            for (int64_t i = 0; i < k; ++i) m.set(i, pivots[static_cast<size_t>(i)], 1);
            uint64_t c = code;
            for (size_t f = free_cells.size(); f-- > 0;) {
                m.set(free_cells[f].first, free_cells[f].second,
                      static_cast<uint32_t>(c % q));
                c /= q;
            }
            if (!fn(Subspace::from_rows(m))) return;
        }
    }
}

std::vector<Subspace> grassmannian(const FieldPtr& field, int64_t n, int64_t k) {
    std::vector<Subspace> out;
    grassmannian_for_each(field, n, k, [&](const Subspace& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

}  // namespace gcn
