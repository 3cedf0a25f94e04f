#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gcn/gf.hpp"
#include "gcn/network.hpp"
#include "gcn/qcomb.hpp"

// Builders of covering Grassmannian codes and network solutions: Gabidulin
// rank-metric codes, lifting, the dual-lifted-MRD covering construction, the
// randomized solver, and the exhaustive small-instance oracle.

namespace gcn {

struct InvalidDistance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParamViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SizeGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotEnoughCodewords : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters of an alpha-(n,k,delta)_q covering Grassmannian code: a multiset
/// of k-dim subspaces of F_q^n in which every alpha codewords (counted with
/// multiplicity) span a subspace of dimension at least k+delta.
struct CoveringCodeParams {
    int64_t n = 0;
    int64_t k = 0;
    int64_t delta = 0;
    int64_t alpha = 0;
    FieldPtr field;

    void validate() const;  // throws ParamViolation
};

struct CoveringCode {
    CoveringCodeParams params;
    /// Distinct codewords in canonical (Subspace::operator<) order with
    /// multiplicities >= 1.
    std::vector<std::pair<Subspace, int64_t>> codewords;

    int64_t size() const;  // total with multiplicity
    /// Exhaustively checks every alpha-multisubset span; quadratic in size,
    /// only for small codes.
    bool covering_property_holds() const;
};

/// Gabidulin code: rows x cols matrices over GF(q) with minimum rank distance
/// dist and q^K codewords, K = max(rows,cols) * (min(rows,cols) - dist + 1).
/// Codewords are evaluations of q-linearized polynomials at the first
/// min(rows,cols) powers of the polynomial-basis generator of GF(q^max),
/// indexed by coefficient tuples in base-q order; generated lazily.
class GabidulinCode {
  public:
    GabidulinCode(FieldPtr base, int64_t rows, int64_t cols, int64_t dist);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    int64_t distance() const { return dist_; }
    int64_t dimension_exponent() const { return k_exp_; }  // K
    BigNat size() const;                                   // q^K

    /// The index-th codeword; index must be < size() (and fit in 64 bits for
    /// enumeration use).
    Matrix codeword(uint64_t index) const;

  private:
    FieldPtr base_;
    int64_t rows_, cols_, dist_;
    int64_t m_, nn_;    // m = max(rows,cols), nn = min(rows,cols)
    int64_t k_exp_;     // K
    int64_t n_coeffs_;  // nn - dist + 1 coefficients over GF(q^m)
    // frob_pow_[i][j] = (j-th evaluation point)^(q^i) as GF(q^m) coefficient vectors
    std::vector<std::vector<std::vector<uint32_t>>> frob_pow_;
};

/// Rowspace of [I_k | A], the lifting of a k x (n-k) matrix.
Subspace lift(const Matrix& a);

/// Streams the dual-lifted-MRD covering code: the duals of all lifted
/// codewords of the (n-k) x k MRD code with distance delta, each with
/// multiplicity alpha-1. fn may return false to stop.
void mrd_dual_code_for_each(const CoveringCodeParams& p,
                            const std::function<bool(const Subspace&, int64_t)>& fn);

/// Materialized dual-lifted-MRD covering code of size
/// (alpha-1) q^{max(k,n-k)(min(k,n-k)-delta+1)}. Throws SizeGuardExceeded when
/// that size exceeds materialize_cap (stream instead).
CoveringCode covering_code_mrd_dual(const CoveringCodeParams& p,
                                    uint64_t materialize_cap = 1u << 20);

/// Network solution whose i-th coding matrix is the canonical basis of the
/// i-th codeword (multiplicity-expanded, canonical order). Requires the code
/// parameters to match (n,k,delta) = (h*t, ell*t, (h-ell-eps)*t) and at least
/// r codewords.
NetworkSolution covering_to_solution(const NetworkParams& params, const FieldPtr& field,
                                     int64_t t, const CoveringCode& code);

struct LllReport {
    bool feasible = false;    // e * p * d <= 1 in log2 domain
    double p_log2 = 0.0;      // bad-event probability bound
    BigNat d_union = 0;       // alpha * C(r-1, alpha-1)
    BigNat d_exact = 0;       // C(r,alpha) - C(r-alpha,alpha)
    double epd_log2 = 0.0;    // log2(e) + p_log2 + log2(d_union)
};
LllReport lll_feasible(const NetworkParams& params, int64_t q, int64_t t);

struct RandomizedResult {
    std::optional<NetworkSolution> solution;  // empty: attempts exhausted
    int64_t attempts = 0;
};

/// Samples all coding matrices i.i.d. uniformly at random (seeded) and keeps
/// the first sample that verifies.
RandomizedResult randomized_solution(const NetworkParams& params, const FieldPtr& field,
                                     int64_t t, int64_t max_attempts, uint64_t rng_seed,
                                     const VerifyOptions& verify_opts = {});

struct OracleOptions {
    bool multiset_allowed = true;
    int64_t grassmannian_cap = 2000;  // throw TooLarge beyond this many subspaces
};

struct OracleResult {
    int64_t size = 0;
    CoveringCode witness;
    uint64_t nodes_explored = 0;
};

/// Exact maximum covering-code size by backtracking over the Grassmannian:
/// maximum clique search for alpha = 2, depth-first multiset search with
/// multiplicity cap alpha-1 otherwise. Deterministic witness.
OracleResult oracle_max_code(const CoveringCodeParams& p, const OracleOptions& opts = {});

}  // namespace gcn
