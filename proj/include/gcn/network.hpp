#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gcn/gf.hpp"
#include "gcn/qcomb.hpp"

// The (eps,ell)-N_{h,r,alpha*ell+eps} generalized combination network:
// a source with h messages, r middle nodes fed by ell parallel links each,
// one receiver per alpha-subset of middle nodes, and eps direct source links
// per receiver. A (q,t)-linear solution assigns a coding matrix A_i of shape
// (ell*t) x (h*t) over GF(q) to each middle node; a receiver on subset
// {i_1..i_alpha} can recover all messages iff the stacked A-blocks have rank
// at least (h-eps)*t.

namespace gcn {

struct TooManySubsets : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankConditionUnmet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NetworkParams {
    int64_t h = 0;      // source message count
    int64_t r = 0;      // middle-layer node count
    int64_t alpha = 0;  // middle nodes per receiver
    int64_t ell = 0;    // parallel links per middle node
    int64_t eps = 0;    // direct links per receiver

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
    BigNat receiver_count() const { return binomial(r, alpha); }
    bool non_trivially_solvable() const { return ell + eps < h && h <= alpha * ell + eps; }
    bool minimal() const { return h == alpha * ell + eps; }
};

enum class SolvabilityClass { TriviallySolvable, NonTrivial, Unsolvable };
const char* to_string(SolvabilityClass c);

SolvabilityClass classify(const NetworkParams& params);

struct NetworkSolution {
    FieldPtr field;
    int64_t t = 1;
    std::vector<Matrix> coeffs;  // one (ell*t) x (h*t) matrix per middle node

    void check_shapes(const NetworkParams& params) const;
};

struct VerifyOptions {
    uint64_t subset_guard = 10'000'000;  // refuse to enumerate more receivers
    int threads = 1;
};

struct VerifyResult {
    bool valid = false;
    /// Lexicographically first alpha-subset violating the rank condition.
    std::optional<std::vector<int64_t>> first_failure;
    uint64_t subsets_checked = 0;
};

VerifyResult verify_solution(const NetworkParams& params, const NetworkSolution& sol,
                             const VerifyOptions& opts = {});

/// Direct-link coding matrix B (eps*t x h*t) for one receiver: standard basis
/// rows missing from the stacked A rowspace, greedy lowest index first,
/// zero-padded to exactly eps*t rows. Throws RankConditionUnmet if the subset
/// violates the rank condition.
Matrix complete_direct_links(const NetworkParams& params, const NetworkSolution& sol,
                             std::span<const int64_t> subset);

struct ReceiverReport {
    std::vector<int64_t> subset;
    std::vector<uint32_t> received;  // y_i = stack(A_subset, B_i) * x
    std::vector<uint32_t> decoded;
    bool unique = false;
    bool ok = false;  // unique && decoded == x
};

struct SimulationReport {
    std::vector<ReceiverReport> receivers;
    bool all_ok = false;
    bool sampled = false;  // true when only a seeded sample of receivers ran
};

/// End-to-end message simulation. When the receiver count exceeds
/// max_receivers, a deterministic seeded sample of subsets is simulated.
SimulationReport simulate(const NetworkParams& params, const NetworkSolution& sol,
                          std::span<const uint32_t> message, uint64_t rng_seed,
                          uint64_t max_receivers = 4096);

// ---- combination enumeration helpers (lexicographic order) ----

/// Calls fn on every k-subset of {0..n-1} in lexicographic order until fn
/// returns false. Returns false when stopped early.
bool for_each_combination(int64_t n, int64_t k,
                          const std::function<bool(std::span<const int64_t>)>& fn);

/// The index-th k-subset of {0..n-1} in lexicographic order.
std::vector<int64_t> combination_unrank(int64_t n, int64_t k, uint64_t index);

}  // namespace gcn
