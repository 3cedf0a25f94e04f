#include <doctest.h>

#include <algorithm>
#include <random>

#include "gcn/io.hpp"
#include "gcn/network.hpp"

using namespace gcn;

namespace {

// the three distinct nonzero directions of F_2^2 as 1x2 coding matrices
NetworkSolution three_lines_solution(const FieldPtr& f2) {
    NetworkSolution sol;
    sol.field = f2;
    sol.t = 1;
    sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 0}}));
    sol.coeffs.push_back(Matrix::from_rows(f2, {{0, 1}}));
    sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 1}}));
    return sol;
}

}  // namespace

TEST_CASE("classify") {
    CHECK(classify({3, 4, 2, 2, 1}) == SolvabilityClass::TriviallySolvable);  // h = l+e
    CHECK(classify({6, 4, 2, 2, 1}) == SolvabilityClass::Unsolvable);         // h > al+e
    CHECK(classify({12, 800000, 20, 1, 2}) == SolvabilityClass::NonTrivial);
    CHECK(classify({4, 3, 2, 1, 1}) == SolvabilityClass::NonTrivial);

    CHECK(NetworkParams{12, 800000, 20, 1, 2}.non_trivially_solvable());
    CHECK(NetworkParams{8, 800000, 3, 1, 5}.minimal());
    CHECK_FALSE(NetworkParams{12, 800000, 20, 1, 2}.minimal());
    CHECK_THROWS_AS(NetworkParams({2, 3, 1, 1, 0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams({2, 1, 2, 1, 0}).validate(), std::invalid_argument);
}

TEST_CASE("verify_solution accepts the three-line solution and rejects a repeat") {
    const FieldPtr f2 = Gf::make(2);
    const NetworkParams params{2, 3, 2, 1, 0};
    const NetworkSolution sol = three_lines_solution(f2);
    const VerifyResult ok = verify_solution(params, sol);
    CHECK(ok.valid);
    CHECK(ok.subsets_checked == 3);
    CHECK_FALSE(ok.first_failure.has_value());

    // with r = 4 some direction repeats; the repeated pair fails
    NetworkParams p4 = params;
    p4.r = 4;
    NetworkSolution bad = sol;
    bad.coeffs.push_back(Matrix::from_rows(f2, {{0, 1}}));
    const VerifyResult res = verify_solution(p4, bad);
    CHECK_FALSE(res.valid);
    REQUIRE(res.first_failure.has_value());
    CHECK(*res.first_failure == std::vector<int64_t>{1, 3});

    // a zero coding matrix fails on its lexicographically first subset
    NetworkSolution zero = sol;
    zero.coeffs[0] = Matrix(f2, 1, 2);
    const VerifyResult zres = verify_solution(params, zero);
    CHECK_FALSE(zres.valid);
    CHECK(*zres.first_failure == std::vector<int64_t>{0, 1});
}

TEST_CASE("verify_solution guard") {
    const FieldPtr f2 = Gf::make(2);
    NetworkSolution sol;
    sol.field = f2;
    sol.t = 1;
    const NetworkParams params{2, 64, 2, 1, 0};
    for (int64_t i = 0; i < params.r; ++i) sol.coeffs.push_back(Matrix(f2, 1, 2));
    VerifyOptions opts;
    opts.subset_guard = 100;  // C(64,2) = 2016 exceeds it
    CHECK_THROWS_AS(verify_solution(params, sol, opts), TooManySubsets);
}

TEST_CASE("multithreaded verify agrees with sequential") {
    const FieldPtr f3 = Gf::make(3);
    NetworkParams params{3, 12, 2, 2, 0};
    NetworkSolution sol;
    sol.field = f3;
    sol.t = 1;
    std::mt19937_64 rng(5);
    for (int64_t i = 0; i < params.r; ++i) {
        Matrix a(f3, 2, 3);
        for (auto& v : a.data()) v = static_cast<uint32_t>(rng() % 3);
        sol.coeffs.push_back(std::move(a));
    }
    VerifyOptions seq;
    VerifyOptions par;
    par.threads = 4;
    const VerifyResult a = verify_solution(params, sol, seq);
    const VerifyResult b = verify_solution(params, sol, par);
    CHECK(a.valid == b.valid);
    CHECK(a.first_failure == b.first_failure);
}

TEST_CASE("complete_direct_links") {
    const FieldPtr f2 = Gf::make(2);

    // A-stack already full rank: B is all zero
    {
        const NetworkParams params{2, 3, 2, 1, 1};
        NetworkSolution sol = three_lines_solution(f2);
        const std::vector<int64_t> subset{0, 1};
        const Matrix b = complete_direct_links(params, sol, subset);
        CHECK(b.rows() == 1);
        CHECK(std::all_of(b.data().begin(), b.data().end(), [](uint32_t v) { return v == 0; }));
    }

    // rank-1 stack spanning (1,0): completion is (0,1)
    {
        const NetworkParams params{2, 2, 2, 1, 1};
        NetworkSolution sol;
        sol.field = f2;
        sol.t = 1;
        sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 0}}));
        sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 0}}));
        const std::vector<int64_t> subset{0, 1};
        const Matrix b = complete_direct_links(params, sol, subset);
        CHECK(b == Matrix::from_rows(f2, {{0, 1}}));
    }

    // eps = 0 with a full-rank stack: B is the empty 0 x ht matrix
    {
        const NetworkParams params{2, 3, 2, 1, 0};
        NetworkSolution sol = three_lines_solution(f2);
        const std::vector<int64_t> subset{0, 2};
        const Matrix b = complete_direct_links(params, sol, subset);
        CHECK(b.rows() == 0);
        CHECK(b.cols() == 2);
    }

    // a subset violating the rank condition throws
    {
        const NetworkParams params{2, 2, 2, 1, 0};
        NetworkSolution sol;
        sol.field = f2;
        sol.t = 1;
        sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 0}}));
        sol.coeffs.push_back(Matrix::from_rows(f2, {{1, 0}}));
        const std::vector<int64_t> subset{0, 1};
        CHECK_THROWS_AS(complete_direct_links(params, sol, subset), RankConditionUnmet);
    }
}

TEST_CASE("simulate: every receiver decodes every message (exhaustive, q=2)") {
    const FieldPtr f2 = Gf::make(2);
    const NetworkParams params{2, 3, 2, 1, 0};
    const NetworkSolution sol = three_lines_solution(f2);
    REQUIRE(verify_solution(params, sol).valid);
    for (uint32_t m = 0; m < 4; ++m) {
        const std::vector<uint32_t> x{m & 1, m >> 1 & 1};
        const SimulationReport rep = simulate(params, sol, x, 0);
        CHECK(rep.all_ok);
        CHECK_FALSE(rep.sampled);
        CHECK(rep.receivers.size() == 3);
        for (const ReceiverReport& rr : rep.receivers) {
            CHECK(rr.ok);
            CHECK(rr.decoded == x);
        }
    }
}

TEST_CASE("simulate: zero message maps to zero everywhere") {
    const FieldPtr f2 = Gf::make(2);
    const NetworkParams params{2, 3, 2, 1, 0};
    const NetworkSolution sol = three_lines_solution(f2);
    const std::vector<uint32_t> x{0, 0};
    const SimulationReport rep = simulate(params, sol, x, 0);
    for (const ReceiverReport& rr : rep.receivers) {
        CHECK(std::all_of(rr.received.begin(), rr.received.end(),
                          [](uint32_t v) { return v == 0; }));
        CHECK(rr.decoded == x);
    }
}

TEST_CASE("simulate: invalid solution decodes non-uniquely somewhere") {
    const FieldPtr f2 = Gf::make(2);
    NetworkParams params{2, 4, 2, 1, 0};
    NetworkSolution bad = three_lines_solution(f2);
    bad.coeffs.push_back(Matrix::from_rows(f2, {{0, 1}}));  // repeats direction 1
    REQUIRE_FALSE(verify_solution(params, bad).valid);
    const std::vector<uint32_t> x{1, 1};
    const SimulationReport rep = simulate(params, bad, x, 0);
    CHECK_FALSE(rep.all_ok);
    bool saw_non_unique = false;
    for (const ReceiverReport& rr : rep.receivers) saw_non_unique |= !rr.unique;
    CHECK(saw_non_unique);
}

TEST_CASE("simulate samples deterministically when receivers are too many") {
    const FieldPtr f2 = Gf::make(2);
    NetworkParams params{2, 40, 2, 1, 1};
    NetworkSolution sol;
    sol.field = f2;
    sol.t = 1;
    std::mt19937_64 rng(23);
    for (int64_t i = 0; i < params.r; ++i) {
        Matrix a(f2, 1, 2);
        for (auto& v : a.data()) v = static_cast<uint32_t>(rng() % 2);
        sol.coeffs.push_back(std::move(a));
    }
    const std::vector<uint32_t> x{1, 0};
    const SimulationReport a = simulate(params, sol, x, 42, 50);
    const SimulationReport b = simulate(params, sol, x, 42, 50);
    CHECK(a.sampled);
    CHECK(a.receivers.size() == 50);
    REQUIRE(b.receivers.size() == a.receivers.size());
    for (size_t i = 0; i < a.receivers.size(); ++i)
        CHECK(a.receivers[i].subset == b.receivers[i].subset);
}

TEST_CASE("removing a middle node keeps a valid solution valid") {
    const FieldPtr f2 = Gf::make(2);
    const NetworkParams params{2, 3, 2, 1, 0};
    const NetworkSolution sol = three_lines_solution(f2);
    REQUIRE(verify_solution(params, sol).valid);
    // dropping any node leaves r = 2 = alpha, still valid
    for (size_t drop = 0; drop < 3; ++drop) {
        NetworkParams smaller = params;
        smaller.r = 2;
        NetworkSolution reduced;
        reduced.field = f2;
        reduced.t = 1;
        for (size_t i = 0; i < 3; ++i)
            if (i != drop) reduced.coeffs.push_back(sol.coeffs[i]);
        CHECK(verify_solution(smaller, reduced).valid);
    }
}

TEST_CASE("solution JSON round trip") {
    const FieldPtr f4 = Gf::make(4);
    NetworkParams params{2, 3, 2, 1, 0};
    NetworkSolution sol;
    sol.field = f4;
    sol.t = 1;
    sol.coeffs.push_back(Matrix::from_rows(f4, {{1, 0}}));
    sol.coeffs.push_back(Matrix::from_rows(f4, {{0, 1}}));
    sol.coeffs.push_back(Matrix::from_rows(f4, {{1, 2}}));

    const std::string text = solution_to_json(params, sol);
    const auto [p2, s2] = solution_from_json(text);
    CHECK(p2.h == params.h);
    CHECK(p2.r == params.r);
    CHECK(s2.t == sol.t);
    CHECK(s2.field->order() == 4);
    REQUIRE(s2.coeffs.size() == sol.coeffs.size());
    for (size_t i = 0; i < sol.coeffs.size(); ++i) CHECK(s2.coeffs[i] == sol.coeffs[i]);
    // serialization is stable
    CHECK(solution_to_json(p2, s2) == text);

    CHECK_THROWS(solution_from_json("{\"q\": 5}"));
}

TEST_CASE("combination helpers") {
    std::vector<std::vector<int64_t>> subsets;
    for_each_combination(4, 2, [&](std::span<const int64_t> s) {
        subsets.emplace_back(s.begin(), s.end());
        return true;
    });
    const std::vector<std::vector<int64_t>> expected{{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    CHECK(subsets == expected);
    for (uint64_t i = 0; i < expected.size(); ++i)
        CHECK(combination_unrank(4, 2, i) == expected[static_cast<size_t>(i)]);
}
