#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gcn/gf.hpp"
#include "gcn/qcomb.hpp"

using namespace gcn;

TEST_CASE("field construction") {
    const FieldPtr f2 = Gf::make(2);
    CHECK(f2->characteristic() == 2);
    CHECK(f2->extension_degree() == 1);
    CHECK(f2->modulus() == std::vector<uint32_t>{0, 1});  // x

    const FieldPtr f4 = Gf::make(4);
    CHECK(f4->characteristic() == 2);
    CHECK(f4->extension_degree() == 2);
    CHECK(f4->modulus() == std::vector<uint32_t>{1, 1, 1});  // x^2 + x + 1

    const FieldPtr f9 = Gf::make(9);
    CHECK(f9->characteristic() == 3);
    CHECK(f9->order() == 9);

    CHECK_THROWS_AS(Gf::make(6), NotAPrimePower);
    CHECK_THROWS_AS(Gf::make(1), NotAPrimePower);
    CHECK_THROWS_AS(Gf::make(12), NotAPrimePower);
}

TEST_CASE("GF(4) modulus is the only irreducible monic quadratic") {
    // brute force over GF(2): a monic quadratic x^2 + bx + c is irreducible
    // iff it has no root
    std::vector<std::vector<uint32_t>> irreducible;
    for (uint32_t c = 0; c < 2; ++c)
        for (uint32_t b = 0; b < 2; ++b) {
            bool has_root = false;
            for (uint32_t x = 0; x < 2; ++x)
                if ((x * x + b * x + c) % 2 == 0) has_root = true;
            if (!has_root) irreducible.push_back({c, b, 1});
        }
    REQUIRE(irreducible.size() == 1);
    CHECK(Gf::make(4)->modulus() == irreducible[0]);
}

TEST_CASE("field arithmetic examples") {
    const FieldPtr f4 = Gf::make(4);
    // 2 encodes x, 3 encodes x+1; x * x = x + 1 mod x^2+x+1
    CHECK(f4->mul(2, 2) == 3);
    const FieldPtr f5 = Gf::make(5);
    CHECK(f5->inv(2) == 3);
    CHECK_THROWS_AS(f5->inv(0), DivisionByZero);
    CHECK_THROWS_AS(f4->inv(0), DivisionByZero);
}

TEST_CASE("field axioms hold on every element") {
    for (const uint64_t q : {2, 3, 4, 5, 8, 9, 16, 25, 27}) {
        const FieldPtr f = Gf::make(q);
        const uint32_t n = f->order();
        for (uint32_t a = 0; a < n; ++a) {
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, 0) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            CHECK(f->pow(a, 3) == f->mul(a, f->mul(a, a)));
        }
        // commutativity + distributivity on a deterministic sample of triples
        std::mt19937_64 rng(7);
        for (int it = 0; it < 500; ++it) {
            const uint32_t a = static_cast<uint32_t>(rng() % n);
            const uint32_t b = static_cast<uint32_t>(rng() % n);
            const uint32_t c = static_cast<uint32_t>(rng() % n);
            CHECK(f->add(a, b) == f->add(b, a));
            CHECK(f->mul(a, b) == f->mul(b, a));
            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
            CHECK(f->sub(a, b) == f->add(a, f->neg(b)));
        }
    }
}

TEST_CASE("rref examples") {
    const FieldPtr f2 = Gf::make(2);
    const Matrix id = Matrix::identity(f2, 4);
    CHECK(id.rref().rank == 4);
    CHECK(id.rref().reduced == id);

    const Matrix zero(f2, 3, 3);
    CHECK(zero.rank() == 0);

    const Matrix m = Matrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    CHECK(m.rank() == 2);  // third row is the sum of the first two
}

TEST_CASE("solve_linear") {
    const FieldPtr f3 = Gf::make(3);
    const Matrix id = Matrix::identity(f3, 3);
    const std::vector<uint32_t> y{2, 0, 1};
    const auto sol = solve_linear(id, y);
    REQUIRE(sol.has_value());
    CHECK(sol->x == y);
    CHECK(sol->unique);

    // zero matrix with nonzero rhs is inconsistent
    const Matrix zero(f3, 2, 2);
    CHECK_FALSE(solve_linear(zero, std::vector<uint32_t>{1, 0}).has_value());
    // ... and with zero rhs it is solvable but not unique
    const auto under = solve_linear(zero, std::vector<uint32_t>{0, 0});
    REQUIRE(under.has_value());
    CHECK_FALSE(under->unique);

    // full-column-rank round trip: stacked receiver-style matrix
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        Matrix a(f3, 5, 3);
        for (auto& v : a.data()) v = static_cast<uint32_t>(rng() % 3);
        if (a.rank() < 3) continue;
        std::vector<uint32_t> x{static_cast<uint32_t>(rng() % 3),
                                static_cast<uint32_t>(rng() % 3),
                                static_cast<uint32_t>(rng() % 3)};
        const auto rt = solve_linear(a, a.apply(x));
        REQUIRE(rt.has_value());
        CHECK(rt->unique);
        CHECK(rt->x == x);
    }
}

TEST_CASE("subspace_from_rows canonicalizes") {
    const FieldPtr f2 = Gf::make(2);
    const Subspace u = Subspace::from_rows(Matrix::from_rows(f2, {{1, 0}, {1, 0}}));
    CHECK(u.dim() == 1);
    CHECK(u.basis() == Matrix::from_rows(f2, {{1, 0}}));

    CHECK(Subspace::from_rows(Matrix(f2, 0, 3)).dim() == 0);
    CHECK(Subspace::zero(f2, 3).ambient_dim() == 3);
}

TEST_CASE("subspace sum and dual examples") {
    const FieldPtr f2 = Gf::make(2);
    const auto lines = grassmannian(f2, 2, 1);
    REQUIRE(lines.size() == 3);
    for (const Subspace& u : lines) {
        CHECK(u.sum(u) == u);
        CHECK(u.sum(Subspace::zero(f2, 2)) == u);
        for (const Subspace& v : lines)
            if (!(u == v)) CHECK(u.sum(v).dim() == 2);  // two distinct lines span the plane
    }

    const Subspace full = Subspace::from_rows(Matrix::identity(f2, 3));
    CHECK(full.dual().dim() == 0);

    const Subspace e1 = Subspace::from_rows(Matrix::from_rows(f2, {{1, 0}}));
    CHECK(e1.dual() == Subspace::from_rows(Matrix::from_rows(f2, {{0, 1}})));
}

TEST_CASE("dual is an involution and complements dimension on G(4,k,2)") {
    const FieldPtr f2 = Gf::make(2);
    for (int64_t k = 0; k <= 4; ++k) {
        grassmannian_for_each(f2, 4, k, [&](const Subspace& u) {
            const Subspace d = u.dual();
            CHECK(d.dim() == 4 - k);
            CHECK(d.dual() == u);
            return true;
        });
    }
}

TEST_CASE("modular law: dim(U+V) + dim(U cap V) = dim U + dim V") {
    const FieldPtr f2 = Gf::make(2);
    // exhaustive on all pairs of subspaces of F_2^3
    std::vector<Subspace> all;
    for (int64_t k = 0; k <= 3; ++k)
        for (const Subspace& s : grassmannian(f2, 3, k)) all.push_back(s);
    for (const Subspace& u : all)
        for (const Subspace& v : all) {
            const int64_t inter = u.intersection_dim(v);
            CHECK(u.sum(v).dim() + inter == u.dim() + v.dim());
            CHECK(inter >= 0);
        }
    // sampled over F_3^4
    const FieldPtr f3 = Gf::make(3);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        Matrix a(f3, 2, 4), b(f3, 2, 4);
        for (auto& v : a.data()) v = static_cast<uint32_t>(rng() % 3);
        for (auto& v : b.data()) v = static_cast<uint32_t>(rng() % 3);
        const Subspace u = Subspace::from_rows(a), w = Subspace::from_rows(b);
        CHECK(u.sum(w).dim() + u.intersection_dim(w) == u.dim() + w.dim());
    }
}

TEST_CASE("grassmannian enumeration counts match the q-binomial") {
    for (const int64_t q : {2, 3, 4}) {
        const FieldPtr f = Gf::make(static_cast<uint64_t>(q));
        for (int64_t n = 0; n <= 5; ++n)
            for (int64_t k = 0; k <= n; ++k) {
                std::set<std::vector<uint32_t>> seen;
                uint64_t count = 0;
                grassmannian_for_each(f, n, k, [&](const Subspace& s) {
                    ++count;
                    CHECK(s.dim() == k);
                    seen.insert(s.basis().data());
                    return true;
                });
                CHECK(count == gaussian_binomial(n, k, q).convert_to<uint64_t>());
                CHECK(seen.size() == count);  // no duplicates
            }
    }
}

TEST_CASE("grassmannian examples") {
    const FieldPtr f2 = Gf::make(2);
    CHECK(grassmannian(f2, 2, 1).size() == 3);
    CHECK(grassmannian(f2, 4, 2).size() == 35);
    const auto zero_case = grassmannian(f2, 3, 0);
    REQUIRE(zero_case.size() == 1);
    CHECK(zero_case[0].dim() == 0);
}

TEST_CASE("rowspace is invariant under row scrambling and invertible mixing") {
    const FieldPtr f3 = Gf::make(3);
    std::mt19937_64 rng(17);
    for (int it = 0; it < 40; ++it) {
        Matrix m(f3, 3, 5);
        for (auto& v : m.data()) v = static_cast<uint32_t>(rng() % 3);
        const Subspace u = Subspace::from_rows(m);

        // row shuffle
        Matrix shuffled = m;
        std::vector<int64_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int64_t i = 0; i < 3; ++i)
            for (int64_t j = 0; j < 5; ++j) shuffled.set(i, j, m.at(perm[static_cast<size_t>(i)], j));
        CHECK(Subspace::from_rows(shuffled) == u);

        // invertible row mix
        Matrix t(f3, 3, 3);
        do {
            for (auto& v : t.data()) v = static_cast<uint32_t>(rng() % 3);
        } while (t.rank() < 3);
        CHECK(Subspace::from_rows(t * m) == u);
    }
}
