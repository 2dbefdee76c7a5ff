#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hms/linalg.hpp"

#include <random>

using namespace hms;

TEST_CASE("kernel: identity has empty kernel") {
    SparseMatrix<Rat> m(3, 3);
    for (int i = 0; i < 3; ++i) m.set(i, i, Rat(1));
    CHECK(kernel_basis(m).empty());
}

TEST_CASE("kernel: 1x2 difference matrix") {
    SparseMatrix<Rat> m(1, 2);
    m.set(0, 0, Rat(1));
    m.set(0, 1, Rat(-1));
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == Rat(1));
    CHECK(k[0][1] == Rat(1));
}

TEST_CASE("cokernel: surjective 2x3 has empty complement") {
    SparseMatrix<Rat> m(2, 3);
    m.set(0, 0, Rat(1));
    m.set(1, 1, Rat(1));
    m.set(1, 2, Rat(3));
    CHECK(cokernel_basis(m).empty());
}

TEST_CASE("cokernel: zero 2x2 keeps both rows") {
    SparseMatrix<Rat> m(2, 2);
    auto c = cokernel_basis(m);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
}

TEST_CASE("rank: basics over both fields") {
    SparseMatrix<Rat> z(4, 5);
    CHECK(rank(z) == 0);
    SparseMatrix<Rat> id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i, Rat(1));
    CHECK(rank(id) == 4);
    SparseMatrix<F2> m(2, 2);
    m.set(0, 0, F2(1));
    m.set(0, 1, F2(1));
    m.set(1, 0, F2(1));
    m.set(1, 1, F2(1));
    CHECK(rank(m) == 1);
}

TEST_CASE("rank-nullity and cokernel dimension on random sparse matrices") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
        SparseMatrix<Rat> q(rows, cols);
        SparseMatrix<F2> f(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng() % 3 == 0) {
                    long long v = static_cast<long long>(rng() % 7) - 3;
                    q.set(r, c, Rat(v));
                    f.set(r, c, F2(static_cast<int>(v & 1)));
                }
        CHECK(kernel_basis(q).size() + rank(q) == cols);
        CHECK(cokernel_basis(q).size() + rank(q) == rows);
        CHECK(kernel_basis(f).size() + rank(f) == cols);
        CHECK(cokernel_basis(f).size() + rank(f) == rows);

        // kernel vectors actually lie in the kernel
        for (const auto& v : kernel_basis(q))
            for (std::size_t r = 0; r < rows; ++r) {
                Rat acc(0);
                for (std::size_t c = 0; c < cols; ++c) acc += q.at(r, c) * v[c];
                CHECK(acc == Rat(0));
            }
    }
}

TEST_CASE("results independent of entry insertion order") {
    SparseMatrix<Rat> a(3, 4), b(3, 4);
    std::vector<std::tuple<int, int, int>> ent = {
        {0, 1, 2}, {1, 0, -1}, {2, 3, 5}, {1, 2, 7}, {0, 0, 1}};
    for (auto [r, c, v] : ent) a.set(r, c, Rat(v));
    for (auto it = ent.rbegin(); it != ent.rend(); ++it)
        b.set(std::get<0>(*it), std::get<1>(*it), Rat(std::get<2>(*it)));
    CHECK(kernel_basis(a) == kernel_basis(b));
    CHECK(cokernel_basis(a) == cokernel_basis(b));
    CHECK(rank(a) == rank(b));
}

TEST_CASE("indexed kernel basis exposes the free columns") {
    SparseMatrix<Rat> m(1, 3);
    m.set(0, 0, Rat(1));
    m.set(0, 2, Rat(-2));
    auto k = kernel_basis_indexed(m);
    REQUIRE(k.size() == 2);
    CHECK(k[0].first == 1);
    CHECK(k[1].first == 2);
    CHECK(k[1].second[0] == Rat(2));
    CHECK(kernel_basis(m).size() == 2);
}
