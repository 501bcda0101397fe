#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "suppvar/linalg.hpp"

using namespace suppvar;

namespace {

SparseModMatrix toSparse(const DenseModMatrix& m) {
  SparseModMatrix s;
  s.rows = static_cast<int>(m.size());
  s.cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  s.data.resize(s.rows);
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      if (m[r][c] != 0) s.data[r].emplace_back(c, m[r][c]);
  return s;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField F(7);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.fromInt(-1) == 6);
  CHECK(F.fromRational(mpq_class(1, 2)) == 4);
  CHECK_THROWS_AS(F.fromRational(mpq_class(1, 7)), std::domain_error);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  for (std::uint64_t p : largePrimes()) {
    CHECK(isPrime(p));
    CHECK(p > (1ull << 31));
    PrimeField G(p);
    CHECK(G.mul(G.inv(123456789), 123456789) == 1);
  }
  CHECK_FALSE(isPrime(2147483649ull));
}

TEST_CASE("rank of identity and zero") {
  PrimeField F(largePrimes()[0]);
  for (int d = 1; d <= 6; ++d) {
    DenseModMatrix id(d, std::vector<std::uint64_t>(d, 0));
    for (int i = 0; i < d; ++i) id[i][i] = 1;
    CHECK(rankModP(id, F) == d);
    CHECK(sparseRankModP(toSparse(id), F) == d);
    DenseModMatrix zero(d, std::vector<std::uint64_t>(d + 1, 0));
    CHECK(rankModP(zero, F) == 0);
    CHECK(sparseRankModP(toSparse(zero), F) == 0);
    std::vector<std::vector<mpq_class>> q(d, std::vector<mpq_class>(d, 0));
    CHECK(rankRational(q) == 0);
    for (int i = 0; i < d; ++i) q[i][i] = 1;
    CHECK(rankRational(q) == d);
  }
}

TEST_CASE("planted rank 12 in a 20x20 product") {
  PrimeField F(largePrimes()[1]);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    DenseModMatrix a(20, std::vector<std::uint64_t>(12)), b(12, std::vector<std::uint64_t>(20));
    for (auto& row : a)
      for (auto& v : row) v = rng() % F.p();
    for (auto& row : b)
      for (auto& v : row) v = rng() % F.p();
    DenseModMatrix prod(20, std::vector<std::uint64_t>(20, 0));
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        for (int k = 0; k < 12; ++k) prod[i][j] = F.add(prod[i][j], F.mul(a[i][k], b[k][j]));
    CHECK(rankModP(prod, F) == 12);
    CHECK(sparseRankModP(toSparse(prod), F) == 12);
  }
}

TEST_CASE("rank over Q agrees with rank mod p") {
  std::mt19937 rng(1);
  PrimeField F(largePrimes()[2]);
  for (int trial = 0; trial < 1000; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 7);
    int cols = 1 + static_cast<int>(rng() % 7);
    int inner = 1 + static_cast<int>(rng() % 6);
    // Low-rank integer products with sparse small factors.
    std::vector<std::vector<int>> a(rows, std::vector<int>(inner)), b(inner, std::vector<int>(cols));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<int>(rng() % 5) - 2;
    for (auto& row : b)
      for (auto& v : row) v = static_cast<int>(rng() % 5) - 2;
    std::vector<std::vector<mpq_class>> q(rows, std::vector<mpq_class>(cols, 0));
    DenseModMatrix m(rows, std::vector<std::uint64_t>(cols, 0));
    SparseRatMatrix s{rows, cols, {}};
    s.data.resize(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        long long v = 0;
        for (int k = 0; k < inner; ++k) v += a[i][k] * b[k][j];
        q[i][j] = mpq_class(static_cast<long>(v), 1 + trial % 3);
        m[i][j] = F.fromRational(q[i][j]);
        if (v != 0) s.data[i].emplace_back(j, q[i][j]);
      }
    int exact = rankRational(q);
    CHECK(exact == rankModP(m, F));
    CHECK(exact == sparseRankModP(toSparse(m), F));
    CHECK(exact == sparseRankRational(s));
  }
}
