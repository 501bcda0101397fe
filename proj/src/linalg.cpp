#include "suppvar/linalg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace suppvar {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ull << 32) || !isPrime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^32");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::fromInt(long long v) const {
  long long r = v % static_cast<long long>(p_);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r);
}

std::uint64_t PrimeField::fromMpz(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return r.get_ui();
}

std::uint64_t PrimeField::fromRational(const mpq_class& v) const {
  std::uint64_t den = fromMpz(v.get_den());
  if (den == 0) throw std::domain_error("denominator vanishes modulo p");
  return mul(fromMpz(v.get_num()), inv(den));
}

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<std::uint64_t>& largePrimes() {
  static const std::vector<std::uint64_t> primes = {2147483659ull, 2147483693ull, 2147483713ull,
                                                    2147483743ull, 2147483777ull};
  return primes;
}

int rankModP(DenseModMatrix m, const PrimeField& F) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m.front().size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const std::uint64_t scale = F.inv(m[rank][c]);
    for (int k = c; k < cols; ++k) m[rank][k] = F.mul(m[rank][k], scale);
    for (int r = rank + 1; r < rows; ++r) {
      const std::uint64_t factor = m[r][c];
      if (factor == 0) continue;
      for (int k = c; k < cols; ++k)
        if (m[rank][k] != 0) m[r][k] = F.sub(m[r][k], F.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

namespace {

struct ModOps {
  using Value = std::uint64_t;
  const PrimeField& field;
  bool isZero(Value v) const { return v == 0; }
  Value quotient(Value a, Value b) const { return field.mul(a, field.inv(b)); }
  Value axpy(Value a, Value factor, Value b) const { return field.sub(a, field.mul(factor, b)); }
  Value negProduct(Value factor, Value b) const { return field.neg(field.mul(factor, b)); }
};

struct RatOps {
  using Value = mpq_class;
  bool isZero(const Value& v) const { return sgn(v) == 0; }
  Value quotient(const Value& a, const Value& b) const { return a / b; }
  Value axpy(const Value& a, const Value& factor, const Value& b) const { return a - factor * b; }
  Value negProduct(const Value& factor, const Value& b) const { return -(factor * b); }
};

// Gaussian elimination on sorted sparse rows. The pivot row is the shortest
// live row; within it, the column with the fewest live entries.
template <class Ops>
int sparseRank(int cols, std::vector<std::vector<std::pair<int, typename Ops::Value>>>& rows,
               const Ops& ops) {
  using Value = typename Ops::Value;
  using Row = std::vector<std::pair<int, Value>>;
  const int nrows = static_cast<int>(rows.size());
  std::vector<std::vector<int>> colRows(cols);
  std::vector<int> colCount(cols, 0);
  for (int r = 0; r < nrows; ++r)
    for (const auto& entry : rows[r]) {
      colRows[entry.first].push_back(r);
      ++colCount[entry.first];
    }
  std::vector<char> done(nrows, 0);
  using Item = std::pair<std::size_t, int>;  // (length, row)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int r = 0; r < nrows; ++r)
    if (!rows[r].empty()) queue.emplace(rows[r].size(), r);

  auto find = [](const Row& row, int c) -> const Value* {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& a, int col) { return a.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  };

  int rank = 0;
  Row scratch;
  while (!queue.empty()) {
    auto [len, pr] = queue.top();
    queue.pop();
    if (done[pr] || rows[pr].size() != len) continue;
    done[pr] = 1;
    if (rows[pr].empty()) continue;
    int pc = rows[pr].front().first;
    for (const auto& entry : rows[pr])
      if (colCount[entry.first] < colCount[pc]) pc = entry.first;
    ++rank;
    const Row pivotRow = std::move(rows[pr]);
    rows[pr].clear();
    const Value pivot = *find(pivotRow, pc);
    for (const auto& entry : pivotRow) --colCount[entry.first];

    std::vector<int> targets;
    targets.swap(colRows[pc]);
    for (int r : targets) {
      if (done[r]) continue;
      const Value* hit = find(rows[r], pc);
      if (hit == nullptr) continue;
      const Value factor = ops.quotient(*hit, pivot);
      scratch.clear();
      const Row& row = rows[r];
      auto a = row.begin();
      auto b = pivotRow.begin();
      while (a != row.end() || b != pivotRow.end()) {
        if (b == pivotRow.end() || (a != row.end() && a->first < b->first)) {
          scratch.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
          scratch.emplace_back(b->first, ops.negProduct(factor, b->second));
          colRows[b->first].push_back(r);
          ++colCount[b->first];
          ++b;
        } else {
          Value v = ops.axpy(a->second, factor, b->second);
          if (!ops.isZero(v))
            scratch.emplace_back(a->first, std::move(v));
          else
            --colCount[a->first];
          ++a;
          ++b;
        }
      }
      rows[r].swap(scratch);
      queue.emplace(rows[r].size(), r);
    }
  }
  return rank;
}

}  // namespace

int sparseRankModP(SparseModMatrix m, const PrimeField& F) {
  return sparseRank(m.cols, m.data, ModOps{F});
}

int sparseRankRational(SparseRatMatrix m) { return sparseRank(m.cols, m.data, RatOps{}); }

int rankInteger(std::vector<std::vector<mpz_class>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m.front().size());
  int rank = 0;
  mpz_class prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) {
        m[r][k] = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
        mpz_divexact(m[r][k].get_mpz_t(), m[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

int rankRational(const std::vector<std::vector<mpq_class>>& m) {
  std::vector<std::vector<mpz_class>> z(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    mpz_class den = 1;
    for (const mpq_class& v : m[r]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    z[r].reserve(m[r].size());
    for (const mpq_class& v : m[r]) z[r].push_back(v.get_num() * (den / v.get_den()));
  }
  return rankInteger(std::move(z));
}

}  // namespace suppvar
