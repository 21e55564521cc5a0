#include "apexforge/linalg.hpp"

#include <limits>
#include <stdexcept>

#include "apexforge/error.hpp"
#include "apexforge/gf.hpp"

namespace apexforge::linalg {
namespace {

// Lemire's remainder by a runtime constant: exact for 32-bit numerators.
class FastMod {
 public:
  explicit FastMod(std::uint32_t d) : d_(d), m_(std::numeric_limits<std::uint64_t>::max() / d + 1) {}
  std::uint32_t operator()(std::uint32_t x) const {
    const std::uint64_t low = m_ * x;
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(low) * d_) >> 64);
  }

 private:
  std::uint64_t d_;
  std::uint64_t m_;
};

void require_prime_modulus(std::uint32_t p) {
  if (p < 2) throw InvalidInput("modulus must be at least 2");
}

}  // namespace

bool Matrix::is_zero() const {
  for (auto v : data_)
    if (v) return false;
  return true;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (other.rows_ != rows_) throw InvalidInput("hconcat: row counts differ");
  Matrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = out.row(r);
    auto a = row(r);
    auto b = other.row(r);
    std::copy(a.begin(), a.end(), dst.begin());
    std::copy(b.begin(), b.end(), dst.begin() + cols_);
  }
  return out;
}

// Rows are bucketed by their leading column and the columns are swept left
// to right. At each column one row of the bucket becomes the pivot and the
// others are reduced by it and re-bucketed. Rows whose leading entries never
// collide are never touched, which keeps multiplication-map matrices (rows =
// multiples of a form, columns = monomials in descending order) cheap.
//
// Updates are lazy: a row accumulates unreduced sums while its per-row bound
// stays below 2^32, and is reduced only when the bound would overflow, when
// its leading entry is needed, or when it becomes a pivot.
std::size_t rank(Matrix m, std::uint32_t p) {
  require_prime_modulus(p);
  const std::size_t R = m.rows(), C = m.cols();
  if (R == 0 || C == 0) return 0;
  const FastMod mod(p);
  const std::uint64_t step = std::uint64_t{p - 1} * (p - 1);
  const bool lazy = step < (std::uint64_t{1} << 31);
  const std::uint64_t limit = std::numeric_limits<std::uint32_t>::max() - step;

  std::vector<std::uint64_t> bound(R, p - 1);
  std::vector<std::vector<std::uint32_t>> bucket(C);
  auto lead_from = [&](std::size_t r, std::size_t start) -> std::size_t {
    auto row = m.row(r);
    for (std::size_t j = start; j < C; ++j) {
      if (row[j] >= p) row[j] = mod(row[j]);
      if (row[j]) return j;
    }
    return C;
  };
  for (std::size_t r = 0; r < R; ++r) {
    std::size_t c = lead_from(r, 0);
    if (c < C) bucket[c].push_back(static_cast<std::uint32_t>(r));
  }

  std::size_t rk = 0;
  for (std::size_t c = 0; c < C; ++c) {
    auto& rows = bucket[c];
    if (rows.empty()) continue;
    ++rk;
    const std::uint32_t pr = rows.front();
    auto piv = m.row(pr);
    for (std::size_t j = c; j < C; ++j)
      if (piv[j] >= p) piv[j] = mod(piv[j]);
    const std::uint64_t inv_lead = gf::inv_mod(piv[c], p);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const std::uint32_t r = rows[k];
      auto row = m.row(r);
      const std::uint32_t a = row[c] >= p ? mod(row[c]) : row[c];
      // row += f * piv with f = -a / piv[c].
      const std::uint32_t f = static_cast<std::uint32_t>((p - a) * inv_lead % p);
      std::uint32_t* __restrict dst = row.data();
      const std::uint32_t* __restrict src = piv.data();
      if (lazy) {
        if (bound[r] > limit) {
          for (std::size_t j = c; j < C; ++j) dst[j] = mod(dst[j]);
          bound[r] = p - 1;
        }
        for (std::size_t j = c + 1; j < C; ++j) dst[j] += f * src[j];
        bound[r] += step;
      } else {
        for (std::size_t j = c + 1; j < C; ++j)
          dst[j] = static_cast<std::uint32_t>((dst[j] + std::uint64_t{f} * src[j]) % p);
      }
      dst[c] = 0;
      std::size_t nc = lead_from(r, c + 1);
      if (nc < C) bucket[nc].push_back(r);
    }
    std::vector<std::uint32_t>().swap(rows);
  }
  return rk;
}

Rref rref(Matrix m, std::uint32_t p) {
  require_prime_modulus(p);
  const FastMod mod(p);
  const std::size_t R = m.rows(), C = m.cols();
  Rref out;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < C && prow < R; ++c) {
    std::size_t sel = R;
    for (std::size_t r = prow; r < R; ++r)
      if (m.at(r, c)) {
        sel = r;
        break;
      }
    if (sel == R) continue;
    if (sel != prow)
      for (std::size_t j = 0; j < C; ++j) std::swap(m.at(sel, j), m.at(prow, j));
    auto piv = m.row(prow);
    const std::uint64_t inv = gf::inv_mod(piv[c], p);
    for (std::size_t j = c; j < C; ++j) piv[j] = static_cast<std::uint32_t>(piv[j] * inv % p);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == prow) continue;
      auto row = m.row(r);
      const std::uint32_t a = row[c];
      if (!a) continue;
      const std::uint32_t f = p - a;
      for (std::size_t j = c; j < C; ++j)
        row[j] = mod(static_cast<std::uint32_t>((row[j] + std::uint64_t{f} * piv[j]) % p));
    }
    out.pivot_cols.push_back(c);
    ++prow;
  }
  out.reduced = std::move(m);
  return out;
}

std::vector<std::vector<std::uint32_t>> nullspace(const Matrix& m, std::uint32_t p) {
  const Rref e = rref(m, p);
  const std::size_t C = m.cols();
  std::vector<char> is_pivot(C, 0);
  for (auto c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(C, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
      const std::uint32_t a = e.reduced.at(k, free);
      v[e.pivot_cols[k]] = a ? p - a : 0;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::uint32_t> apply(const Matrix& m, std::span<const std::uint32_t> x, std::uint32_t p) {
  if (x.size() != m.cols()) throw InvalidInput("apply: dimension mismatch");
  std::vector<std::uint32_t> y(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) acc = (acc + std::uint64_t{row[c]} * x[c]) % p;
    y[r] = static_cast<std::uint32_t>(acc);
  }
  return y;
}

RowEchelon::RowEchelon(std::size_t cols, std::uint32_t p)
    : cols_(cols), p_(p), is_pivot_(cols, 0), pivot_row_(cols, 0), work_(cols, 0) {
  require_prime_modulus(p);
}

bool RowEchelon::insert(std::span<const std::uint32_t> row) {
  if (row.size() != cols_) throw InvalidInput("RowEchelon: dimension mismatch");
  const std::uint32_t p = p_;
  const FastMod mod(p);
  const std::uint64_t step = std::uint64_t{p - 1} * (p - 1);
  const bool lazy = step < (std::uint64_t{1} << 31);
  const std::uint64_t limit = std::numeric_limits<std::uint32_t>::max() - step;
  std::copy(row.begin(), row.end(), work_.begin());
  std::uint32_t* __restrict w = work_.data();
  std::uint64_t bound = p - 1;
  std::size_t c = 0;
  auto advance = [&](std::size_t from) {
    for (std::size_t j = from; j < cols_; ++j) {
      if (w[j] >= p) w[j] = mod(w[j]);
      if (w[j]) return j;
    }
    return cols_;
  };
  c = advance(0);
  while (c < cols_ && is_pivot_[c]) {
    const std::uint32_t* __restrict piv = storage_.data() + std::size_t{pivot_row_[c]} * cols_;
    // Pivot rows are normalized to 1 at their pivot.
    const std::uint32_t f = p - w[c];
    if (lazy) {
      if (bound > limit) {
        for (std::size_t j = c; j < cols_; ++j) w[j] = mod(w[j]);
        bound = p - 1;
      }
      for (std::size_t j = c + 1; j < cols_; ++j) w[j] += f * piv[j];
      bound += step;
    } else {
      for (std::size_t j = c + 1; j < cols_; ++j)
        w[j] = static_cast<std::uint32_t>((w[j] + std::uint64_t{f} * piv[j]) % p);
    }
    w[c] = 0;
    c = advance(c + 1);
  }
  if (c == cols_) return false;
  const std::uint64_t inv = gf::inv_mod(w[c], p);
  for (std::size_t j = c; j < cols_; ++j) w[j] = static_cast<std::uint32_t>(mod(w[j]) * inv % p);
  is_pivot_[c] = 1;
  pivot_row_[c] = static_cast<std::uint32_t>(rank_);
  storage_.resize((rank_ + 1) * cols_, 0);
  std::copy(work_.begin() + c, work_.end(), storage_.begin() + rank_ * cols_ + c);
  ++rank_;
  return true;
}

bool IncrementalBasis::push(std::span<const std::uint32_t> v) {
  if (v.size() != dim_) throw InvalidInput("IncrementalBasis: dimension mismatch");
  std::vector<std::uint32_t> w(v.begin(), v.end());
  for (auto& x : w) x %= p_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::uint32_t a = w[pivots_[k]];
    if (!a) continue;
    const std::uint64_t f = p_ - a;
    const auto& b = rows_[k];
    for (std::size_t j = 0; j < dim_; ++j)
      if (b[j]) w[j] = static_cast<std::uint32_t>((w[j] + f * b[j]) % p_);
  }
  std::size_t lead = 0;
  while (lead < dim_ && w[lead] == 0) ++lead;
  if (lead == dim_) return false;
  const std::uint64_t inv = gf::inv_mod(w[lead], p_);
  for (auto& x : w) x = static_cast<std::uint32_t>(x * inv % p_);
  rows_.push_back(std::move(w));
  pivots_.push_back(lead);
  return true;
}

void IncrementalBasis::pop() {
  if (rows_.empty()) throw std::logic_error("IncrementalBasis::pop on empty basis");
  rows_.pop_back();
  pivots_.pop_back();
}

}  // namespace apexforge::linalg
