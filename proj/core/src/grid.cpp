#include "ersl/grid.hpp"

#include <bit>
#include <cassert>

namespace ersl {

namespace {

// set bits [b0, b1) of a word row to `open`
void fill_bits(std::uint64_t* row, std::int64_t b0, std::int64_t b1, bool open) {
  std::int64_t w0 = b0 >> 6, w1 = (b1 - 1) >> 6;
  std::uint64_t first = ~0ULL << (b0 & 63);
  std::uint64_t last = ~0ULL >> (63 - ((b1 - 1) & 63));
  if (w0 == w1) {
    std::uint64_t m = first & last;
    row[w0] = open ? row[w0] | m : row[w0] & ~m;
    return;
  }
  row[w0] = open ? row[w0] | first : row[w0] & ~first;
  for (std::int64_t w = w0 + 1; w < w1; ++w) row[w] = open ? ~0ULL : 0ULL;
  row[w1] = open ? row[w1] | last : row[w1] & ~last;
}

}  // namespace

EdgeGrid::EdgeGrid(std::int64_t n) : n_(n) {
  if (n < 1) throw ValidationError("EdgeGrid: n must be >= 1");
  wph_ = static_cast<std::size_t>((n + 63) / 64);
  wpv_ = static_cast<std::size_t>((n + 64) / 64);
  h_.assign(wph_ * static_cast<std::size_t>(n + 1), 0);
  v_.assign(wpv_ * static_cast<std::size_t>(n), 0);
}

void EdgeGrid::set_h(std::int64_t u, std::int64_t v, bool open) {
  assert(u >= 0 && u < n_ && v >= 0 && v <= n_);
  std::uint64_t& w = h_[static_cast<std::size_t>(v) * wph_ + static_cast<std::size_t>(u >> 6)];
  std::uint64_t m = 1ULL << (u & 63);
  w = open ? w | m : w & ~m;
}

void EdgeGrid::set_v(std::int64_t u, std::int64_t v, bool open) {
  assert(u >= 0 && u <= n_ && v >= 0 && v < n_);
  std::uint64_t& w = v_[static_cast<std::size_t>(v) * wpv_ + static_cast<std::size_t>(u >> 6)];
  std::uint64_t m = 1ULL << (u & 63);
  w = open ? w | m : w & ~m;
}

void EdgeGrid::set_h_range(std::int64_t v, std::int64_t u0, std::int64_t u1, bool open) {
  assert(v >= 0 && v <= n_ && u0 >= 0 && u1 <= n_);
  if (u0 >= u1) return;
  fill_bits(&h_[static_cast<std::size_t>(v) * wph_], u0, u1, open);
}

void EdgeGrid::set_v_range(std::int64_t v, std::int64_t u0, std::int64_t u1, bool open) {
  assert(v >= 0 && v < n_ && u0 >= 0 && u1 <= n_ + 1);
  if (u0 >= u1) return;
  fill_bits(&v_[static_cast<std::size_t>(v) * wpv_], u0, u1, open);
}

void EdgeGrid::or_h_row(std::int64_t v, const std::uint64_t* mask) {
  assert(v >= 0 && v <= n_);
  std::uint64_t* row = &h_[static_cast<std::size_t>(v) * wph_];
  for (std::size_t w = 0; w < wph_; ++w) row[w] |= mask[w];
}

void EdgeGrid::or_v_row(std::int64_t v, const std::uint64_t* mask) {
  assert(v >= 0 && v < n_);
  std::uint64_t* row = &v_[static_cast<std::size_t>(v) * wpv_];
  for (std::size_t w = 0; w < wpv_; ++w) row[w] |= mask[w];
}

int EdgeGrid::degree(std::int64_t u, std::int64_t v) const {
  assert(u >= 0 && u <= n_ && v >= 0 && v <= n_);
  int d = 0;
  if (u < n_ && open_h(u, v)) ++d;
  if (u > 0 && open_h(u - 1, v)) ++d;
  if (v < n_ && open_v(u, v)) ++d;
  if (v > 0 && open_v(u, v - 1)) ++d;
  return d;
}

std::int64_t EdgeGrid::count_open_h() const {
  std::int64_t c = 0;
  for (std::uint64_t w : h_) c += std::popcount(w);
  return c;
}

std::int64_t EdgeGrid::count_open_v() const {
  std::int64_t c = 0;
  for (std::uint64_t w : v_) c += std::popcount(w);
  return c;
}

bool EdgeGrid::subset_of(const EdgeGrid& other) const {
  if (other.n_ != n_) throw ValidationError("subset_of: window sizes differ");
  for (std::size_t i = 0; i < h_.size(); ++i)
    if (h_[i] & ~other.h_[i]) return false;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] & ~other.v_[i]) return false;
  return true;
}

EdgeGrid EdgeGrid::transposed() const {
  EdgeGrid t(n_);
  for (std::int64_t v = 0; v <= n_; ++v)
    for (std::int64_t u = 0; u < n_; ++u)
      if (open_h(u, v)) t.set_v(v, u, true);
  for (std::int64_t v = 0; v < n_; ++v)
    for (std::int64_t u = 0; u <= n_; ++u)
      if (open_v(u, v)) t.set_h(v, u, true);
  return t;
}

}  // namespace ersl
