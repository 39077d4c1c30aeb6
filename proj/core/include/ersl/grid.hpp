#pragma once

#include <cstdint>
#include <vector>

#include "ersl/errors.hpp"

namespace ersl {

// Open/closed edges of the window [0,n]^2. Horizontal edges are indexed by
// their left vertex (u in [0,n-1], v in [0,n]); vertical edges by their lower
// vertex (u in [0,n], v in [0,n-1]). Bits are packed row-major with padded
// rows so whole rows can be combined word-wise; padding bits stay zero.
class EdgeGrid {
 public:
  EdgeGrid() = default;
  explicit EdgeGrid(std::int64_t n);

  std::int64_t n() const { return n_; }
  std::int64_t vertex_count() const { return (n_ + 1) * (n_ + 1); }
  std::int64_t h_edge_count() const { return n_ * (n_ + 1); }
  std::int64_t v_edge_count() const { return n_ * (n_ + 1); }

  std::int64_t vid(std::int64_t u, std::int64_t v) const {
    return u + (n_ + 1) * v;
  }

  bool open_h(std::int64_t u, std::int64_t v) const {
    return h_[static_cast<std::size_t>(v) * wph_ + static_cast<std::size_t>(u >> 6)] >>
               (u & 63) &
           1;
  }
  bool open_v(std::int64_t u, std::int64_t v) const {
    return v_[static_cast<std::size_t>(v) * wpv_ + static_cast<std::size_t>(u >> 6)] >>
               (u & 63) &
           1;
  }

  void set_h(std::int64_t u, std::int64_t v, bool open);
  void set_v(std::int64_t u, std::int64_t v, bool open);

  // assign every horizontal edge (u, v), u in [u0, u1), in one row
  void set_h_range(std::int64_t v, std::int64_t u0, std::int64_t u1, bool open);
  void set_v_range(std::int64_t v, std::int64_t u0, std::int64_t u1, bool open);

  // row |= mask; mask holds h_words_per_row() (resp. v_) words with zero
  // padding bits. Used by the filling pass.
  void or_h_row(std::int64_t v, const std::uint64_t* mask);
  void or_v_row(std::int64_t v, const std::uint64_t* mask);

  std::size_t h_words_per_row() const { return wph_; }
  std::size_t v_words_per_row() const { return wpv_; }

  // number of open incident edges at vertex (u, v)
  int degree(std::int64_t u, std::int64_t v) const;

  std::int64_t count_open_h() const;
  std::int64_t count_open_v() const;
  std::int64_t count_open() const { return count_open_h() + count_open_v(); }

  // true iff every edge open here is open in other (other.n() must match)
  bool subset_of(const EdgeGrid& other) const;

  // vertex (u,v) -> (v,u); exchanges horizontal and vertical edge roles
  EdgeGrid transposed() const;

  bool operator==(const EdgeGrid& other) const = default;

 private:
  std::int64_t n_ = 0;
  std::size_t wph_ = 0;  // words per horizontal-edge row (n bits)
  std::size_t wpv_ = 0;  // words per vertical-edge row (n+1 bits)
  std::vector<std::uint64_t> h_, v_;
};

}  // namespace ersl
