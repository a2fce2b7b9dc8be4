#pragma once

#include <cstddef>

#include "fracmax/types.hpp"

namespace fracmax {

/// Periodic cube [0, L)^3 with n points per axis and its frequency lattice
/// (2*pi/L) * {-n/2, ..., n/2 - 1}^3. Flat index is i + n*(j + n*k), x fastest.
class Grid3 {
 public:
  Grid3(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const;
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * (j + static_cast<std::size_t>(n_) * k);
  }
  std::array<int, 3> unravel(std::size_t idx) const;

  Vec3 point(std::size_t idx) const;
  Vec3 center() const { return {length_ / 2, length_ / 2, length_ / 2}; }

  /// Signed frequency index in {-n/2, ..., n/2-1} of the storage index i.
  int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
  bool is_nyquist(int i) const { return i == n_ / 2; }
  double fundamental() const;

  /// Full wavevector xi of a Fourier-space storage index.
  Vec3 frequency(std::size_t idx) const;
  /// Wavevector used by odd-order symbols: xi with Nyquist components set to
  /// zero, so that real fields stay real under grad/div/curl.
  Vec3 derivative_frequency(std::size_t idx) const;

  bool operator==(const Grid3& o) const { return n_ == o.n_ && length_ == o.length_; }
  bool operator!=(const Grid3& o) const { return !(*this == o); }

 private:
  int n_;
  double length_;
};

}  // namespace fracmax
