#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fracmax/field.hpp"

namespace fracmax::io {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File opened but its contents are not a valid field file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field file layout (all little-endian, no padding):
//   "F3DF" | u32 version = 1 | u8 rank (1 or 3) | u32 nx, ny, nz | f64 L
//   payload: rank * nx*ny*nz complex samples as (re, im) f64 pairs,
//   x fastest, components outermost.
inline constexpr char kMagic[4] = {'F', '3', 'D', 'F'};
inline constexpr std::uint32_t kVersion = 1;

struct FieldFile {
  int rank = 0;
  std::optional<ScalarField> scalar;  // rank 1
  std::optional<VectorField3> vector;  // rank 3

  const Grid3& grid() const { return rank == 1 ? scalar->grid() : vector->grid(); }
};

void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const VectorField3& f);
FieldFile read_field(const std::string& path);

/// Samples of f on the plane z = z_index: columns x,y,abs,re0,im0,re1,im1,re2,im2
/// with 17 significant digits.
void write_slice_csv(const std::string& path, const VectorField3& f, int z_index);

}  // namespace fracmax::io
