#include "fracmax/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace fracmax::io {
namespace {

class ByteWriter {
 public:
  void bytes(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  const std::vector<char>& data() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class ByteReader {
 public:
  ByteReader(std::vector<char> buf, std::string path) : buf_(std::move(buf)), path_(std::move(path)) {}
  void need(std::size_t n) const {
    if (pos_ + n > buf_.size()) throw FormatError(path_ + ": truncated field file");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::size_t remaining() const { return buf_.size() - pos_; }
  const char* peek() const { return buf_.data() + pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::vector<char> buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

void header(ByteWriter& w, int rank, const Grid3& g) {
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u8(static_cast<std::uint8_t>(rank));
  for (int a = 0; a < 3; ++a) w.u32(static_cast<std::uint32_t>(g.n()));
  w.f64(g.length());
}

void payload(ByteWriter& w, const ScalarField& f) {
  for (const auto& v : f.values()) {
    w.f64(v.real());
    w.f64(v.imag());
  }
}

void flush(const std::string& path, const ByteWriter& w) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
  if (!out) throw IoError("write failed for " + path);
}

ScalarField read_component(ByteReader& r, const Grid3& g) {
  ScalarField f(g);
  for (auto& v : f.values()) {
    const double re = r.f64();
    v = Complex(re, r.f64());
  }
  return f;
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f) {
  ByteWriter w;
  header(w, 1, f.grid());
  payload(w, f);
  flush(path, w);
}

void write_field(const std::string& path, const VectorField3& f) {
  ByteWriter w;
  header(w, 3, f.grid());
  for (int a = 0; a < 3; ++a) payload(w, f[a]);
  flush(path, w);
}

FieldFile read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path);

  ByteReader r(std::move(buf), path);
  r.need(4);
  if (std::memcmp(r.peek(), kMagic, 4) != 0) throw FormatError(path + ": bad magic bytes (expected F3DF)");
  r.skip(4);
  const std::uint32_t version = r.u32();
  if (version != kVersion) throw FormatError(path + ": unsupported version " + std::to_string(version));
  const int rank = r.u8();
  if (rank != 1 && rank != 3) throw FormatError(path + ": rank must be 1 or 3, got " + std::to_string(rank));
  const std::uint32_t nx = r.u32(), ny = r.u32(), nz = r.u32();
  const double L = r.f64();
  if (nx != ny || ny != nz) throw FormatError(path + ": only cubic grids are supported");
  if (nx < 4 || nx % 2 != 0) throw FormatError(path + ": grid size must be even and >= 4");
  if (!(L > 0.0) || !std::isfinite(L)) throw FormatError(path + ": box length must be positive");
  const std::size_t expected = static_cast<std::size_t>(rank) * nx * ny * nz * 16;
  if (r.remaining() != expected) {
    throw FormatError(path + ": payload has " + std::to_string(r.remaining()) + " bytes, expected " +
                      std::to_string(expected));
  }
  const Grid3 g(static_cast<int>(nx), L);
  FieldFile out;
  out.rank = rank;
  if (rank == 1) {
    out.scalar = read_component(r, g);
  } else {
    ScalarField x = read_component(r, g);
    ScalarField y = read_component(r, g);
    ScalarField z = read_component(r, g);
    out.vector = VectorField3(std::move(x), std::move(y), std::move(z));
  }
  return out;
}

void write_slice_csv(const std::string& path, const VectorField3& f, int z_index) {
  const Grid3& g = f.grid();
  if (z_index < 0 || z_index >= g.n()) throw std::invalid_argument("write_slice_csv: z index out of range");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw IoError("cannot open " + path + " for writing");
  std::fprintf(fp, "x,y,abs,re0,im0,re1,im1,re2,im2\n");
  for (int j = 0; j < g.n(); ++j) {
    for (int i = 0; i < g.n(); ++i) {
      const std::size_t idx = g.index(i, j, z_index);
      const Vec3 p = g.point(idx);
      const CVec3 v = f.at(idx);
      const double mag = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
      std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p[0], p[1], mag, v[0].real(),
                   v[0].imag(), v[1].real(), v[1].imag(), v[2].real(), v[2].imag());
    }
  }
  if (std::fclose(fp) != 0) throw IoError("write failed for " + path);
}

}  // namespace fracmax::io
