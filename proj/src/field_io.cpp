#include "exl/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace exl {

namespace {

constexpr char kMagic[4] = {'E', 'X', 'L', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
T to_le(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::reverse(b, b + sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ofstream& os, T v) {
  v = to_le(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (is.gcount() != static_cast<std::streamsize>(sizeof(T)))
    throw FieldIoError(FieldIoError::Kind::ShortRead, "short read");
  return to_le(v);
}

std::ifstream open_and_read_header(const std::filesystem::path& path, FieldHeader& h) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FieldIoError(FieldIoError::Kind::Open, "cannot open " + path.string());
  char magic[4] = {};
  is.read(magic, 4);
  if (is.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw FieldIoError(FieldIoError::Kind::Magic, "not an EXL1 file");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion)
    throw FieldIoError(FieldIoError::Kind::Version, "unsupported EXL1 version " + std::to_string(version));
  const auto n = get<std::uint32_t>(is);
  h.length = get<double>(is);
  const auto ncomp = get<std::uint32_t>(is);
  if (n < 8 || n % 2 != 0 || n > 4096 || !(h.length > 0.0) || (ncomp != 1 && ncomp != 3))
    throw FieldIoError(FieldIoError::Kind::Dimension, "dimension mismatch");
  h.n = static_cast<int>(n);
  h.ncomp = static_cast<int>(ncomp);
  return is;
}

void read_values(std::ifstream& is, ScalarField& f) {
  auto vals = f.values();
  is.read(reinterpret_cast<char*>(vals.data()), static_cast<std::streamsize>(vals.size_bytes()));
  if (is.gcount() != static_cast<std::streamsize>(vals.size_bytes()))
    throw FieldIoError(FieldIoError::Kind::ShortRead, "short read");
  if constexpr (std::endian::native == std::endian::big)
    for (double& x : vals) x = to_le(x);
}

std::ofstream open_and_write_header(const std::filesystem::path& path, const Grid3& g, int ncomp) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FieldIoError(FieldIoError::Kind::Write, "cannot write " + path.string());
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
  put<double>(os, g.length());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(ncomp));
  return os;
}

void write_values(std::ofstream& os, const ScalarField& f) {
  if constexpr (std::endian::native == std::endian::big) {
    for (double x : f.values()) put(os, x);
  } else {
    auto vals = f.values();
    os.write(reinterpret_cast<const char*>(vals.data()), static_cast<std::streamsize>(vals.size_bytes()));
  }
}

}  // namespace

FieldHeader read_header(const std::filesystem::path& path) {
  FieldHeader h;
  open_and_read_header(path, h);
  return h;
}

VectorField3 read_field(const std::filesystem::path& path) {
  FieldHeader h;
  auto is = open_and_read_header(path, h);
  if (h.ncomp != 3) throw FieldIoError(FieldIoError::Kind::Dimension, "dimension mismatch");
  VectorField3 v(make_grid(h.n, h.length));
  for (int c = 0; c < 3; ++c) read_values(is, v[c]);
  return v;
}

ScalarField read_scalar_field(const std::filesystem::path& path) {
  FieldHeader h;
  auto is = open_and_read_header(path, h);
  if (h.ncomp != 1) throw FieldIoError(FieldIoError::Kind::Dimension, "dimension mismatch");
  ScalarField f(make_grid(h.n, h.length));
  read_values(is, f);
  return f;
}

void write_field(const VectorField3& field, const std::filesystem::path& path) {
  auto os = open_and_write_header(path, field.grid(), 3);
  for (int c = 0; c < 3; ++c) write_values(os, field[c]);
  if (!os) throw FieldIoError(FieldIoError::Kind::Write, "write failed for " + path.string());
}

void write_field(const ScalarField& field, const std::filesystem::path& path) {
  auto os = open_and_write_header(path, field.grid(), 1);
  write_values(os, field);
  if (!os) throw FieldIoError(FieldIoError::Kind::Write, "write failed for " + path.string());
}

}  // namespace exl
