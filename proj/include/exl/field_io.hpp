#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "exl/grid.hpp"

namespace exl {

/// EXL1 layout: "EXL1", u32 version (=1), u32 n, f64 length, u32 ncomp (1 or 3),
/// then ncomp * n^3 little-endian f64 values, x-fastest, components consecutive.
struct FieldIoError : std::runtime_error {
  enum class Kind { Open, Magic, Version, Dimension, ShortRead, Write };
  FieldIoError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct FieldHeader {
  int n = 0;
  double length = 0.0;
  int ncomp = 0;
};

FieldHeader read_header(const std::filesystem::path& path);

/// Reads a 3-component field. A 1-component file raises Kind::Dimension.
VectorField3 read_field(const std::filesystem::path& path);
ScalarField read_scalar_field(const std::filesystem::path& path);

void write_field(const VectorField3& field, const std::filesystem::path& path);
void write_field(const ScalarField& field, const std::filesystem::path& path);

}  // namespace exl
