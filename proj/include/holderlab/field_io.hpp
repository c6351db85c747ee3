#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "holderlab/field.hpp"

namespace holderlab {

/// Sidecar metadata of a field dump.
struct DumpMeta {
  int dim = 0;
  int n = 0;
  double length = 0.0;
  int components = 0;
  double time = 0.0;
};

/// Writes little-endian float64 samples, component after component, in
/// lattice row-major order, plus `<path>.meta` (key=value text).
void write_dump(const std::filesystem::path& path, const VectorField& v, double time);
void write_dump(const std::filesystem::path& path, const ScalarField& f, double time);

DumpMeta read_dump_meta(const std::filesystem::path& path);
/// Reads a dump; the metadata must describe `components` == grid dim.
VectorField read_vector_dump(const std::filesystem::path& path, double* time = nullptr);
ScalarField read_scalar_dump(const std::filesystem::path& path, double* time = nullptr);

}  // namespace holderlab
