#include "holderlab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

std::filesystem::path meta_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta";
  return p;
}

void write_le(std::ofstream& out, std::span<const double> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  } else {
    for (double v : values) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) out.put(static_cast<char>((bits >> (8 * b)) & 0xff));
    }
  }
}

std::vector<double> read_le(std::ifstream& in, std::size_t count) {
  std::vector<double> values(count);
  std::vector<unsigned char> raw(count * 8);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw InvalidInput("field dump is shorter than its metadata declares");
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(raw[8 * i + b]) << (8 * b);
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

void write_meta(const std::filesystem::path& path, const Grid& grid, int components, double time) {
  std::ofstream meta(meta_path(path));
  if (!meta) throw InvalidInput("cannot write " + meta_path(path).string());
  meta << std::setprecision(17);
  meta << "dim=" << grid.dim() << "\n"
       << "N=" << grid.points_per_axis() << "\n"
       << "L=" << grid.side_length() << "\n"
       << "components=" << components << "\n"
       << "time=" << time << "\n";
}

void write_fields(const std::filesystem::path& path, const std::vector<const ScalarField*>& fields,
                  double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  for (const auto* f : fields) write_le(out, f->samples());
  write_meta(path, fields.front()->grid(), static_cast<int>(fields.size()), time);
}

std::vector<ScalarField> read_fields(const std::filesystem::path& path, DumpMeta& meta) {
  meta = read_dump_meta(path);
  Grid grid(meta.dim, meta.n, meta.length);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open field dump " + path.string());
  std::vector<ScalarField> out;
  for (int c = 0; c < meta.components; ++c) out.emplace_back(grid, read_le(in, grid.size()));
  return out;
}

}  // namespace

void write_dump(const std::filesystem::path& path, const VectorField& v, double time) {
  std::vector<const ScalarField*> f;
  for (int c = 0; c < v.dim(); ++c) f.push_back(&v[c]);
  write_fields(path, f, time);
}

void write_dump(const std::filesystem::path& path, const ScalarField& f, double time) {
  write_fields(path, {&f}, time);
}

DumpMeta read_dump_meta(const std::filesystem::path& path) {
  std::ifstream in(meta_path(path));
  if (!in) throw InvalidInput("missing dump metadata " + meta_path(path).string());
  DumpMeta meta;
  std::string line;
  bool seen_dim = false, seen_n = false, seen_l = false, seen_c = false;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    std::istringstream value(line.substr(eq + 1));
    if (key == "dim") seen_dim = static_cast<bool>(value >> meta.dim);
    else if (key == "N") seen_n = static_cast<bool>(value >> meta.n);
    else if (key == "L") seen_l = static_cast<bool>(value >> meta.length);
    else if (key == "components") seen_c = static_cast<bool>(value >> meta.components);
    else if (key == "time") value >> meta.time;
  }
  if (!(seen_dim && seen_n && seen_l && seen_c))
    throw InvalidInput("incomplete dump metadata " + meta_path(path).string());
  return meta;
}

VectorField read_vector_dump(const std::filesystem::path& path, double* time) {
  DumpMeta meta;
  auto comps = read_fields(path, meta);
  if (meta.components != meta.dim)
    throw InvalidInput("dump " + path.string() + " is not a vector field");
  if (time) *time = meta.time;
  Grid grid(meta.dim, meta.n, meta.length);
  return VectorField(grid, std::move(comps));
}

ScalarField read_scalar_dump(const std::filesystem::path& path, double* time) {
  DumpMeta meta;
  auto comps = read_fields(path, meta);
  if (meta.components != 1) throw InvalidInput("dump " + path.string() + " is not a scalar field");
  if (time) *time = meta.time;
  return std::move(comps.front());
}

}  // namespace holderlab
