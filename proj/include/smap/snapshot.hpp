#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>

#include "smap/geometry.hpp"

/// Checksummed raw binary snapshots.
///
/// Layout, all little-endian:
///
///   offset  size  field
///   0       8     magic "SMAPSNAP"
///   8       4     u32 version (1)
///   12      4     u32 field kind (1 scalar, 3 vector, 4 sphere)
///   16      4     u32 d
///   20      4*d   u32 n per axis
///   ..      8     f64 L
///   ..      8     f64 time
///   ..      24    f64[3] base point Q (zero unless kind = sphere)
///   ..      8     u64 payload value count
///   ..      4     u32 CRC-32 of the payload bytes
///   ..      4     u32 CRC-32 of every header byte before this field
///   ..            payload: row-major f64 values; vector kinds interleave the
///                 three components per point
namespace smap::snapshot {

inline constexpr std::uint32_t kVersion = 1;

enum class FieldKind : std::uint32_t { Scalar = 1, Vector = 3, Sphere = 4 };

/// Real scalar, plain vector, or sphere-valued field.
using Field = std::variant<ScalarField, VectorField3, SphereField>;

struct Snapshot {
  Field field;
  double time = 0.0;
};

/// Writes atomically (temporary file, then rename). A ScalarField must be
/// real; throws std::invalid_argument otherwise.
void save(const Field& field, double time, const std::filesystem::path& path);

/// Throws FormatError on bad magic, version, checksum, truncation, or when
/// `expected` is given and the stored grid differs from it.
Snapshot load(const std::filesystem::path& path, const std::optional<Grid>& expected = std::nullopt);

/// load() that additionally requires a sphere-valued field.
SphereField load_sphere(const std::filesystem::path& path, double* time = nullptr,
                        const std::optional<Grid>& expected = std::nullopt);

}  // namespace smap::snapshot
