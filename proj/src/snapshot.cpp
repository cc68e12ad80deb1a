#include "smap/snapshot.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "smap/csv.hpp"
#include "smap/errors.hpp"

namespace smap::snapshot {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes little-endian");

constexpr char kMagic[8] = {'S', 'M', 'A', 'P', 'S', 'N', 'A', 'P'};

template <class T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

std::uint32_t crc(const char* data, std::size_t size) {
  uLong c = crc32(0L, Z_NULL, 0);
  while (size > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    c = crc32(c, reinterpret_cast<const Bytef*>(data), chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(c);
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::filesystem::path& path) : bytes_(bytes), path_(path) {}

  template <class T>
  T get(const char* what) {
    if (pos_ + sizeof(T) > bytes_.size()) fail(std::string("truncated header at ") + what);
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& message) const {
    throw FormatError(path_.string() + ": " + message);
  }

 private:
  const std::string& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

FieldKind kind_of(const Field& field) {
  switch (field.index()) {
    case 0:
      return FieldKind::Scalar;
    case 1:
      return FieldKind::Vector;
    default:
      return FieldKind::Sphere;
  }
}

const Grid& grid_of(const Field& field) {
  return std::visit([](const auto& f) -> const Grid& { return f.grid(); }, field);
}

std::string describe(const Grid& g) {
  std::ostringstream os;
  os << "d=" << g.dim() << " n=" << g.n() << " L=" << g.length();
  return os.str();
}

}  // namespace

void save(const Field& field, double time, const std::filesystem::path& path) {
  const Grid& grid = grid_of(field);
  const FieldKind kind = kind_of(field);

  std::string payload;
  if (const auto* f = std::get_if<ScalarField>(&field)) {
    if (f->max_abs_imag() != 0.0) throw std::invalid_argument("snapshot: scalar field must be real");
    payload.reserve(grid.size() * 8);
    for (std::size_t i = 0; i < grid.size(); ++i) put(payload, (*f)[i].real());
  } else {
    const VectorField3& v = kind == FieldKind::Vector ? std::get<VectorField3>(field)
                                                      : std::get<SphereField>(field).values();
    payload.reserve(grid.size() * 24);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      put(payload, v[i].x);
      put(payload, v[i].y);
      put(payload, v[i].z);
    }
  }

  const Vec3 base = kind == FieldKind::Sphere ? std::get<SphereField>(field).base() : Vec3{};
  std::string out(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(kind));
  put(out, static_cast<std::uint32_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) put(out, static_cast<std::uint32_t>(grid.n()));
  put(out, grid.length());
  put(out, time);
  put(out, base.x);
  put(out, base.y);
  put(out, base.z);
  put(out, static_cast<std::uint64_t>(payload.size() / 8));
  put(out, crc(payload.data(), payload.size()));
  put(out, crc(out.data(), out.size()));
  out += payload;
  csv::write_file_atomic(path, out);
}

Snapshot load(const std::filesystem::path& path, const std::optional<Grid>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader r(bytes, path);
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    r.fail("bad magic (not a snapshot file)");
  }
  r.get<std::uint64_t>("magic");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kVersion) {
    r.fail("unsupported version " + std::to_string(version) + " (expected " +
           std::to_string(kVersion) + ")");
  }
  const auto kind_raw = r.get<std::uint32_t>("kind");
  if (kind_raw != 1 && kind_raw != 3 && kind_raw != 4) {
    r.fail("unknown field kind " + std::to_string(kind_raw));
  }
  const auto kind = static_cast<FieldKind>(kind_raw);
  const auto dim = r.get<std::uint32_t>("d");
  if (dim < Grid::kMinDim || dim > Grid::kMaxDim) r.fail("unsupported dimension");
  std::uint32_t n = 0;
  for (std::uint32_t a = 0; a < dim; ++a) {
    const auto na = r.get<std::uint32_t>("n");
    if (a > 0 && na != n) r.fail("anisotropic grids are not supported");
    n = na;
  }
  const auto length = r.get<double>("L");
  const auto time = r.get<double>("time");
  Vec3 base;
  base.x = r.get<double>("base");
  base.y = r.get<double>("base");
  base.z = r.get<double>("base");
  const auto count = r.get<std::uint64_t>("count");
  const auto payload_crc = r.get<std::uint32_t>("payload checksum");
  const std::size_t header_end = r.position();
  const auto header_crc = r.get<std::uint32_t>("header checksum");
  if (crc(bytes.data(), header_end) != header_crc) r.fail("header checksum mismatch");

  std::optional<Grid> stored;
  try {
    stored.emplace(static_cast<int>(dim), static_cast<int>(n), length);
  } catch (const std::invalid_argument& e) {
    r.fail(std::string("invalid grid: ") + e.what());
  }
  if (expected && !(*expected == *stored)) {
    r.fail("grid mismatch: file has " + describe(*stored) + ", expected " + describe(*expected));
  }
  const std::size_t per_point = kind == FieldKind::Scalar ? 1 : 3;
  if (count != stored->size() * per_point) r.fail("payload count does not match the grid");
  const std::size_t payload_bytes = count * 8;
  const std::size_t start = r.position();
  if (bytes.size() - start < payload_bytes) r.fail("truncated payload");
  if (bytes.size() - start > payload_bytes) r.fail("trailing bytes after payload");
  if (crc(bytes.data() + start, payload_bytes) != payload_crc) r.fail("payload checksum mismatch");

  const char* p = bytes.data() + start;
  auto next = [&p] {
    double v;
    std::memcpy(&v, p, 8);
    p += 8;
    return v;
  };
  if (kind == FieldKind::Scalar) {
    ScalarField f(*stored);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = next();
    return Snapshot{std::move(f), time};
  }
  VectorField3 v(*stored);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i].x = next();
    v[i].y = next();
    v[i].z = next();
  }
  if (kind == FieldKind::Vector) return Snapshot{std::move(v), time};
  try {
    return Snapshot{SphereField(std::move(v), base), time};
  } catch (const std::invalid_argument& e) {
    r.fail(std::string("sphere payload not unit length: ") + e.what());
  }
}

SphereField load_sphere(const std::filesystem::path& path, double* time,
                        const std::optional<Grid>& expected) {
  Snapshot snap = load(path, expected);
  if (time) *time = snap.time;
  if (auto* s = std::get_if<SphereField>(&snap.field)) return std::move(*s);
  throw FormatError(path.string() + ": snapshot does not hold a sphere-valued field");
}

}  // namespace smap::snapshot
