#include "hsns/field_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hsns/error.hpp"

namespace hsns {

namespace {

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  template <class T>
  T get(const char* what) {
    if (offset_ + sizeof(T) > bytes_.size()) {
      std::ostringstream os;
      os << "field file: truncated at byte offset " << bytes_.size() << " while reading " << what << " at offset "
         << offset_;
      fail(ErrorKind::Data, os.str());
    }
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + offset_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
    T value;
    std::memcpy(&value, raw, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }

  std::size_t offset() const { return offset_; }
  std::size_t size() const { return bytes_.size(); }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t offset_ = 0;
};

std::size_t modes_of(std::uint32_t d, std::uint32_t n) {
  std::size_t total = 1;
  for (std::uint32_t a = 0; a < d; ++a) total *= n;
  return total;
}

}  // namespace

std::size_t FieldFile::expected_payload() const {
  const std::size_t blocks = is_boundary() ? 1 : static_cast<std::size_t>(slabs) + (tail ? 1 : 0);
  return blocks * components * modes_of(d, points);
}

std::vector<unsigned char> encode_field_file(const FieldFile& f) {
  if (f.payload.size() != f.expected_payload()) fail(ErrorKind::Data, "field file: payload length does not match header");
  std::vector<unsigned char> out;
  out.reserve(f.header_bytes() + 8 * f.payload.size());
  out.insert(out.end(), f.magic.begin(), f.magic.end());
  put(out, f.version);
  put(out, f.d);
  put(out, f.points);
  if (!f.is_boundary()) put(out, f.slabs);
  put(out, f.components);
  put(out, f.tail);
  put(out, f.period);
  if (!f.is_boundary()) put(out, f.height);
  for (double v : f.payload) put(out, v);
  return out;
}

FieldFile decode_field_file(const std::vector<unsigned char>& bytes) {
  FieldFile f;
  Reader in(bytes);
  for (auto& c : f.magic) c = static_cast<char>(in.get<std::uint8_t>("magic"));
  const bool boundary = f.is_boundary();
  if (!boundary && f.magic != std::array<char, 4>{'H', 'S', 'F', '1'}) {
    fail(ErrorKind::Data, "field file: bad magic at offset 0 (expected HSF1 or TBF1)");
  }
  f.version = in.get<std::uint16_t>("version");
  if (f.version != 1) {
    std::ostringstream os;
    os << "field file: unsupported version " << f.version << " at offset 4";
    fail(ErrorKind::Data, os.str());
  }
  f.d = in.get<std::uint32_t>("d");
  f.points = in.get<std::uint32_t>("N");
  if (!boundary) f.slabs = in.get<std::uint32_t>("M");
  f.components = in.get<std::uint32_t>("components");
  f.tail = in.get<std::uint8_t>("tail flag");
  f.period = in.get<double>("L");
  if (!boundary) f.height = in.get<double>("X_max");
  if (f.d < 1 || f.d > 3 || f.points < 1 || f.points > 4096 || f.components < 1 || f.components > 64 ||
      f.slabs > 1u << 20 || f.tail > 1 || (boundary && f.tail != 0)) {
    fail(ErrorKind::Data, "field file: header values out of range");
  }
  const std::size_t expected = f.expected_payload();
  const std::size_t available = (in.size() - in.offset()) / 8;
  if ((in.size() - in.offset()) % 8 != 0 || available != expected) {
    std::ostringstream os;
    os << "field file: payload length mismatch at offset " << in.offset() << ": expected " << expected * 8
       << " bytes, found " << in.size() - in.offset();
    fail(ErrorKind::Data, os.str());
  }
  f.payload.resize(expected);
  for (auto& v : f.payload) v = in.get<double>("payload");
  return f;
}

void write_field_file(const std::string& path, const FieldFile& f) {
  const auto bytes = encode_field_file(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Data, "field file: cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Data, "field file: write failed for '" + path + "'");
}

FieldFile read_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Data, "field file: cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_field_file(bytes);
}

FieldFile to_field_file(const HalfSpaceField& u) {
  const Grid& g = u.grid();
  FieldFile f;
  f.d = g.dim();
  f.points = g.points();
  f.slabs = g.slab_count();
  f.components = u.components();
  f.tail = u.has_tail() ? 1 : 0;
  f.period = g.period();
  f.height = g.height();
  for (int b = 0; b < u.block_count(); ++b) {
    const auto values = u.block(b).to_physical();
    f.payload.insert(f.payload.end(), values.begin(), values.end());
  }
  return f;
}

FieldFile to_boundary_file(const TangentialField& a) {
  const Grid& g = a.grid();
  FieldFile f;
  f.magic = {'T', 'B', 'F', '1'};
  f.d = g.dim();
  f.points = g.points();
  f.components = a.components();
  f.period = g.period();
  f.payload = a.to_physical();
  return f;
}

namespace {

void check_grid(const FieldFile& f, const Grid& g, bool vertical) {
  const bool same = f.d == static_cast<std::uint32_t>(g.dim()) && f.points == static_cast<std::uint32_t>(g.points()) &&
                    f.period == g.period() &&
                    (!vertical || (f.slabs == static_cast<std::uint32_t>(g.slab_count()) && f.height == g.height()));
  if (!same) fail(ErrorKind::Data, "field file: declared grid does not match the run grid");
}

}  // namespace

HalfSpaceField field_from_file(const FieldFile& f, const Grid& expected) {
  if (f.is_boundary()) fail(ErrorKind::Data, "field file: expected HSF1, found TBF1");
  check_grid(f, expected, true);
  HalfSpaceField u(expected, static_cast<int>(f.components), f.tail != 0);
  const std::size_t block = f.components * expected.modes();
  for (int b = 0; b < u.block_count(); ++b) {
    std::span<const double> values(f.payload.data() + b * block, block);
    u.block(b) = TangentialField::from_physical(expected, static_cast<int>(f.components), values);
  }
  return u;
}

TangentialField boundary_from_file(const FieldFile& f, const Grid& expected) {
  if (!f.is_boundary()) fail(ErrorKind::Data, "field file: expected TBF1, found HSF1");
  check_grid(f, expected, false);
  return TangentialField::from_physical(expected, static_cast<int>(f.components), f.payload);
}

void store_field(const std::string& path, const HalfSpaceField& u) { write_field_file(path, to_field_file(u)); }
void store_boundary(const std::string& path, const TangentialField& a) { write_field_file(path, to_boundary_file(a)); }
HalfSpaceField load_field(const std::string& path, const Grid& expected) {
  return field_from_file(read_field_file(path), expected);
}
TangentialField load_boundary(const std::string& path, const Grid& expected) {
  return boundary_from_file(read_field_file(path), expected);
}

}  // namespace hsns
