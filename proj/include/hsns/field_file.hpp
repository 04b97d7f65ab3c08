#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hsns/halfspace_field.hpp"

namespace hsns {

/// Binary field container. "HSF1" holds a half-space field, "TBF1" boundary
/// data. Header fields are little-endian; the payload is physical f64
/// values ordered [block][component][point] with the tail as last block.
struct FieldFile {
  std::array<char, 4> magic{'H', 'S', 'F', '1'};
  std::uint16_t version = 1;
  std::uint32_t d = 0;
  std::uint32_t points = 0;
  std::uint32_t slabs = 0;  ///< absent from TBF1
  std::uint32_t components = 0;
  std::uint8_t tail = 0;
  double period = 0.0;
  double height = 0.0;  ///< absent from TBF1
  std::vector<double> payload;

  bool is_boundary() const { return magic == std::array<char, 4>{'T', 'B', 'F', '1'}; }
  std::size_t header_bytes() const { return is_boundary() ? 27 : 39; }
  std::size_t expected_payload() const;
};

std::vector<unsigned char> encode_field_file(const FieldFile& f);
FieldFile decode_field_file(const std::vector<unsigned char>& bytes);

void write_field_file(const std::string& path, const FieldFile& f);
FieldFile read_field_file(const std::string& path);

FieldFile to_field_file(const HalfSpaceField& u);
FieldFile to_boundary_file(const TangentialField& a);
/// Rejects files whose declared grid differs from expected.
HalfSpaceField field_from_file(const FieldFile& f, const Grid& expected);
TangentialField boundary_from_file(const FieldFile& f, const Grid& expected);

void store_field(const std::string& path, const HalfSpaceField& u);
void store_boundary(const std::string& path, const TangentialField& a);
HalfSpaceField load_field(const std::string& path, const Grid& expected);
TangentialField load_boundary(const std::string& path, const Grid& expected);

}  // namespace hsns
