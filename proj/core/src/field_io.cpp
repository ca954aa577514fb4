#include "quasilevel/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>

#include "json.hpp"
#include "quasilevel/errors.hpp"

namespace quasilevel {

namespace {

constexpr std::size_t kHeaderBytes = 64;
constexpr const char* kMagic = "QLVL1";

std::string real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string header_text(const GridField& f, int digits) {
  return std::string(kMagic) + "[" + std::to_string(f.nx) + "," + std::to_string(f.ny) + "," +
         real(f.spacing, digits) + "," + real(f.origin.x, digits) + "," + real(f.origin.y, digits) + "]";
}

}  // namespace

void write_field_csv(std::ostream& os, const GridField& f) {
  os << "nx,ny,spacing,origin_x,origin_y\n";
  os << f.nx << ',' << f.ny << ',' << real(f.spacing, 17) << ',' << real(f.origin.x, 17) << ','
     << real(f.origin.y, 17) << '\n';
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      if (i) os << ',';
      os << real(f.at(i, j), 17);
    }
    os << '\n';
  }
}

void write_field_binary(std::ostream& os, const GridField& f) {
  // Shorter numbers when the full-precision header would not fit in 64 bytes.
  std::string head;
  for (int digits = 17; digits >= 6; --digits) {
    head = header_text(f, digits);
    if (head.size() < kHeaderBytes) break;
  }
  if (head.size() >= kHeaderBytes) throw InvalidArgument("field header does not fit in 64 bytes");
  head.resize(kHeaderBytes - 1, ' ');
  head.push_back('\n');
  os.write(head.data(), static_cast<std::streamsize>(head.size()));
  for (double v : f.values) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char bytes[8];
    std::memcpy(bytes, &bits, 8);
    os.write(bytes, 8);
  }
}

BinaryFieldHeader read_field_binary(std::istream& is, std::vector<double>& values) {
  char head[kHeaderBytes];
  if (!is.read(head, kHeaderBytes)) throw InvalidArgument("truncated field header");
  if (std::strncmp(head, kMagic, 5) != 0) throw InvalidArgument("missing QLVL1 magic");
  const auto j = nlohmann::json::parse(std::string(head + 5, kHeaderBytes - 5));
  BinaryFieldHeader h;
  if (!j.is_array() || j.size() != 5) throw InvalidArgument("field header must be [nx, ny, spacing, ox, oy]");
  h.nx = j.at(0).get<int>();
  h.ny = j.at(1).get<int>();
  h.spacing = j.at(2).get<double>();
  h.origin = {j.at(3).get<double>(), j.at(4).get<double>()};
  values.resize(static_cast<std::size_t>(h.nx) * h.ny);
  for (double& v : values) {
    char bytes[8];
    if (!is.read(bytes, 8)) throw InvalidArgument("truncated field data");
    std::uint64_t bits;
    std::memcpy(&bits, bytes, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    v = std::bit_cast<double>(bits);
  }
  return h;
}

}  // namespace quasilevel
