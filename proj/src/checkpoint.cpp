// SPDX-License-Identifier: Apache-2.0
#include <bit>
#include <cstring>

#include "pcbplace/error.hpp"
#include "pcbplace/instance_io.hpp"
#include "pcbplace/mlp.hpp"

namespace pcbplace {

namespace {

void put_u64(std::string &out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint64_t get_u64(std::string_view in, std::size_t &pos) {
  if (pos + 8 > in.size())
    throw MalformedFileError("checkpoint truncated at byte " + std::to_string(pos));
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 8;
  return v;
}

} // namespace

std::string serialize_checkpoint(const Mlp &net) {
  std::string out;
  const auto &dims = net.layer_dims();
  put_u64(out, dims.size());
  for (const std::size_t d : dims)
    put_u64(out, d);
  for (const double p : net.parameters())
    put_u64(out, std::bit_cast<std::uint64_t>(p));
  return out;
}

Mlp parse_checkpoint(std::string_view bytes) {
  std::size_t pos = 0;
  const std::uint64_t count = get_u64(bytes, pos);
  if (count < 2 || count > 64)
    throw MalformedFileError("checkpoint header declares " + std::to_string(count) + " layers");
  std::vector<std::size_t> dims;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t d = get_u64(bytes, pos);
    if (d == 0 || d > (1u << 20))
      throw MalformedFileError("checkpoint layer width " + std::to_string(d) + " is out of range");
    dims.push_back(static_cast<std::size_t>(d));
  }
  Mlp net(std::move(dims));
  for (double &p : net.parameters())
    p = std::bit_cast<double>(get_u64(bytes, pos));
  if (pos != bytes.size())
    throw MalformedFileError("checkpoint has " + std::to_string(bytes.size() - pos) + " trailing bytes");
  return net;
}

void save_checkpoint(const Mlp &net, const std::filesystem::path &path) {
  write_text_file(path, serialize_checkpoint(net));
}

Mlp load_checkpoint(const std::filesystem::path &path) { return parse_checkpoint(read_text_file(path)); }

} // namespace pcbplace
