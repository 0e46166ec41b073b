#include "seisdiff/dataio.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace seisdiff {

namespace {

std::array<uint32_t, 256> make_crc_table() {
  std::array<uint32_t, 256> table{};
  for (uint32_t i = 0; i < 256; ++i) {
    uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v & 0xff));
  out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t((v >> (8 * i)) & 0xff));
}

void put_f32(std::vector<uint8_t>& out, float v) { put_u32(out, std::bit_cast<uint32_t>(v)); }

void put_f64(std::vector<uint8_t>& out, double v) {
  uint64_t u = std::bit_cast<uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(uint8_t((u >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path_);
    in.seekg(0, std::ios::end);
    bytes_.resize(size_t(in.tellg()));
    in.seekg(0);
    in.read(reinterpret_cast<char*>(bytes_.data()), std::streamsize(bytes_.size()));
    if (!in) throw std::runtime_error("read failure on " + path_);
  }

  size_t offset() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  const uint8_t* take(size_t n, const char* what) {
    if (remaining() < n)
      throw std::runtime_error(path_ + ": truncated file, wanted " + std::to_string(n) +
                               " bytes for " + what + " at offset " + std::to_string(pos_));
    const uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

  uint8_t u8(const char* what) { return *take(1, what); }

  uint16_t u16(const char* what) {
    const uint8_t* p = take(2, what);
    return uint16_t(p[0] | (uint16_t(p[1]) << 8));
  }

  uint32_t u32(const char* what) {
    const uint8_t* p = take(4, what);
    return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) | (uint32_t(p[3]) << 24);
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::vector<uint8_t> bytes_;
  size_t pos_ = 0;
};

void write_atomically(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failure on " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void check_payload_crc(Reader& r, const uint8_t* payload, size_t n) {
  size_t payload_off = r.offset() - n;
  uint32_t want = r.u32("crc32");
  uint32_t got = crc32(payload, n);
  if (want != got)
    throw std::runtime_error(r.path() + ": CRC mismatch for payload at offset " +
                             std::to_string(payload_off));
}

}  // namespace

uint32_t crc32(const uint8_t* data, size_t len) {
  static const std::array<uint32_t, 256> table = make_crc_table();
  uint32_t c = 0xFFFFFFFFu;
  for (size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xff] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void write_patch_file(const std::filesystem::path& path, const Patch& array) {
  require(array.allFinite(), "write_patch_file: non-finite values");
  std::vector<uint8_t> out;
  out.reserve(15 + size_t(array.size()) * 4 + 4);
  out.insert(out.end(), {'S', 'P', 'D', '1'});
  put_u16(out, kPatchFileVersion);
  out.push_back(2);  // ndim
  put_u32(out, uint32_t(array.rows()));
  put_u32(out, uint32_t(array.cols()));
  size_t payload_start = out.size();
  for (Eigen::Index i = 0; i < array.rows(); ++i)
    for (Eigen::Index j = 0; j < array.cols(); ++j) put_f32(out, array(i, j));
  uint32_t crc = crc32(out.data() + payload_start, out.size() - payload_start);
  put_u32(out, crc);
  write_atomically(path, out);
}

Patch read_patch_file(const std::filesystem::path& path) {
  Reader r(path);
  const uint8_t* magic = r.take(4, "magic");
  if (std::memcmp(magic, "SPD1", 4) != 0)
    throw std::runtime_error(r.path() + ": bad magic, not an SPD1 patch file");
  uint16_t version = r.u16("version");
  if (version != kPatchFileVersion)
    throw std::runtime_error(r.path() + ": unsupported SPD1 version " + std::to_string(version));
  uint8_t ndim = r.u8("ndim");
  if (ndim != 2) throw std::runtime_error(r.path() + ": expected 2-D array, got ndim=" + std::to_string(ndim));
  uint32_t rows = r.u32("dims[0]");
  uint32_t cols = r.u32("dims[1]");
  size_t n = size_t(rows) * size_t(cols);
  const uint8_t* payload = r.take(n * 4, "payload");
  check_payload_crc(r, payload, n * 4);

  Patch out(rows, cols);
  const uint8_t* p = payload;
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t j = 0; j < cols; ++j) {
      uint32_t u = uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) | (uint32_t(p[3]) << 24);
      out(i, j) = std::bit_cast<float>(u);
      p += 4;
    }
  return out;
}

size_t CheckpointBlock::count() const {
  size_t n = 1;
  for (uint32_t d : dims) n *= d;
  return n;
}

std::vector<float> CheckpointBlock::as_f32() const {
  require(elem_size == 4, "block " + name + " is not f32");
  std::vector<float> v(count());
  for (size_t i = 0; i < v.size(); ++i) {
    uint32_t u = 0;
    std::memcpy(&u, payload.data() + i * 4, 4);
    v[i] = std::bit_cast<float>(u);
  }
  return v;
}

std::vector<double> CheckpointBlock::as_f64() const {
  require(elem_size == 8, "block " + name + " is not f64");
  std::vector<double> v(count());
  for (size_t i = 0; i < v.size(); ++i) {
    uint64_t u = 0;
    std::memcpy(&u, payload.data() + i * 8, 8);
    v[i] = std::bit_cast<double>(u);
  }
  return v;
}

CheckpointBlock CheckpointBlock::f32(std::string name, std::vector<uint32_t> dims, const float* data) {
  CheckpointBlock b;
  b.name = std::move(name);
  b.elem_size = 4;
  b.dims = std::move(dims);
  b.payload.reserve(b.count() * 4);
  for (size_t i = 0; i < b.count(); ++i) put_f32(b.payload, data[i]);
  return b;
}

CheckpointBlock CheckpointBlock::f64(std::string name, std::vector<uint32_t> dims, const double* data) {
  CheckpointBlock b;
  b.name = std::move(name);
  b.elem_size = 8;
  b.dims = std::move(dims);
  b.payload.reserve(b.count() * 8);
  for (size_t i = 0; i < b.count(); ++i) put_f64(b.payload, data[i]);
  return b;
}

const CheckpointBlock* CheckpointFile::find(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

void write_checkpoint_file(const std::filesystem::path& path, const CheckpointFile& ck) {
  std::vector<uint8_t> out;
  out.insert(out.end(), {'S', 'D', 'C', '1'});
  put_u32(out, uint32_t(ck.header_json.size()));
  out.insert(out.end(), ck.header_json.begin(), ck.header_json.end());
  for (const auto& b : ck.blocks) {
    require(b.payload.size() == b.count() * size_t(b.elem_size),
            "checkpoint block " + b.name + ": payload size mismatch");
    put_u16(out, uint16_t(b.name.size()));
    out.insert(out.end(), b.name.begin(), b.name.end());
    out.push_back(uint8_t(b.elem_size));
    out.push_back(uint8_t(b.dims.size()));
    for (uint32_t d : b.dims) put_u32(out, d);
    out.insert(out.end(), b.payload.begin(), b.payload.end());
    put_u32(out, crc32(b.payload.data(), b.payload.size()));
  }
  write_atomically(path, out);
}

CheckpointFile read_checkpoint_file(const std::filesystem::path& path) {
  Reader r(path);
  const uint8_t* magic = r.take(4, "magic");
  if (std::memcmp(magic, "SDC1", 4) != 0)
    throw std::runtime_error(r.path() + ": bad magic, not an SDC1 checkpoint");
  uint32_t hlen = r.u32("header length");
  const uint8_t* h = r.take(hlen, "JSON header");
  CheckpointFile ck;
  ck.header_json.assign(reinterpret_cast<const char*>(h), hlen);
  while (r.remaining() > 0) {
    CheckpointBlock b;
    uint16_t nlen = r.u16("block name length");
    const uint8_t* name = r.take(nlen, "block name");
    b.name.assign(reinterpret_cast<const char*>(name), nlen);
    b.elem_size = r.u8("element size");
    if (b.elem_size != 4 && b.elem_size != 8)
      throw std::runtime_error(r.path() + ": block " + b.name + ": bad element size " +
                               std::to_string(b.elem_size));
    uint8_t ndim = r.u8("block ndim");
    b.dims.resize(ndim);
    for (uint8_t i = 0; i < ndim; ++i) b.dims[i] = r.u32("block dims");
    size_t bytes = b.count() * size_t(b.elem_size);
    const uint8_t* payload = r.take(bytes, ("payload of " + b.name).c_str());
    b.payload.assign(payload, payload + bytes);
    check_payload_crc(r, payload, bytes);
    for (const auto& prev : ck.blocks)
      if (prev.name == b.name)
        throw std::runtime_error(r.path() + ": duplicate block name " + b.name);
    ck.blocks.push_back(std::move(b));
  }
  return ck;
}

}  // namespace seisdiff
