#pragma once

#include "seisdiff/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace seisdiff {

// ---------------------------------------------------------------------------
// Patch file ("SPD1"), the raw-array interchange format. Byte layout:
//
//   offset  size  field
//   0       4     magic "SPD1"
//   4       2     version, u16 LE (currently 1)
//   6       1     ndim, u8
//   7       4*n   dims, ndim x u32 LE
//   ...     ...   payload: product(dims) IEEE-754 f32 LE, row-major
//   end-4   4     CRC-32 of the payload bytes (polynomial 0xEDB88320,
//                 init 0xFFFFFFFF, final xor 0xFFFFFFFF)
//
// All multi-byte integers are little-endian. Writes go to a temp file that
// is renamed into place, so readers never observe partial files.
// ---------------------------------------------------------------------------

constexpr uint16_t kPatchFileVersion = 1;

void write_patch_file(const std::filesystem::path& path, const Patch& array);
Patch read_patch_file(const std::filesystem::path& path);

uint32_t crc32(const uint8_t* data, size_t len);

// ---------------------------------------------------------------------------
// Checkpoint container ("SDC1"):
//
//   magic "SDC1" | u32 LE header length | UTF-8 JSON header | blocks...
//
// The JSON header carries the architecture config, schedule metadata
// (T, beta_start, beta_end), iteration, rng seed, optimizer step count and
// format_version. Each block is:
//
//   u16 LE name length | name | u8 element size (4 = f32, 8 = f64)
//   | u8 ndim | ndim x u32 LE dims | payload LE | u32 LE CRC-32 of payload
//
// Model parameters are f32 blocks named by the layout's stable naming
// scheme; the schedule's four sequences are f64 blocks ("schedule.betas",
// "schedule.alphas", "schedule.alpha_bars", "schedule.posterior_variances");
// optimizer moments are f32 blocks ("opt.m", "opt.v"). Blocks appear in a
// canonical order so that load followed by save is byte-identical.
// ---------------------------------------------------------------------------

constexpr int kCheckpointFormatVersion = 1;

struct CheckpointBlock {
  std::string name;
  int elem_size = 4;               // 4 = f32, 8 = f64
  std::vector<uint32_t> dims;
  std::vector<uint8_t> payload;    // raw little-endian values

  size_t count() const;
  std::vector<float> as_f32() const;
  std::vector<double> as_f64() const;
  static CheckpointBlock f32(std::string name, std::vector<uint32_t> dims, const float* data);
  static CheckpointBlock f64(std::string name, std::vector<uint32_t> dims, const double* data);
};

struct CheckpointFile {
  std::string header_json;               // canonical serialized header
  std::vector<CheckpointBlock> blocks;   // in on-disk order

  const CheckpointBlock* find(const std::string& name) const;
};

void write_checkpoint_file(const std::filesystem::path& path, const CheckpointFile& ck);
CheckpointFile read_checkpoint_file(const std::filesystem::path& path);

}  // namespace seisdiff
