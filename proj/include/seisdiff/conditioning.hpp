#pragma once

#include "seisdiff/types.hpp"

#include <string>
#include <vector>

namespace seisdiff {

enum class Task { demultiple, denoise, interpolate };

inline const char* task_name(Task t) {
  switch (t) {
    case Task::demultiple: return "demultiple";
    case Task::denoise: return "denoise";
    case Task::interpolate: return "interpolate";
  }
  return "?";
}

Task task_from_name(const std::string& name);

// Task inputs concatenated to the noisy state as extra denoiser channels.
// demultiple: the multiple-infested section. denoise: the noisy section.
// interpolate: the zero-filled section plus its binary keep-mask.
struct Conditioning {
  Task task = Task::denoise;
  std::vector<Patch> channels;
};

inline int conditioning_channels(Task t) { return t == Task::interpolate ? 2 : 1; }

// Channel names double as dataset subdirectory names.
std::vector<std::string> conditioning_channel_names(Task t);

}  // namespace seisdiff
