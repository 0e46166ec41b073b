#include "seisdiff/conditioning.hpp"

namespace seisdiff {

Task task_from_name(const std::string& name) {
  if (name == "demultiple") return Task::demultiple;
  if (name == "denoise") return Task::denoise;
  if (name == "interpolate") return Task::interpolate;
  throw std::invalid_argument("unknown task '" + name + "'");
}

std::vector<std::string> conditioning_channel_names(Task t) {
  switch (t) {
    case Task::demultiple: return {"infested"};
    case Task::denoise: return {"noisy"};
    case Task::interpolate: return {"masked", "mask"};
  }
  throw std::invalid_argument("unknown task");
}

}  // namespace seisdiff
