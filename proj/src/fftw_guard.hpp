#pragma once

#include <mutex>

namespace szego::detail {

// FFTW planner calls are not thread-safe; plan execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace szego::detail
