#pragma once

#include <mutex>

namespace grfkit::detail {

// FFTW plan creation/destruction is not thread-safe; executing distinct plans
// is. Every plan lifecycle in this library must hold this mutex.
std::mutex& fftw_plan_mutex();

} // namespace grfkit::detail
