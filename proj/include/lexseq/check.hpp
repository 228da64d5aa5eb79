#pragma once

#include <stdexcept>
#include <string>

namespace lexseq {

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

inline void check(bool condition, const std::string& msg) {
  if (!condition) fail(msg);
}

}  // namespace lexseq
