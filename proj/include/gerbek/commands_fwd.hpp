#pragma once

#include <optional>
#include <string>

namespace gerbek {

struct RunOptions {
  bool json = false;
  std::optional<int> n_override;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string notice;  // printed to stderr so JSON stdout stays byte-stable
};

}  // namespace gerbek
