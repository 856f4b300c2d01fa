#pragma once

// The ten end-to-end acceptance checks, shared by the acceptance binary and
// `ramanujan verify`.

#include <string>

namespace ramanujan::criteria {

inline constexpr int kCount = 10;

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Throws ParameterError unless 1 <= id <= kCount.
Result run(int id);

// "criterion 3 [ssig ramanujan]: PASS (detail) 1.2s"
std::string format(const Result& r);

}  // namespace ramanujan::criteria
