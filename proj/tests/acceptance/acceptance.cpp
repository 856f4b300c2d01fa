// Runs the acceptance criteria (all, or the ids given as arguments) and
// prints one line per criterion. Exits nonzero if any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ramanujan/criteria.hpp"

int main(int argc, char** argv) {
  using namespace ramanujan;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int id = 1; id <= criteria::kCount; ++id) ids.push_back(id);
  }
  int failed = 0;
  for (int id : ids) {
    const auto r = criteria::run(id);
    std::cout << criteria::format(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
