// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "dppmap/verify.hpp"

int main(int argc, char** argv) {
  dppmap::VerifyOptions opts;
  std::vector<int> ids;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--quick") == 0) {
      opts.quick = true;
    } else {
      ids.push_back(std::atoi(argv[a]));
    }
  }
  if (ids.empty())
    for (int id = 1; id <= dppmap::kCriterionCount; ++id) ids.push_back(id);
  int failed = 0;
  for (int id : ids) {
    const auto r = dppmap::verify_criterion(id, opts);
    std::cout << format_result(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
