#include <iostream>

#include "quniv/acceptance.hpp"

// One line per acceptance item; the exit status is nonzero iff an item fails.
int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& r : quniv::run_acceptance(only)) {
    std::cout << quniv::acceptance_line(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
