#pragma once

#include <string>
#include <vector>

#include "quniv/json_io.hpp"

namespace quniv {

struct AcceptanceResult {
  int id = 0;
  std::string title;
  std::vector<std::string> tags;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceItemInfo {
  int id;
  std::string title;
  std::vector<std::string> tags;
};
const std::vector<AcceptanceItemInfo>& acceptance_items();

// Selectors are item numbers ("5") or tags ("potential"); empty runs everything.
// Unknown selectors raise InputError. Every item uses its own fixed seed.
std::vector<AcceptanceResult> run_acceptance(const std::vector<std::string>& only = {});

// One line per item: "PASS  5  title: detail".
std::string acceptance_line(const AcceptanceResult& r);
Json serialize(const AcceptanceResult& r, bool timing = false);

}  // namespace quniv
