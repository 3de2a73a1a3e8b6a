#pragma once

// Checks of the worked double-harmonic example against fixed thresholds.

#include <string>
#include <vector>

namespace eres {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // the numbers that decided it
};

// Runs every check; a numerical failure inside one check marks that check
// failed and the rest still run.
std::vector<CriterionOutcome> validate_example();

}  // namespace eres
