#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "crepantia/lattice.hpp"

namespace crepantia {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int parse_error = 2;
inline constexpr int precondition = 3;
inline constexpr int semi_unimodularity_lost = 4;
inline constexpr int resource_limit = 6;
inline constexpr int obstructed = 10;
inline constexpr int undetermined = 11;
}  // namespace exit_code

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class Verdict { Crepant, Obstructed, Undetermined };

struct CheckResult {
  Verdict verdict = Verdict::Undetermined;
  std::string witness;  // "x2:1/6(1,3,4,4)" or empty
  std::string method;
  std::size_t cones = 0;
  Rational max_discrepancy = 0;
  bool existence_checked = false;
  bool existence_holds = true;
};

// The decision procedure behind `check` and `sweep`. Throws PreconditionError
// for non-Gorenstein groups.
CheckResult check_group(const std::vector<ProperFraction>& generators);

const char* verdict_name(Verdict v);

// Gorenstein semi-isolated types 1/r(1, a_2 >= ... >= a_n), 2 <= r <= max_order.
std::vector<ProperFraction> sweep_types(std::size_t dim, std::size_t max_order);

}  // namespace crepantia
