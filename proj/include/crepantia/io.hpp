#pragma once

// Text formats: group specs such as "1/4(1,3,0); 1/4(1,0,3)", the JSON fan
// document and an SVG drawing of a rank-3 fan on the junior triangle.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crepantia/fan.hpp"
#include "crepantia/lattice.hpp"

namespace crepantia {

struct GroupSpec {
  std::vector<ProperFraction> generators;

  std::size_t rank() const { return generators.front().rank(); }
  bool cyclic() const { return generators.size() == 1; }

  // Throws ParseError. Whitespace and a leading '+' on integers are accepted;
  // denominators must fit in 63 bits.
  static GroupSpec parse(const std::string& text);
  std::string to_string() const;
};

inline constexpr const char* kFanSchema = "crepantia/1";

struct FanDocument {
  std::size_t rank = 0;
  std::vector<ProperFraction> lattice_generators;
  std::vector<LatticePoint> rays;
  std::vector<std::vector<std::size_t>> cones;
  // Unit vectors carry no value.
  std::vector<std::optional<Rational>> discrepancies;
  bool crepant = false;
  nlohmann::ordered_json transcript;  // null when absent

  Fan fan() const;
};

FanDocument make_document(const Fan& fan, nlohmann::ordered_json transcript = nullptr);
std::string write_document(const FanDocument& doc);
// Throws ParseError on malformed input.
FanDocument read_document(const std::string& text);

nlohmann::ordered_json transcript_json(const ResolutionTranscript& t);

// Rank 3 only; the fan is drawn on the slice where coordinates sum to 1.
std::string render_svg(const Fan& fan);

}  // namespace crepantia
