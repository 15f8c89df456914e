#include "crepantia/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "crepantia/errors.hpp"

namespace crepantia {

using nlohmann::ordered_json;

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ProperFraction parse_fraction(const std::string& raw) {
  const std::string text = strip(raw);
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || strip(text.substr(close + 1)) != "")
    throw ParseError("expected 1/r(a_1,...,a_n), got '" + text + "'");
  std::string head = strip(text.substr(0, open));
  auto slash = head.find('/');
  if (slash == std::string::npos || parse_integer(strip(head.substr(0, slash))) != 1)
    throw ParseError("expected 1/r(a_1,...,a_n), got '" + text + "'");
  Integer r = parse_integer(strip(head.substr(slash + 1)));
  if (r < 1) throw ParseError("denominator must be positive in '" + text + "'");
  if (!r.fits_slong_p()) throw ParseError("denominator out of range in '" + text + "'");
  IntVector a;
  for (const auto& part : split(text.substr(open + 1, close - open - 1), ',')) a.push_back(parse_integer(strip(part)));
  return ProperFraction(std::move(a), r);
}

ordered_json encode_point(const IntVector& numerators, const Integer& denominator) {
  ordered_json nums = ordered_json::array();
  for (const auto& x : numerators) nums.push_back(to_string(x));
  return ordered_json{{"numerators", nums}, {"denominator", to_string(denominator)}};
}

ordered_json encode_point(const LatticePoint& p) { return encode_point(p.numerators(), p.common_denominator()); }

ordered_json encode_fraction(const ProperFraction& f) { return encode_point(f.numerators(), f.denominator()); }

const ordered_json& field(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string string_field(const ordered_json& v, const char* what) {
  if (!v.is_string()) throw ParseError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::pair<IntVector, Integer> decode_point(const ordered_json& v, std::size_t rank) {
  const auto& nums = field(v, "numerators");
  if (!nums.is_array() || nums.size() != rank) throw ParseError("numerator vector has the wrong length");
  IntVector a;
  for (const auto& x : nums) a.push_back(parse_integer(string_field(x, "numerator")));
  Integer d = parse_integer(string_field(field(v, "denominator"), "denominator"));
  if (d < 1) throw ParseError("denominators must be positive");
  return {std::move(a), std::move(d)};
}

// Exact rounding of a nonnegative rational to three decimals.
std::string decimal(const Rational& q) {
  Rational scaled = q * 1000 + Rational(1, 2);
  Integer k = floor_of(scaled);
  bool neg = k < 0;
  if (neg) k = -k;
  Integer whole = k / 1000;
  Integer frac = k % 1000;
  std::string f = to_string(frac);
  while (f.size() < 3) f = "0" + f;
  return (neg ? "-" : "") + to_string(whole) + "." + f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Group specs

GroupSpec GroupSpec::parse(const std::string& text) {
  GroupSpec spec;
  for (const auto& part : split(text, ';')) {
    if (strip(part).empty()) continue;
    spec.generators.push_back(parse_fraction(part));
  }
  if (spec.generators.empty()) throw ParseError("empty group spec");
  for (const auto& g : spec.generators) {
    if (g.rank() != spec.generators.front().rank()) throw ParseError("generators of different ranks in '" + text + "'");
  }
  return spec;
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (const auto& g : generators) out += (out.empty() ? "" : ";") + g.to_string();
  return out;
}

// ---------------------------------------------------------------------------
// Fan documents

Fan FanDocument::fan() const {
  Fan f(Overlattice(rank, lattice_generators));
  for (const auto& p : rays) {
    if (f.add_ray(p) + 1 != f.rays().size()) throw ParseError("duplicate ray " + p.to_string());
  }
  for (const auto& c : cones) f.add_cone(c);
  return f;
}

FanDocument make_document(const Fan& fan, ordered_json transcript) {
  FanDocument doc;
  doc.rank = fan.rank();
  doc.lattice_generators = fan.lattice().generators();
  doc.rays = fan.rays();
  doc.cones = fan.cones();
  auto disc = fan_discrepancies(fan);
  for (const auto& p : fan.rays()) {
    auto it = disc.find(p);
    doc.discrepancies.push_back(it == disc.end() ? std::nullopt : std::optional<Rational>(it->second));
  }
  doc.crepant = is_crepant(fan);
  doc.transcript = std::move(transcript);
  return doc;
}

std::string write_document(const FanDocument& doc) {
  ordered_json j;
  j["schema"] = kFanSchema;
  j["rank"] = doc.rank;
  ordered_json gens = ordered_json::array();
  for (const auto& g : doc.lattice_generators) gens.push_back(encode_fraction(g));
  j["lattice"] = gens;
  ordered_json rays = ordered_json::array();
  for (const auto& p : doc.rays) rays.push_back(encode_point(p));
  j["rays"] = rays;
  ordered_json cones = ordered_json::array();
  for (const auto& c : doc.cones) cones.push_back(c);
  j["cones"] = cones;
  ordered_json disc = ordered_json::array();
  for (const auto& d : doc.discrepancies) disc.push_back(d ? ordered_json(to_string(*d)) : ordered_json(nullptr));
  j["discrepancies"] = disc;
  j["crepant"] = doc.crepant;
  if (!doc.transcript.is_null()) j["transcript"] = doc.transcript;
  return j.dump(2) + "\n";
}

FanDocument read_document(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (string_field(field(j, "schema"), "schema") != kFanSchema) throw ParseError("unknown schema");
    FanDocument doc;
    const auto& rank = field(j, "rank");
    if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0) throw ParseError("rank must be a positive integer");
    doc.rank = rank.get<std::size_t>();

    const auto& gens = field(j, "lattice");
    if (!gens.is_array()) throw ParseError("lattice must be an array");
    for (const auto& g : gens) {
      auto [a, d] = decode_point(g, doc.rank);
      doc.lattice_generators.emplace_back(std::move(a), std::move(d));
    }
    const auto& rays = field(j, "rays");
    if (!rays.is_array()) throw ParseError("rays must be an array");
    for (const auto& r : rays) {
      auto [a, d] = decode_point(r, doc.rank);
      RationalVector c;
      for (const auto& x : a) {
        Rational q(x, d);
        q.canonicalize();
        c.push_back(q);
      }
      doc.rays.emplace_back(std::move(c));
    }
    const auto& cones = field(j, "cones");
    if (!cones.is_array()) throw ParseError("cones must be an array");
    for (const auto& c : cones) {
      if (!c.is_array() || c.size() != doc.rank) throw ParseError("each cone lists rank-many ray indices");
      std::vector<std::size_t> idx;
      for (const auto& k : c) {
        if (!k.is_number_unsigned() || k.get<std::size_t>() >= doc.rays.size())
          throw ParseError("cone refers to a missing ray");
        idx.push_back(k.get<std::size_t>());
      }
      doc.cones.push_back(std::move(idx));
    }
    const auto& disc = field(j, "discrepancies");
    if (!disc.is_array() || disc.size() != doc.rays.size()) throw ParseError("one discrepancy entry per ray expected");
    for (const auto& d : disc) {
      if (d.is_null()) {
        doc.discrepancies.emplace_back(std::nullopt);
      } else {
        doc.discrepancies.emplace_back(parse_rational(string_field(d, "discrepancy")));
      }
    }
    const auto& crepant = field(j, "crepant");
    if (!crepant.is_boolean()) throw ParseError("crepant must be a boolean");
    doc.crepant = crepant.get<bool>();
    if (j.contains("transcript")) doc.transcript = j.at("transcript");
    return doc;
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

ordered_json transcript_json(const ResolutionTranscript& t) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : t.nodes()) {
    ordered_json node;
    node["word"] = n.word ? ordered_json(n.word->to_string()) : ordered_json(nullptr);
    node["type"] = n.normalized_type().to_string();
    node["center"] = n.center ? encode_point(*n.center) : ordered_json(nullptr);
    node["children"] = n.children;
    nodes.push_back(std::move(node));
  }
  return ordered_json{{"kind", "fujiki-oka"}, {"apex", t.root().apex + 1}, {"nodes", nodes}};
}

// ---------------------------------------------------------------------------
// SVG

std::string render_svg(const Fan& fan) {
  if (fan.rank() != 3) throw PreconditionError("SVG export needs a rank-3 fan");
  // Corners for e_1, e_2, e_3.
  const Rational vx[3] = {300, 20, 580};
  const Rational vy[3] = {20, 505, 505};
  auto project = [&](const LatticePoint& p) {
    Rational s = p[0] + p[1] + p[2];
    if (s <= 0) throw PreconditionError("ray " + p.to_string() + " is outside the orthant");
    Rational x = 0, y = 0;
    for (int i = 0; i < 3; ++i) {
      x += p[i] / s * vx[i];
      y += p[i] / s * vy[i];
    }
    return std::pair<std::string, std::string>{decimal(x), decimal(y)};
  };
  auto disc = fan_discrepancies(fan);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"525\" viewBox=\"0 0 600 525\">\n";
  svg << "<g fill=\"none\" stroke=\"#333\" stroke-width=\"1\">\n";
  for (const auto& cone : fan.cones()) {
    svg << "<polygon points=\"";
    for (std::size_t k = 0; k < cone.size(); ++k) {
      auto [x, y] = project(fan.rays()[cone[k]]);
      svg << (k ? " " : "") << x << "," << y;
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n<g stroke=\"none\">\n";
  for (const auto& p : fan.rays()) {
    auto [x, y] = project(p);
    auto it = disc.find(p);
    const char* colour = (it == disc.end() || it->second == 0) ? "#000" : "#c00";
    svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << colour << "\"><title>" << p.to_string()
        << "</title></circle>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace crepantia
