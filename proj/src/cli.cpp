#include "crepantia/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "crepantia/abelian.hpp"
#include "crepantia/continued_fraction.hpp"
#include "crepantia/errors.hpp"
#include "crepantia/fan.hpp"
#include "crepantia/io.hpp"
#include "crepantia/oracle.hpp"

namespace crepantia {

using nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Crepant:
      return "crepant";
    case Verdict::Obstructed:
      return "obstructed";
    case Verdict::Undetermined:
      return "undetermined";
  }
  return "?";
}

namespace {

std::string vector_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

Rational max_discrepancy(const Fan& fan) {
  Rational m = 0;
  for (const auto& [p, d] : fan_discrepancies(fan)) m = std::max(m, d);
  return m;
}

// A cyclic group with a generator carrying a 1 entry, possibly after taking a power.
std::optional<NormalizedFraction> semi_isolated(const std::vector<ProperFraction>& gens) {
  if (gens.size() != 1) return std::nullopt;
  return normalize_semi_unimodular(gens.front(), true);
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Crepant:
      return exit_code::ok;
    case Verdict::Obstructed:
      return exit_code::obstructed;
    case Verdict::Undetermined:
      return exit_code::undetermined;
  }
  return exit_code::undetermined;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------

int cmd_hj(const std::string& text, std::ostream& out) {
  auto slash = text.find('/');
  if (slash == std::string::npos) throw ParseError("expected r/a, got '" + text + "'");
  Integer r = parse_integer(text.substr(0, slash));
  Integer a = parse_integer(text.substr(slash + 1));
  HJExpansion hj = hj_expand(r, a);
  out << "[";
  for (std::size_t i = 0; i < hj.coefficients.size(); ++i) out << (i ? "," : "") << to_string(hj.coefficients[i]);
  out << "]\n";
  auto rays = hj_rays(r, a);
  out << std::left << std::setw(4) << "i" << std::setw(16) << "v_i"
      << "E_i^2\n";
  for (std::size_t i = 0; i < rays.size(); ++i) {
    out << std::setw(4) << i << std::setw(16) << rays[i].to_string();
    if (i >= 1 && i <= hj.coefficients.size()) out << "-" << to_string(hj.coefficients[i - 1]);
    out << "\n";
  }
  return exit_code::ok;
}

ProperFraction semi_unimodular_input(const std::string& text, std::ostream& err) {
  GroupSpec spec = GroupSpec::parse(text);
  if (!spec.cyclic()) throw PreconditionError("polynomials are defined for a single generator");
  auto norm = normalize_semi_unimodular(spec.generators.front(), false);
  if (!norm) throw PreconditionError(spec.generators.front().to_string() + " has no entry equal to 1");
  if (norm->fraction != spec.generators.front()) err << "note: using " << norm->fraction.to_string() << "\n";
  return norm->fraction;
}

int cmd_rpoly(const std::string& text, std::ostream& out, std::ostream& err) {
  for (const auto& [w, c] : remainder_polynomial(semi_unimodular_input(text, err)))
    out << w.to_string() << "\t" << c.to_string() << "\n";
  return exit_code::ok;
}

int cmd_zpoly(const std::string& text, bool all, std::ostream& out, std::ostream& err) {
  auto z = rounddown_polynomial(semi_unimodular_input(text, err));
  if (all) {
    for (const auto& [w, t] : z.terms()) out << w.to_string() << "\t" << vector_text(t.value) << "\n";
  } else {
    for (const auto& [w, v] : z.paired_terms()) out << w.to_string() << "\t" << vector_text(v) << "\n";
  }
  return exit_code::ok;
}

ordered_json stages_json(const StageTranscript& t) {
  ordered_json stages = ordered_json::array();
  for (const auto& s : t.stages) {
    ordered_json resolved = ordered_json::array();
    for (const auto& rc : s.resolved) resolved.push_back({{"apex", rc.apex + 1}, {"type", rc.type.to_string()}});
    stages.push_back({{"added", s.added.to_string()},
                      {"lattice_index", to_string(s.lattice.index())},
                      {"cones", s.fan.size()},
                      {"resolved", resolved}});
  }
  ordered_json j{{"kind", "iterated"}};
  if (!t.coordinates.empty()) {
    ordered_json order = ordered_json::array();
    for (auto k : t.coordinates) order.push_back(k + 1);
    j["coordinates"] = order;
  }
  j["stages"] = stages;
  return j;
}

int cmd_resolve(const std::string& text, bool iterated, const std::string& chain_text, const std::string& out_path,
                const std::string& svg_path, std::ostream& out, std::ostream& err) {
  GroupSpec spec = GroupSpec::parse(text);
  const std::size_t n = spec.rank();
  AbelianGroup G(n, spec.generators);
  std::optional<Fan> fan;
  ordered_json transcript;
  std::string method;

  if (!chain_text.empty()) iterated = true;
  if (!iterated) {
    auto norm = semi_isolated(spec.generators);
    if (!norm) {
      throw PreconditionError(spec.generators.size() == 1
                                  ? "no power of the generator has an entry equal to 1; use --iterated"
                                  : "several generators need --iterated");
    }
    const std::size_t apex = norm->permutation.front();
    auto res = fujiki_oka_resolve(Cone::orthant(n), apex, Overlattice(n, spec.generators));
    method = "fujiki-oka, apex slot " + std::to_string(apex + 1) + ", type " + norm->fraction.to_string();
    transcript = transcript_json(res.transcript);
    fan.emplace(std::move(res.fan));
  } else {
    IteratedResolution res = chain_text.empty() ? iterated_fujiki_oka(G)
                                                : iterated_fujiki_oka(G, GroupSpec::parse(chain_text).generators);
    const std::size_t k = res.transcript.stages.size();
    method = "iterated fujiki-oka, " + std::to_string(k) + (k == 1 ? " stage" : " stages");
    if (!res.transcript.coordinates.empty()) {
      method += ", coordinates reordered to (";
      for (std::size_t k = 0; k < n; ++k) method += (k ? "," : "") + std::to_string(res.transcript.coordinates[k] + 1);
      method += ")";
    }
    transcript = stages_json(res.transcript);
    fan.emplace(std::move(res.fan));
  }

  auto report = verify_resolution(*fan, Cone::orthant(n));
  bool crepant = report.smooth && is_crepant(*fan);
  Rational lo = 0, hi = 0;
  bool first = true;
  for (const auto& [p, d] : fan_discrepancies(*fan)) {
    if (first || d < lo) lo = d;
    if (first || d > hi) hi = d;
    first = false;
  }
  out << "group        " << spec.to_string() << "\n";
  out << "order        " << G.order() << "\n";
  out << "method       " << method << "\n";
  out << "cones        " << fan->size() << "\n";
  out << "rays         " << fan->rays().size() << "\n";
  out << "smooth       " << (report.smooth ? "yes" : "no") << "\n";
  out << "verified     " << (report.ok() ? "yes" : "no") << "\n";
  out << "crepant      " << (crepant ? "yes" : "no") << "\n";
  if (first) {
    out << "discrepancy  none (no exceptional rays)\n";
  } else {
    out << "discrepancy  " << to_string(lo) << " .. " << to_string(hi) << "\n";
  }
  for (const auto& f : report.failures) err << "verification: " << f << "\n";

  if (report.smooth && !out_path.empty()) write_file(out_path, write_document(make_document(*fan, transcript)));
  if (!svg_path.empty()) {
    if (n == 3) {
      write_file(svg_path, render_svg(*fan));
    } else {
      err << "note: SVG export needs rank 3, skipped\n";
    }
  }
  return report.ok() ? exit_code::ok : exit_code::verification_failed;
}

int cmd_check(const std::string& text, std::ostream& out) {
  GroupSpec spec = GroupSpec::parse(text);
  CheckResult r = check_group(spec.generators);
  out << "group        " << spec.to_string() << "\n";
  out << "method       " << r.method << "\n";
  out << "cones        " << r.cones << "\n";
  out << "verdict      " << verdict_name(r.verdict) << "\n";
  if (!r.witness.empty()) out << "witness      " << r.witness << "\n";
  out << "existence    "
      << (!r.existence_checked ? "not needed" : (r.existence_holds ? "hilbert basis is junior" : "fails")) << "\n";
  return exit_for(r.verdict);
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  FanDocument doc = read_document(read_file(path));
  Fan fan = [&] {
    try {
      return doc.fan();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }();
  auto report = verify_resolution(fan, Cone::orthant(doc.rank));
  std::vector<std::string> failures = report.failures;
  bool crepant = false;
  if (report.smooth) {
    try {
      auto disc = fan_discrepancies(fan);
      crepant = is_crepant(fan);
      for (std::size_t i = 0; i < fan.rays().size(); ++i) {
        auto it = disc.find(fan.rays()[i]);
        std::optional<Rational> actual;
        if (it != disc.end()) actual = it->second;
        if (actual != doc.discrepancies[i]) {
          failures.push_back("ray " + std::to_string(i) + " discrepancy is " + (actual ? to_string(*actual) : "none") +
                             ", document says " + (doc.discrepancies[i] ? to_string(*doc.discrepancies[i]) : "none"));
        }
      }
      if (crepant != doc.crepant) {
        failures.push_back(std::string("document claims ") + (doc.crepant ? "crepant" : "not crepant") +
                           ", the fan is " + (crepant ? "crepant" : "not crepant"));
      }
    } catch (const Error& e) {
      failures.push_back(e.what());
    }
  }
  out << "cones        " << fan.size() << "\n";
  out << "smooth       " << (report.smooth ? "yes" : "no") << "\n";
  out << "covering     " << (report.covers && report.proper_faces && report.contained ? "yes" : "no") << "\n";
  out << "crepant      " << (crepant ? "yes" : "no") << "\n";
  for (const auto& f : failures) err << "failure: " << f << "\n";
  out << (failures.empty() ? "PASS" : "FAIL") << "\n";
  return failures.empty() ? exit_code::ok : exit_code::verification_failed;
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepRow {
  std::string verdict;
  std::string witness;
  std::size_t cones = 0;
  Rational max_discrepancy = 0;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int cmd_sweep(std::size_t dim, std::size_t max_order, const std::string& report_path, std::size_t jobs,
              std::ostream& out, std::ostream& err) {
  if (dim < 2 || dim > 5) throw PreconditionError("--dim must be between 2 and 5");
  if (max_order < 2 || max_order > 512) throw PreconditionError("--max-order must be between 2 and 512");
  const auto types = sweep_types(dim, max_order);
  std::vector<SweepRow> rows(types.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < types.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        CheckResult r = check_group({types[i]});
        row.verdict = verdict_name(r.verdict);
        row.witness = r.witness;
        row.cones = r.cones;
        row.max_discrepancy = r.max_discrepancy;
      } catch (const ResourceLimitExceeded& e) {
        row.verdict = "resource-limit";
        row.witness = e.what();
      } catch (const std::exception& e) {
        row.verdict = "error";
        row.witness = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "spec,order,dim,verdict,witness,cones,max_discrepancy\n";
  std::map<std::string, std::size_t> tally;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto& row = rows[i];
    ++tally[row.verdict];
    csv << csv_quote(types[i].to_string()) << "," << to_string(types[i].denominator()) << "," << dim << ","
        << row.verdict << "," << csv_quote(row.witness) << "," << row.cones << "," << to_string(row.max_discrepancy)
        << "\n";
  }
  if (report_path.empty()) {
    out << csv.str();
  } else {
    write_file(report_path, csv.str());
    out << types.size() << " types";
    for (const auto& [k, v] : tally) out << ", " << v << " " << k;
    out << "\n";
  }
  if (tally.count("resource-limit")) {
    err << "some rows hit the cone limit\n";
    return exit_code::resource_limit;
  }
  if (tally.count("error")) return exit_code::verification_failed;
  return exit_code::ok;
}

}  // namespace

// ---------------------------------------------------------------------------

CheckResult check_group(const std::vector<ProperFraction>& generators) {
  if (generators.empty()) throw PreconditionError("empty group");
  const std::size_t n = generators.front().rank();
  AbelianGroup G(n, generators);
  if (!G.is_gorenstein()) throw PreconditionError("the group is not inside SL(n): some element has non-integral age");
  Overlattice L(n, generators);
  CheckResult out;

  auto existence = [&] {
    out.existence_checked = true;
    out.existence_holds = first_existence_check(L);
    return out.existence_holds;
  };

  if (auto norm = semi_isolated(generators)) {
    const ProperFraction& f = norm->fraction;
    out.method = "fujiki-oka " + f.to_string();
    auto res = fujiki_oka_resolve(Cone::orthant(n), norm->permutation.front(), L);
    out.cones = res.fan.size();
    out.max_discrepancy = max_discrepancy(res.fan);
    auto ages = crepant_by_ages(f);
    if (ages.crepant != is_crepant(res.fan)) throw Error("age criterion and fan disagree for " + f.to_string());
    if (ages.crepant) {
      out.verdict = Verdict::Crepant;
      return out;
    }
    auto scan = obstruction_scan(f);
    if (scan.found()) {
      const auto& o = scan.obstructions.front();
      out.verdict = Verdict::Obstructed;
      out.witness = o.kind == ObstructionKind::GeneratorAge ? "age:" + f.to_string()
                                                             : o.word.to_string() + ":" + o.coefficient.to_string();
      return out;
    }
    if (!existence()) {
      out.verdict = Verdict::Obstructed;
      out.witness = "hilbert-basis";
      return out;
    }
    out.verdict = Verdict::Undetermined;
    out.witness = ages.witness->to_string() + ":" + ages.witness_coefficient->to_string();
    return out;
  }

  out.method = "iterated fujiki-oka";
  auto v = crepant_iterated(G);
  out.cones = v.resolution.fan.size();
  out.max_discrepancy = max_discrepancy(v.resolution.fan);
  if (v.kind == IteratedVerdictKind::Crepant) {
    out.verdict = Verdict::Crepant;
    return out;
  }
  if (!existence()) {
    out.verdict = Verdict::Obstructed;
    out.witness = "hilbert-basis";
    return out;
  }
  out.verdict = Verdict::Undetermined;
  out.witness = "stage" + std::to_string(*v.stage + 1) + ":" + v.witness->to_string() + ":" +
                v.witness_coefficient->to_string();
  return out;
}

std::vector<ProperFraction> sweep_types(std::size_t dim, std::size_t max_order) {
  std::vector<ProperFraction> out;
  for (std::size_t r = 2; r <= max_order; ++r) {
    IntVector a(dim, Integer(0));
    a[0] = 1;
    const long rr = static_cast<long>(r);
    // Slots 2..n non-increasing, listed in lexicographic order.
    auto fill = [&](auto&& self, std::size_t i, long cap, long sum) -> void {
      if (i == dim) {
        if (sum % rr == 0) out.emplace_back(a, Integer(rr));
        return;
      }
      for (long x = 0; x <= cap; ++x) {
        a[i] = x;
        self(self, i + 1, x, sum + x);
      }
    };
    fill(fill, 1, rr - 1, 1);
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fujiki-Oka resolutions of abelian quotient singularities", "crepantia"};
  app.require_subcommand(1);

  std::string hj_text;
  auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung continued fraction of r/a");
  hj->add_option("fraction", hj_text, "r/a")->required();

  std::string poly_spec;
  bool all_terms = false;
  auto* rpoly = app.add_subcommand("rpoly", "remainder polynomial of 1/r(1,a_2,...,a_n)");
  rpoly->add_option("spec", poly_spec, "group spec")->required();
  auto* zpoly = app.add_subcommand("zpoly", "round-down polynomial of 1/r(1,a_2,...,a_n)");
  zpoly->add_option("spec", poly_spec, "group spec")->required();
  zpoly->add_flag("--all", all_terms, "also list terms whose remainder is trivial");

  std::string resolve_spec, chain, out_path, svg_path;
  bool iterated = false;
  auto* resolve = app.add_subcommand("resolve", "build and verify a Fujiki-Oka fan");
  resolve->add_option("spec", resolve_spec, "group spec")->required();
  resolve->add_flag("--iterated", iterated, "iterated resolution along a basic generating system");
  resolve->add_option("--chain", chain, "explicit chain for the iterated resolution, e.g. \"1/4(1,2,1);1/4(0,1,3)\"");
  resolve->add_option("--out", out_path, "write the fan document here");
  resolve->add_option("--svg", svg_path, "write an SVG of the junior triangle (rank 3)");

  std::string check_spec;
  auto* check = app.add_subcommand("check", "decide crepancy where the criteria allow");
  check->add_option("spec", check_spec, "group spec")->required();

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "re-verify a fan document");
  verify->add_option("file", verify_path, "fan document")->required();

  std::size_t dim = 3, max_order = 30, jobs = 0;
  std::string report;
  auto* sweep = app.add_subcommand("sweep", "check every Gorenstein 1/r(1,a_2,...,a_n) up to an order");
  sweep->add_option("--dim", dim, "dimension (2-5)");
  sweep->add_option("--max-order", max_order, "largest r (<= 512)");
  sweep->add_option("--report", report, "CSV output path (stdout if omitted)");
  sweep->add_option("--jobs", jobs, "worker threads (0 = hardware)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_code::parse_error;
  }

  try {
    if (*hj) return cmd_hj(hj_text, out);
    if (*rpoly) return cmd_rpoly(poly_spec, out, err);
    if (*zpoly) return cmd_zpoly(poly_spec, all_terms, out, err);
    if (*resolve) return cmd_resolve(resolve_spec, iterated, chain, out_path, svg_path, out, err);
    if (*check) return cmd_check(check_spec, out);
    if (*verify) return cmd_verify(verify_path, out, err);
    if (*sweep) return cmd_sweep(dim, max_order, report, jobs, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse_error;
  } catch (const SemiUnimodularityLost& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::semi_unimodularity_lost;
  } catch (const ResourceLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::resource_limit;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::precondition;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::verification_failed;
  }
  return exit_code::parse_error;
}

}  // namespace crepantia
