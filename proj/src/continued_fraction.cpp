#include "crepantia/continued_fraction.hpp"

#include <algorithm>
#include <vector>

#include "crepantia/errors.hpp"

namespace crepantia {

namespace {

void require_normal_position(const ProperFraction& f, const char* what) {
  if (!is_semi_unimodular(f))
    throw PreconditionError(std::string(what) + ": " + f.to_string() + " is not semi-unimodular with 1 in slot one");
}

std::size_t slot_of(std::size_t i, const ProperFraction& f) {
  if (i < 2 || i > f.rank())
    throw PreconditionError("variable index " + std::to_string(i) + " outside 2.." + std::to_string(f.rank()));
  return i - 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hirzebruch-Jung

HJExpansion hj_expand(const Integer& r, const Integer& a) {
  if (a <= 0 || a >= r) throw PreconditionError("hj_expand needs 0 < a < r");
  if (gcd(r, a) != 1) throw PreconditionError("hj_expand needs coprime r and a");
  HJExpansion out{r, a, {}};
  Integer num = r;
  Integer den = a;
  for (;;) {
    Integer x = -floor_div(-num, den);  // ceiling
    out.coefficients.push_back(x);
    Integer rem = x * den - num;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
  return out;
}

std::pair<Integer, Integer> hj_from_coeffs(const std::vector<Integer>& coefficients) {
  if (coefficients.empty()) throw PreconditionError("hj_from_coeffs needs at least one coefficient");
  for (const auto& x : coefficients) {
    if (x < 2) throw PreconditionError("Hirzebruch-Jung coefficients must be >= 2");
  }
  Integer p = coefficients.back();
  Integer q = 1;
  for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) {
    Integer next = *it * p - q;
    q = p;
    p = next;
  }
  return {p, q};
}

std::vector<LatticePoint> hj_rays(const Integer& r, const Integer& a) {
  HJExpansion hj = hj_expand(r, a);
  std::vector<LatticePoint> rays;
  rays.push_back(LatticePoint{0, 1});
  rays.push_back(LatticePoint{Rational(1, r), Rational(a, r)});
  for (const auto& x : hj.coefficients) {
    const auto& cur = rays[rays.size() - 1];
    const auto& prev = rays[rays.size() - 2];
    rays.push_back(cur * Rational(x) - prev);
  }
  return rays;
}

// ---------------------------------------------------------------------------
// Words

Word::Word(std::vector<std::size_t> letters) : letters_(std::move(letters)) {}

Word Word::then(std::size_t letter) const {
  auto letters = letters_;
  letters.push_back(letter);
  return Word(std::move(letters));
}

bool Word::is_iterated() const {
  return !letters_.empty() &&
         std::all_of(letters_.begin(), letters_.end(), [&](std::size_t x) { return x == letters_.front(); });
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (auto x : letters_) out += "x" + std::to_string(x);
  return out;
}

Word Word::parse(const std::string& text) {
  if (text == "1") return Word();
  std::vector<std::size_t> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 'x') throw ParseError("malformed word '" + text + "'");
    std::size_t j = ++i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == i) throw ParseError("malformed word '" + text + "'");
    letters.push_back(std::stoul(text.substr(i, j - i)));
    i = j;
  }
  if (letters.empty()) throw ParseError("empty word text");
  return Word(std::move(letters));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.letters_.size() != b.letters_.size()) return a.letters_.size() <=> b.letters_.size();
  return a.letters_ <=> b.letters_;
}

// ---------------------------------------------------------------------------
// Remainder and round-down maps

bool is_semi_unimodular(const ProperFraction& f) { return f.rank() >= 1 && f[0] == 1; }

bool is_excluded(const ProperFraction& f) { return f.denominator() == 1; }

RemainderValue remainder_map(std::size_t i, const ProperFraction& f) {
  require_normal_position(f, "remainder_map");
  const std::size_t slot = slot_of(i, f);
  const Integer& ai = f[slot];
  if (ai == 0) return Infinity{};
  IntVector out(f.rank());
  for (std::size_t j = 0; j < f.rank(); ++j) {
    out[j] = mod_floor(j == slot ? Integer(-f.denominator()) : f[j], ai);
  }
  return ProperFraction(std::move(out), ai);
}

RoundDownValue rounddown_map(std::size_t i, const ProperFraction& f) {
  require_normal_position(f, "rounddown_map");
  const std::size_t slot = slot_of(i, f);
  const Integer& ai = f[slot];
  if (ai == 0) return Infinity{};
  IntVector out(f.rank());
  for (std::size_t j = 0; j < f.rank(); ++j) {
    out[j] = floor_div(j == slot ? Integer(-f.denominator()) : f[j], ai);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

const ProperFraction* RemainderPolynomial::find(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? nullptr : &it->second;
}

std::map<Word, IntVector> RoundDownPolynomial::paired_terms() const {
  std::map<Word, IntVector> out;
  for (const auto& [w, t] : terms_) {
    if (t.paired) out.emplace(w, t.value);
  }
  return out;
}

const RoundDownTerm* RoundDownPolynomial::find(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? nullptr : &it->second;
}

RemainderPolynomial remainder_polynomial(const ProperFraction& f) {
  require_normal_position(f, "remainder_polynomial");
  RemainderPolynomial::Terms terms;
  terms.emplace(Word(), f);
  std::vector<std::pair<Word, ProperFraction>> stack{{Word(), f}};
  while (!stack.empty()) {
    auto [word, node] = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i = 2; i <= node.rank(); ++i) {
      auto child = remainder_map(i, node);
      if (is_infinite(child)) continue;
      auto& frac = std::get<ProperFraction>(child);
      if (is_excluded(frac)) continue;
      Word w = word.then(i);
      terms.emplace(w, frac);
      stack.emplace_back(std::move(w), std::move(frac));
    }
  }
  return RemainderPolynomial(std::move(terms));
}

RoundDownPolynomial rounddown_polynomial(const ProperFraction& f) {
  RemainderPolynomial rp = remainder_polynomial(f);
  RoundDownPolynomial::Terms terms;
  for (const auto& [word, node] : rp) {
    for (std::size_t j = 2; j <= node.rank(); ++j) {
      auto z = rounddown_map(j, node);
      if (is_infinite(z)) continue;
      Word w = word.then(j);
      bool paired = rp.find(w) != nullptr;
      terms.emplace(std::move(w), RoundDownTerm{std::get<IntVector>(z), paired});
    }
  }
  return RoundDownPolynomial(std::move(terms));
}

// ---------------------------------------------------------------------------
// Normal position

ProperFraction move_slot_to_front(const ProperFraction& f, std::size_t slot) {
  IntVector a;
  a.reserve(f.rank());
  a.push_back(f[slot]);
  for (std::size_t j = 0; j < f.rank(); ++j) {
    if (j != slot) a.push_back(f[j]);
  }
  return ProperFraction(std::move(a), f.denominator());
}

std::optional<NormalizedFraction> normalize_semi_unimodular(const ProperFraction& f, bool allow_power) {
  auto build = [&](const ProperFraction& g, std::size_t slot, Integer power) {
    std::vector<std::size_t> perm{slot};
    for (std::size_t j = 0; j < g.rank(); ++j) {
      if (j != slot) perm.push_back(j);
    }
    return NormalizedFraction{move_slot_to_front(g, slot), std::move(perm), std::move(power)};
  };
  for (std::size_t j = 0; j < f.rank(); ++j) {
    if (f[j] == 1) return build(f, j, 1);
  }
  if (!allow_power) return std::nullopt;
  for (std::size_t j = 0; j < f.rank(); ++j) {
    if (f[j] != 0 && gcd(f[j], f.denominator()) == 1) {
      Integer k = mod_inverse(f[j], f.denominator());
      return build(f.power(k), j, k);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Crepancy criteria

FujikiOkaVerdict crepant_by_ages(const ProperFraction& f) {
  RemainderPolynomial rp = remainder_polynomial(f);
  for (const auto& [word, coeff] : rp) {
    if (coeff.age() != 1) return FujikiOkaVerdict{false, word, coeff};
  }
  return FujikiOkaVerdict{true, std::nullopt, std::nullopt};
}

ObstructionReport obstruction_scan(const ProperFraction& f) {
  require_normal_position(f, "obstruction_scan");
  const Rational a = f.age();
  if (!is_integral(a)) throw PreconditionError("obstruction_scan needs a Gorenstein fraction; " + f.to_string() + " has age " + to_string(a));
  ObstructionReport report;
  if (a >= 2) {
    report.obstructions.push_back(Obstruction{ObstructionKind::GeneratorAge, Word(), f, a});
    return report;
  }
  for (const auto& [word, coeff] : remainder_polynomial(f)) {
    if (!word.is_iterated()) continue;
    Rational ca = coeff.age();
    if (ca >= 2) report.obstructions.push_back(Obstruction{ObstructionKind::IteratedTerm, word, coeff, ca});
  }
  return report;
}

std::vector<LatticePoint> minimal_points(const ProperFraction& f, std::size_t i) {
  require_normal_position(f, "minimal_points");
  const std::size_t slot = slot_of(i, f);
  const Integer& r = f.denominator();
  const Integer& ai = f[slot];
  if (ai == 0) throw PreconditionError("minimal_points: entry a_" + std::to_string(i) + " is zero");
  if (gcd(r, ai) != 1) throw PreconditionError("minimal_points: gcd(r, a_" + std::to_string(i) + ") != 1");
  std::vector<LatticePoint> out;
  auto rays = hj_rays(r, ai);
  for (std::size_t j = 1; j + 1 < rays.size(); ++j) {
    Integer k = Rational(rays[j][0] * r).get_num();
    IntVector u(f.rank());
    for (std::size_t m = 0; m < f.rank(); ++m) u[m] = mod_floor(f[m] * k, r);
    u[0] = k;
    RationalVector coords(f.rank());
    for (std::size_t m = 0; m < f.rank(); ++m) coords[m] = Rational(u[m], r);
    out.emplace_back(std::move(coords));
  }
  return out;
}

}  // namespace crepantia
