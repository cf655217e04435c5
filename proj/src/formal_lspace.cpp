#include "qaslopes/formal_lspace.hpp"

#include <cmath>
#include <set>

#include "qaslopes/errors.hpp"

namespace qaslopes {

Slope seed_slope(const FormalSeed& seed) {
  if (const auto* s = std::get_if<PositiveSlopeSeed>(&seed)) return s->r;
  return Slope::integer(std::get<PositiveIntegerSeed>(seed).n);
}

std::string describe(const FormalSeed& seed) {
  if (const auto* s = std::get_if<PositiveSlopeSeed>(&seed)) return "slope seed " + s->r.str();
  return "integer seed " + std::get<PositiveIntegerSeed>(seed).n.str();
}

namespace {

void validate_seed(const FormalSeed& seed) {
  if (const auto* s = std::get_if<PositiveSlopeSeed>(&seed)) {
    if (s->r.is_meridian() || s->r.p() <= 0) throw DomainError("seed slope must be positive, got " + s->r.str());
  } else if (std::get<PositiveIntegerSeed>(seed).n < 1) {
    throw DomainError("integer seed must be >= 1");
  }
}

LensMarker lens_for(const Slope& s) {
  BigInt n = ceil_div(s.p(), s.q());
  return {s.q(), n * s.q() - s.p()};
}

TriadWitness integer_step(const Slope& from) {
  return {Slope(from.p() + from.q(), from.q()), lens_for(from), from, TriadRule::IntegerStep};
}

// Emits derivations in dependency order, never repeating a target.
class DerivationBuilder {
 public:
  explicit DerivationBuilder(const BigInt& base) : top_(base) { derived_.insert(Slope::integer(base)); }

  void chain_integers_to(const BigInt& target) {
    while (top_ < target) {
      TriadWitness w = integer_step(Slope::integer(top_));
      derived_.insert(w.target);
      steps_.push_back(std::move(w));
      ++top_;
    }
  }

  void derive(const Slope& query) {
    std::vector<Slope> stack{query};
    while (!stack.empty()) {
      Slope current = stack.back();
      if (derived_.contains(current)) {
        stack.pop_back();
        continue;
      }
      if (current.is_integer()) {
        chain_integers_to(current.p());
        stack.pop_back();
        continue;
      }
      auto [lower, upper] = triad_partners(current);
      bool ready = true;
      for (const Slope& parent : {lower, upper}) {
        if (!derived_.contains(parent)) {
          stack.push_back(parent);
          ready = false;
        }
      }
      if (!ready) continue;
      stack.pop_back();
      derived_.insert(current);
      steps_.push_back({current, lower, upper, TriadRule::CFStep});
    }
  }

  Derivation take() { return std::move(steps_); }

 private:
  BigInt top_;
  std::set<Slope> derived_;
  Derivation steps_;
};

}  // namespace

PropagationResult propagate(const FormalSeed& seed, const Slope& query) {
  if (query.is_meridian()) throw DomainError("query slope 1/0 is not a rational homology sphere filling");
  validate_seed(seed);

  if (const auto* s = std::get_if<PositiveSlopeSeed>(&seed)) {
    Rational gap = query.value() - s->r.value();
    if (gap < 0 || boost::multiprecision::denominator(gap) != 1) {
      return NotDerivable{query.str() + " is not " + s->r.str() + " plus a non-negative integer"};
    }
    Derivation steps;
    Slope current = s->r;
    for (BigInt k = boost::multiprecision::numerator(gap); k > 0; --k) {
      steps.push_back(integer_step(current));
      current = steps.back().target;
    }
    return steps;
  }

  const BigInt& n = std::get<PositiveIntegerSeed>(seed).n;
  const Slope start = Slope::integer(n);
  if (query < start) return NotDerivable{query.str() + " lies below the seed " + start.str()};

  DerivationBuilder builder(n);
  if (n == 1 && !query.is_integer()) {
    // Non-integer slopes are reached from 2 = 1 + 1 only.
    if (query < Slope::integer(BigInt(2))) {
      return NotDerivable{query.str() + " lies in (1,2); seed 1 reaches non-integer slopes only from 2"};
    }
    builder.chain_integers_to(BigInt(2));
  }
  builder.derive(query);
  return builder.take();
}

namespace {

bool positive_finite(const Slope& s) { return !s.is_meridian() && s.p() > 0; }

}  // namespace

CheckResult verify_derivation(const Derivation& derivation, const FormalSeed& seed) {
  std::set<Slope> available{seed_slope(seed)};
  for (std::size_t i = 0; i < derivation.size(); ++i) {
    const TriadWitness& w = derivation[i];
    auto fail = [&](const std::string& why) {
      return CheckResult{false, "step " + std::to_string(i) + " (target " + w.target.str() + "): " + why};
    };
    if (!positive_finite(w.target)) return fail("target is not a positive slope");
    if (!positive_finite(w.second)) return fail("parent " + w.second.str() + " is not a positive slope");
    if (!available.contains(w.second)) return fail("parent " + w.second.str() + " has not been derived");

    if (w.rule == TriadRule::IntegerStep) {
      const auto* lens = std::get_if<LensMarker>(&w.first);
      if (lens == nullptr) return fail("IntegerStep needs a lens-space parent");
      const Slope& s = w.second;
      if (w.target != Slope(s.p() + s.q(), s.q())) return fail("target is not parent + 1");
      if (lens->q != s.q() || lens->r != ceil_div(s.p(), s.q()) * s.q() - s.p()) {
        return fail("lens parameters do not match parent " + s.str());
      }
      if (w.target.p() != s.p() + lens->q) return fail("|H_1| is not additive");
    } else {
      const auto* first = std::get_if<Slope>(&w.first);
      if (first == nullptr) return fail("CFStep needs two slope parents");
      if (!positive_finite(*first)) return fail("parent " + first->str() + " is not a positive slope");
      if (!available.contains(*first)) return fail("parent " + first->str() + " has not been derived");
      if (distance(*first, w.second) != 1 || distance(*first, w.target) != 1 ||
          distance(w.second, w.target) != 1) {
        return fail("slopes are not pairwise at distance one");
      }
      if (w.target.p() != first->p() + w.second.p() || w.target.q() != first->q() + w.second.q()) {
        return fail("target is not the mediant of its parents");
      }
    }
    available.insert(w.target);
  }
  return {};
}

CheckResult verify_derivation(const Derivation& derivation, const FormalSeed& seed, const Slope& query) {
  CheckResult rules = verify_derivation(derivation, seed);
  if (!rules) return rules;
  const Slope& reached = derivation.empty() ? seed_slope(seed) : derivation.back().target;
  if (reached != query) return {false, "derivation ends at " + reached.str() + ", not " + query.str()};
  return {};
}

BigInt greene_max_genus(const Slope& r) {
  if (r.is_meridian() || r.p() <= 0) throw DomainError("genus bound needs a positive slope");
  const BigInt n = ceil_div(r.p(), r.q());
  BigInt root = boost::multiprecision::sqrt(n);
  if (root * root < n) ++root;  // ceil(sqrt(n))
  // 2g <= n - sqrt(n)  <=>  n - 2g >= ceil(sqrt(n)).
  return floor_div(n - root, BigInt(2));
}

GenusSlopeBound::GenusSlopeBound(BigInt genus) : genus_(std::move(genus)) {
  if (genus_ < 0) throw DomainError("genus must be non-negative");
  radicand_ = 1 + 8 * genus_;
  root_ = boost::multiprecision::sqrt(radicand_);
}

BigInt GenusSlopeBound::integer_value() const {
  if (!is_integer()) throw DomainError("B(" + genus_.str() + ") is irrational");
  return 2 * genus_ + (root_ - 1) / 2;
}

double GenusSlopeBound::approx() const {
  return 2 * genus_.convert_to<double>() + (std::sqrt(radicand_.convert_to<double>()) - 1) / 2;
}

std::string GenusSlopeBound::str() const {
  if (is_integer()) return integer_value().str();
  return BigInt(2 * genus_).str() + " + (sqrt(" + radicand_.str() + ") - 1)/2";
}

std::strong_ordering GenusSlopeBound::compare(const Rational& r) const {
  // sign(B - r) = sign(sqrt(R) - x) with x = 2r - 4g + 1.
  const Rational x = 2 * r - Rational(4 * genus_) + 1;
  if (x < 0) return std::strong_ordering::greater;
  const Rational x2 = x * x;
  const Rational rad(radicand_);
  if (rad > x2) return std::strong_ordering::greater;
  if (rad < x2) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

GenusSlopeBound min_formal_slope_bound(const BigInt& genus) { return GenusSlopeBound(genus); }

bool formal_slopes_torus(const TorusKnot& knot, const Slope& r) { return is_qa_slope(knot, r); }

nlohmann::json derivation_to_json(const Derivation& derivation) {
  nlohmann::json out = nlohmann::json::array();
  for (const TriadWitness& w : derivation) {
    nlohmann::json first;
    if (const auto* lens = std::get_if<LensMarker>(&w.first)) {
      first = {{"lens_q", lens->q.str()}, {"lens_r", lens->r.str()}};
    } else {
      first = std::get<Slope>(w.first).str();
    }
    out.push_back({{"target", w.target.str()},
                   {"parents", {first, w.second.str()}},
                   {"rule", w.rule == TriadRule::IntegerStep ? "IntegerStep" : "CFStep"}});
  }
  return out;
}

Derivation derivation_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("derivation JSON must be a list");
  Derivation out;
  auto integer = [](const nlohmann::json& v) -> BigInt {
    if (v.is_number_integer()) return BigInt(v.get<long long>());
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw ParseError("expected an integer in derivation JSON");
  };
  try {
    for (const auto& item : j) {
      const auto& parents = item.at("parents");
      if (!parents.is_array() || parents.size() != 2) throw ParseError("each witness needs two parents");
      const std::string rule = item.at("rule").get<std::string>();
      TriadWitness w{parse_slope(item.at("target").get<std::string>()), Slope::meridian(),
                     parse_slope(parents[1].get<std::string>()), TriadRule::CFStep};
      if (rule == "IntegerStep") {
        w.rule = TriadRule::IntegerStep;
      } else if (rule != "CFStep") {
        throw ParseError("unknown triad rule '" + rule + "'");
      }
      if (parents[0].is_object()) {
        w.first = LensMarker{integer(parents[0].at("lens_q")), integer(parents[0].at("lens_r"))};
      } else {
        w.first = parse_slope(parents[0].get<std::string>());
      }
      out.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed derivation JSON: ") + e.what());
  }
  return out;
}

}  // namespace qaslopes
