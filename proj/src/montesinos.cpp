#include "qaslopes/montesinos.hpp"

#include <sstream>

#include "qaslopes/errors.hpp"
#include "scanner.hpp"

namespace qaslopes {

MontesinosLink::MontesinosLink(BigInt e, std::vector<Tangle> tangles)
    : e_(std::move(e)), tangles_(std::move(tangles)) {
  for (const Tangle& t : tangles_) {
    if (t.alpha < 2) throw DomainError("tangle numerator must be >= 2 in " + str());
    if (t.beta == 0 || boost::multiprecision::gcd(t.alpha, abs(t.beta)) != 1) {
      throw DomainError("tangle " + t.alpha.str() + "/" + t.beta.str() + " is not a reduced fraction");
    }
  }
}

bool MontesinosLink::is_standard_form() const {
  for (const Tangle& t : tangles_) {
    if (!(t.beta > 0 && t.beta < t.alpha)) return false;
  }
  return true;
}

Rational MontesinosLink::euler_number() const {
  Rational total(e_);
  for (const Tangle& t : tangles_) total -= Rational(t.beta, t.alpha);
  return total;
}

std::string MontesinosLink::str() const {
  std::ostringstream os;
  os << "M(" << e_ << ";";
  for (std::size_t i = 0; i < tangles_.size(); ++i) {
    os << (i ? ", " : " ") << tangles_[i].alpha << "/" << tangles_[i].beta;
  }
  os << ")";
  return os.str();
}

MontesinosLink sfs_to_montesinos(const std::vector<Fiber>& fibers) {
  std::vector<Tangle> tangles;
  tangles.reserve(fibers.size());
  for (const Fiber& f : fibers) {
    if (f.alpha <= 1) {
      throw DomainError("fiber (" + f.alpha.str() + "," + f.beta.str() +
                        ") has multiplicity <= 1; absorb it before building the branch set");
    }
    tangles.push_back({f.alpha, f.beta});
  }
  return MontesinosLink(BigInt(0), std::move(tangles));
}

MontesinosLink normalize(const MontesinosLink& link) {
  BigInt e = link.e();
  std::vector<Tangle> tangles = link.tangles();
  for (Tangle& t : tangles) {
    BigInt k = floor_div(t.beta, t.alpha);
    t.beta -= k * t.alpha;
    e -= k;
  }
  return MontesinosLink(std::move(e), std::move(tangles));
}

bool issa_qa(const MontesinosLink& link) {
  if (!link.is_standard_form()) {
    throw DomainError("quasi-alternating criterion needs standard form, got " + link.str());
  }
  const auto& ts = link.tangles();
  const BigInt n = ts.size();
  if (ts.size() <= 2) return true;
  const BigInt& e = link.e();
  auto some_pair = [&](auto&& pred) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        if (pred(Rational(ts[i].beta, ts[i].alpha) + Rational(ts[j].beta, ts[j].alpha))) return true;
      }
    }
    return false;
  };
  if (e < 1) return true;
  if (e == 1 && some_pair([](const Rational& s) { return s > 1; })) return true;
  if (e > n - 1) return true;
  if (e == n - 1 && some_pair([](const Rational& s) { return s < 1; })) return true;
  return false;
}

bool qa_slope_via_pipeline(const TorusKnot& knot, const Slope& r) {
  if (r.is_meridian()) throw DomainError("slope 1/0 is not classified");
  const Rational value = r.value();
  if (value >= Rational(BigInt(knot.a() * knot.b() - 1))) return true;
  if (value < lspace_slope_min(knot).value()) return false;
  const SurgeryResult filling = moser_surgery(knot, r);
  const auto* sfs = std::get_if<SmallSFS>(&filling);
  if (sfs == nullptr) {
    // Below ab-1 the third multiplicity abq-p exceeds q >= 1.
    throw DomainError("unexpected non-SFS filling " + describe(filling));
  }
  std::vector<Fiber> fibers(sfs->fibers.begin(), sfs->fibers.end());
  return issa_qa(normalize(sfs_to_montesinos(fibers)));
}

using detail::Scanner;

std::vector<Fiber> parse_sfs(std::string_view text) {
  Scanner sc(text);
  sc.expect("SFS[");
  if (!sc.accept("S2:")) sc.expect("S^2:");
  std::vector<Fiber> fibers;
  while (sc.peek() == '(') {
    sc.expect("(");
    BigInt alpha = sc.integer();
    sc.expect(",");
    BigInt beta = sc.integer();
    sc.expect(")");
    fibers.push_back({alpha, beta});
  }
  // Census tables occasionally drop the closing bracket.
  sc.accept("]");
  if (!sc.done()) sc.fail("trailing input");
  if (fibers.empty()) sc.fail("no fibers");
  return fibers;
}

MontesinosLink parse_montesinos(std::string_view text) {
  Scanner sc(text);
  sc.expect("M(");
  sc.accept("e=");
  BigInt e = sc.integer();
  std::vector<Tangle> tangles;
  if (sc.accept(";")) {
    do {
      BigInt alpha = sc.integer();
      BigInt beta(1);
      if (sc.accept("/")) {
        if (sc.accept("(")) {
          beta = sc.integer();
          sc.expect(")");
        } else {
          beta = sc.integer();
        }
      }
      tangles.push_back({alpha, beta});
    } while (sc.accept(","));
  }
  sc.expect(")");
  if (!sc.done()) sc.fail("trailing input");
  return MontesinosLink(std::move(e), std::move(tangles));
}

MontesinosLink parse_montesinos_spec(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first).rfind("SFS", 0) == 0) {
    return sfs_to_montesinos(parse_sfs(text));
  }
  return parse_montesinos(text);
}

}  // namespace qaslopes
