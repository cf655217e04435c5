// Quasi-alternating certification by recursive smoothing.
//
// A link is certified when a diagram of it reaches known quasi-alternating
// leaves through crossings whose two smoothings have positive determinants
// adding up to the parent's. The search never concludes that a link is not
// quasi-alternating; when it gives up the answer is Unknown.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qaslopes/link_diagram.hpp"

namespace qaslopes {

enum class DbVerdict { QA, NQA };

struct DatabaseEntry {
  std::string name;
  PDCode pd;
  BigInt det;
  std::string source;
  std::string key;  // canonical form of the reduced diagram
};

class QADatabase {
 public:
  /// Recomputes the determinant (DataError naming the entry on mismatch) and
  /// rejects a key already stored under the opposite verdict.
  void add(DatabaseEntry entry, DbVerdict verdict);

  const DatabaseEntry* find_qa(const std::string& key) const;
  const DatabaseEntry* find_nqa(const std::string& key) const;
  const DatabaseEntry* qa_by_name(const std::string& name) const;

  const std::vector<DatabaseEntry>& qa_entries() const { return qa_; }
  const std::vector<DatabaseEntry>& nqa_entries() const { return nqa_; }
  std::size_t size() const { return qa_.size() + nqa_.size(); }

 private:
  std::vector<DatabaseEntry> qa_;
  std::vector<DatabaseEntry> nqa_;
  std::unordered_map<std::string, std::size_t> qa_keys_;
  std::unordered_map<std::string, std::size_t> nqa_keys_;
};

/// CSV with header `name,verdict,det,pd,source`, or a JSON list of objects
/// with the same fields.
QADatabase parse_database(std::string_view text, bool json);
/// Format chosen by extension (.json vs anything else).
QADatabase load_database(const std::filesystem::path& path);

/// A diagram the caller asserts is quasi-alternating.
struct Assumption {
  std::string name;
  PDCode pd;
  std::string key;
};

Assumption make_assumption(std::string name, PDCode pd);
/// CSV with header `name,pd` or JSON [{"name": ..., "pd": ...}].
std::vector<Assumption> parse_assumptions(std::string_view text, bool json);
std::vector<Assumption> load_assumptions(const std::filesystem::path& path);

struct SearchLimits {
  int max_depth = 16;
  int max_nodes = 100000;
  int max_crossings = 20;
};

struct CertificateNode;
using Certificate = std::shared_ptr<const CertificateNode>;

struct UnknotLeaf {};
struct AlternatingLeaf {};
struct DatabaseHit {
  std::string name;
};
struct AssumptionHit {
  std::string name;
};
/// child0 is the resolution-0 smoothing, child1 the resolution-1 smoothing.
struct SmoothingStep {
  int crossing = 0;
  Certificate child0;
  Certificate child1;
};

using Justification = std::variant<UnknotLeaf, AlternatingLeaf, DatabaseHit, AssumptionHit, SmoothingStep>;

enum class Verdict { QA, Unknown };

struct CertificateNode {
  std::string key;  // reduced canonical diagram; crossing indices refer to it
  BigInt det;
  Verdict verdict = Verdict::QA;
  Justification justification;
};

struct CertifiedQA {
  Certificate certificate;
};

/// Not a negative verdict: the search ran out of limits or filter-passing
/// crossings.
struct Unknown {
  std::string reason;
};

using CertifyResult = std::variant<CertifiedQA, Unknown>;

struct SearchStats {
  int nodes = 0;
  int memo_hits = 0;
};

CertifyResult certify(const LinkDiagram& diagram, const QADatabase& db, const std::vector<Assumption>& assumptions,
                      const SearchLimits& limits = {}, SearchStats* stats = nullptr);

struct CertificateCheck {
  bool ok = true;
  std::string diagnostic;
  std::vector<std::string> assumptions_used;
  explicit operator bool() const { return ok; }
};

/// Recomputes every key, determinant, smoothing and leaf claim from scratch.
/// Assumption leaves are accepted and listed in assumptions_used.
CertificateCheck verify_certificate(const Certificate& certificate, const QADatabase& db);

/// A crossing whose smoothings pass the determinant filter.
struct CrossingCandidate {
  int crossing = 0;
  SmoothingSite site0;
  SmoothingSite site1;
  BigInt det0;
  BigInt det1;
  int reduced_crossings = 0;  // crossings of the two reduced smoothings, summed
};

/// Crossings with det(D0) + det(D1) = det(D) and both dets >= 1, ordered by
/// reduced_crossings then crossing index.
std::vector<CrossingCandidate> crossing_order(const LinkDiagram& diagram);

nlohmann::json certificate_to_json(const Certificate& certificate);
Certificate certificate_from_json(const nlohmann::json& j);

/// Indented text tree, one node per line.
std::string render_certificate(const Certificate& certificate);

}  // namespace qaslopes
