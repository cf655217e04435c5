#include "qaslopes/certifier.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "qaslopes/errors.hpp"

namespace qaslopes {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool is_json_path(const std::filesystem::path& path) { return path.extension() == ".json"; }

std::string key_of(const PDCode& pd) { return canonical_form(reduce(LinkDiagram(pd))); }

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Header-indexed CSV rows; blank lines are skipped.
std::vector<std::unordered_map<std::string, std::string>> csv_records(std::string_view text,
                                                                     const std::vector<std::string>& required) {
  std::vector<detail::CsvRow> rows = detail::parse_csv(text);
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const detail::CsvRow& r) {
                              return r.empty() || (r.size() == 1 && trim(r[0]).empty());
                            }),
             rows.end());
  std::vector<std::unordered_map<std::string, std::string>> out;
  if (rows.empty()) return out;
  std::vector<std::string> header;
  for (const auto& h : rows[0]) header.push_back(trim(h));
  for (const auto& name : required) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ParseError("CSV header is missing column '" + name + "'");
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw ParseError("CSV row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    std::unordered_map<std::string, std::string> rec;
    for (std::size_t k = 0; k < header.size(); ++k) rec[header[k]] = rows[i][k];
    out.push_back(std::move(rec));
  }
  return out;
}

nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

PDCode pd_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_pd_code(v.get<std::string>());
  return parse_pd_code(v.dump());
}

BigInt integer_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return BigInt(trim(v.get<std::string>()));
    } catch (const std::exception&) {
    }
  }
  throw ParseError("expected an integer, got " + v.dump());
}

BigInt integer_from_text(const std::string& s, const std::string& what) {
  try {
    return BigInt(trim(s));
  } catch (const std::exception&) {
    throw ParseError(what + " '" + s + "' is not an integer");
  }
}

DbVerdict verdict_from_text(const std::string& s) {
  const std::string t = trim(s);
  if (t == "QA") return DbVerdict::QA;
  if (t == "NQA") return DbVerdict::NQA;
  throw ParseError("verdict must be QA or NQA, got '" + s + "'");
}

}  // namespace

void QADatabase::add(DatabaseEntry entry, DbVerdict verdict) {
  const LinkDiagram diagram(entry.pd);
  const BigInt actual = determinant(diagram);
  if (actual != entry.det) {
    throw DataError("database entry " + entry.name + " stores det " + entry.det.str() + " but its diagram has det " +
                    actual.str());
  }
  entry.key = canonical_form(reduce(diagram));
  auto& own_keys = verdict == DbVerdict::QA ? qa_keys_ : nqa_keys_;
  auto& own = verdict == DbVerdict::QA ? qa_ : nqa_;
  const auto& other_keys = verdict == DbVerdict::QA ? nqa_keys_ : qa_keys_;
  const auto& other = verdict == DbVerdict::QA ? nqa_ : qa_;
  if (auto it = other_keys.find(entry.key); it != other_keys.end()) {
    throw DataError("database entries " + other[it->second].name + " and " + entry.name +
                    " have the same diagram but opposite verdicts");
  }
  if (own_keys.contains(entry.key)) return;  // alias of an earlier entry
  own_keys.emplace(entry.key, own.size());
  own.push_back(std::move(entry));
}

const DatabaseEntry* QADatabase::find_qa(const std::string& key) const {
  auto it = qa_keys_.find(key);
  return it == qa_keys_.end() ? nullptr : &qa_[it->second];
}

const DatabaseEntry* QADatabase::find_nqa(const std::string& key) const {
  auto it = nqa_keys_.find(key);
  return it == nqa_keys_.end() ? nullptr : &nqa_[it->second];
}

const DatabaseEntry* QADatabase::qa_by_name(const std::string& name) const {
  for (const auto& e : qa_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

QADatabase parse_database(std::string_view text, bool json) {
  QADatabase db;
  if (json) {
    const nlohmann::json j = parse_json_text(text);
    if (!j.is_array()) throw ParseError("database JSON must be a list of entries");
    try {
      for (const auto& item : j) {
        DatabaseEntry e;
        e.name = item.at("name").get<std::string>();
        e.pd = pd_from_json(item.at("pd"));
        e.det = integer_from_json(item.at("det"));
        e.source = item.contains("source") ? item.at("source").get<std::string>() : "";
        db.add(std::move(e), verdict_from_text(item.at("verdict").get<std::string>()));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed database entry: ") + e.what());
    }
    return db;
  }
  for (auto& rec : csv_records(text, {"name", "verdict", "det", "pd"})) {
    DatabaseEntry e;
    e.name = trim(rec["name"]);
    e.pd = parse_pd_code(rec["pd"]);
    e.det = integer_from_text(rec["det"], "determinant of " + e.name);
    e.source = rec.contains("source") ? trim(rec["source"]) : "";
    db.add(std::move(e), verdict_from_text(rec["verdict"]));
  }
  return db;
}

QADatabase load_database(const std::filesystem::path& path) {
  return parse_database(read_file(path), is_json_path(path));
}

Assumption make_assumption(std::string name, PDCode pd) {
  std::string key = key_of(pd);
  return {std::move(name), std::move(pd), std::move(key)};
}

std::vector<Assumption> parse_assumptions(std::string_view text, bool json) {
  std::vector<Assumption> out;
  if (json) {
    const nlohmann::json j = parse_json_text(text);
    if (!j.is_array()) throw ParseError("assumptions JSON must be a list");
    try {
      for (const auto& item : j) {
        out.push_back(make_assumption(item.at("name").get<std::string>(), pd_from_json(item.at("pd"))));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed assumption: ") + e.what());
    }
    return out;
  }
  for (auto& rec : csv_records(text, {"name", "pd"})) {
    out.push_back(make_assumption(trim(rec["name"]), parse_pd_code(rec["pd"])));
  }
  return out;
}

std::vector<Assumption> load_assumptions(const std::filesystem::path& path) {
  return parse_assumptions(read_file(path), is_json_path(path));
}

namespace {

struct Candidate {
  CrossingCandidate info;
  LinkDiagram child0;
  LinkDiagram child1;
};

std::vector<Candidate> candidates_for(const LinkDiagram& d, const BigInt& det) {
  std::vector<Candidate> out;
  for (int c = 0; c < d.crossing_count(); ++c) {
    LinkDiagram r0 = reduce(smooth(d, {c, 0}));
    BigInt d0 = determinant(r0);
    if (d0 < 1) continue;
    LinkDiagram r1 = reduce(smooth(d, {c, 1}));
    BigInt d1 = determinant(r1);
    if (d1 < 1 || d0 + d1 != det) continue;
    CrossingCandidate info{c, {c, 0}, {c, 1}, d0, d1, r0.crossing_count() + r1.crossing_count()};
    out.push_back({std::move(info), std::move(r0), std::move(r1)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.info.reduced_crossings < b.info.reduced_crossings;
  });
  return out;
}

bool is_unknot_diagram(const LinkDiagram& d) { return d.crossing_count() == 0 && d.free_loops() == 1; }

bool is_alternating_leaf(const LinkDiagram& d) { return is_connected_nonsplit(d) && is_alternating(d); }

class Search {
 public:
  Search(const QADatabase& db, const std::vector<Assumption>& assumptions, const SearchLimits& limits)
      : db_(db), limits_(limits) {
    for (const auto& a : assumptions) assumed_.emplace(a.key, a.name);
  }

  CertifyResult run(const LinkDiagram& diagram, SearchStats* stats) {
    LinkDiagram root = reduce(diagram);
    Certificate cert = solve(root, canonical_form(root), 0);
    if (stats) *stats = stats_;
    if (cert) return CertifiedQA{cert};
    return Unknown{root_reason()};
  }

 private:
  struct Memo {
    Certificate cert;
    int failed_budget = -1;  // largest remaining depth at which the search failed
  };

  std::optional<Justification> leaf(const LinkDiagram& d, const std::string& key) const {
    if (is_unknot_diagram(d)) return UnknotLeaf{};
    if (is_alternating_leaf(d)) return AlternatingLeaf{};
    if (const auto* e = db_.find_qa(key)) return DatabaseHit{e->name};
    if (auto it = assumed_.find(key); it != assumed_.end()) return AssumptionHit{it->second};
    return std::nullopt;
  }

  Certificate make_node(const std::string& key, BigInt det, Justification j) {
    auto node = std::make_shared<CertificateNode>();
    node->key = key;
    node->det = std::move(det);
    node->justification = std::move(j);
    Certificate cert = node;
    memo_[key].cert = cert;
    return cert;
  }

  Certificate fail(const std::string& key, int budget, std::string reason, int depth) {
    Memo& m = memo_[key];
    m.failed_budget = std::max(m.failed_budget, budget);
    if (depth == 0) root_failure_ = std::move(reason);
    return nullptr;
  }

  // `d` is a reduced canonical diagram and `key` its canonical form.
  Certificate solve(const LinkDiagram& d, const std::string& key, int depth) {
    const int budget = limits_.max_depth - depth;
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second.cert) {
        ++stats_.memo_hits;
        return it->second.cert;
      }
      if (it->second.failed_budget >= budget) {
        ++stats_.memo_hits;
        return nullptr;
      }
    }
    if (stats_.nodes >= limits_.max_nodes) {
      node_limit_hit_ = true;
      return nullptr;
    }
    ++stats_.nodes;

    if (auto j = leaf(d, key)) return make_node(key, determinant(d), std::move(*j));
    if (const auto* e = db_.find_nqa(key)) {
      return fail(key, INT_MAX, "diagram matches " + e->name + ", recorded as not quasi-alternating", depth);
    }
    BigInt det = determinant(d);
    if (det == 0) return fail(key, INT_MAX, "determinant is 0, so the link is not quasi-alternating", depth);
    if (budget <= 0) {
      depth_limit_hit_ = true;
      return fail(key, budget, "depth limit reached", depth);
    }
    if (d.crossing_count() > limits_.max_crossings) {
      return fail(key, INT_MAX,
                  "diagram has " + std::to_string(d.crossing_count()) + " crossings, above the limit of " +
                      std::to_string(limits_.max_crossings),
                  depth);
    }

    std::vector<Candidate> candidates = candidates_for(d, det);
    if (candidates.empty()) {
      return fail(key, INT_MAX, "no crossing has smoothings with positive determinants summing to " + det.str(),
                  depth);
    }

    // Crossings with a child that is already a leaf go first.
    std::vector<const Candidate*> order;
    std::vector<const Candidate*> rest;
    for (const Candidate& c : candidates) {
      bool immediate = leaf(c.child0, canonical_form(c.child0)) || leaf(c.child1, canonical_form(c.child1));
      (immediate ? order : rest).push_back(&c);
    }
    order.insert(order.end(), rest.begin(), rest.end());

    for (const Candidate* c : order) {
      Certificate c0 = solve(c->child0, canonical_form(c->child0), depth + 1);
      if (node_limit_hit_) break;
      if (!c0) continue;
      Certificate c1 = solve(c->child1, canonical_form(c->child1), depth + 1);
      if (node_limit_hit_) break;
      if (!c1) continue;
      return make_node(key, det, SmoothingStep{c->info.crossing, c0, c1});
    }
    if (node_limit_hit_) return nullptr;
    return fail(key, budget, "no crossing leads to a certificate", depth);
  }

  std::string root_reason() const {
    if (node_limit_hit_) return "node limit of " + std::to_string(limits_.max_nodes) + " reached";
    if (depth_limit_hit_ && root_failure_ == "no crossing leads to a certificate") {
      return "no certificate within depth " + std::to_string(limits_.max_depth);
    }
    return root_failure_.empty() ? "no certificate found" : root_failure_;
  }

  const QADatabase& db_;
  SearchLimits limits_;
  std::unordered_map<std::string, std::string> assumed_;
  std::unordered_map<std::string, Memo> memo_;
  SearchStats stats_;
  bool node_limit_hit_ = false;
  bool depth_limit_hit_ = false;
  std::string root_failure_;
};

}  // namespace

CertifyResult certify(const LinkDiagram& diagram, const QADatabase& db, const std::vector<Assumption>& assumptions,
                      const SearchLimits& limits, SearchStats* stats) {
  return Search(db, assumptions, limits).run(diagram, stats);
}

std::vector<CrossingCandidate> crossing_order(const LinkDiagram& diagram) {
  std::vector<CrossingCandidate> out;
  for (auto& c : candidates_for(diagram, determinant(diagram))) out.push_back(std::move(c.info));
  return out;
}

namespace {

class Verifier {
 public:
  explicit Verifier(const QADatabase& db) : db_(db) {}

  CertificateCheck run(const Certificate& root) {
    CertificateCheck result;
    if (!root) return {false, "empty certificate", {}};
    std::string why = check(*root, "root");
    if (!why.empty()) return {false, why, {}};
    result.assumptions_used.assign(assumptions_.begin(), assumptions_.end());
    return result;
  }

 private:
  std::string check(const CertificateNode& node, const std::string& where) {
    if (verified_.contains(&node)) return "";
    auto fail = [&](const std::string& why) { return where + ": " + why; };
    if (node.verdict != Verdict::QA) return fail("node is not marked QA");
    std::optional<LinkDiagram> parsed;
    try {
      parsed.emplace(parse_pd(node.key));
    } catch (const std::exception& e) {
      return fail(std::string("key does not parse: ") + e.what());
    }
    const LinkDiagram& d = *parsed;
    if (canonical_form(reduce(d)) != node.key) return fail("key is not a reduced canonical diagram");
    const BigInt det = determinant(d);
    if (det != node.det) return fail("claimed det " + node.det.str() + " but the diagram has det " + det.str());

    std::string why = std::visit(
        [&](const auto& j) -> std::string {
          using T = std::decay_t<decltype(j)>;
          if constexpr (std::is_same_v<T, UnknotLeaf>) {
            return is_unknot_diagram(d) ? "" : fail("not the crossingless unknot");
          } else if constexpr (std::is_same_v<T, AlternatingLeaf>) {
            return is_alternating_leaf(d) ? "" : fail("not a connected non-split alternating diagram");
          } else if constexpr (std::is_same_v<T, DatabaseHit>) {
            const DatabaseEntry* e = db_.qa_by_name(j.name);
            if (e == nullptr) return fail("no QA database entry named " + j.name);
            return e->key == node.key ? "" : fail("database entry " + j.name + " is a different diagram");
          } else if constexpr (std::is_same_v<T, AssumptionHit>) {
            assumptions_.insert(j.name);
            return "";
          } else {
            if (j.crossing < 0 || j.crossing >= d.crossing_count()) {
              return fail("no crossing " + std::to_string(j.crossing));
            }
            if (!j.child0 || !j.child1) return fail("smoothing step is missing a child");
            if (j.child0->det < 1 || j.child1->det < 1) return fail("a smoothing has determinant 0");
            if (j.child0->det + j.child1->det != det) {
              return fail("det " + det.str() + " != " + j.child0->det.str() + " + " + j.child1->det.str());
            }
            const Certificate children[2] = {j.child0, j.child1};
            for (int r = 0; r < 2; ++r) {
              const std::string expected = canonical_form(reduce(smooth(d, {j.crossing, r})));
              if (expected != children[r]->key) {
                return fail("resolution " + std::to_string(r) + " at crossing " + std::to_string(j.crossing) +
                            " does not give the child diagram");
              }
            }
            for (int r = 0; r < 2; ++r) {
              std::string sub = check(*children[r], where + "/" + std::to_string(j.crossing) + ":" + std::to_string(r));
              if (!sub.empty()) return sub;
            }
            return "";
          }
        },
        node.justification);
    if (why.empty()) verified_.insert(&node);
    return why;
  }

  const QADatabase& db_;
  std::set<const CertificateNode*> verified_;
  std::set<std::string> assumptions_;
};

}  // namespace

CertificateCheck verify_certificate(const Certificate& certificate, const QADatabase& db) {
  return Verifier(db).run(certificate);
}

nlohmann::json certificate_to_json(const Certificate& certificate) {
  if (!certificate) return nullptr;
  const CertificateNode& n = *certificate;
  nlohmann::json out = {{"key", n.key}, {"verdict", n.verdict == Verdict::QA ? "QA" : "Unknown"}};
  if (n.det <= BigInt(LLONG_MAX)) {
    out["det"] = n.det.convert_to<long long>();
  } else {
    out["det"] = n.det.str();
  }
  std::visit(
      [&](const auto& j) {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, UnknotLeaf>) {
          out["justification"] = {{"type", "Unknot"}};
        } else if constexpr (std::is_same_v<T, AlternatingLeaf>) {
          out["justification"] = {{"type", "AlternatingNonSplit"}};
        } else if constexpr (std::is_same_v<T, DatabaseHit>) {
          out["justification"] = {{"type", "DatabaseHit"}, {"name", j.name}};
        } else if constexpr (std::is_same_v<T, AssumptionHit>) {
          out["justification"] = {{"type", "Assumption"}, {"name", j.name}};
        } else {
          out["justification"] = {{"type", "Smoothing"},
                                  {"crossing", j.crossing},
                                  {"child0", certificate_to_json(j.child0)},
                                  {"child1", certificate_to_json(j.child1)}};
        }
      },
      n.justification);
  return out;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    auto node = std::make_shared<CertificateNode>();
    node->key = j.at("key").get<std::string>();
    node->det = integer_from_json(j.at("det"));
    const std::string verdict = j.value("verdict", std::string("QA"));
    if (verdict != "QA" && verdict != "Unknown") throw ParseError("unknown verdict '" + verdict + "'");
    node->verdict = verdict == "QA" ? Verdict::QA : Verdict::Unknown;
    const auto& js = j.at("justification");
    const std::string type = js.at("type").get<std::string>();
    if (type == "Unknot") {
      node->justification = UnknotLeaf{};
    } else if (type == "AlternatingNonSplit") {
      node->justification = AlternatingLeaf{};
    } else if (type == "DatabaseHit") {
      node->justification = DatabaseHit{js.at("name").get<std::string>()};
    } else if (type == "Assumption") {
      node->justification = AssumptionHit{js.at("name").get<std::string>()};
    } else if (type == "Smoothing") {
      node->justification = SmoothingStep{js.at("crossing").get<int>(), certificate_from_json(js.at("child0")),
                                          certificate_from_json(js.at("child1"))};
    } else {
      throw ParseError("unknown justification type '" + type + "'");
    }
    return node;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate JSON: ") + e.what());
  }
}

namespace {

void render(const Certificate& c, const std::string& prefix, const std::string& label, std::ostringstream& os) {
  const CertificateNode& n = *c;
  os << prefix << label << "det " << n.det << "  " << n.key << "  ";
  std::visit(
      [&](const auto& j) {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, UnknotLeaf>) {
          os << "[unknot]\n";
        } else if constexpr (std::is_same_v<T, AlternatingLeaf>) {
          os << "[alternating, non-split]\n";
        } else if constexpr (std::is_same_v<T, DatabaseHit>) {
          os << "[database: " << j.name << "]\n";
        } else if constexpr (std::is_same_v<T, AssumptionHit>) {
          os << "[assumed: " << j.name << "]\n";
        } else {
          os << "[smooth crossing " << j.crossing << ": " << n.det << " = " << j.child0->det << " + " << j.child1->det
             << "]\n";
          render(j.child0, prefix + "  ", "0: ", os);
          render(j.child1, prefix + "  ", "1: ", os);
        }
      },
      n.justification);
}

}  // namespace

std::string render_certificate(const Certificate& certificate) {
  std::ostringstream os;
  if (certificate) render(certificate, "", "", os);
  return os.str();
}

}  // namespace qaslopes
