#include "qaslopes/link_diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "qaslopes/errors.hpp"
#include "scanner.hpp"

namespace qaslopes {

namespace {

constexpr int through(int dart) { return (dart & ~3) | ((dart + 2) & 3); }
constexpr int rotate(int dart, int k) { return (dart & ~3) | ((dart + k) & 3); }

class UnionFind {
 public:
  int find(int x) {
    auto [it, inserted] = parent_.try_emplace(x, x);
    if (it->second == x) return x;
    int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::map<int, int> parent_;
};

// Dart mates from labels; throws unless every label occurs exactly twice.
std::vector<int> compute_mates(const PDCode& pd) {
  std::map<int, std::vector<int>> where;
  for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
    for (int i = 0; i < 4; ++i) {
      int label = pd.crossings[c][i];
      if (label <= 0) throw ParseError("PD labels must be positive integers, got " + std::to_string(label));
      where[label].push_back(static_cast<int>(c) * 4 + i);
    }
  }
  std::vector<int> mate(pd.crossings.size() * 4, -1);
  for (const auto& [label, darts] : where) {
    if (darts.size() != 2) {
      throw ParseError("PD label " + std::to_string(label) + " occurs " + std::to_string(darts.size()) +
                       " times; every label must occur exactly twice");
    }
    mate[darts[0]] = darts[1];
    mate[darts[1]] = darts[0];
  }
  return mate;
}

PDCode relabel(const PDCode& pd) {
  std::map<int, int> fresh;
  PDCode out{pd.crossings, pd.free_loops};
  for (Crossing& x : out.crossings) {
    for (int& label : x) {
      auto [it, inserted] = fresh.try_emplace(label, static_cast<int>(fresh.size()) + 1);
      label = it->second;
    }
  }
  return out;
}

// Removes crossings after merging labels along strands; merged classes left
// with no occurrence become free loops.
PDCode splice(const PDCode& pd, const std::vector<int>& removed, UnionFind& uf) {
  std::vector<bool> drop(pd.crossings.size(), false);
  for (int c : removed) drop[c] = true;
  PDCode out;
  out.free_loops = pd.free_loops;
  std::map<int, int> occurrences;
  for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
    if (drop[c]) continue;
    Crossing x = pd.crossings[c];
    for (int& label : x) {
      label = uf.find(label);
      ++occurrences[label];
    }
    out.crossings.push_back(x);
  }
  std::vector<int> touched;
  for (int c : removed) {
    for (int label : pd.crossings[c]) touched.push_back(uf.find(label));
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (int root : touched) {
    if (!occurrences.contains(root)) ++out.free_loops;
  }
  return normalize_pd(out);
}

}  // namespace

std::string PDCode::str() const {
  std::ostringstream os;
  os << "PD[";
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    const Crossing& x = crossings[c];
    os << (c ? "," : "") << "X(" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")";
  }
  os << "]";
  if (free_loops > 0) os << " + U" << free_loops;
  return os.str();
}

PDCode parse_pd_code(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty PD input");
  PDCode pd;
  if (text[first] == '[' || text[first] == '{') {
    try {
      nlohmann::json j = nlohmann::json::parse(text);
      const nlohmann::json& list = j.is_object() ? j.at("crossings") : j;
      for (const auto& item : list) {
        if (!item.is_array() || item.size() != 4) throw ParseError("each crossing must be a 4-tuple");
        pd.crossings.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<int>(), item[3].get<int>()});
      }
      if (j.is_object() && j.contains("free_loops")) pd.free_loops = j.at("free_loops").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed PD JSON: ") + e.what());
    }
  } else {
    detail::Scanner sc(text);
    sc.expect("PD[");
    if (!sc.accept("]")) {
      do {
        sc.expect("X(");
        Crossing x{};
        for (int i = 0; i < 4; ++i) {
          if (i) sc.expect(",");
          x[i] = sc.integer().convert_to<int>();
        }
        sc.expect(")");
        pd.crossings.push_back(x);
      } while (sc.accept(","));
      sc.expect("]");
    }
    if (sc.accept("+")) {
      sc.expect("U");
      pd.free_loops = sc.integer().convert_to<int>();
    }
    if (!sc.done()) sc.fail("trailing input");
  }
  if (pd.free_loops < 0) throw ParseError("free loop count must be non-negative");
  if (pd.crossings.empty() && pd.free_loops == 0) throw ParseError("diagram has no components");
  return pd;
}

PDCode normalize_pd(const PDCode& pd) {
  const std::vector<int> mate = compute_mates(pd);
  const int darts = static_cast<int>(mate.size());
  std::vector<bool> seen(darts, false);
  std::vector<bool> flip(pd.crossings.size(), false);
  for (int start = 0; start < darts; ++start) {
    if (seen[start]) continue;
    // Walk one component leaving through `start`; record each under-passage
    // and whether it is entered at position 2.
    std::vector<std::pair<int, bool>> under;
    int out = start;
    do {
      seen[out] = seen[mate[out]] = true;
      int in = mate[out];
      if (in % 2 == 0) under.emplace_back(in / 4, in % 4 == 2);
      out = through(in);
    } while (out != start);
    auto wrong = std::count_if(under.begin(), under.end(), [](const auto& u) { return u.second; });
    const bool reverse = 2 * static_cast<std::size_t>(wrong) > under.size();
    for (const auto& [crossing, entered_at_two] : under) flip[crossing] = entered_at_two != reverse;
  }
  PDCode out{pd.crossings, pd.free_loops};
  for (std::size_t c = 0; c < out.crossings.size(); ++c) {
    if (flip[c]) {
      const Crossing& x = pd.crossings[c];
      out.crossings[c] = {x[2], x[3], x[0], x[1]};
    }
  }
  return relabel(out);
}

LinkDiagram::LinkDiagram(PDCode pd) : pd_(std::move(pd)) {
  if (pd_.free_loops < 0) throw ParseError("free loop count must be non-negative");
  if (pd_.crossings.empty() && pd_.free_loops == 0) throw ParseError("diagram has no components");
  mate_ = compute_mates(pd_);
  const int n = crossing_count();
  const int darts = 4 * n;

  // Faces: corner (c,i) continues along the edge at position i+1 to the
  // corner at the far end of that edge.
  corner_face_.assign(darts, -1);
  for (int corner = 0; corner < darts; ++corner) {
    if (corner_face_[corner] >= 0) continue;
    const int face = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int at = corner;
    while (corner_face_[at] < 0) {
      corner_face_[at] = face;
      faces_.back().push_back(at);
      at = mate_[rotate(at, 1)];
    }
    if (at != corner) throw ParseError("PD code is not planar: a face does not close up");
  }

  // Pieces of the incidence graph, then Euler's formula on each.
  piece_.assign(n, -1);
  for (int c = 0; c < n; ++c) {
    if (piece_[c] >= 0) continue;
    std::queue<int> todo;
    todo.push(c);
    piece_[c] = pieces_;
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop();
      for (int i = 0; i < 4; ++i) {
        int y = mate_[4 * x + i] / 4;
        if (piece_[y] < 0) {
          piece_[y] = pieces_;
          todo.push(y);
        }
      }
    }
    ++pieces_;
  }
  std::vector<int> vertices(pieces_, 0), face_count(pieces_, 0);
  for (int c = 0; c < n; ++c) ++vertices[piece_[c]];
  for (const auto& f : faces_) ++face_count[piece_[f.front() / 4]];
  for (int p = 0; p < pieces_; ++p) {
    if (vertices[p] - 2 * vertices[p] + face_count[p] != 2) {
      throw ParseError("PD code is not planar: Euler characteristic " +
                       std::to_string(face_count[p] - vertices[p]) + " on a piece");
    }
  }

  // Checkerboard colouring: the corners on either side of an edge differ.
  face_color_.assign(faces_.size(), -1);
  for (std::size_t seed = 0; seed < faces_.size(); ++seed) {
    if (face_color_[seed] >= 0) continue;
    face_color_[seed] = 0;
    std::queue<int> todo;
    todo.push(static_cast<int>(seed));
    while (!todo.empty()) {
      int f = todo.front();
      todo.pop();
      for (int corner : faces_[f]) {
        for (int neighbour_corner : {rotate(corner, 1), rotate(corner, 3)}) {
          int g = corner_face_[neighbour_corner];
          if (face_color_[g] < 0) {
            face_color_[g] = 1 - face_color_[f];
            todo.push(g);
          } else if (face_color_[g] == face_color_[f]) {
            throw ParseError("PD code admits no checkerboard colouring");
          }
        }
      }
    }
  }

  // Components: strands continue straight through each crossing.
  std::vector<bool> seen(darts, false);
  for (int start = 0; start < darts; ++start) {
    if (seen[start]) continue;
    ++components_;
    int out = start;
    do {
      seen[out] = seen[mate_[out]] = true;
      out = through(mate_[out]);
    } while (out != start);
  }
  components_ += pd_.free_loops;
}

bool LinkDiagram::is_split_diagram() const {
  const int loops = pd_.free_loops;
  return pieces_ + loops > 1;
}

LinkDiagram parse_pd(std::string_view text) { return LinkDiagram(parse_pd_code(text)); }

std::vector<std::vector<BigInt>> goeritz_matrix(const LinkDiagram& diagram, int color) {
  if (color != 0 && color != 1) throw DomainError("face colour must be 0 or 1");
  std::vector<int> index(diagram.face_count(), -1);
  int size = 0;
  for (int f = 0; f < diagram.face_count(); ++f) {
    if (diagram.face_color(f) == color) index[f] = size++;
  }
  std::vector<std::vector<BigInt>> g(size, std::vector<BigInt>(size, BigInt(0)));
  for (int c = 0; c < diagram.crossing_count(); ++c) {
    // The coloured corners at a crossing are {0,2} or {1,3}; the two kinds
    // carry opposite Goeritz signs.
    const int first = diagram.face_color(diagram.face_of_corner(c, 0)) == color ? 0 : 1;
    const int sign = first == 0 ? 1 : -1;
    const int i = index[diagram.face_of_corner(c, first)];
    const int j = index[diagram.face_of_corner(c, first + 2)];
    if (i == j) continue;
    g[i][j] -= sign;
    g[j][i] -= sign;
    g[i][i] += sign;
    g[j][j] += sign;
  }
  return g;
}

namespace {

// Fraction-free Gaussian elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

BigInt determinant(const LinkDiagram& diagram, int color) {
  if (diagram.crossing_count() == 0) return diagram.free_loops() == 1 ? 1 : 0;
  if (diagram.is_split_diagram()) return 0;
  auto g = goeritz_matrix(diagram, color);
  if (g.empty()) return 1;
  g.pop_back();
  for (auto& row : g) row.pop_back();
  return abs(bareiss_determinant(std::move(g)));
}

LinkDiagram smooth(const LinkDiagram& diagram, const SmoothingSite& site) {
  if (site.crossing < 0 || site.crossing >= diagram.crossing_count()) {
    throw DomainError("no crossing " + std::to_string(site.crossing) + " in a diagram with " +
                      std::to_string(diagram.crossing_count()) + " crossings");
  }
  if (site.resolution != 0 && site.resolution != 1) throw DomainError("resolution must be 0 or 1");
  const Crossing& x = diagram.pd().crossings[site.crossing];
  UnionFind uf;
  if (site.resolution == 0) {
    uf.unite(x[0], x[1]);
    uf.unite(x[2], x[3]);
  } else {
    uf.unite(x[0], x[3]);
    uf.unite(x[1], x[2]);
  }
  return LinkDiagram(splice(diagram.pd(), {site.crossing}, uf));
}

namespace {

// Reidemeister I: an edge joining adjacent positions of one crossing.
bool remove_kink(const LinkDiagram& d, PDCode& out) {
  for (int c = 0; c < d.crossing_count(); ++c) {
    const Crossing& x = d.pd().crossings[c];
    for (int i = 0; i < 4; ++i) {
      if (x[i] != x[(i + 1) % 4]) continue;
      UnionFind uf;
      uf.unite(x[i], x[(i + 2) % 4]);
      uf.unite(x[i], x[(i + 3) % 4]);
      out = splice(d.pd(), {c}, uf);
      return true;
    }
  }
  return false;
}

// Reidemeister II: a bigon face whose two edges each pass over (or under) at
// both of its corners.
bool remove_bigon(const LinkDiagram& d, PDCode& out) {
  for (const auto& face : d.faces()) {
    if (face.size() != 2) continue;
    const int c1 = face[0] / 4, i1 = face[0] % 4;
    const int c2 = face[1] / 4, i2 = face[1] % 4;
    if (c1 == c2) continue;
    if ((i1 + 1) % 2 != i2 % 2) continue;  // clasp, not removable
    const Crossing& x1 = d.pd().crossings[c1];
    const Crossing& x2 = d.pd().crossings[c2];
    const int e = x1[(i1 + 1) % 4];
    const int f = x1[i1];
    UnionFind uf;
    uf.unite(x1[(i1 + 3) % 4], e);
    uf.unite(e, x2[(i2 + 2) % 4]);
    uf.unite(x1[(i1 + 2) % 4], f);
    uf.unite(f, x2[(i2 + 3) % 4]);
    out = splice(d.pd(), {c1, c2}, uf);
    return true;
  }
  return false;
}

}  // namespace

LinkDiagram reduce(const LinkDiagram& diagram) {
  LinkDiagram current = canonical_diagram(diagram);
  for (;;) {
    PDCode next;
    if (!remove_kink(current, next) && !remove_bigon(current, next)) return current;
    current = canonical_diagram(LinkDiagram(std::move(next)));
  }
}

bool is_alternating(const LinkDiagram& diagram) {
  for (int dart = 0; dart < 4 * diagram.crossing_count(); ++dart) {
    if ((dart + diagram.mate(dart)) % 2 == 0) return false;
  }
  return true;
}

bool is_connected_nonsplit(const LinkDiagram& diagram) {
  return diagram.crossing_count() > 0 && diagram.free_loops() == 0 && diagram.pieces() == 1;
}

namespace {

// Breadth-first spelling of one piece from a root crossing read from an
// even position. Later crossings are read from the even position at or just
// counterclockwise after the dart they are reached through.
std::vector<int> spell_piece(const LinkDiagram& d, int root, int root_start) {
  const int n = d.crossing_count();
  std::vector<int> start(n, -1);
  std::vector<int> order;
  std::queue<int> todo;
  start[root] = root_start;
  todo.push(root);
  while (!todo.empty()) {
    int c = todo.front();
    todo.pop();
    order.push_back(c);
    for (int k = 0; k < 4; ++k) {
      int m = d.mate(4 * c + (start[c] + k) % 4);
      int next = m / 4;
      if (start[next] < 0) {
        start[next] = (m % 4 % 2 == 0) ? m % 4 : (m % 4 + 1) % 4;
        todo.push(next);
      }
    }
  }
  std::map<int, int> number;
  std::vector<int> code;
  code.reserve(order.size() * 4);
  for (int c : order) {
    for (int k = 0; k < 4; ++k) {
      int label = d.pd().crossings[c][(start[c] + k) % 4];
      auto [it, inserted] = number.try_emplace(label, static_cast<int>(number.size()) + 1);
      code.push_back(it->second);
    }
  }
  return code;
}

}  // namespace

std::string canonical_form(const LinkDiagram& diagram) {
  std::vector<std::vector<int>> pieces(diagram.pieces());
  for (int c = 0; c < diagram.crossing_count(); ++c) {
    for (int s : {0, 2}) {
      std::vector<int> code = spell_piece(diagram, c, s);
      auto& best = pieces[diagram.piece_of(c)];
      if (best.empty() || code < best) best = std::move(code);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  PDCode key;
  key.free_loops = diagram.free_loops();
  int offset = 0;
  for (const auto& code : pieces) {
    for (std::size_t i = 0; i < code.size(); i += 4) {
      key.crossings.push_back({code[i] + offset, code[i + 1] + offset, code[i + 2] + offset, code[i + 3] + offset});
    }
    offset += static_cast<int>(code.size()) / 2;
  }
  return key.str();
}

LinkDiagram canonical_diagram(const LinkDiagram& diagram) { return parse_pd(canonical_form(diagram)); }

}  // namespace qaslopes
