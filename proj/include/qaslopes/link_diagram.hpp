// Planar diagram codes and the combinatorics the certifier runs on: faces and
// checkerboard colouring, Goeritz determinants, crossing smoothings,
// Reidemeister I/II reduction and a relabelling-invariant diagram key.
//
// PD convention: X(a,b,c,d) lists the four edge labels counterclockwise,
// starting from the incoming under-strand, so (a,c) is the under-strand and
// (b,d) the over-strand. Crossingless components are counted separately as
// free loops since a PD code cannot carry them.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qaslopes/rational.hpp"

namespace qaslopes {

using Crossing = std::array<int, 4>;

struct PDCode {
  std::vector<Crossing> crossings;
  int free_loops = 0;

  /// `PD[X(a,b,c,d),...]`, followed by ` + U<k>` when k free loops exist.
  std::string str() const;
  friend bool operator==(const PDCode&, const PDCode&) = default;
};

/// Accepts `PD[X(a,b,c,d), ...]` with an optional `+ Uk` suffix, a JSON list
/// of 4-tuples, or `{"crossings": [[a,b,c,d], ...], "free_loops": k}`.
PDCode parse_pd_code(std::string_view text);

/// Rotates crossings so that every under-strand reads incoming first along a
/// consistent orientation of each component (keeping the given orientation
/// where it is already consistent), then relabels edges 1..2n in order of
/// appearance.
PDCode normalize_pd(const PDCode& pd);

/// Crossing index and resolution. Resolution 0 joins a-b and c-d (A-type,
/// the incoming under-strand turns to its counterclockwise neighbour);
/// resolution 1 joins a-d and b-c.
struct SmoothingSite {
  int crossing = 0;
  int resolution = 0;
};

class LinkDiagram {
 public:
  /// Validates label multiplicity, planarity (faces close up and satisfy
  /// Euler's formula on each piece) and the checkerboard colouring.
  explicit LinkDiagram(PDCode pd);

  const PDCode& pd() const { return pd_; }
  int crossing_count() const { return static_cast<int>(pd_.crossings.size()); }
  int free_loops() const { return pd_.free_loops; }
  int components() const { return components_; }

  /// Connected pieces of the crossing/edge incidence graph, not counting free loops.
  int pieces() const { return pieces_; }
  int piece_of(int crossing) const { return piece_[crossing]; }

  /// More than one piece once free loops are counted as pieces.
  bool is_split_diagram() const;

  int face_count() const { return static_cast<int>(faces_.size()); }
  /// Corners as (crossing * 4 + i); corner i sits between positions i and i+1.
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_of_corner(int crossing, int corner) const { return corner_face_[crossing * 4 + corner]; }
  int face_color(int face) const { return face_color_[face]; }

  /// Dart (crossing * 4 + position) at the other end of the edge.
  int mate(int dart) const { return mate_[dart]; }
  int label(int dart) const { return pd_.crossings[dart / 4][dart % 4]; }

  std::string str() const { return pd_.str(); }

 private:
  PDCode pd_;
  std::vector<int> mate_;
  std::vector<int> corner_face_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_color_;
  std::vector<int> piece_;
  int pieces_ = 0;
  int components_ = 0;
};

LinkDiagram parse_pd(std::string_view text);

/// |det| of the reduced Goeritz matrix of the faces of colour `color`; 0 for
/// diagrammatically split diagrams, 1 for the crossingless unknot.
BigInt determinant(const LinkDiagram& diagram, int color = 0);

/// The Goeritz matrix itself (before deleting a row and column), indexed by
/// the faces of colour `color` in face order. Exposed for inspection.
std::vector<std::vector<BigInt>> goeritz_matrix(const LinkDiagram& diagram, int color = 0);

/// Replaces one crossing by its resolution; edges are relabelled and the
/// orientation renormalized. Throws DomainError for an invalid site.
LinkDiagram smooth(const LinkDiagram& diagram, const SmoothingSite& site);

/// Reidemeister I and II removals until none applies. Sites are taken in
/// canonical order so the result depends only on the diagram, not its labels.
LinkDiagram reduce(const LinkDiagram& diagram);

/// Every edge runs from an over-crossing to an under-crossing.
bool is_alternating(const LinkDiagram& diagram);

/// One non-split piece with at least one crossing and no free loops.
bool is_connected_nonsplit(const LinkDiagram& diagram);

/// A PD string that is identical for diagrams differing only by edge labels,
/// crossing order or strand orientations. It parses back to an equivalent
/// diagram. Mirror images get different keys.
std::string canonical_form(const LinkDiagram& diagram);

/// The diagram spelled by its canonical key.
LinkDiagram canonical_diagram(const LinkDiagram& diagram);

}  // namespace qaslopes
