#pragma once
// A list-coloring instance: a graph plus one palette per node. The normal
// case is (deg+1)-list-coloring, where every palette strictly exceeds the
// node's degree; the sparsified conflict instances drop that guarantee, so
// the invariant is checked on demand rather than baked into the type.
//
// Text format, one directive per line, '#' starts a comment:
//   d1lc <n> <m>
//   node <id> <color>...
//   edge <u> <v>
// Canonical form lists nodes 0..n-1 in order with sorted palettes, then
// edges with u < v sorted lexicographically. save() always emits canonical
// form, so canonical files round-trip byte for byte.

#include "d1lc/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace d1lc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct D1lcInstance {
  Graph graph;
  std::vector<std::vector<int32_t>> palettes;  // sorted, distinct, per node

  // Interned palette ids: nodes with equal palettes share an id. Filled by
  // intern(); loaders call it. distinct_palettes counts the id range.
  std::vector<int32_t> palette_id;
  int32_t distinct_palettes = 0;

  void intern();

  bool deg_plus_one(std::string* why = nullptr) const;
  void require_deg_plus_one() const;  // throws ParseError naming an offender

  // Structural sanity independent of the deg+1 property: palette vectors
  // sorted and duplicate-free, non-negative colors, sizes match the graph.
  void validate_shape() const;
};

D1lcInstance make_instance(Graph g, std::vector<std::vector<int32_t>> palettes,
                           bool require_d1lc = true);

D1lcInstance load_instance(std::istream& in, bool require_d1lc = true);
D1lcInstance load_instance_file(const std::string& path, bool require_d1lc = true);
void save_instance(std::ostream& out, const D1lcInstance& inst);
void save_instance_file(const std::string& path, const D1lcInstance& inst);
std::string instance_to_string(const D1lcInstance& inst);

}  // namespace d1lc
