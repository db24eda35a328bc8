#include "d1lc/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace d1lc {

namespace {

// string hash for palette interning: FNV over the color words
struct VecHash {
  size_t operator()(const std::vector<int32_t>* p) const {
    uint64_t h = 1469598103934665603ull;
    for (int32_t c : *p) {
      h ^= uint64_t(uint32_t(c));
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};
struct VecEq {
  bool operator()(const std::vector<int32_t>* a,
                  const std::vector<int32_t>* b) const {
    return *a == *b;
  }
};

[[noreturn]] void fail_line(int64_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

void D1lcInstance::intern() {
  std::unordered_map<const std::vector<int32_t>*, int32_t, VecHash, VecEq> seen;
  palette_id.assign(palettes.size(), -1);
  int32_t next = 0;
  for (size_t v = 0; v < palettes.size(); ++v) {
    auto [it, inserted] = seen.emplace(&palettes[v], next);
    if (inserted) ++next;
    palette_id[v] = it->second;
  }
  distinct_palettes = next;
}

void D1lcInstance::validate_shape() const {
  if (int64_t(palettes.size()) != graph.n()) {
    throw ParseError("palette count does not match node count");
  }
  for (int32_t v = 0; v < graph.n(); ++v) {
    const auto& p = palettes[size_t(v)];
    if (!std::is_sorted(p.begin(), p.end())) {
      throw ParseError("palette of node " + std::to_string(v) + " not sorted");
    }
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) {
      throw ParseError("palette of node " + std::to_string(v) + " has duplicates");
    }
    if (!p.empty() && p.front() < 0) {
      throw ParseError("palette of node " + std::to_string(v) + " has negative color");
    }
  }
}

bool D1lcInstance::deg_plus_one(std::string* why) const {
  for (int32_t v = 0; v < graph.n(); ++v) {
    if (int64_t(palettes[size_t(v)].size()) < int64_t(graph.degree(v)) + 1) {
      if (why) {
        *why = "node " + std::to_string(v) + " has palette size " +
               std::to_string(palettes[size_t(v)].size()) + " < degree+1 = " +
               std::to_string(graph.degree(v) + 1);
      }
      return false;
    }
  }
  return true;
}

void D1lcInstance::require_deg_plus_one() const {
  std::string why;
  if (!deg_plus_one(&why)) throw ParseError(why);
}

D1lcInstance make_instance(Graph g, std::vector<std::vector<int32_t>> palettes,
                           bool require_d1lc) {
  D1lcInstance inst;
  inst.graph = std::move(g);
  inst.palettes = std::move(palettes);
  for (auto& p : inst.palettes) std::sort(p.begin(), p.end());
  inst.validate_shape();
  if (require_d1lc) inst.require_deg_plus_one();
  inst.intern();
  return inst;
}

D1lcInstance load_instance(std::istream& in, bool require_d1lc) {
  int64_t lno = 0;
  std::string raw;
  int64_t n = -1, m = -1;
  std::vector<std::vector<int32_t>> palettes;
  std::vector<char> seen;
  std::vector<std::pair<int32_t, int32_t>> edges;
  while (std::getline(in, raw)) {
    ++lno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;  // blank or comment-only
    if (kw == "d1lc") {
      if (n >= 0) fail_line(lno, "duplicate header");
      if (!(ls >> n >> m) || n < 0 || m < 0) fail_line(lno, "bad header");
      if (ls >> kw) fail_line(lno, "trailing tokens after header");
      palettes.assign(size_t(n), {});
      seen.assign(size_t(n), 0);
      edges.reserve(size_t(m));
    } else if (kw == "node") {
      if (n < 0) fail_line(lno, "node before header");
      int64_t id;
      if (!(ls >> id) || id < 0 || id >= n) fail_line(lno, "bad node id");
      if (seen[size_t(id)]) fail_line(lno, "duplicate node " + std::to_string(id));
      seen[size_t(id)] = 1;
      int64_t c;
      auto& pal = palettes[size_t(id)];
      while (ls >> c) {
        if (c < 0 || c > INT32_MAX) fail_line(lno, "color out of range");
        pal.push_back(int32_t(c));
      }
      if (!ls.eof()) fail_line(lno, "bad color token");
      std::sort(pal.begin(), pal.end());
      if (std::adjacent_find(pal.begin(), pal.end()) != pal.end()) {
        fail_line(lno, "duplicate color in palette of node " + std::to_string(id));
      }
    } else if (kw == "edge") {
      if (n < 0) fail_line(lno, "edge before header");
      int64_t u, v;
      if (!(ls >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
        fail_line(lno, "bad edge endpoints");
      }
      if (ls >> kw) fail_line(lno, "trailing tokens after edge");
      edges.emplace_back(int32_t(u), int32_t(v));
    } else {
      fail_line(lno, "unknown directive '" + kw + "'");
    }
  }
  if (n < 0) throw ParseError("missing 'd1lc <n> <m>' header");
  if (int64_t(edges.size()) != m) {
    throw ParseError("header claims " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  for (int64_t v = 0; v < n; ++v) {
    if (!seen[size_t(v)]) {
      throw ParseError("missing node line for node " + std::to_string(v));
    }
  }
  D1lcInstance inst;
  inst.graph = Graph::from_edges(int32_t(n), edges);
  inst.palettes = std::move(palettes);
  inst.validate_shape();
  if (require_d1lc) inst.require_deg_plus_one();
  inst.intern();
  return inst;
}

D1lcInstance load_instance_file(const std::string& path, bool require_d1lc) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_instance(in, require_d1lc);
}

void save_instance(std::ostream& out, const D1lcInstance& inst) {
  out << "d1lc " << inst.graph.n() << " " << inst.graph.m() << "\n";
  for (int32_t v = 0; v < inst.graph.n(); ++v) {
    out << "node " << v;
    for (int32_t c : inst.palettes[size_t(v)]) out << " " << c;
    out << "\n";
  }
  for (auto [u, v] : inst.graph.edge_list()) {
    out << "edge " << u << " " << v << "\n";
  }
}

void save_instance_file(const std::string& path, const D1lcInstance& inst) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  save_instance(out, inst);
}

std::string instance_to_string(const D1lcInstance& inst) {
  std::ostringstream out;
  save_instance(out, inst);
  return out.str();
}

}  // namespace d1lc
