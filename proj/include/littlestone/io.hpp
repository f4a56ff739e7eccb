//
// Copyright 2026 The Littlestone Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/learners.hpp"
#include "littlestone/online.hpp"
#include "littlestone/stability.hpp"

namespace littlestone::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of element `index` of the array stored under top-level `key`, or of
// the key itself when the element cannot be found. 0 when the key is absent.
inline std::size_t locate(std::string_view text, std::string_view key, std::optional<std::size_t> index = {}) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const std::size_t at = text.find(quoted);
  if (at == std::string_view::npos) return 0;
  if (!index) return line_at(text, at);
  std::size_t i = text.find('[', at);
  if (i == std::string_view::npos) return line_at(text, at);
  int depth = 0;
  std::size_t element = 0;
  bool in_string = false, fresh = true;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (depth == 1 && fresh && !std::isspace(static_cast<unsigned char>(ch)) && ch != ',') {
      if (element == *index) return line_at(text, i);
      fresh = false;
    }
    if (ch == '"') in_string = true;
    else if (ch == '[' || ch == '{') ++depth;
    else if (ch == ']' || ch == '}') {
      if (--depth == 0) break;
    } else if (ch == ',' && depth == 1) {
      ++element;
      fresh = true;
    }
  }
  return line_at(text, at);
}

inline Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1), "");
  }
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("top level must be a JSON object", 1, "");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", 1, key);
  return *it;
}

inline bool bit_of(const Json& v, const std::string& path, std::size_t line) {
  if (v.is_number_integer() && (v.get<std::int64_t>() == 0 || v.get<std::int64_t>() == 1)) return v.get<std::int64_t>() == 1;
  if (v.is_boolean()) return v.get<bool>();
  throw ParseError("entry must be 0 or 1", line, path);
}

inline std::size_t index_of(const Json& v, const std::string& path, std::size_t line) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ParseError("expected a nonnegative integer", line, path);
  return v.get<std::size_t>();
}

inline Hypothesis bits_of(const Json& row, std::size_t m, const std::string& path,
                          std::size_t line) {
  if (!row.is_array()) throw ParseError("hypothesis must be an array of 0/1", line, path);
  if (row.size() != m) {
    throw ParseError("row length " + std::to_string(row.size()) + " does not match domain size " + std::to_string(m),
                     line, path);
  }
  Hypothesis h(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (bit_of(row[i], path + "[" + std::to_string(i) + "]", line)) h.set(i);
  }
  return h;
}

inline Json bits_json(const Hypothesis& h) {
  Json a = Json::array();
  for (std::size_t i = 0; i < h.size(); ++i) a.push_back(h.test(i) ? 1 : 0);
  return a;
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Concept classes

inline ConceptClass read_class(std::string_view text) {
  const Json j = detail::parse_text(text);
  const Json& dom = detail::field(j, "domain");
  const std::size_t dom_line = detail::locate(text, "domain");
  std::optional<Domain> domain;
  try {
    if (dom.is_number_integer() && dom.get<std::int64_t>() > 0) {
      domain.emplace(dom.get<std::size_t>());
    } else if (dom.is_array()) {
      std::vector<std::string> labels;
      for (const auto& v : dom) labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      domain.emplace(std::move(labels));
    } else {
      throw ParseError("domain must be a list of labels or a positive size", dom_line, "domain");
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), dom_line, "domain");
  }
  const Json& rows = detail::field(j, "hypotheses");
  if (!rows.is_array()) throw ParseError("hypotheses must be an array", detail::locate(text, "hypotheses"), "hypotheses");
  std::vector<Hypothesis> hs;
  std::vector<std::size_t> lines;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t line = detail::locate(text, "hypotheses", r);
    hs.push_back(detail::bits_of(rows[r], domain->size(), "hypotheses[" + std::to_string(r) + "]", line));
    lines.push_back(line);
  }
  for (std::size_t r = 0; r < hs.size(); ++r) {
    for (std::size_t s = 0; s < r; ++s) {
      if (hs[s] == hs[r]) {
        throw ParseError("duplicate hypothesis (same as row " + std::to_string(s) + ")", lines[r],
                         "hypotheses[" + std::to_string(r) + "]");
      }
    }
  }
  return ConceptClass(std::move(*domain), std::move(hs));
}

inline Json class_json(const ConceptClass& c) {
  Json j;
  Json dom = Json::array();
  for (std::size_t x = 0; x < c.domain_size(); ++x) dom.push_back(c.domain().label(x));
  j["domain"] = std::move(dom);
  Json rows = Json::array();
  for (const auto& h : c.hypotheses()) rows.push_back(detail::bits_json(h));
  j["hypotheses"] = std::move(rows);
  return j;
}

// One hypothesis per line, so diagnostics on re-read point at a row.
inline std::string write_class(const ConceptClass& c) {
  std::string out = "{\n  \"domain\": " + class_json(c)["domain"].dump() + ",\n  \"hypotheses\": [";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += (i == 0 ? "\n    " : ",\n    ") + detail::bits_json(c[i]).dump();
  }
  out += c.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Sequences and distributions

inline LabeledSequence read_sequence(std::string_view text, std::optional<std::size_t> domain_size = {}) {
  const Json j = detail::parse_text(text);
  const Json& items = detail::field(j, "items");
  if (!items.is_array()) throw ParseError("items must be an array", detail::locate(text, "items"), "items");
  LabeledSequence s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::size_t line = detail::locate(text, "items", i);
    const std::string path = "items[" + std::to_string(i) + "]";
    const Json& it = items[i];
    if (!it.is_array() || it.size() != 2) throw ParseError("item must be [point, label]", line, path);
    const std::size_t x = detail::index_of(it[0], path + "[0]", line);
    if (domain_size && x >= *domain_size) throw ParseError("point outside the domain", line, path + "[0]");
    s.push_back({x, detail::bit_of(it[1], path + "[1]", line)});
  }
  return s;
}

inline std::string write_sequence(const LabeledSequence& s) {
  Json items = Json::array();
  for (const auto& z : s) items.push_back(Json::array({z.point, z.label ? 1 : 0}));
  Json j;
  j["items"] = std::move(items);
  return j.dump() + "\n";
}

inline FiniteDistribution read_distribution(std::string_view text, std::optional<std::size_t> domain_size = {}) {
  const Json j = detail::parse_text(text);
  const Json& atoms = detail::field(j, "atoms");
  if (!atoms.is_array()) throw ParseError("atoms must be an array", detail::locate(text, "atoms"), "atoms");
  std::vector<FiniteDistribution::Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::size_t line = detail::locate(text, "atoms", i);
    const std::string path = "atoms[" + std::to_string(i) + "]";
    const Json& a = atoms[i];
    if (!a.is_array() || a.size() != 3 || !a[2].is_number()) {
      throw ParseError("atom must be [point, label, weight]", line, path);
    }
    const std::size_t x = detail::index_of(a[0], path + "[0]", line);
    if (domain_size && x >= *domain_size) throw ParseError("point outside the domain", line, path + "[0]");
    out.push_back({x, detail::bit_of(a[1], path + "[1]", line), a[2].get<double>()});
  }
  try {
    return FiniteDistribution(std::move(out));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), detail::locate(text, "atoms"), "atoms");
  }
}

inline std::string write_distribution(const FiniteDistribution& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms()) atoms.push_back(Json::array({a.point, a.label ? 1 : 0, a.weight}));
  Json j;
  j["atoms"] = std::move(atoms);
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------
// Certificates

inline Json tree_json(const MistakeTreeCert& t) {
  std::function<Json(std::size_t, std::size_t, std::size_t)> node = [&](std::size_t heap, std::size_t level,
                                                                        std::size_t branch) -> Json {
    if (level == t.depth) return Json{{"hypothesis", detail::bits_json(t.leaves[branch])}};
    Json j;
    j["point"] = t.nodes[heap];
    j["left"] = node(2 * heap + 1, level + 1, branch << 1);
    j["right"] = node(2 * heap + 2, level + 1, (branch << 1) | 1);
    return j;
  };
  return node(0, 0, 0);
}

namespace detail {
inline std::size_t tree_depth(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("tree node must be an object", 0, path);
  if (j.contains("hypothesis")) return 0;
  if (!j.contains("point") || !j.contains("left") || !j.contains("right")) {
    throw ParseError("internal node needs point, left and right", 0, path);
  }
  const std::size_t l = tree_depth(j["left"], path + ".left");
  const std::size_t r = tree_depth(j["right"], path + ".right");
  if (l != r) throw ParseError("tree is not complete (branches of different depth)", 0, path);
  if (l >= 30) throw ParseError("tree too deep", 0, path);
  return l + 1;
}
}  // namespace detail

// Left child is the 0 branch.
inline MistakeTreeCert read_tree(std::string_view text, std::size_t domain_size) {
  const Json j = detail::parse_text(text);
  MistakeTreeCert t;
  t.depth = detail::tree_depth(j, "$");
  t.nodes.assign((std::size_t{1} << t.depth) - 1, 0);
  t.leaves.assign(std::size_t{1} << t.depth, Hypothesis(domain_size));
  std::function<void(const Json&, std::size_t, std::size_t, std::size_t, const std::string&)> walk =
      [&](const Json& n, std::size_t heap, std::size_t level, std::size_t branch, const std::string& path) {
        if (level == t.depth) {
          t.leaves[branch] = detail::bits_of(n["hypothesis"], domain_size, path + ".hypothesis", 0);
          return;
        }
        t.nodes[heap] = detail::index_of(n["point"], path + ".point", 0);
        walk(n["left"], 2 * heap + 1, level + 1, branch << 1, path + ".left");
        walk(n["right"], 2 * heap + 2, level + 1, (branch << 1) | 1, path + ".right");
      };
  walk(j, 0, 0, 0, "$");
  return t;
}

inline Json half_graph_json(const HalfGraphCert& g) {
  Json hs = Json::array();
  for (const auto& h : g.hypotheses) hs.push_back(detail::bits_json(h));
  return Json{{"points", g.points}, {"hypotheses", std::move(hs)}};
}

inline HalfGraphCert read_half_graph(std::string_view text, std::size_t domain_size) {
  const Json j = detail::parse_text(text);
  HalfGraphCert g;
  const Json& pts = detail::field(j, "points");
  if (!pts.is_array()) throw ParseError("points must be an array", detail::locate(text, "points"), "points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    g.points.push_back(detail::index_of(pts[i], "points[" + std::to_string(i) + "]", detail::locate(text, "points")));
  }
  const Json& hs = detail::field(j, "hypotheses");
  if (!hs.is_array()) throw ParseError("hypotheses must be an array", detail::locate(text, "hypotheses"), "hypotheses");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    g.hypotheses.push_back(detail::bits_of(hs[i], domain_size, "hypotheses[" + std::to_string(i) + "]",
                                           detail::locate(text, "hypotheses", i)));
  }
  return g;
}

inline Json shattered_set_json(const ShatteredSetCert& s) {
  Json ws = Json::array();
  for (const auto& h : s.witnesses) ws.push_back(detail::bits_json(h));
  return Json{{"points", s.points}, {"witnesses", std::move(ws)}};
}

inline ShatteredSetCert read_shattered_set(std::string_view text, std::size_t domain_size) {
  const Json j = detail::parse_text(text);
  ShatteredSetCert s;
  const Json& pts = detail::field(j, "points");
  if (!pts.is_array()) throw ParseError("points must be an array", detail::locate(text, "points"), "points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s.points.push_back(detail::index_of(pts[i], "points[" + std::to_string(i) + "]", detail::locate(text, "points")));
  }
  const Json& ws = detail::field(j, "witnesses");
  if (!ws.is_array()) throw ParseError("witnesses must be an array", detail::locate(text, "witnesses"), "witnesses");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    s.witnesses.push_back(detail::bits_of(ws[i], domain_size, "witnesses[" + std::to_string(i) + "]",
                                          detail::locate(text, "witnesses", i)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Covers, graphs, traces

inline Json cover_json(const ExpertCover& c) {
  return Json{{"n", c.n}, {"d", c.d}, {"size", c.subsets.size()}, {"subsets", c.subsets}};
}

inline Graph read_graph(std::string_view text) {
  const Json j = detail::parse_text(text);
  const Json& n = detail::field(j, "n");
  const std::size_t k = detail::index_of(n, "n", detail::locate(text, "n"));
  const Json& adj = detail::field(j, "adj");
  if (!adj.is_array() || adj.size() != k) {
    throw ParseError("adj must have n rows", detail::locate(text, "adj"), "adj");
  }
  std::vector<std::vector<int>> m(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t line = detail::locate(text, "adj", i);
    const std::string path = "adj[" + std::to_string(i) + "]";
    if (!adj[i].is_array() || adj[i].size() != k) throw ParseError("row must have n entries", line, path);
    for (std::size_t jx = 0; jx < k; ++jx) {
      m[i].push_back(detail::bit_of(adj[i][jx], path + "[" + std::to_string(jx) + "]", line) ? 1 : 0);
    }
  }
  try {
    return Graph::from_matrix(m);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), detail::locate(text, "adj"), "adj");
  }
}

inline Json trace_json(const TraceRecord& r) {
  return Json{{"step", r.step},
              {"point", r.point},
              {"label", r.label ? 1 : 0},
              {"predicted", r.predicted ? 1 : 0},
              {"mistake", r.mistake},
              {"mind_change", r.mind_change},
              {"hypothesis", detail::bits_json(r.hypothesis)}};
}

inline std::string trace_lines(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const auto& r : trace) out += trace_json(r).dump() + "\n";
  return out;
}

inline Json bits_json(const Hypothesis& h) { return detail::bits_json(h); }

}  // namespace littlestone::io
