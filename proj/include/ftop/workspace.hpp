#pragma once

// Line-oriented workspace documents:
//
//   # comment
//   frame C3
//     elements bot m top
//     leq bot m
//     leq m top
//   end
//   system sierpinski            crisp sierpinski_sat        object A
//     frame C3                     frame C3                    points u
//     points p q                   points p q                  opens x
//     alpha p m 1                  sat p m                     alpha u x 0.4
//     ...                          ...                       end
//   end                          end
//   morphism m
//     source A
//     target B
//     f u v
//     g y x
//   end
//
// A JSON document with the same schema ({"frames": {...}, "systems": ...})
// is accepted as well. Frames are validated on load; system axioms and
// morphism conditions are checked only when a command asks for them.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ftop/degree.hpp"
#include "ftop/dialectica.hpp"
#include "ftop/error.hpp"
#include "ftop/frame.hpp"
#include "ftop/topsys.hpp"

namespace ftop {

using NamePairs = std::vector<std::pair<std::string, std::string>>;

struct SystemDecl {
  std::string frame;
  std::vector<std::string> points;
  FuzzyRelation alpha;  // points x frame elements, frame element order
  friend bool operator==(const SystemDecl&, const SystemDecl&) = default;
};

struct CrispDecl {
  std::string frame;
  std::vector<std::string> points;
  NamePairs sat;
  friend bool operator==(const CrispDecl&, const CrispDecl&) = default;
};

struct MorphismDecl {
  std::string source;
  std::string target;
  NamePairs f;  // source point -> target point
  NamePairs g;  // target open -> source open
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct Workspace {
  std::map<std::string, FiniteFrame> frames;
  std::map<std::string, SystemDecl> systems;
  std::map<std::string, CrispDecl> crisp;
  std::map<std::string, DialObject> objects;
  std::map<std::string, MorphismDecl> morphisms;

  friend bool operator==(const Workspace&, const Workspace&) = default;

  const FiniteFrame& frame(const std::string& name) const {
    auto it = frames.find(name);
    if (it == frames.end()) throw Error(ErrorKind::UnknownReference, "name=" + name);
    return it->second;
  }

  /// The system as declared; axioms not checked.
  FuzzyTopSystem system(const std::string& name) const {
    auto it = systems.find(name);
    if (it == systems.end()) throw Error(ErrorKind::UnknownReference, "name=" + name);
    return FuzzyTopSystem{it->second.points, frame(it->second.frame), it->second.alpha};
  }

  /// Object by name; a system name yields its underlying Dial object.
  DialObject object(const std::string& name) const {
    if (auto it = objects.find(name); it != objects.end()) return it->second;
    if (systems.contains(name)) return system(name).dial();
    throw Error(ErrorKind::UnknownReference, "name=" + name);
  }

  /// Resolves and verifies a declared morphism. Throws NotTotal or
  /// ConditionViolated.
  DialMorphism morphism(const std::string& name) const {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) throw Error(ErrorKind::UnknownReference, "name=" + name);
    const auto& decl = it->second;
    const auto src = std::make_shared<const DialObject>(object(decl.source));
    const auto tgt = std::make_shared<const DialObject>(object(decl.target));
    const auto table = [](const NamePairs& pairs, const std::vector<std::string>& dom,
                          const std::vector<std::string>& cod, const char* which) {
      std::vector<std::size_t> out(dom.size(), cod.size());
      for (const auto& [from, to] : pairs) {
        const auto i = std::find(dom.begin(), dom.end(), from) - dom.begin();
        const auto j = std::find(cod.begin(), cod.end(), to) - cod.begin();
        if (out[static_cast<std::size_t>(i)] != cod.size())
          throw Error(ErrorKind::NotTotal, std::string("map=") + which + " duplicate=" + from);
        out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(j);
      }
      for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] == cod.size()) throw Error(ErrorKind::NotTotal, std::string("map=") + which + " missing=" + dom[i]);
      return out;
    };
    return verify_morphism(src, tgt, table(decl.f, src->points, tgt->points, "f"),
                           table(decl.g, tgt->opens, src->opens, "g"));
  }
};

/// Adds a system and its frame (named `<name>.frame` unless that frame is
/// already present under some name with identical structure).
inline void add_system(Workspace& ws, const std::string& name, const FuzzyTopSystem& s) {
  std::string frame_name;
  for (const auto& [n, f] : ws.frames)
    if (f == s.frame) frame_name = n;
  if (frame_name.empty()) {
    frame_name = name + ".frame";
    ws.frames.insert_or_assign(frame_name, s.frame);
  }
  ws.systems.insert_or_assign(name, SystemDecl{frame_name, s.points, s.alpha});
}

/// Adds a morphism together with its source and target objects.
inline void add_morphism(Workspace& ws, const std::string& name, const std::string& source_name,
                         const std::string& target_name, const DialMorphism& m) {
  ws.objects.insert_or_assign(source_name, m.source());
  ws.objects.insert_or_assign(target_name, m.target());
  MorphismDecl decl{source_name, target_name, {}, {}};
  for (std::size_t u = 0; u < m.f().size(); ++u) decl.f.emplace_back(m.source().points[u], m.target().points[m.f()[u]]);
  for (std::size_t y = 0; y < m.g().size(); ++y) decl.g.emplace_back(m.target().opens[y], m.source().opens[m.g()[y]]);
  ws.morphisms.insert_or_assign(name, std::move(decl));
}

namespace detail {

struct RawLine {
  std::string keyword;
  std::vector<std::string> args;
  std::size_t line = 0;
  std::vector<std::size_t> columns;  // of each arg, 1-based
};

struct RawBlock {
  std::string kind;
  std::string name;
  std::size_t line = 0;
  std::size_t end_line = 0;
  std::vector<RawLine> lines;
};

inline Error syntax(std::size_t line, std::size_t column, const std::string& message) {
  return Error(ErrorKind::SyntaxError,
               "line=" + std::to_string(line) + " column=" + std::to_string(column) + " message=" + message);
}

inline std::vector<RawBlock> lex_text(std::string_view text) {
  std::vector<RawBlock> blocks;
  std::optional<RawBlock> open;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string> tokens;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tokens.emplace_back(line.substr(i, j - i));
      cols.push_back(i + 1);
      i = j;
    }
    if (tokens.empty()) continue;

    if (!open) {
      static const std::set<std::string> kinds{"frame", "system", "crisp", "object", "morphism"};
      if (!kinds.contains(tokens[0])) throw syntax(line_no, cols[0], "expected-block-keyword got=" + tokens[0]);
      if (tokens.size() != 2) throw syntax(line_no, cols[0], "expected-block-name");
      open = RawBlock{tokens[0], tokens[1], line_no, 0, {}};
      continue;
    }
    if (tokens[0] == "end") {
      if (tokens.size() != 1) throw syntax(line_no, cols[1], "unexpected-token-after-end");
      open->end_line = line_no;
      blocks.push_back(std::move(*open));
      open.reset();
      continue;
    }
    RawLine raw{tokens[0], {tokens.begin() + 1, tokens.end()}, line_no, {cols.begin() + 1, cols.end()}};
    raw.columns.insert(raw.columns.begin(), cols[0]);
    open->lines.push_back(std::move(raw));
  }
  if (open) throw syntax(line_no, 1, "unterminated-block name=" + open->name);
  return blocks;
}

inline std::vector<RawBlock> lex_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, "line=0 column=" + std::to_string(e.byte) + " message=json");
  }
  const auto str = [](const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) return j.dump();
    throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=expected-string got=" + j.dump());
  };
  const auto add_list = [&](RawBlock& b, const char* keyword, const nlohmann::json& arr) {
    RawLine line{keyword, {}, 0, {}};
    for (const auto& e : arr) line.args.push_back(str(e));
    line.columns.assign(line.args.size() + 1, 0);
    b.lines.push_back(std::move(line));
  };
  const auto add_rows = [&](RawBlock& b, const char* keyword, const nlohmann::json& arr) {
    for (const auto& row : arr) {
      RawLine line{keyword, {}, 0, {}};
      for (const auto& e : row) line.args.push_back(str(e));
      line.columns.assign(line.args.size() + 1, 0);
      b.lines.push_back(std::move(line));
    }
  };
  const auto add_scalar = [&](RawBlock& b, const char* keyword, const nlohmann::json& v) {
    RawLine line{keyword, {str(v)}, 0, {0, 0}};
    b.lines.push_back(std::move(line));
  };
  if (!doc.is_object()) throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=expected-object");
  static const std::map<std::string, std::string> sections{
      {"frames", "frame"}, {"systems", "system"}, {"crisp", "crisp"}, {"objects", "object"}, {"morphisms", "morphism"}};
  std::vector<RawBlock> blocks;
  for (const auto& [section, body] : doc.items()) {
    auto kind = sections.find(section);
    if (kind == sections.end() || !body.is_object())
      throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=unknown-section got=" + section);
    for (const auto& [name, fields] : body.items()) {
      RawBlock b{kind->second, name, 0, 0, {}};
      for (const auto& [key, value] : fields.items()) {
        if (key == "elements" || key == "points" || key == "opens")
          add_list(b, key.c_str(), value);
        else if (key == "leq" || key == "alpha" || key == "sat" || key == "f" || key == "g")
          add_rows(b, key.c_str(), value);
        else if (key == "frame" || key == "source" || key == "target")
          add_scalar(b, key.c_str(), value);
        else
          throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=unknown-field got=" + key);
      }
      blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

struct BlockReader {
  const RawBlock& block;

  static const std::set<std::string>& allowed(const std::string& kind) {
    static const std::map<std::string, std::set<std::string>> table{
        {"frame", {"elements", "leq"}},
        {"system", {"frame", "points", "alpha"}},
        {"crisp", {"frame", "points", "sat"}},
        {"object", {"points", "opens", "alpha"}},
        {"morphism", {"source", "target", "f", "g"}},
    };
    return table.at(kind);
  }

  void check_keywords() const {
    for (const auto& l : block.lines)
      if (!allowed(block.kind).contains(l.keyword))
        throw syntax(l.line, l.columns[0], "unknown-keyword got=" + l.keyword + " block=" + block.kind);
  }

  std::vector<std::string> list(const char* keyword) const {
    std::vector<std::string> out;
    for (const auto& l : block.lines)
      if (l.keyword == keyword) out.insert(out.end(), l.args.begin(), l.args.end());
    return out;
  }

  std::vector<const RawLine*> rows(const char* keyword, std::size_t arity) const {
    std::vector<const RawLine*> out;
    for (const auto& l : block.lines)
      if (l.keyword == keyword) {
        if (l.args.size() != arity)
          throw syntax(l.line, l.columns[0], std::string("expected-") + std::to_string(arity) + "-arguments");
        out.push_back(&l);
      }
    return out;
  }

  std::string scalar(const char* keyword) const {
    std::optional<std::string> out;
    for (const auto& l : block.lines)
      if (l.keyword == keyword) {
        if (l.args.size() != 1 || out) throw syntax(l.line, l.columns[0], std::string("expected-single-") + keyword);
        out = l.args[0];
      }
    if (!out) throw syntax(block.line, 1, std::string("missing-") + keyword + " block=" + block.name);
    return *out;
  }
};

inline std::map<std::string, std::size_t> index_names(const std::vector<std::string>& names, const RawBlock& b) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!out.emplace(names[i], i).second) throw Error(ErrorKind::DuplicateName, "name=" + names[i] + " block=" + b.name);
  return out;
}

inline std::size_t lookup(const std::map<std::string, std::size_t>& index, const RawLine& l, std::size_t arg) {
  auto it = index.find(l.args[arg]);
  if (it == index.end())
    throw Error(ErrorKind::UnknownReference, "name=" + l.args[arg] + " line=" + std::to_string(l.line) +
                                                 " column=" + std::to_string(l.columns[arg + 1]));
  return it->second;
}

inline Degree degree_at(const RawLine& l, std::size_t arg) {
  try {
    return Degree::parse(l.args[arg]);
  } catch (const Error&) {
    throw Error(ErrorKind::InvalidDegree, "text=" + l.args[arg] + " line=" + std::to_string(l.line) +
                                              " column=" + std::to_string(l.columns[arg + 1]));
  }
}

inline FuzzyRelation read_table(const BlockReader& r, const std::vector<std::string>& rows,
                                const std::vector<std::string>& cols) {
  const auto ri = index_names(rows, r.block), ci = index_names(cols, r.block);
  FuzzyRelation rel(rows.size(), cols.size());
  std::vector<bool> seen(rows.size() * cols.size(), false);
  for (const auto* l : r.rows("alpha", 3)) {
    const auto u = lookup(ri, *l, 0), x = lookup(ci, *l, 1);
    if (seen[u * cols.size() + x]) throw syntax(l->line, l->columns[0], "duplicate-entry");
    seen[u * cols.size() + x] = true;
    rel.set(u, x, degree_at(*l, 2));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw syntax(r.block.end_line ? r.block.end_line : r.block.line, 1,
                   "missing-entry point=" + rows[i / cols.size()] + " open=" + cols[i % cols.size()]);
  return rel;
}

inline Workspace resolve(const std::vector<RawBlock>& blocks) {
  Workspace ws;
  std::set<std::pair<std::string, std::string>> names;
  for (const auto& b : blocks) {
    BlockReader(b).check_keywords();
    if (!names.emplace(b.kind, b.name).second)
      throw Error(ErrorKind::DuplicateName, "name=" + b.name + " kind=" + b.kind);
  }
  for (const auto& b : blocks) {
    if (b.kind != "frame") continue;
    BlockReader r{b};
    NamePairs pairs;
    for (const auto* l : r.rows("leq", 2)) pairs.emplace_back(l->args[0], l->args[1]);
    try {
      ws.frames.emplace(b.name, validate_frame(r.list("elements"), pairs));
    } catch (const Error& e) {
      throw Error(e.kind(), e.witness() + " frame=" + b.name);
    }
  }
  const auto frame_of = [&](const BlockReader& r) -> const FiniteFrame& {
    const auto name = r.scalar("frame");
    auto it = ws.frames.find(name);
    if (it == ws.frames.end()) throw Error(ErrorKind::UnknownReference, "name=" + name + " block=" + r.block.name);
    return it->second;
  };
  for (const auto& b : blocks) {
    BlockReader r{b};
    if (b.kind == "system") {
      const auto& frame = frame_of(r);
      auto points = r.list("points");
      auto alpha = read_table(r, points, frame.names());
      ws.systems.emplace(b.name, SystemDecl{r.scalar("frame"), std::move(points), std::move(alpha)});
    } else if (b.kind == "crisp") {
      const auto& frame = frame_of(r);
      auto points = r.list("points");
      const auto pi = index_names(points, b), fi = index_names(frame.names(), b);
      NamePairs sat;
      for (const auto* l : r.rows("sat", 2)) {
        lookup(pi, *l, 0);
        lookup(fi, *l, 1);
        sat.emplace_back(l->args[0], l->args[1]);
      }
      ws.crisp.emplace(b.name, CrispDecl{r.scalar("frame"), std::move(points), std::move(sat)});
    } else if (b.kind == "object") {
      auto points = r.list("points"), opens = r.list("opens");
      auto alpha = read_table(r, points, opens);
      ws.objects.emplace(b.name, DialObject{std::move(points), std::move(opens), std::move(alpha)});
    }
  }
  for (const auto& b : blocks) {
    if (b.kind != "morphism") continue;
    BlockReader r{b};
    MorphismDecl decl{r.scalar("source"), r.scalar("target"), {}, {}};
    DialObject src, tgt;
    try {
      src = ws.object(decl.source);
      tgt = ws.object(decl.target);
    } catch (const Error& e) {
      throw Error(e.kind(), e.witness() + " block=" + b.name);
    }
    const auto sp = index_names(src.points, b), so = index_names(src.opens, b);
    const auto tp = index_names(tgt.points, b), to = index_names(tgt.opens, b);
    for (const auto* l : r.rows("f", 2)) {
      lookup(sp, *l, 0);
      lookup(tp, *l, 1);
      decl.f.emplace_back(l->args[0], l->args[1]);
    }
    for (const auto* l : r.rows("g", 2)) {
      lookup(to, *l, 0);
      lookup(so, *l, 1);
      decl.g.emplace_back(l->args[0], l->args[1]);
    }
    ws.morphisms.emplace(b.name, std::move(decl));
  }
  return ws;
}

}  // namespace detail

/// Parses a text or JSON workspace document. Throws SyntaxError (with line
/// and column), UnknownReference, DuplicateName, InvalidDegree, or the frame
/// diagnostics of validate_frame for an invalid frame block.
inline Workspace parse_workspace(std::string_view document) {
  const auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && document[first] == '{')
    return detail::resolve(detail::lex_json(document));
  return detail::resolve(detail::lex_text(document));
}

inline Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnknownReference, "file=" + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_workspace(buf.str());
}

namespace detail {

inline void emit_list(std::ostream& os, const char* keyword, const std::vector<std::string>& items) {
  os << "  " << keyword;
  for (const auto& i : items) os << ' ' << i;
  os << '\n';
}

}  // namespace detail

/// Canonical text form; parse_workspace(emit_workspace(ws)) == ws.
inline std::string emit_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& [name, f] : ws.frames) {
    os << "frame " << name << '\n';
    detail::emit_list(os, "elements", f.names());
    for (auto [a, b] : f.covering_pairs()) os << "  leq " << f.name(a) << ' ' << f.name(b) << '\n';
    os << "end\n\n";
  }
  for (const auto& [name, s] : ws.systems) {
    const auto& f = ws.frame(s.frame);
    os << "system " << name << "\n  frame " << s.frame << '\n';
    detail::emit_list(os, "points", s.points);
    for (std::size_t u = 0; u < s.points.size(); ++u)
      for (Element x = 0; x < f.size(); ++x) os << "  alpha " << s.points[u] << ' ' << f.name(x) << ' ' << s.alpha.at(u, x) << '\n';
    os << "end\n\n";
  }
  for (const auto& [name, c] : ws.crisp) {
    os << "crisp " << name << "\n  frame " << c.frame << '\n';
    detail::emit_list(os, "points", c.points);
    for (const auto& [p, x] : c.sat) os << "  sat " << p << ' ' << x << '\n';
    os << "end\n\n";
  }
  for (const auto& [name, o] : ws.objects) {
    os << "object " << name << '\n';
    detail::emit_list(os, "points", o.points);
    detail::emit_list(os, "opens", o.opens);
    for (std::size_t u = 0; u < o.points.size(); ++u)
      for (std::size_t x = 0; x < o.opens.size(); ++x)
        os << "  alpha " << o.points[u] << ' ' << o.opens[x] << ' ' << o.alpha.at(u, x) << '\n';
    os << "end\n\n";
  }
  for (const auto& [name, m] : ws.morphisms) {
    os << "morphism " << name << "\n  source " << m.source << "\n  target " << m.target << '\n';
    for (const auto& [a, b] : m.f) os << "  f " << a << ' ' << b << '\n';
    for (const auto& [a, b] : m.g) os << "  g " << a << ' ' << b << '\n';
    os << "end\n\n";
  }
  return os.str();
}

}  // namespace ftop
