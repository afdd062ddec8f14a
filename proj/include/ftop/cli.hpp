#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ftop/dialectica.hpp"
#include "ftop/error.hpp"
#include "ftop/oracle.hpp"
#include "ftop/tensor.hpp"
#include "ftop/topsys.hpp"
#include "ftop/workspace.hpp"

namespace ftop::cli {

struct Invocation {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> input;
  std::optional<std::string> out;
  oracle::InstanceBudget budget{};
  std::size_t tensor_bound = kDefaultTensorBound;
};

enum Exit : int { Success = 0, MathFailure = 1, UsageError = 2 };

/// Kinds that describe bad input or exhausted bounds rather than a failed
/// mathematical check.
inline bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownReference:
    case ErrorKind::DuplicateName:
    case ErrorKind::InvalidDegree:
    case ErrorKind::UnknownElement:
    case ErrorKind::SizeBoundExceeded:
    case ErrorKind::TooLargeToEnumerate:
    case ErrorKind::InvalidPrefix:
    case ErrorKind::StreamTooShort:
    case ErrorKind::NotAPoset:
    case ErrorKind::NotALattice:
    case ErrorKind::NotDistributive:
      return true;
    default:
      return false;
  }
}

inline std::string fail_line(std::string_view kind, std::string_view witness) {
  return "FAIL kind=" + std::string(kind) + " witness=" + std::string(witness);
}

namespace detail {

struct Expr {
  std::string op;  // empty for a plain name or path
  std::string atom;
  std::vector<Expr> args;
};

inline Expr parse_expr(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    if (text.empty()) throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=empty-argument");
    return Expr{{}, std::string(text), {}};
  }
  Expr e{std::string(text.substr(0, open)), {}, {}};
  const auto inner = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    const char c = i < inner.size() ? inner[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw Error(ErrorKind::SyntaxError, "line=0 column=" + std::to_string(open + 2 + i) + " message=unbalanced");
    if (c == ',' && depth == 0) {
      e.args.push_back(parse_expr(inner.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=unbalanced");
  if (e.args.size() != 2) throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=expected-two-arguments op=" + e.op);
  return e;
}

class Resolver {
 public:
  Resolver(const Workspace& ws, const Invocation& inv) : ws_(ws), inv_(inv) {}

  FuzzyTopSystem system(const Expr& e) const {
    if (e.op == "top-sum") return top_sum(system(e.args[0]), system(e.args[1])).system;
    if (e.op == "top-product") return top_product(system(e.args[0]), system(e.args[1]), inv_.tensor_bound).system;
    if (!e.op.empty()) throw Error(ErrorKind::UnknownReference, "operation=" + e.op + " expected=system");
    if (ws_.systems.contains(e.atom)) return ws_.system(e.atom);
    if (auto it = ws_.crisp.find(e.atom); it != ws_.crisp.end())
      return embed_crisp(it->second.points, ws_.frame(it->second.frame), it->second.sat);
    if (auto file = from_file(e.atom)) {
      if (file->systems.size() == 1) return file->system(file->systems.begin()->first);
      if (file->crisp.size() == 1 && file->systems.empty()) {
        const auto& c = file->crisp.begin()->second;
        return embed_crisp(c.points, file->frame(c.frame), c.sat);
      }
    }
    throw Error(ErrorKind::UnknownReference, "name=" + e.atom);
  }

  DialObject object(const Expr& e) const {
    using Builder = std::function<DialObject(const DialObject&, const DialObject&)>;
    static const std::map<std::string, Builder> ops{
        {"tensor", [](const DialObject& a, const DialObject& b) { return tensor_obj(a, b); }},
        {"hom", [](const DialObject& a, const DialObject& b) { return hom_obj(a, b); }},
        {"product", product_obj},
        {"coproduct", coproduct_obj},
    };
    if (auto it = ops.find(e.op); it != ops.end()) return it->second(object(e.args[0]), object(e.args[1]));
    if (!e.op.empty()) return system(e).dial();
    if (ws_.objects.contains(e.atom) || ws_.systems.contains(e.atom)) return ws_.object(e.atom);
    if (ws_.crisp.contains(e.atom)) return system(e).dial();
    if (auto file = from_file(e.atom)) {
      if (file->systems.size() == 1 && file->objects.empty()) return file->object(file->systems.begin()->first);
      if (file->objects.size() == 1 && file->systems.empty()) return file->objects.begin()->second;
    }
    throw Error(ErrorKind::UnknownReference, "name=" + e.atom);
  }

  std::optional<FiniteFrame> frame(const Expr& e) const {
    if (e.op == "frame-product") {
      auto x = frame(e.args[0]), y = frame(e.args[1]);
      if (x && y) return frame_product(*x, *y);
      return std::nullopt;
    }
    if (e.op == "frame-tensor") {
      auto x = frame(e.args[0]), y = frame(e.args[1]);
      if (x && y) return tensor_frame(*x, *y, inv_.tensor_bound).frame;
      return std::nullopt;
    }
    if (!e.op.empty()) return std::nullopt;
    if (auto it = ws_.frames.find(e.atom); it != ws_.frames.end()) return it->second;
    return std::nullopt;
  }

 private:
  std::optional<Workspace> from_file(const std::string& path) const {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
    return load_workspace(path);
  }

  const Workspace& ws_;
  const Invocation& inv_;
};

struct Outcome {
  int code = Success;
  std::string artifact;  // workspace text of a constructed value, if any
};

inline std::string report_line(const oracle::LawReport& r) {
  std::ostringstream os;
  os << (r.ok() ? "PASS" : "FAIL kind=LawFailure") << " law=" << r.law << " tried=" << r.tried
     << " failures=" << r.failures.size() << " elapsed=" << r.elapsed_seconds;
  return os.str();
}

inline void print_conditions(const ConditionReport& report, std::ostream& out) {
  const std::pair<const char*, const std::optional<SystemViolation>*> rows[] = {
      {"i", &report.condition_i}, {"ii", &report.condition_ii}, {"iii", &report.condition_iii}};
  for (const auto& [name, v] : rows) {
    if (*v)
      out << fail_line(to_string((*v)->kind), (*v)->witness) << '\n';
    else
      out << "PASS condition=" << name << '\n';
  }
}

inline std::string fuzzy_set_text(const FuzzySet& s) {
  std::string text = "{";
  for (std::size_t u = 0; u < s.universe.size(); ++u) text += (u ? "," : "") + s.universe[u] + ":" + s.membership[u].str();
  return text + "}";
}

inline std::string index_list(const std::vector<std::size_t>& v) {
  std::string text = "[";
  for (std::size_t i = 0; i < v.size(); ++i) text += (i ? "," : "") + std::to_string(v[i]);
  return text + "]";
}

inline void expect_args(const Invocation& inv, std::size_t n) {
  if (inv.args.size() != n)
    throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=expected-" + std::to_string(n) +
                                            "-arguments command=" + inv.command);
}

inline Outcome run_laws(const Invocation& inv, std::ostream& out) {
  const auto& budget = inv.budget;
  budget.validate();
  Outcome result;
  std::ostringstream full;
  const auto emit = [&](const oracle::LawReport& r) {
    out << report_line(r) << '\n';
    full << report_line(r) << '\n';
    for (const auto& f : r.failures) {
      out << fail_line("LawFailure", "law=" + r.law + " instance=" + std::to_string(f.instance) + " " + f.witness) << '\n';
      full << "  failure instance=" << f.instance << ' ' << f.witness << '\n';
    }
    for (const auto& o : r.observations) {
      out << "NOTE law=" << r.law << ' ' << o << '\n';
      full << "  note " << o << '\n';
    }
    if (!r.ok()) result.code = MathFailure;
  };

  emit(oracle::check_category_laws(budget));

  oracle::InstanceBudget small = budget;
  small.max_points = std::min<std::size_t>(budget.max_points, 2);
  small.max_opens = std::min<std::size_t>(budget.max_opens, 2);
  const std::size_t triples = std::min<std::size_t>(budget.instances, 50);
  oracle::LawReport adj{"monoidal-closure", 0, {}, {}, 0};
  oracle::LawReport prod{"product-universal", 0, {}, {}, 0};
  oracle::LawReport coprod{"coproduct-universal", 0, {}, {}, 0};
  const auto merge = [](oracle::LawReport& into, const oracle::LawReport& r) {
    into.tried += r.tried;
    into.failures.insert(into.failures.end(), r.failures.begin(), r.failures.end());
    into.elapsed_seconds += r.elapsed_seconds;
  };
  for (std::size_t i = 0; i < triples; ++i) {
    auto rng = oracle::instance_rng(budget.seed, i);
    const auto a = oracle::random_object(rng, small, "a", "x");
    const auto b = oracle::random_object(rng, small, "b", "y");
    const auto c = oracle::random_object(rng, small, "c", "z");
    merge(adj, oracle::check_adjunction(a, b, c, i));
    merge(prod, oracle::check_universal_property(oracle::UniversalKind::Product, a, b, c, {}, i));
    merge(coprod, oracle::check_universal_property(oracle::UniversalKind::Coproduct, a, b, c, {}, i));
  }
  for (auto* r : {&adj, &prod, &coprod})
    for (auto& f : r->failures) f.witness = "seed=" + std::to_string(budget.seed) + " " + f.witness;
  emit(adj);
  emit(prod);
  emit(coprod);

  auto fullness = oracle::fullness_search(oracle::crisp_systems(small));
  emit(fullness.law);
  for (const auto& c : fullness.counterexamples) {
    full << "  counterexample source=" << c.source << " target=" << c.target << " f=" << index_list(c.f)
         << " g=" << index_list(c.g) << ' ' << c.reason << '\n';
  }

  oracle::InstanceBudget extent_budget = small;
  extent_budget.max_opens = 4;
  const auto findings = oracle::search_extent_counterexamples(extent_budget);
  out << "NOTE law=extent-topology counterexamples=" << findings.size() << '\n';
  full << "NOTE law=extent-topology counterexamples=" << findings.size() << '\n';
  for (const auto& f : findings)
    full << "  finding frame=" << f.frame << " failure=" << f.report.failure << ' ' << f.report.witness
         << " missing=" << fuzzy_set_text(*f.report.missing) << '\n';
  result.artifact = full.str();
  return result;
}

inline Outcome dispatch(const Invocation& inv, const Workspace& ws, std::ostream& out) {
  const Resolver resolve(ws, inv);
  const auto& cmd = inv.command;
  const auto arg = [&](std::size_t i) { return parse_expr(inv.args[i]); };

  if (cmd == "validate") {
    expect_args(inv, 1);
    const auto& name = inv.args[0];
    if (ws.systems.contains(name)) {
      if (auto v = check_system(ws.system(name))) {
        out << fail_line(to_string(v->kind), v->witness) << '\n';
        return {MathFailure, {}};
      }
    } else if (ws.crisp.contains(name)) {
      resolve.system(arg(0));
    } else if (ws.morphisms.contains(name)) {
      ws.morphism(name);
    } else if (!ws.frames.contains(name) && !ws.objects.contains(name)) {
      throw Error(ErrorKind::UnknownReference, "name=" + name);
    }
    out << "PASS\n";
    return {};
  }

  if (cmd == "topsys-check") {
    expect_args(inv, 1);
    const auto report = check_conditions(resolve.system(arg(0)));
    print_conditions(report, out);
    return {report.pass() ? Success : MathFailure, {}};
  }

  if (cmd == "compose") {
    expect_args(inv, 2);
    const auto m1 = ws.morphism(inv.args[0]);
    const auto m2 = ws.morphism(inv.args[1]);
    const auto composite = compose(m1, m2);
    Workspace result;
    add_morphism(result, "compose(" + inv.args[0] + "," + inv.args[1] + ")", ws.morphisms.at(inv.args[0]).source,
                 ws.morphisms.at(inv.args[1]).target, composite);
    const auto text = emit_workspace(result);
    out << text << "PASS\n";
    return {Success, text};
  }

  if (cmd == "tensor" || cmd == "hom" || cmd == "product" || cmd == "coproduct") {
    expect_args(inv, 2);
    Workspace result;
    const std::string name = cmd + "(" + inv.args[0] + "," + inv.args[1] + ")";
    result.objects.emplace(name, resolve.object(parse_expr(name)));
    const auto text = emit_workspace(result);
    out << text << "PASS\n";
    return {Success, text};
  }

  if (cmd == "extent") {
    expect_args(inv, 2);
    const auto s = resolve.system(arg(0));
    const auto e = extent(s, s.frame.index_of(inv.args[1]));
    for (std::size_t u = 0; u < e.universe.size(); ++u) out << e.universe[u] << ' ' << e.membership[u] << '\n';
    out << "PASS\n";
    return {};
  }

  if (cmd == "topology-check") {
    expect_args(inv, 1);
    const auto s = resolve.system(arg(0));
    if (auto v = check_system(s)) {
      out << fail_line(to_string(v->kind), v->witness) << '\n';
      return {MathFailure, {}};
    }
    const auto report = extents_form_topology(s);
    if (!report.pass) {
      out << fail_line(report.failure, report.witness + " missing=" + fuzzy_set_text(*report.missing)) << '\n';
      return {MathFailure, {}};
    }
    out << "PASS extents=" << report.distinct_extents << '\n';
    return {};
  }

  if (cmd == "top-product" || cmd == "top-sum") {
    expect_args(inv, 2);
    const auto a = resolve.system(arg(0)), b = resolve.system(arg(1));
    const auto [system, report] = [&]() -> std::pair<FuzzyTopSystem, ConditionReport> {
      if (cmd == "top-sum") {
        auto r = top_sum(a, b);
        return {std::move(r.system), std::move(r.report)};
      }
      auto r = top_product(a, b, inv.tensor_bound);
      return {std::move(r.system), std::move(r.report)};
    }();
    Workspace result;
    add_system(result, cmd + "(" + inv.args[0] + "," + inv.args[1] + ")", system);
    const auto text = emit_workspace(result);
    out << text;
    print_conditions(report, out);
    return {report.pass() ? Success : MathFailure, text};
  }

  if (cmd == "embed") {
    expect_args(inv, 1);
    auto it = ws.crisp.find(inv.args[0]);
    if (it == ws.crisp.end()) throw Error(ErrorKind::UnknownReference, "name=" + inv.args[0]);
    const auto s = embed_crisp(it->second.points, ws.frame(it->second.frame), it->second.sat);
    Workspace result;
    result.frames.emplace(it->second.frame, s.frame);
    add_system(result, "embed(" + inv.args[0] + ")", s);
    const auto text = emit_workspace(result);
    out << text << "PASS\n";
    return {Success, text};
  }

  if (cmd == "laws") {
    expect_args(inv, 0);
    return run_laws(inv, out);
  }

  if (cmd == "iso") {
    expect_args(inv, 2);
    const auto x = arg(0), y = arg(1);
    oracle::IsoResult r;
    const auto fx = resolve.frame(x), fy = resolve.frame(y);
    if (fx && fy)
      r = oracle::iso_check(*fx, *fy);
    else
      r = oracle::iso_check(resolve.object(x), resolve.object(y));
    if (r.verdict == oracle::IsoVerdict::NotIsomorphic) {
      out << fail_line("NotIsomorphic", r.reason) << '\n';
      return {MathFailure, {}};
    }
    out << oracle::to_string(r.verdict) << '\n';
    return {};
  }

  if (cmd == "demo-bitstream") {
    expect_args(inv, 2);
    std::ifstream in(inv.args[0]);
    if (!in) throw Error(ErrorKind::UnknownReference, "file=" + inv.args[0]);
    std::vector<std::vector<Degree>> streams;
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream tokens(line);
      std::vector<Degree> stream;
      for (std::string tok; tokens >> tok;) stream.push_back(Degree::parse(tok));
      if (!stream.empty()) streams.push_back(std::move(stream));
    }
    const auto degrees = demo_bitstream(streams, inv.args[1]);
    for (std::size_t i = 0; i < degrees.size(); ++i) out << "stream=" << i << " degree=" << degrees[i] << '\n';
    out << "PASS\n";
    return {};
  }

  throw Error(ErrorKind::SyntaxError, "line=0 column=0 message=unknown-command got=" + cmd);
}

}  // namespace detail

/// Runs one command against an already-parsed workspace. Returns 0 on
/// success, 1 on a mathematical failure (with FAIL lines on `out`), 2 on a
/// usage or input error (with an ERROR line on `err`).
inline int run(const Invocation& inv, const Workspace& ws, std::ostream& out, std::ostream& err) {
  detail::Outcome outcome;
  try {
    outcome = detail::dispatch(inv, ws, out);
  } catch (const Error& e) {
    if (is_usage_error(e.kind())) {
      err << "ERROR kind=" << to_string(e.kind()) << " witness=" << e.witness() << '\n';
      return UsageError;
    }
    out << fail_line(to_string(e.kind()), e.witness()) << '\n';
    return MathFailure;
  }
  if (inv.out && !outcome.artifact.empty()) {
    std::ofstream file(*inv.out);
    if (!file) {
      err << "ERROR kind=UnknownReference witness=file=" << *inv.out << '\n';
      return UsageError;
    }
    file << outcome.artifact;
  }
  return outcome.code;
}

/// Loads the input document (if any) and runs the command.
inline int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  Workspace ws;
  if (inv.input) {
    try {
      ws = load_workspace(*inv.input);
    } catch (const Error& e) {
      err << "ERROR kind=" << to_string(e.kind()) << " witness=" << e.witness() << '\n';
      return UsageError;
    }
  }
  return run(inv, ws, out, err);
}

}  // namespace ftop::cli
