#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tmw/classify.hpp"
#include "tmw/expr.hpp"
#include "tmw/flow.hpp"
#include "tmw/graph.hpp"
#include "tmw/graph_monoid.hpp"
#include "tmw/moves.hpp"
#include "tmw/paradox.hpp"

namespace tmw::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) {
    throw Error("digest failure");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

struct LoadedGraph {
  Graph graph;
  ordered_json input;  // {path, sha256}
};

LoadedGraph load_graph(const std::string& path) {
  std::string text = read_file(path);
  LoadedGraph lg{Graph::parse_auto(text), {}};
  lg.input["path"] = path;
  lg.input["sha256"] = sha256_hex(text);
  return lg;
}

int exit_of(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return kExitYes;
    case Verdict::No:
      return kExitNo;
    default:
      return kExitUnknown;
  }
}

ordered_json tri_json(const Tri& t) {
  ordered_json j;
  j["verdict"] = to_string(t.verdict);
  j["certificate"] = t.certificate;
  return j;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Report {
  ordered_json body;
  Timer timer;

  explicit Report(const std::string& command) {
    body["schema"] = 1;
    body["command"] = command;
    body["inputs"] = ordered_json::array();
  }
  void add_input(ordered_json input) { body["inputs"].push_back(std::move(input)); }
  int emit(std::ostream& out, int code) {
    body["elapsed_ms"] = timer.ms();
    out << body.dump(2) << "\n";
    return code;
  }
};

ordered_json flow_state_json(const Graph& g, const FlowContext& ctx,
                             const FlowState& s) {
  ordered_json j;
  j["frontier"] = s.frontier;
  ordered_json live = ordered_json::object();
  for (std::size_t slot = 0; slot < s.live.size(); ++slot) {
    if (s.live[slot] != 0) {
      live[g.vertex_name(ctx.nonsink_vertex(slot))] = s.live[slot].str();
    }
  }
  j["live"] = std::move(live);
  ordered_json deposits = ordered_json::array();
  for (const auto& [key, mult] : s.deposits) {
    ordered_json d;
    d["vertex"] = g.vertex_name(key.vertex);
    d["level"] = key.level;
    d["multiplicity"] = mult.str();
    deposits.push_back(std::move(d));
  }
  j["deposits"] = std::move(deposits);
  j["expr"] = ctx.to_expr(s).to_string(g);
  return j;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  Report report("validate");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  ordered_json result;
  result["vertices"] = lg.graph.vertex_count();
  result["edges"] = lg.graph.edge_count();
  auto names = [&](const std::vector<Vertex>& vs) {
    auto arr = ordered_json::array();
    for (Vertex v : vs) {
      arr.push_back(lg.graph.vertex_name(v));
    }
    return arr;
  };
  result["sinks"] = names(lg.graph.sinks());
  result["sources"] = names(lg.graph.sources());
  result["graph"] = lg.graph.to_json();
  report.body["result"] = std::move(result);
  return report.emit(out, kExitYes);
}

int cmd_classify(const std::string& path, std::ostream& out) {
  Report report("classify");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  report.body["result"] = to_json(lg.graph, classify(lg.graph));
  return report.emit(out, kExitYes);
}

int cmd_eq(const std::string& path, const std::string& lhs, const std::string& rhs,
           const std::string& monoid, std::optional<std::size_t> cap,
           std::ostream& out) {
  Report report("eq");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  ordered_json result;
  result["lhs"] = lhs;
  result["rhs"] = rhs;
  result["monoid"] = monoid;
  MonoidExpr x = MonoidExpr::parse(lg.graph, lhs);
  MonoidExpr y = MonoidExpr::parse(lg.graph, rhs);
  int code;
  if (monoid == "talented") {
    bool equal = eq_talented(lg.graph, x, y);
    result["verdict"] = equal ? "yes" : "no";
    result["certificate"] = equal ? "normal forms agree" : "normal forms separate";
    code = equal ? kExitYes : kExitNo;
  } else {
    Tri t = eq_graph_monoid(lg.graph, x, y, cap.value_or(kGraphMonoidDefaultCap));
    result.update(tri_json(t));
    code = exit_of(t.verdict);
  }
  report.body["result"] = std::move(result);
  return report.emit(out, code);
}

int cmd_leq(const std::string& path, const std::string& lhs, const std::string& rhs,
            const std::string& monoid, std::optional<std::size_t> cap,
            std::ostream& out) {
  Report report("leq");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  ordered_json result;
  result["lhs"] = lhs;
  result["rhs"] = rhs;
  result["monoid"] = monoid;
  MonoidExpr x = MonoidExpr::parse(lg.graph, lhs);
  MonoidExpr y = MonoidExpr::parse(lg.graph, rhs);
  Tri t = monoid == "talented"
              ? leq_talented(lg.graph, x, y,
                             cap.value_or(default_leq_cap(lg.graph, x, y)))
              : leq_graph_monoid(lg.graph, x, y,
                                 cap.value_or(kGraphMonoidDefaultCap));
  result.update(tri_json(t));
  report.body["result"] = std::move(result);
  return report.emit(out, exit_of(t.verdict));
}

int cmd_nf(const std::string& path, const std::string& expr, int level,
           std::ostream& out) {
  Report report("nf");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  MonoidExpr x = MonoidExpr::parse(lg.graph, expr);
  FlowContext ctx(lg.graph);
  FlowState state = ctx.normal_form(x, level);
  ordered_json result;
  result["input_expr"] = expr;
  result["state"] = flow_state_json(lg.graph, ctx, state);
  report.body["result"] = std::move(result);
  return report.emit(out, kExitYes);
}

struct MoveSpec {
  std::string move;  // S | I | O
  std::string plan_path;
  std::string vertex;
};

Graph apply_move(const Graph& g, const MoveSpec& spec, ordered_json* detail) {
  if (spec.move == "S") {
    if (spec.vertex.empty()) {
      throw Error("move S requires --vertex");
    }
    Vertex v = g.vertex(spec.vertex);
    if (detail) {
      (*detail)["removed_vertex"] = spec.vertex;
    }
    return move_source_removal(g, v);
  }
  if (spec.plan_path.empty()) {
    throw Error("moves I and O require --plan");
  }
  nlohmann::json plan_json;
  try {
    plan_json = nlohmann::json::parse(read_file(spec.plan_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what(), 0);
  }
  if (spec.move == "I") {
    return move_in_split(g, InSplitPlan::from_json(g, plan_json));
  }
  if (spec.move == "O") {
    return move_out_split(g, OutSplitPlan::from_json(g, plan_json));
  }
  throw Error("unknown move '" + spec.move + "' (expected S, I or O)");
}

int cmd_move(const std::string& path, const MoveSpec& spec,
             const std::string& out_path, std::ostream& out) {
  Report report("move");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  ordered_json result;
  result["move"] = spec.move;
  Graph moved = apply_move(lg.graph, spec, &result);
  result["graph"] = moved.to_json();
  if (!out_path.empty()) {
    std::ofstream fout(out_path, std::ios::binary);
    if (!fout) {
      throw Error("cannot write '" + out_path + "'");
    }
    if (out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json") {
      fout << moved.to_json().dump(2) << "\n";
    } else {
      fout << moved.to_text();
    }
    result["written"] = out_path;
  }
  report.body["result"] = std::move(result);
  return report.emit(out, kExitYes);
}

int cmd_verify_move(const std::string& src_path, const std::string& dst_path,
                    const MoveSpec& spec, std::optional<std::pair<int, int>> window,
                    std::ostream& out) {
  Report report("verify-move");
  LoadedGraph src = load_graph(src_path);
  LoadedGraph dst = load_graph(dst_path);
  report.add_input(src.input);
  report.add_input(dst.input);

  // The supplied destination must be the move's output up to nothing at all:
  // generator maps address codomain vertices by their constructed names.
  MapPair maps;
  if (spec.move == "S") {
    if (spec.vertex.empty()) {
      throw Error("move S requires --vertex");
    }
    maps = induced_map_source_removal(src.graph, dst.graph,
                                      src.graph.vertex(spec.vertex));
  } else if (spec.move == "I") {
    nlohmann::json plan_json = nlohmann::json::parse(read_file(spec.plan_path));
    maps = induced_map_in_split(src.graph, dst.graph,
                                InSplitPlan::from_json(src.graph, plan_json));
  } else if (spec.move == "O") {
    nlohmann::json plan_json = nlohmann::json::parse(read_file(spec.plan_path));
    maps = induced_map_out_split(src.graph, dst.graph,
                                 OutSplitPlan::from_json(src.graph, plan_json));
  } else {
    throw Error("unknown move '" + spec.move + "'");
  }

  auto [lo, hi] = window.value_or(default_verify_window(*maps.forward.domain));
  VerifyMapResult vr = verify_map(maps, lo, hi);
  ordered_json result;
  result["move"] = spec.move;
  result["window"] = {lo, hi};
  result["well_defined"] = tri_json(vr.well_defined);
  result["inverse_ok"] = tri_json(vr.inverse_ok);
  report.body["result"] = std::move(result);
  int code = vr.both_yes() ? kExitYes
             : (vr.well_defined.is_no() || vr.inverse_ok.is_no()) ? kExitNo
                                                                  : kExitUnknown;
  return report.emit(out, code);
}

int cmd_paradox(const std::string& path, const std::string& witness_path,
                std::optional<std::size_t> cap, std::ostream& out) {
  Report report("paradox");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  std::size_t budget = cap.value_or(default_paradox_cap(lg.graph));
  ordered_json result;
  int code;
  if (!witness_path.empty()) {
    std::string text = read_file(witness_path);
    ordered_json winput;
    winput["path"] = witness_path;
    winput["sha256"] = sha256_hex(text);
    report.add_input(winput);
    ParadoxWitness w =
        ParadoxWitness::from_json(lg.graph, nlohmann::json::parse(text));
    Tri t = verify_witness(lg.graph, w, budget);
    result["witness"] = w.to_json(lg.graph);
    result["verification"] = tri_json(t);
    code = exit_of(t.verdict);
  } else {
    bool paradoxical = is_paradoxical(lg.graph);
    result["paradoxical"] = paradoxical;
    if (paradoxical) {
      ParadoxWitness w = build_witness(lg.graph);
      Tri t = verify_witness(lg.graph, w, budget);
      result["witness"] = w.to_json(lg.graph);
      result["verification"] = tri_json(t);
      code = exit_of(t.verdict);
    } else {
      result["certificate"] = "no cycle with an exit";
      code = kExitNo;
    }
  }
  report.body["result"] = std::move(result);
  return report.emit(out, code);
}

int cmd_decompose(const std::string& path, const std::string& base,
                  std::optional<std::size_t> cap, std::ostream& out) {
  Report report("decompose");
  LoadedGraph lg = load_graph(path);
  report.add_input(lg.input);
  Vertex b = lg.graph.vertex(base);
  Decomposition dec = decompose(lg.graph, b);
  ordered_json result;
  result["base"] = base;
  result["d"] = dec.d;
  auto classes = ordered_json::array();
  for (const auto& cls : dec.residue_classes) {
    auto arr = ordered_json::array();
    for (Vertex v : cls) {
      arr.push_back(lg.graph.vertex_name(v));
    }
    classes.push_back(std::move(arr));
  }
  result["residue_classes"] = std::move(classes);
  auto reps = ordered_json::array();
  for (const auto& r : dec.ideal_representatives) {
    reps.push_back(r.to_string(lg.graph));
  }
  result["ideal_representatives"] = std::move(reps);

  int window_hi = static_cast<int>(2 * lg.graph.vertex_count());
  WindowCheck wc = decompose_window_check(
      lg.graph, b, dec, window_hi,
      cap.value_or(2 * lg.graph.vertex_count() + 2));
  ordered_json jwc;
  jwc["window"] = {0, window_hi};
  jwc["generators_checked"] = wc.generators_checked;
  jwc["violations"] = wc.violations;
  result["window_check"] = std::move(jwc);
  report.body["result"] = std::move(result);
  return report.emit(out, wc.ok() ? kExitYes : kExitNo);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Talented-monoid workbench: equality, order and invariants of "
               "graph monoids of finite directed graphs"};
  app.require_subcommand(1);

  std::string graph_path, second_path, lhs, rhs, expr, monoid = "talented";
  std::string out_path, base, witness_path;
  MoveSpec move_spec;
  int level = 0;
  std::optional<std::size_t> cap;
  std::optional<std::string> window_text;

  auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "Override the default search/step budget");
  };

  auto* validate = app.add_subcommand("validate", "Parse a graph and check invariants");
  validate->add_option("graph", graph_path, "Graph file (text or JSON)")->required();

  auto* classify = app.add_subcommand("classify", "Full classification report");
  classify->add_option("graph", graph_path)->required();

  auto* eq = app.add_subcommand("eq", "Decide equality of two expressions");
  eq->add_option("graph", graph_path)->required();
  eq->add_option("lhs", lhs)->required();
  eq->add_option("rhs", rhs)->required();
  eq->add_option("--monoid", monoid, "talented (exact) or graph (levels forgotten)")
      ->check(CLI::IsMember({"talented", "graph"}));
  add_cap(eq);

  auto* leq = app.add_subcommand("leq", "Decide order between two expressions");
  leq->add_option("graph", graph_path)->required();
  leq->add_option("lhs", lhs)->required();
  leq->add_option("rhs", rhs)->required();
  leq->add_option("--monoid", monoid)->check(CLI::IsMember({"talented", "graph"}));
  add_cap(leq);

  auto* nf = app.add_subcommand("nf", "Flow an expression to a frontier level");
  nf->add_option("graph", graph_path)->required();
  nf->add_option("expr", expr)->required();
  nf->add_option("level", level, "Frontier level (at least the max level)")
      ->required();

  auto* move = app.add_subcommand("move", "Apply move S, I or O");
  move->add_option("graph", graph_path)->required();
  move->add_option("--move", move_spec.move, "S, I or O")->required();
  move->add_option("--plan", move_spec.plan_path, "Split plan JSON (moves I/O)");
  move->add_option("--vertex", move_spec.vertex, "Source to remove (move S)");
  move->add_option("-o,--output", out_path, "Write the produced graph here");

  auto* verify = app.add_subcommand("verify-move",
                                    "Verify the induced map of a move between "
                                    "two given graphs");
  verify->add_option("src", graph_path)->required();
  verify->add_option("dst", second_path)->required();
  verify->add_option("--move", move_spec.move, "S, I or O")->required();
  verify->add_option("--plan", move_spec.plan_path);
  verify->add_option("--vertex", move_spec.vertex);
  verify->add_option("--window", window_text, "Level window lo:hi");

  auto* paradox = app.add_subcommand("paradox", "Paradoxicality and witnesses");
  paradox->add_option("graph", graph_path)->required();
  paradox->add_option("witness", witness_path, "Witness JSON to verify");
  add_cap(paradox);

  auto* decomp = app.add_subcommand("decompose", "Period decomposition data");
  decomp->add_option("graph", graph_path)->required();
  decomp->add_option("--base", base, "Base vertex")->required();
  add_cap(decomp);

  std::vector<const char*> argv;
  argv.push_back("tmw");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "tmw: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(graph_path, out);
    }
    if (classify->parsed()) {
      return cmd_classify(graph_path, out);
    }
    if (eq->parsed()) {
      return cmd_eq(graph_path, lhs, rhs, monoid, cap, out);
    }
    if (leq->parsed()) {
      return cmd_leq(graph_path, lhs, rhs, monoid, cap, out);
    }
    if (nf->parsed()) {
      return cmd_nf(graph_path, expr, level, out);
    }
    if (move->parsed()) {
      return cmd_move(graph_path, move_spec, out_path, out);
    }
    if (verify->parsed()) {
      std::optional<std::pair<int, int>> window;
      if (window_text) {
        auto colon = window_text->find(':');
        if (colon == std::string::npos) {
          throw Error("--window expects lo:hi");
        }
        window = std::pair<int, int>{std::stoi(window_text->substr(0, colon)),
                                     std::stoi(window_text->substr(colon + 1))};
      }
      return cmd_verify_move(graph_path, second_path, move_spec, window, out);
    }
    if (paradox->parsed()) {
      return cmd_paradox(graph_path, witness_path, cap, out);
    }
    if (decomp->parsed()) {
      return cmd_decompose(graph_path, base, cap, out);
    }
    err << "tmw: no command\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "tmw: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace tmw::cli
