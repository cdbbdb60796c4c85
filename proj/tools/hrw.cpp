// hrw: batch command-line front end for the library.
//
// Exit codes: 0 success / true, 1 negative answer, 2 stuck or partial
// (caps hit), 3 usage or parse error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hrw/decompose.hpp"
#include "hrw/density.hpp"
#include "hrw/edgecol.hpp"
#include "hrw/grow.hpp"
#include "hrw/hypergraph.hpp"
#include "hrw/ramsey.hpp"
#include "hrw/structure.hpp"
#include "hrw/verify.hpp"

namespace fs = std::filesystem;
using namespace hrw;

namespace {

constexpr int kOk = 0, kNegative = 1, kPartial = 2, kUsage = 3;
constexpr const char* kFormatVersion = "1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file path if one exists, otherwise a built-in pattern name.
KGraph load_graph(const std::string& spec) {
  if (fs::is_regular_file(spec)) return read_khg_file(spec);
  try {
    return graph_from_name(spec);
  } catch (const std::exception& e) {
    throw UsageError("cannot read graph '" + spec + "': " + e.what());
  }
}

std::vector<KGraph> load_patterns(const std::string& list) {
  std::vector<KGraph> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(load_graph(item));
  if (out.empty()) throw UsageError("empty pattern list");
  return out;
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("bad rational '" + text + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string edge_text(const Edge& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

// One line per step: index, kind, class, attachment edge, sizes, lambdas.
std::string trace_log(const std::vector<GrowStep>& steps) {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const GrowStep& s = steps[i];
    os << "step " << i << " kind=" << to_string(s.kind) << " class=" << to_string(s.cls) << " at="
       << (s.at.empty() ? std::string("-") : edge_text(s.at)) << " new_vertices=" << s.new_vertices
       << " new_edges=" << s.new_edges << " lambda_before=" << s.lambda_before << " lambda_after=" << s.lambda_after
       << "\n";
  }
  return os.str();
}

// Runs work(i) for i in [0, n) on up to `jobs` threads; callers store
// results by index so output order never depends on the schedule.
void parallel_for(int n, int jobs, const std::function<void(int)>& work) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ------------------------------------------------------------ manifests

struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
  std::string get(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    throw UsageError("manifest has no '" + key + "' entry");
  }
  std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
      if (k == key) out.push_back(v);
    return out;
  }
  std::string str() const {
    std::string s = std::string("format-version: ") + kFormatVersion + "\n";
    for (const auto& [k, v] : entries) s += k + ": " + v + "\n";
    return s;
  }
  static Manifest read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read manifest " + path);
    Manifest m;
    std::string line;
    bool versioned = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw UsageError("malformed manifest line: " + line);
      std::string key = line.substr(0, colon), value = line.substr(colon + 1);
      value.erase(0, value.find_first_not_of(' '));
      if (key == "format-version") {
        if (value != kFormatVersion) throw UsageError("unsupported manifest format-version " + value);
        versioned = true;
        continue;
      }
      m.set(key, value);
    }
    if (!versioned) throw UsageError("manifest lacks a format-version header");
    return m;
  }
};

struct Caps {
  long max_states = 20000;
  int max_vertices = 14;
  int max_depth = 64;
  double max_seconds = 120.0;

  void add_to(CLI::App* app) {
    app->add_option("--max-states", max_states, "states expanded")->check(CLI::PositiveNumber);
    app->add_option("--max-vertices", max_vertices, "vertex cap on generated graphs")->check(CLI::PositiveNumber);
    app->add_option("--max-depth", max_depth, "depth cap")->check(CLI::PositiveNumber);
    app->add_option("--max-seconds", max_seconds, "time budget")->check(CLI::PositiveNumber);
  }
  GrowLimits limits() const {
    GrowLimits l;
    l.max_states = max_states;
    l.max_vertices = max_vertices;
    l.max_depth = max_depth;
    l.max_seconds = max_seconds;
    return l;
  }
};

std::string regime_name(Regime r) { return r == Regime::Strict ? "strict" : "equal"; }

// ------------------------------------------------------------ subcommands

int cmd_density(const std::vector<std::string>& inputs, const std::string& kind, const std::string& h2_spec,
                const std::string& witness_path, int jobs) {
  std::vector<KGraph> graphs;
  for (const auto& s : inputs) graphs.push_back(load_graph(s));
  std::optional<KGraph> h2;
  if (kind == "pair") {
    if (h2_spec.empty()) throw UsageError("--kind pair needs --h2");
    h2 = load_graph(h2_spec);
  }
  std::vector<DensityWitness> results(graphs.size());
  parallel_for(static_cast<int>(graphs.size()), jobs, [&](int i) {
    const KGraph& g = graphs[i];
    if (kind == "m") results[i] = m_density(g);
    else if (kind == "ar") results[i] = arboricity(g);
    else if (kind == "mk") results[i] = mk_density(g);
    else if (kind == "pair") results[i] = mk_pair_density(g, *h2);
    else if (kind == "d") results[i] = DensityWitness{d_density(g), {}, {}};
    else throw UsageError("unknown density kind '" + kind + "'");
  });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs.size() > 1) std::cout << inputs[i] << ": ";
    std::cout << results[i].value << "\n";
  }
  if (!witness_path.empty() && graphs.size() == 1 && !results[0].vertices.empty())
    write_text(witness_path, serialise_khg(results[0].subgraph(graphs[0]), "witness"));
  return kOk;
}

int cmd_heart(const std::string& h1s, const std::string& h2s, const std::string& eps_text) {
  const KGraph h1 = load_graph(h1s), h2 = load_graph(h2s);
  const Rational eps = parse_rational(eps_text);
  const Rational m1 = mk_density(h1).value, m2 = mk_density(h2).value;
  std::cout << "mk_h1: " << m1 << "\nmk_h2: " << m2 << "\n";
  if (m1 < m2) {
    std::cout << "order: reversed (m_k(H1) < m_k(H2))\n";
    return kNegative;
  }
  PairContext ctx = PairContext::make(h1, h2, eps);
  std::cout << "mk_pair: " << ctx.mk_pair << "\nregime: " << regime_name(ctx.regime) << "\ngamma: " << ctx.gamma
            << "\nheart: " << (ctx.heart ? "true" : "false") << "\n";
  if (!ctx.heart) {
    auto [a, b] = heart(h1, h2);
    std::cout << "heart_h1:\n" << serialise_khg(a) << "heart_h2:\n" << serialise_khg(b);
    return kNegative;
  }
  return kOk;
}

int cmd_arrow(const std::vector<std::string>& inputs, const std::string& patterns, const std::string& witness_path,
              int jobs) {
  const std::vector<KGraph> pats = load_patterns(patterns);
  std::vector<KGraph> graphs;
  for (const auto& s : inputs) graphs.push_back(load_graph(s));
  std::vector<ArrowResult> results(graphs.size());
  parallel_for(static_cast<int>(graphs.size()), jobs, [&](int i) { results[i] = arrow(graphs[i], pats); });
  bool all = true;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs.size() > 1) std::cout << inputs[i] << ": ";
    std::cout << "arrows: " << (results[i].arrows ? "true" : "false") << "\n";
    all = all && results[i].arrows;
    if (!results[i].arrows) {
      std::string path = witness_path;
      if (graphs.size() > 1 && !path.empty()) path += "." + std::to_string(i);
      if (path.empty()) std::cout << results[i].witness->serialise();
      else write_text(path, results[i].witness->serialise());
    }
  }
  return all ? kOk : kNegative;
}

int cmd_colour(const std::string& input, const std::string& h1s, const std::string& h2s, const std::string& out) {
  const KGraph g = load_graph(input), h1 = load_graph(h1s), h2 = load_graph(h2s);
  std::optional<Colouring> c = valid_colouring(g, h1, h2);
  if (!c) {
    std::cout << "colourable: false\n";
    return kNegative;
  }
  if (!out.empty()) std::cout << "colourable: true\n";
  write_text(out, c->serialise());
  return kOk;
}

int cmd_bhat(const std::string& h1s, const std::string& h2s, const std::string& eps_text, const std::string& dir,
             const Caps& caps, const std::string& trace_path) {
  const KGraph h1 = load_graph(h1s), h2 = load_graph(h2s);
  GrowLimits limits = caps.limits();
  limits.record_trace = !trace_path.empty();
  BhatFamily fam = enumerate_bhat(h1, h2, parse_rational(eps_text), limits);
  fs::create_directories(dir);
  Manifest m;
  m.set("kind", "bhat-family");
  write_khg_file((fs::path(dir) / "h1.khg").string(), fam.ctx.h1);
  write_khg_file((fs::path(dir) / "h2.khg").string(), fam.ctx.h2);
  m.set("h1", "h1.khg");
  m.set("h2", "h2.khg");
  m.set("eps", fam.ctx.epsilon.str());
  m.set("mk_h1", fam.ctx.mk_h1.str());
  m.set("mk_h2", fam.ctx.mk_h2.str());
  m.set("mk_pair", fam.ctx.mk_pair.str());
  m.set("regime", regime_name(fam.ctx.regime));
  m.set("max_states", std::to_string(caps.max_states));
  m.set("max_vertices", std::to_string(caps.max_vertices));
  m.set("max_depth", std::to_string(caps.max_depth));
  m.set("degenerate_identification", "every pattern not explicitly forbidden");
  m.set("members", std::to_string(fam.members.size()));
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "member_%03zu.khg", i);
    write_khg_file((fs::path(dir) / name).string(), fam.members[i]);
    m.set("member", name);
  }
  m.set("root_pruned", fam.root_pruned ? "1" : "0");
  m.set("kappa_hat", fam.kappa_hat.str());
  m.set("partial", fam.partial() ? "1" : "0");
  m.set("stats", fam.stats());
  write_text((fs::path(dir) / "manifest.txt").string(), m.str());
  if (!trace_path.empty()) write_text(trace_path, trace_log(fam.trace));
  std::cout << "members: " << fam.members.size() << "\npartial: " << (fam.partial() ? "true" : "false") << "\n";
  if (fam.partial()) return kPartial;
  return fam.members.empty() ? kNegative : kOk;
}

struct LoadedFamily {
  PairContext ctx;
  std::vector<KGraph> members;
};

LoadedFamily load_family(const std::string& dir) {
  const Manifest m = Manifest::read((fs::path(dir) / "manifest.txt").string());
  if (m.get("kind") != "bhat-family") throw UsageError("manifest is not a bhat family");
  LoadedFamily f;
  const KGraph h1 = read_khg_file((fs::path(dir) / m.get("h1")).string());
  const KGraph h2 = read_khg_file((fs::path(dir) / m.get("h2")).string());
  f.ctx = PairContext::make(h1, h2, parse_rational(m.get("eps")));
  for (const auto& name : m.all("member")) f.members.push_back(read_khg_file((fs::path(dir) / name).string()));
  return f;
}

int cmd_edgecol(const std::string& input, const std::string& dir, long n_param, const std::string& out,
                const std::string& trace_path) {
  const KGraph g = load_graph(input);
  LoadedFamily fam = load_family(dir);
  ColouringBook book(fam.ctx.h1, fam.ctx.h2);
  PipelineResult r = run_pipeline(g, fam.ctx, fam.members, book, n_param);
  if (!r.edgecol.stuck()) {
    std::cout << "result: colouring\n";
    write_text(out.empty() ? "" : out, std::get<Colouring>(r.edgecol.outcome).serialise());
    return kOk;
  }
  const StuckReport& st = std::get<StuckReport>(r.edgecol.outcome);
  std::ostringstream rep;
  rep << "result: stuck\nresidual_edges: " << st.edges.size() << "\nin_C: " << (st.family.in_C ? 1 : 0)
      << "\nin_Cstar: " << (st.family.in_Cstar ? 1 : 0) << "\n";
  if (r.special) rep << "special_branch: " << r.special->branch << "\nspecial_edges: " << r.special->edges.size() << "\n";
  if (r.grow)
    rep << "grow_iterations: " << r.grow->iterations << "\ngrow_lambda: " << r.grow->output_lambda
        << "\ngrow_via_iteration_cap: " << (r.grow->via_iteration_cap ? 1 : 0) << "\n";
  rep << "diagnostics: " << st.diagnostics << "\n";
  std::cout << rep.str();
  if (!out.empty()) write_khg_file(out + ".residual.khg", st.residual, "residual");
  if (!trace_path.empty() && r.grow) write_text(trace_path, trace_log(r.grow->trace));
  return kPartial;
}

int cmd_decompose(const std::string& input, const std::string& mode, int parts, const std::string& h1s,
                  const std::string& h2s, const std::string& out) {
  const KGraph g = load_graph(input);
  if (mode == "forest" || mode == "sparse") {
    if (parts < 1) throw UsageError("--parts must be at least 1");
    std::optional<Decomposition> d = mode == "forest" ? forest_decomposition(g, parts) : sparse_partition(g, parts);
    if (!d) {
      std::cout << "decomposable: false\n";
      return kNegative;
    }
    if (!out.empty()) std::cout << "decomposable: true\n";
    write_text(out, d->serialise(g.m()));
    return kOk;
  }
  if (mode != "dispatch") throw UsageError("unknown decompose mode '" + mode + "'");
  if (h1s.empty() || h2s.empty()) throw UsageError("--mode dispatch needs --h1 and --h2");
  const KGraph h1 = load_graph(h1s), h2 = load_graph(h2s);
  std::cout << "applicable:";
  for (const auto& c : applicable_cases(h1, h2)) std::cout << " " << c;
  std::cout << "\n";
  std::optional<DispatchResult> r = colouring_dispatch(g, h1, h2);
  if (!r) {
    std::cout << "case: none\n";
    return kNegative;
  }
  std::cout << "case: " << r->label << "\nroute: " << r->route << "\n";
  if (!r->note.empty()) std::cout << "note: " << r->note << "\n";
  if (!out.empty()) write_text(out, r->colouring.serialise());
  return kOk;
}

int cmd_verify(const std::string& check, const std::string& h1s, const std::string& h2s, const std::string& base_s,
               int anchor, long max_nodes, int max_vertices, int steps) {
  const KGraph h1 = load_graph(h1s), h2 = load_graph(h2s);
  const KGraph base = load_graph(base_s);
  if (check == "audit") {
    PairContext ctx = PairContext::make(h1, h2);
    GrowPath p = free_grow_path(base, ctx, steps);
    FlowerAudit a = audit_trace(p.graphs, p.steps, ctx);
    std::cout << "steps: " << p.steps.size() << "\ncounts:";
    for (int c : a.counts) std::cout << " " << c;
    std::cout << "\nok: " << (a.ok() ? "true" : "false") << "\n";
    if (!a.ok()) std::cout << a.counterexample;
    return a.ok() ? kOk : kNegative;
  }
  AttachLimits lim;
  lim.max_nodes = max_nodes;
  lim.max_vertices = max_vertices;
  AttachmentFamily fam = enumerate_attachments(base, anchor, h1, h2, lim);
  std::cout << "instances: " << fam.instances.size() << "\nnodes: " << fam.nodes
            << "\npartial: " << (fam.partial() ? "true" : "false") << "\n";
  bool ok = true;
  if (check == "lemma21") {
    Lemma21Report r = check_lemma21(fam, h1, h2);
    std::cout << "star: " << r.star << "\nnonstar: " << r.nonstar << "\nstar_density: " << r.star_density
              << "\nmin_nonstar: " << (r.min_nonstar ? r.min_nonstar->str() : std::string("none"))
              << "\nviolations: " << r.violations << "\n";
    if (!r.ok()) std::cout << r.counterexample;
    ok = r.ok();
  } else if (check == "ledger") {
    const Rational mk = PairContext::make(h1, h2).mk_pair;
    long bad = 0;
    for (const AttachmentInstance& inst : fam.instances) {
      LedgerCheck c = check_ledger(inst, order_edges(inst), h1, h2, mk);
      if (!c.ok()) {
        if (bad == 0) std::cout << c.str() << "\n" << inst.str();
        ++bad;
      }
    }
    std::cout << "ledger_failures: " << bad << "\n";
    ok = bad == 0;
  } else {
    throw UsageError("unknown verify check '" + check + "'");
  }
  if (!ok) return kNegative;
  return fam.partial() ? kPartial : kOk;
}

int cmd_gen(const std::string& family, const std::vector<int>& params, const std::string& out) {
  KGraph g;
  try {
    g = params.empty() ? graph_from_name(family) : generate(family, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_text(out, serialise_khg(g));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric Ramsey density toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for multi-input commands")->check(CLI::PositiveNumber);

  std::vector<std::string> inputs;
  std::string input, kind = "m", h1, h2, patterns, witness, out, eps = "0", dir = "bhat_out", trace, mode = "forest",
                     check = "lemma21", base = "K4", family;
  std::vector<int> params;
  int parts = 1, anchor = 0, max_vertices = 0, steps = 6;
  long n_param = 0, max_nodes = 2000000;
  Caps caps;
  std::function<int()> action;

  auto* density = app.add_subcommand("density", "exact density of one or more graphs");
  density->add_option("graphs", inputs, ".khg files or pattern names")->required();
  density->add_option("--kind", kind, "m, ar, mk, d, or pair")->check(CLI::IsMember({"m", "ar", "mk", "d", "pair"}));
  density->add_option("--h2", h2, "second pattern for --kind pair");
  density->add_option("--witness", witness, "write the densest subgraph here");
  density->callback([&] { action = [&] { return cmd_density(inputs, kind, h2, witness, jobs); }; });

  auto* heart_cmd = app.add_subcommand("heart", "pair densities, regime and heart test");
  heart_cmd->add_option("--h1", h1)->required();
  heart_cmd->add_option("--h2", h2)->required();
  heart_cmd->add_option("--eps", eps);
  heart_cmd->callback([&] { action = [&] { return cmd_heart(h1, h2, eps); }; });

  auto* arrow_cmd = app.add_subcommand("arrow", "decide G -> (H1, ..., Hr)");
  arrow_cmd->add_option("graphs", inputs)->required();
  arrow_cmd->add_option("--patterns", patterns, "comma-separated patterns, one per colour")->required();
  arrow_cmd->add_option("--witness", witness, "write a valid colouring here when G does not arrow");
  arrow_cmd->callback([&] { action = [&] { return cmd_arrow(inputs, patterns, witness, jobs); }; });

  auto* colour_cmd = app.add_subcommand("colour", "find a valid (H1, H2) colouring");
  colour_cmd->add_option("graph", input)->required();
  colour_cmd->add_option("--h1", h1)->required();
  colour_cmd->add_option("--h2", h2)->required();
  colour_cmd->add_option("-o,--out", out);
  colour_cmd->callback([&] { action = [&] { return cmd_colour(input, h1, h2, out); }; });

  auto* bhat_cmd = app.add_subcommand("bhat", "enumerate the B-hat family of a pair");
  bhat_cmd->add_option("--h1", h1)->required();
  bhat_cmd->add_option("--h2", h2)->required();
  bhat_cmd->add_option("--eps", eps);
  bhat_cmd->add_option("--out", dir, "output directory");
  bhat_cmd->add_option("--trace", trace, "write the recorded Grow steps here");
  caps.add_to(bhat_cmd);
  bhat_cmd->callback([&] { action = [&] { return cmd_bhat(h1, h2, eps, dir, caps, trace); }; });

  auto* edgecol_cmd = app.add_subcommand("edgecol", "run the colouring pipeline against a B-hat family");
  edgecol_cmd->add_option("graph", input)->required();
  edgecol_cmd->add_option("--bhat", dir, "directory written by 'bhat'")->required();
  edgecol_cmd->add_option("--n-param", n_param, "Grow iteration parameter (0: v(G)^2)");
  edgecol_cmd->add_option("-o,--out", out);
  edgecol_cmd->add_option("--trace", trace);
  edgecol_cmd->callback([&] { action = [&] { return cmd_edgecol(input, dir, n_param, out, trace); }; });

  auto* decompose_cmd = app.add_subcommand("decompose", "forest or sparse partitions, or the case dispatcher");
  decompose_cmd->add_option("graph", input)->required();
  decompose_cmd->add_option("--mode", mode)->check(CLI::IsMember({"forest", "sparse", "dispatch"}));
  decompose_cmd->add_option("--parts", parts);
  decompose_cmd->add_option("--h1", h1);
  decompose_cmd->add_option("--h2", h2);
  decompose_cmd->add_option("-o,--out", out);
  decompose_cmd->callback([&] { action = [&] { return cmd_decompose(input, mode, parts, h1, h2, out); }; });

  auto* verify_cmd = app.add_subcommand("verify", "attachment-family and flower checks");
  verify_cmd->add_option("--check", check)->check(CLI::IsMember({"lemma21", "ledger", "audit"}));
  verify_cmd->add_option("--h1", h1)->required();
  verify_cmd->add_option("--h2", h2)->required();
  verify_cmd->add_option("--base", base, "the graph F");
  verify_cmd->add_option("--anchor", anchor, "edge index of the anchor in F");
  verify_cmd->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-vertices", max_vertices);
  verify_cmd->add_option("--steps", steps, "path length for --check audit");
  verify_cmd->callback([&] {
    action = [&] { return cmd_verify(check, h1, h2, base, anchor, max_nodes, max_vertices, steps); };
  });

  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph in .khg form");
  gen_cmd->add_option("family", family, "family name, or a pattern name without parameters")->required();
  gen_cmd->add_option("params", params);
  gen_cmd->add_option("-o,--out", out);
  gen_cmd->callback([&] { action = [&] { return cmd_gen(family, params, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
