#include "lvt/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lvt/cache.hpp"
#include "lvt/serialize.hpp"
#include "lvt/verify.hpp"

namespace lvt {

namespace {

std::unique_ptr<ViannaBuilder> make_builder(const RunConfig& cfg) {
  std::shared_ptr<RecordStore> store;
  if (cfg.out) store = std::make_shared<FileStore>(*cfg.out);
  return std::make_unique<ViannaBuilder>(std::move(store));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Writes `content` under the output directory when one is configured.
void emit_file(const RunConfig& cfg, const std::filesystem::path& relative, const std::string& content) {
  if (cfg.out) write_file(*cfg.out / relative, content);
}

std::string path_string(const std::vector<int>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s.empty() ? "-" : s;
}

std::string sorted_string(const MarkovTriple& t) { return t.sorted().to_string(); }

const MarkovTriple& single_triple(const RunConfig& cfg) {
  if (cfg.triples.size() != 1) throw Error(cfg.command + " needs exactly one triple");
  return cfg.triples.front();
}

std::size_t single_dim(const RunConfig& cfg) {
  if (cfg.dims.size() != 1) throw Error(cfg.command + " needs exactly one dimension");
  return cfg.dims.front();
}

std::string clause_mark(const Clause& c) { return c.skipped ? "-" : (c.passed ? "ok" : "FAIL"); }

}  // namespace

std::vector<MarkovTriple> RunConfig::selected_triples() const {
  std::vector<MarkovTriple> out = triples;
  if (out.empty() && max_entry > 0)
    for (const auto& node : enumerate_tree(max_entry)) out.push_back(node.triple);
  std::stable_sort(out.begin(), out.end(),
                   [](const MarkovTriple& a, const MarkovTriple& b) { return a.sorted() < b.sorted(); });
  return out;
}

void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

int cmd_tree(const RunConfig& cfg, std::ostream& out) {
  const auto nodes = enumerate_tree(cfg.max_entry);
  Json j = Json::array();
  for (const auto& n : nodes) j.push_back(to_json(n));
  const auto text = canonical_dump(j);
  emit_file(cfg, "tree.json", text);
  if (cfg.format == "table") {
    out << std::left << std::setw(32) << "sorted triple" << "path\n";
    for (const auto& n : nodes) out << std::setw(32) << sorted_string(n.triple) << path_string(n.path) << "\n";
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_potential(const RunConfig& cfg, std::ostream& out) {
  const auto& t = single_triple(cfg);
  const auto n = single_dim(cfg);
  auto builder = make_builder(cfg);
  const auto rec = builder->build(t, n);
  const auto text = canonical_dump(to_json(*rec));
  emit_file(cfg, std::filesystem::path("potentials") / (record_key(t, n) + ".json"), text);
  if (cfg.format == "table") {
    out << "triple " << rec->triple.to_string() << "  n=" << n << "  terms=" << rec->poly.size()
        << "  path=" << path_string(rec->path) << "\n"
        << rec->poly.to_string() << "\n";
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_newton(const RunConfig& cfg, std::ostream& out) {
  const auto& t = single_triple(cfg);
  const auto n = single_dim(cfg);
  auto builder = make_builder(cfg);
  const auto j = newton_json(*builder->build(t, n));
  const auto text = canonical_dump(j);
  emit_file(cfg, std::filesystem::path("newton") / (record_key(t, n) + ".json"), text);
  if (cfg.format == "table") {
    out << "triple " << t.to_string() << "  n=" << n << "  simplex=" << j["simplex"] << "  fano=" << j["fano"] << "\n";
    const auto& v = j["vertices"];
    for (std::size_t i = 0; i < v.size(); ++i)
      out << "  vertex " << i << " " << v[i].dump() << "  coefficient " << j["vertex_coefficients"][i].get<std::string>()
          << "\n";
    for (const auto& e : j["edges"])
      out << "  edge " << e["from"] << "-" << e["to"] << "  length " << e["length"] << "\n";
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  struct Item {
    MarkovTriple triple;
    std::size_t dim;
  };
  std::vector<Item> items;
  for (const auto& t : cfg.selected_triples())
    for (auto n : cfg.dims) items.push_back({t, n});

  auto builder = make_builder(cfg);
  std::vector<std::optional<VerificationReport>> reports(items.size());
  std::vector<std::string> errors(items.size());
  run_parallel(items.size(), cfg.workers, [&](std::size_t i) {
    try {
      reports[i] = verify_theorem(items[i].triple, items[i].dim, *builder);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  bool failed = false, errored = false;
  Json all = Json::array(), error_list = Json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!reports[i]) {
      errored = true;
      error_list.push_back(Json{{"triple", to_json(items[i].triple)}, {"dim", items[i].dim}, {"error", errors[i]}});
      err << "error: " << items[i].triple.to_string() << " n=" << items[i].dim << ": " << errors[i] << "\n";
      continue;
    }
    auto j = to_json(*reports[i]);
    if (!cfg.timing) j.erase("seconds");
    if (!reports[i]->passed()) failed = true;
    emit_file(cfg, std::filesystem::path("verify") / (record_key(items[i].triple, items[i].dim) + ".json"),
              canonical_dump(j));
    all.push_back(std::move(j));
  }
  const Json summary{{"passed", !failed && !errored}, {"reports", all}, {"errors", error_list}};
  emit_file(cfg, std::filesystem::path("verify") / "summary.json", canonical_dump(summary));

  if (cfg.format == "table") {
    out << std::left << std::setw(24) << "triple" << std::setw(4) << "n";
    const VerificationReport blank(MarkovTriple::root(), 2);
    for (const auto* c : blank.clauses()) out << std::setw(18) << c->name;
    if (cfg.timing) out << std::setw(10) << "seconds";
    out << "result\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
      out << std::setw(24) << sorted_string(items[i].triple) << std::setw(4) << items[i].dim;
      if (!reports[i]) {
        out << "ERROR " << errors[i] << "\n";
        continue;
      }
      for (const auto* c : reports[i]->clauses()) out << std::setw(18) << clause_mark(*c);
      if (cfg.timing) out << std::setw(10) << std::fixed << std::setprecision(4) << reports[i]->seconds;
      out << (reports[i]->passed() ? "PASS" : "FAIL") << "\n";
    }
  } else {
    out << canonical_dump(summary);
  }
  if (errored) return kExitError;
  return failed ? kExitFailed : kExitOk;
}

int cmd_distinguish(const RunConfig& cfg, std::ostream& out) {
  const auto triples = cfg.selected_triples();
  auto builder = make_builder(cfg);
  // Construct in parallel; the comparison itself reads the memo.
  std::vector<std::pair<MarkovTriple, std::size_t>> jobs;
  for (auto n : cfg.dims)
    for (const auto& t : triples) jobs.emplace_back(t, n);
  run_parallel(jobs.size(), cfg.workers, [&](std::size_t i) { builder->build(jobs[i].first, jobs[i].second); });

  bool passed = true;
  Json results = Json::array();
  std::ostringstream table;
  for (auto n : cfg.dims) {
    const auto d = distinguish(triples, n, *builder);
    passed = passed && d.passed();
    const auto j = to_json(d);
    emit_file(cfg, std::filesystem::path("distinguish") / ("n" + std::to_string(n) + ".json"), canonical_dump(j));
    results.push_back(j);
    table << "n=" << n << (d.passed() ? "  all pairs certified" : "  CERTIFICATE FAILURE") << "\n";
    for (std::size_t i = 0; i < triples.size(); ++i) {
      table << "  " << std::left << std::setw(24) << sorted_string(triples[i]);
      for (const auto& c : d.matrix[i])
        table << (c.ok() ? "" : "!") << (c.equivalent ? "=" : (c.method == "edge-lengths" ? "L" : "X")) << " ";
      table << "\n";
    }
  }
  if (cfg.format == "table") {
    out << table.str() << "(= equivalent with witness, L distinct edge lengths, X no map found, ! wrong)\n";
  } else {
    out << canonical_dump(Json{{"passed", passed}, {"results", results}});
  }
  return passed ? kExitOk : kExitFailed;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
  const auto& t = single_triple(cfg);
  const auto n = single_dim(cfg);
  if (n > 3) throw UnsupportedDim("rendering supports two or three variables, got " + std::to_string(n));
  auto builder = make_builder(cfg);
  const auto svg = render_svg(*builder->build(t, n), cfg.render);
  if (cfg.out) {
    const auto path = *cfg.out / "render" / (record_key(t, n) + ".svg");
    write_file(path, svg);
    out << path.string() << "\n";
  } else {
    out << svg;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov-triple potentials: construction, Newton polytopes and verification", "lvt"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir, max_text;
  std::vector<std::string> triple_texts;
  std::size_t dim = 2;
  std::vector<std::size_t> dims;
  bool no_grid = false, no_labels = false;

  const CLI::Validator triple_check(
      [](std::string& s) -> std::string {
        try {
          parse_triple(s);
          return "";
        } catch (const Error& e) {
          return e.what();
        }
      },
      "A,B,C");
  const CLI::Validator positive_check(
      [](std::string& s) -> std::string {
        Integer v;
        if (s.empty() || v.set_str(s, 10) != 0) return "not an integer: " + s;
        if (v <= 0) return "bound must be positive";
        return "";
      },
      "POSITIVE");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory (files and potential cache)")->envname("LVT_OUT");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* tree = app.add_subcommand("tree", "enumerate Markov triples up to a bound");
  tree->add_option("--max", max_text, "largest entry")->required()->check(positive_check);
  common(tree);

  auto* potential = app.add_subcommand("potential", "construct the potential of a triple");
  auto* newton = app.add_subcommand("newton", "Newton polytope of the potential of a triple");
  auto* render = app.add_subcommand("render", "SVG drawing of the Newton polytope (n = 2 or 3)");
  for (auto* sub : {potential, newton, render}) {
    sub->add_option("triple", triple_texts, "Markov triple a,b,c")->required()->expected(1)->check(triple_check);
    sub->add_option("--dim", dim, "number of variables")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    common(sub);
  }
  render->add_flag("--no-grid", no_grid, "omit the lattice grid");
  render->add_flag("--no-labels", no_labels, "omit length and vertex labels");

  auto* verify = app.add_subcommand("verify", "verify the simplex theorem for a batch of triples");
  auto* dist = app.add_subcommand("distinguish", "pairwise non-equivalence certificates");
  for (auto* sub : {verify, dist}) {
    sub->add_option("triples", triple_texts, "explicit triples (otherwise all up to --max)")->check(triple_check);
    sub->add_option("--max", max_text, "largest entry")->check(positive_check);
    sub->add_option("--dims", dims, "comma-separated numbers of variables")
        ->delimiter(',')
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    sub->add_option("--dim", dims, "alias of --dims")->delimiter(',')->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    common(sub);
  }
  verify->add_flag("--timing", cfg.timing, "include wall-clock timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (!out_dir.empty()) cfg.out = out_dir;
  if (!max_text.empty()) cfg.max_entry = Integer(max_text);
  for (const auto& s : triple_texts) cfg.triples.push_back(parse_triple(s));
  cfg.render.grid = !no_grid;
  cfg.render.labels = !no_labels;
  if (chosen == verify || chosen == dist) {
    if (cfg.triples.empty() && cfg.max_entry == 0) {
      err << cfg.command << ": give triples or --max\n";
      return kExitUsage;
    }
    if (dims.empty()) dims = chosen == verify ? std::vector<std::size_t>{2, 3, 4, 5} : std::vector<std::size_t>{3};
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    cfg.dims = dims;
  } else {
    cfg.dims = {dim};
  }

  try {
    if (chosen == tree) return cmd_tree(cfg, out);
    if (chosen == potential) return cmd_potential(cfg, out);
    if (chosen == newton) return cmd_newton(cfg, out);
    if (chosen == verify) return cmd_verify(cfg, out, err);
    if (chosen == dist) return cmd_distinguish(cfg, out);
    return cmd_render(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace lvt
