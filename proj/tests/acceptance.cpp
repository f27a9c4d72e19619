// Acceptance checks: one PASS/FAIL line per criterion; exits non-zero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "ordo/cli.hpp"
#include "ordo/comments.hpp"
#include "ordo/dtree.hpp"
#include "ordo/eval.hpp"
#include "ordo/insert.hpp"
#include "ordo/learn.hpp"
#include "ordo/model.hpp"
#include "ordo/regions.hpp"
#include "random_model.hpp"

namespace fs = std::filesystem;
using namespace ordo;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations; the first few are reported.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Verdict verdict(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failed: " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ordo_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<SourceFile> parse_all(const std::vector<testing::GeneratedFile>& gen) {
  std::vector<SourceFile> out;
  for (const auto& g : gen) out.push_back(parse_file(g.path, g.text));
  return out;
}

const Component* parent_in(const Component& c, const Component& x) {
  for (const auto& k : c.children) {
    if (&k == &x) return &c;
    if (const Component* p = parent_in(k, x)) return p;
  }
  return nullptr;
}

const Component* parent_of(const SourceFile& f, const Component& x) {
  for (const auto& top : f.top_level) {
    if (const Component* p = parent_in(top, x)) return p;
  }
  return nullptr;
}

ComponentTraits probe(Kind kind, Protection protection, bool is_static, bool is_final) {
  ComponentTraits t;
  t.kind = kind;
  t.protection = protection;
  t.is_static = is_static;
  t.is_final = is_final;
  return t;
}

// 1. Planted conventions come back as the region sequence with verbatim
// section comments.
Verdict planted_recovery() {
  Checker c;
  const fs::path root = scratch("planted");
  const auto gen = testing::generate_corpus({.files = 25, .seed = 101});
  testing::write_corpus(root, gen);
  LearnConfig cfg;
  cfg.corpus_root = root;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = learn_model(cfg);
  const double secs = seconds_since(t0);
  fs::remove_all(root);

  const OrderModel& m = result.model;
  const std::vector<ComponentTraits> probes = {
      probe(Kind::Field, Protection::Private, true, true),
      probe(Kind::Field, Protection::Private, false, false),
      probe(Kind::Constructor, Protection::Public, false, false),
      probe(Kind::Method, Protection::Public, false, false),
      probe(Kind::Method, Protection::Private, false, false),
  };
  const auto& regions = m.regions(Context::Class);
  c.expect(regions.size() == probes.size() + 1,
           "CLASS has " + std::to_string(regions.size()) + " regions, expected 5 planted plus one catch-all");
  for (std::size_t i = 0; i < probes.size() && i < regions.size(); ++i) {
    const std::string tag = "region " + std::to_string(i);
    c.expect(m.find_region(Context::Class, probes[i]) == i, tag + " does not hold its planted members");
    c.expect(regions[i].prefix.kind == CommentKind::Literal && regions[i].prefix.text == testing::planted_prefix(i),
             tag + " prefix is not the planted literal");
    const std::string between = i < 2 ? "\n    " : "\n\n    ";
    c.expect(regions[i].between.kind == CommentKind::Literal && regions[i].between.text == between,
             tag + " separator is not the planted literal");
  }
  for (Context ctx : {Context::Interface, Context::InnerClass, Context::InnerInterface}) {
    c.expect(m.regions(ctx).size() == 1, std::string(to_string(ctx)) + " is not a single region");
  }
  c.expect(secs < 60.0, "learning took " + fixed(secs) + " s");
  return c.verdict(std::to_string(gen.size()) + " files, 5 planted CLASS regions and their comments recovered in " +
                   fixed(secs, 3) + " s");
}

// Picks `per_file` distinct removal candidates per file with one generator.
template <typename Fn>
void seeded_trials(const std::vector<SourceFile>& files, std::size_t per_file, std::uint64_t seed, Fn fn) {
  std::mt19937_64 rng(seed);
  for (const auto& f : files) {
    auto pool = removal_candidates(f);
    for (std::size_t k = 0; k < per_file && !pool.empty(); ++k) {
      const std::size_t pick = rng() % pool.size();
      fn(f, *pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
}

// 2. Remove-and-reinsert reproduces conformant files, and unordered regions
// receive members at their end.
Verdict reinsertion_fixpoint() {
  Checker c;
  const auto files = parse_all(testing::generate_corpus({.files = 50, .constructors = 1, .seed = 202}));
  const OrderModel m = learn_from_files(files, {}).model;
  std::size_t trials = 0;
  std::size_t exact = 0;
  seeded_trials(files, 4, 2024, [&](const SourceFile& f, const Component& x) {
    const auto t = reinsert_trial(m, f, x);
    ++trials;
    const bool ok = t.row.delta == 0 && t.reinserted == f.text;
    exact += ok;
    c.expect(ok, f.path.string() + " " + t.row.name + " delta " + std::to_string(t.row.delta));
  });
  c.expect(trials == 200, std::to_string(trials) + " trials instead of 200");

  // Companion corpus: several constructors per class and shuffled private
  // methods, so some regions stay unordered.
  const auto loose = parse_all(testing::generate_corpus({.files = 50, .seed = 203, .order_private_methods = false}));
  const OrderModel lm = learn_from_files(loose, {}).model;
  std::size_t eligible = 0;
  std::size_t at_end = 0;
  seeded_trials(loose, 4, 2025, [&](const SourceFile& f, const Component& x) {
    const Component* container = parent_of(f, x);
    const Context ctx = container->member_context;
    const std::size_t region = find_region_for(lm, ctx, x);
    if (lm.regions(ctx)[region].ordering) return;
    const auto self = std::find_if(container->children.begin(), container->children.end(),
                                   [&](const Component& k) { return &k == &x; });
    const bool last = std::none_of(self + 1, container->children.end(), [&](const Component& k) {
      return find_region_for(lm, ctx, k) == region;
    });
    if (last) return;
    ++eligible;
    const auto t = reinsert_trial(lm, f, x);
    at_end += t.plan.region_end;
    c.expect(t.plan.region_end, f.path.string() + " " + t.row.name + " not placed at region end");
  });
  c.expect(eligible > 0, "no unordered non-last trials in the companion corpus");
  return c.verdict(std::to_string(exact) + "/" + std::to_string(trials) + " trials exact; " +
                   std::to_string(at_end) + "/" + std::to_string(eligible) + " unordered non-last trials at region end");
}

// 3. Root splits agree with an independent gain-ratio oracle; cleaned trees
// are antisymmetric.
Verdict tree_oracle() {
  Checker c;
  std::mt19937_64 rng(303);
  std::size_t splits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_dataset(rng);
    dtree::TrainOptions opt;
    opt.prune = false;
    const auto t = dtree::train(d, opt);
    const auto expected = testing::oracle_root_split(d, opt.min_leaf);
    const bool ok = expected ? !t.root.is_leaf() && static_cast<std::size_t>(t.root.attribute) == *expected
                             : t.root.is_leaf();
    splits += expected.has_value();
    c.expect(ok, "dataset " + std::to_string(trial) + " root split differs");
  }
  std::size_t rows = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto [d, swap] = testing::random_swap_dataset(rng);
    auto t = dtree::train(d);
    t = dtree::cleanup_significance(std::move(t));
    t = dtree::cleanup_consistency(std::move(t), swap);
    for (const auto& row : d.rows) {
      ++rows;
      const auto a = dtree::classify(t, row.values);
      const auto b = dtree::classify(t, testing::swap_row(row.values, swap));
      c.expect(a == dtree::opposite(b), "swap dataset " + std::to_string(trial) + " not antisymmetric");
    }
  }
  return c.verdict("100 datasets match the oracle (" + std::to_string(splits) + " with a split); " +
                   std::to_string(rows) + " swapped rows antisymmetric");
}

// 4. Every threshold passes at its boundary and fails one below.
Verdict thresholds() {
  Checker c;
  auto leaf_label = [](dtree::Counts counts) {
    dtree::DecisionTree t;
    t.schema.attributes.push_back({"A", {"T", "F"}});
    t.root.counts = counts;
    t.root.label = dtree::Label::Before;
    return dtree::cleanup_significance(std::move(t)).root.label;
  };
  c.expect(leaf_label({5, 0, 0}) == dtree::Label::Before, "leaf with 5 agreeing rows equalized");
  c.expect(leaf_label({4, 0, 0}) == dtree::Label::Equal, "leaf with 4 agreeing rows kept");

  RegionGraph g;
  g.add(1, 2, 4);
  c.expect(significant(1, 2, g), "arc weight 4 not significant");
  RegionGraph h;
  h.add(1, 2, 3);
  c.expect(!significant(1, 2, h), "arc weight 3 significant");

  auto samples = [](std::size_t copies, std::size_t others) {
    std::vector<std::string> s(copies, "// Section\n");
    for (std::size_t i = 0; i < others; ++i) s.push_back("// other " + std::to_string(i) + "\n");
    return s;
  };
  c.expect(accepted_mode(samples(4, 2), {}).has_value(), "mode of 4 rejected");
  c.expect(!accepted_mode(samples(3, 2), {}).has_value(), "mode of 3 accepted");
  c.expect(accepted_mode(samples(4, 12), {}).has_value(), "mode at 25% rejected");
  c.expect(!accepted_mode(samples(4, 13), {}).has_value(), "mode below 25% accepted");

  c.expect(bucket_callers(2) == Callers::Two, "2 callers not TWO");
  c.expect(bucket_callers(3) == Callers::Many, "3 callers not MANY");

  const LearnConfig defaults;
  c.expect(defaults.min_leaf_agree == 5 && defaults.min_arc == 4 && defaults.min_mode == 4 &&
               defaults.mode_num == 1 && defaults.mode_den == 4,
           "learning defaults differ");
  return c.verdict("leaf agree 5/4, arc weight 4/3, mode 4/3 and 4 of 16/17, callers MANY at 3");
}

// 5. The region sort is total on random graphs and models survive XML.
Verdict totality_and_round_trip() {
  Checker c;
  std::mt19937_64 rng(505);
  std::size_t cyclic = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 1 + rng() % 10;
    RegionTable table;
    for (std::uint32_t i = 0; i < n; ++i) {
      Region r;
      r.id = i;
      r.category.types = {Kind::Method};
      r.members = 1;
      table.regions.push_back(r);
    }
    table.next_id = n;
    RegionGraph graph;
    const std::uint32_t arcs = rng() % (3 * n + 1);
    for (std::uint32_t k = 0; k < arcs; ++k) {
      const std::uint32_t a = rng() % n;
      const std::uint32_t b = rng() % n;
      if (a != b) graph.add(a, b, 1 + rng() % 9);
    }
    for (const auto& [arc, w] : graph.arcs) cyclic += arc.first < arc.second && graph.weight(arc.second, arc.first) > 0;
    const auto groups = top_sort_merge(graph, graph, table);
    std::vector<std::uint32_t> seen;
    for (const auto& group : groups.at(Context::Class)) seen.insert(seen.end(), group.begin(), group.end());
    std::sort(seen.begin(), seen.end());
    std::vector<std::uint32_t> expected(n);
    for (std::uint32_t i = 0; i < n; ++i) expected[i] = i;
    c.expect(seen == expected, "graph " + std::to_string(trial) + " lost or repeated a region");
  }
  for (int trial = 0; trial < 50; ++trial) {
    const OrderModel m = testing::random_model(rng);
    std::ostringstream out;
    write_model(out, m);
    std::istringstream in(out.str());
    c.expect(read_model(in) == m, "model " + std::to_string(trial) + " did not round trip");
  }
  return c.verdict("1000 graphs (" + std::to_string(cyclic) + " two-cycles) sorted totally; 50 models round trip");
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t b = 0;
  for (;;) {
    const auto e = line.find('\t', b);
    out.push_back(line.substr(b, e == std::string::npos ? std::string::npos : e - b));
    if (e == std::string::npos) break;
    b = e + 1;
  }
  return out;
}

// 6. The eval report has the expected columns and its summary lines agree
// with counts recomputed from the rows.
Verdict eval_report() {
  Checker c;
  const fs::path fixture = ORDO_FIXTURE_DIR;
  const fs::path work = scratch("eval");
  const std::string model = (work / "model.xml").string();
  std::ostringstream sink;
  std::ostringstream err;
  const int learned = cli::run({"learn", "--corpus", fixture.string(), "--out", model}, sink, err);
  c.expect(learned == 0, "learn on the fixture failed: " + err.str());
  std::ostringstream out;
  const std::vector<std::string> args = {"eval", "--model", model, "--files", fixture.string(), "--seed", "6"};
  const int code = cli::run(args, out, err);
  std::ostringstream again;
  cli::run(args, again, err);
  fs::remove_all(work);
  c.expect(code == 0, "eval exited " + std::to_string(code));
  c.expect(out.str() == again.str(), "eval output differs between runs");

  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  c.expect(line == "File\tType\tName\tDelta\tRegion End", "header is '" + line + "'");
  std::size_t rows = 0;
  std::size_t exact = 0;
  std::size_t end = 0;
  std::vector<long long> abs;
  std::map<std::string, std::string> summary;
  while (std::getline(lines, line)) {
    const auto f = split_tabs(line);
    if (line.starts_with("# ")) {
      c.expect(f.size() == 2, "summary line '" + line + "'");
      if (f.size() == 2) summary[f[0].substr(2)] = f[1];
      continue;
    }
    c.expect(f.size() == 5, "row '" + line + "' does not have five columns");
    if (f.size() != 5) continue;
    ++rows;
    c.expect(f[0].ends_with(".java"), "file column '" + f[0] + "'");
    const bool kind_ok = std::any_of(kAllKinds.begin(), kAllKinds.end(), [&](Kind k) { return to_string(k) == f[1]; });
    c.expect(kind_ok, "type column '" + f[1] + "'");
    c.expect(!f[2].empty(), "empty name");
    std::size_t used = 0;
    long long delta = 0;
    try {
      delta = std::stoll(f[3], &used);
    } catch (const std::exception&) {
    }
    c.expect(used == f[3].size() && used > 0, "delta column '" + f[3] + "'");
    c.expect(f[4] == "true" || f[4] == "false", "region end column '" + f[4] + "'");
    exact += delta == 0;
    end += f[4] == "true";
    abs.push_back(delta < 0 ? -delta : delta);
  }
  std::sort(abs.begin(), abs.end());
  const std::string n = std::to_string(rows);
  c.expect(rows == 12, std::to_string(rows) + " rows instead of 12");
  c.expect(summary["exact"] == std::to_string(exact) + "/" + n, "exact summary " + summary["exact"]);
  c.expect(summary["region_end"] == std::to_string(end) + "/" + n, "region end summary " + summary["region_end"]);
  const std::string median = abs.empty() ? "0" : std::to_string(abs[(abs.size() - 1) / 2]);
  c.expect(summary["median_abs_delta"] == median, "median summary " + summary["median_abs_delta"]);
  return c.verdict(n + " rows in File/Type/Name/Delta/Region End columns; exact " + std::to_string(exact) + "/" + n +
                   ", region end " + std::to_string(end) + "/" + n + ", median |delta| " + median + " recomputed");
}

// Smallest method body size that reaches `loc` lines over `files` files.
std::vector<testing::GeneratedFile> corpus_of(std::size_t files, std::size_t loc, std::uint64_t seed) {
  for (std::size_t body = 1;; ++body) {
    auto gen = testing::generate_corpus({.files = files, .body_lines = body, .seed = seed, .inner_class = true});
    if (testing::line_count(gen) >= loc) return gen;
  }
}

// 7. Learning stays within the time envelope at both corpus sizes.
Verdict performance() {
  Checker c;
  std::string summary;
  const struct {
    std::size_t files;
    std::size_t loc;
    double limit;
  } sizes[] = {{50, 18000, 60.0}, {235, 88000, 300.0}};
  for (const auto& s : sizes) {
    const auto gen = corpus_of(s.files, s.loc, 700 + s.files);
    const fs::path root = scratch("perf" + std::to_string(s.files));
    testing::write_corpus(root, gen);
    LearnConfig cfg;
    cfg.corpus_root = root;
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = learn_model(cfg);
    const double secs = seconds_since(t0);
    fs::remove_all(root);
    const std::size_t lines = testing::line_count(gen);
    c.expect(result.report.files == s.files, std::to_string(result.report.files) + " files learned");
    c.expect(secs <= s.limit, std::to_string(s.files) + " files took " + fixed(secs) + " s");
    summary += (summary.empty() ? "" : "; ") + std::to_string(s.files) + " files/" + std::to_string(lines) +
               " lines in " + fixed(secs) + " s (limit " + fixed(s.limit, 0) + " s)";
  }
  return c.verdict(summary);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"planted-model recovery", planted_recovery},
      {"reinsertion fixpoint", reinsertion_fixpoint},
      {"decision-tree oracle equivalence", tree_oracle},
      {"threshold fidelity", thresholds},
      {"totality and round trip", totality_and_round_trip},
      {"eval report format", eval_report},
      {"performance envelope", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
