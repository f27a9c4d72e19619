#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "ordo/learn.hpp"

using namespace ordo;

namespace {

std::size_t count_label(const dtree::Dataset& d, dtree::Label l) {
  return std::count_if(d.rows.begin(), d.rows.end(), [&](const auto& r) { return r.label == l; });
}

std::vector<SourceFile> parse_all(const std::vector<testing::GeneratedFile>& gen) {
  std::vector<SourceFile> out;
  for (const auto& g : gen) out.push_back(parse_file(g.path, g.text));
  return out;
}

std::string to_xml(const OrderModel& m) {
  std::ostringstream out;
  write_model(out, m);
  return out.str();
}

RegionTable single_leaf_table() {
  dtree::DecisionTree t;
  t.schema = category_schema();
  t.root.label = dtree::Label::Equal;
  return build_initial_regions(t);
}

}  // namespace

TEST_CASE("category samples cover every ordered pair and every self pair") {
  const std::vector<SourceFile> one = {parse_file("A.java", "class A {\n  int a;\n  void b() {}\n}\n")};
  const auto d = build_category_samples(one, {});
  REQUIRE(d.rows.size() == 4);
  CHECK(count_label(d, dtree::Label::Before) == 1);
  CHECK(count_label(d, dtree::Label::After) == 1);
  CHECK(count_label(d, dtree::Label::Equal) == 2);
  CHECK(d.schema == category_schema());

  const std::vector<SourceFile> single = {parse_file("B.java", "class B { int x; }")};
  const auto s = build_category_samples(single, {});
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].label == dtree::Label::Equal);
}

TEST_CASE("k children give k squared samples") {
  for (const auto& gen : testing::generate_corpus({.files = 3, .per_region = 2})) {
    const std::vector<SourceFile> files = {parse_file(gen.path, gen.text)};
    const std::size_t k = files[0].top_level[0].children.size();
    const auto d = build_category_samples(files, {});
    CHECK(d.rows.size() == k * k);
    CHECK(count_label(d, dtree::Label::Equal) == k);
    CHECK(count_label(d, dtree::Label::Before) == k * (k - 1) / 2);
  }
}

TEST_CASE("inner class pairs carry the inner context") {
  const std::vector<SourceFile> files = {
      parse_file("O.java", "class O {\n  class I {\n    int a;\n    int b;\n  }\n}\n")};
  const auto d = build_category_samples(files, {});
  // One pair set for O's single child, four for I's two children.
  REQUIRE(d.rows.size() == 5);
  const std::size_t nested = d.schema.index("NESTED");
  const auto inner = *d.schema.attributes[nested].find(std::string(to_string(Context::InnerClass)));
  std::size_t inner_rows = 0;
  for (const auto& r : d.rows) inner_rows += r.values[nested] == inner;
  CHECK(inner_rows == 4);
}

TEST_CASE("ordering samples stay within one container") {
  auto table = single_leaf_table();
  const std::vector<SourceFile> files = {
      parse_file("A.java", "class A {\n  void m1() {}\n  void m2() {}\n  int f;\n}\n"),
      parse_file("B.java", "class B {\n  void m3() {}\n}\n")};
  const auto assigned = assign_regions(table, files, {});
  std::vector<std::uint32_t> ids;
  for (const auto& r : table.regions) ids.push_back(r.id);
  const auto d = build_ordering_samples(files, assigned.assignment, ids, {});
  // Methods of A: two directed plus two self samples. A's field: one self
  // sample. B's method: one self sample.
  CHECK(d.rows.size() == 6);
  CHECK(count_label(d, dtree::Label::Before) == 1);
  CHECK(count_label(d, dtree::Label::After) == 1);
  CHECK(d.schema == ordering_schema(ids));
}

TEST_CASE("a one-file corpus gives a degenerate but total model") {
  std::vector<SourceFile> files = {parse_file("A.java", "class A {\n  int a;\n  void b() {}\n}\n")};
  const auto result = learn_from_files(std::move(files), {});
  CHECK(result.report.significant_arcs == 0);
  CHECK_NOTHROW(check_coverage(result.model));
  for (const auto& [ctx, regions] : result.model.contexts) CHECK(regions.size() <= 2);
  CHECK(result.model.meta.file_count == 1);
}

TEST_CASE("a corpus without interfaces leaves one blank-line interface region") {
  const auto result = learn_from_files(parse_all(testing::generate_corpus({.files = 6})), {});
  const auto& regions = result.model.regions(Context::Interface);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].prefix.kind == CommentKind::BlankLines);
  CHECK(regions[0].between.kind == CommentKind::BlankLines);
}

TEST_CASE("planted conventions are recovered with their comments") {
  const auto result = learn_from_files(parse_all(testing::generate_corpus({.files = 20})), {});
  const auto& regions = result.model.regions(Context::Class);
  const auto& headers = testing::planted_headers();
  REQUIRE(regions.size() >= headers.size());
  for (std::size_t i = 0; i < headers.size(); ++i) {
    INFO("region " << i);
    CHECK(regions[i].prefix.kind == CommentKind::Literal);
    CHECK(regions[i].prefix.text == testing::planted_prefix(i));
  }
  CHECK(result.report.files == 20);
  CHECK(result.report.category_samples == result.category_data.rows.size());
}

TEST_CASE("learning is deterministic") {
  const auto gen = testing::generate_corpus({.files = 8, .seed = 9, .inner_class = true});
  LearnConfig cfg;
  cfg.created = "2026-01-01T00:00:00Z";
  cfg.corpus_name = "det";
  const auto a = to_xml(learn_from_files(parse_all(gen), cfg).model);
  auto reversed = parse_all(gen);
  std::reverse(reversed.begin(), reversed.end());
  const auto b = to_xml(learn_from_files(std::move(reversed), cfg).model);
  CHECK(a == b);
}

TEST_CASE("learning from a directory") {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "ordo_learn_dir";
  fs::remove_all(root);
  fs::create_directories(root);
  LearnConfig cfg;
  cfg.corpus_root = root;
  CHECK_THROWS_AS(learn_model(cfg), EmptyCorpus);

  testing::write_corpus(root, testing::generate_corpus({.files = 4}));
  std::ofstream(root / "Broken.java") << "class Broken {\n";
  const auto result = learn_model(cfg);
  CHECK(result.report.files == 4);
  CHECK(result.report.skipped == 1);
  CHECK(result.model.meta.corpus == "ordo_learn_dir");
  std::ostringstream report;
  result.report.write(report, result.model);
  CHECK_FALSE(report.str().empty());
  fs::remove_all(root);
}
