#include "ordo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ordo/eval.hpp"
#include "ordo/extract.hpp"
#include "ordo/insert.hpp"
#include "ordo/learn.hpp"
#include "ordo/model.hpp"
#include "ordo/props.hpp"

namespace ordo::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw IoError("cannot read " + p.string() + ": no such file");
  try {
    return read_source(p);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

void write_file(const fs::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + p.string());
}

OrderModel load_model(const fs::path& p) {
  std::istringstream in(read_file(p));
  return read_model(in);
}

SourceFile load_source(const fs::path& p) { return parse_file(p, read_file(p)); }

NamePatternConfig patterns_from(const std::string& flag) {
  std::string file = flag;
  if (file.empty()) {
    if (const char* env = std::getenv("ORDO_PATTERNS"); env && *env) file = env;
  }
  if (file.empty()) return default_patterns();
  NamePatternConfig cfg = parse_patterns(read_file(file));
  cfg.set_source(file);
  return cfg;
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    try {
      t = static_cast<std::time_t>(std::stoll(epoch));
    } catch (const std::exception&) {
    }
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

// Whitespace from the start of the line holding `pos` up to `pos`, or ""
// when other text precedes `pos` on that line.
std::string line_indent(std::string_view text, std::size_t pos) {
  std::size_t b = pos;
  while (b > 0 && (text[b - 1] == ' ' || text[b - 1] == '\t')) --b;
  if (b > 0 && text[b - 1] != '\n') return {};
  return std::string(text.substr(b, pos - b));
}

std::string member_indent(const SourceFile& file, const Component& container) {
  if (!container.children.empty()) return line_indent(file.text, container.children.front().span.begin);
  return line_indent(file.text, container.span.begin) + "    ";
}

const Component* find_container(const SourceFile& file, const std::string& name) {
  if (file.top_level.empty()) return nullptr;
  if (name.empty()) return &file.top_level.front();
  const Component* found = nullptr;
  auto visit = [&](const Component& c) {
    if (!found && c.is_type() && (c.name == name || qualified_name(file, c) == name)) found = &c;
  };
  for (const auto& top : file.top_level) {
    visit(top);
    for_each_descendant(top, visit);
  }
  return found;
}

std::vector<fs::path> expand_files(const std::vector<std::string>& args) {
  std::vector<fs::path> out;
  for (const auto& a : args) {
    std::error_code ec;
    if (fs::is_directory(a, ec)) {
      std::vector<fs::path> found;
      for (fs::recursive_directory_iterator it(a, ec), end; !ec && it != end; it.increment(ec)) {
        if (it->is_regular_file(ec) && it->path().extension() == ".java") found.push_back(it->path());
      }
      if (ec) throw IoError("cannot list " + a + ": " + ec.message());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(a);
    }
  }
  return out;
}

struct Options {
  // learn
  std::string corpus;
  std::string out = "ordermodel.xml";
  bool include_tests = false;
  std::string patterns;
  std::string dump_samples;
  std::string name;
  std::uint32_t min_mode = 4;
  std::uint32_t min_arc = 4;
  std::uint32_t min_leaf_agree = 5;
  // shared
  std::string model;
  std::vector<std::string> files;
  // insert
  std::string file;
  std::string snippet;
  std::string into;
  bool in_place = false;
  bool dry_run = false;
  // reorder
  bool keep_comments = false;
  // eval
  std::size_t per_file = 4;
  std::uint64_t seed = 0;
};

int cmd_learn(const Options& o, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_directory(o.corpus, ec)) throw IoError("corpus directory not found: " + o.corpus);
  LearnConfig cfg;
  cfg.corpus_root = o.corpus;
  cfg.exclude_tests = !o.include_tests;
  cfg.patterns = patterns_from(o.patterns);
  cfg.min_mode = o.min_mode;
  cfg.min_arc = o.min_arc;
  cfg.min_leaf_agree = o.min_leaf_agree;
  cfg.corpus_name = o.name.empty() ? fs::weakly_canonical(o.corpus).filename().string() : o.name;
  cfg.created = utc_timestamp();
  LearnResult r = learn_model(cfg);
  std::ostringstream xml;
  write_model(xml, r.model);
  write_file(o.out, xml.str());
  if (!o.dump_samples.empty()) {
    fs::create_directories(o.dump_samples, ec);
    if (ec) throw IoError("cannot create " + o.dump_samples + ": " + ec.message());
    std::ostringstream cat;
    std::ostringstream ord;
    r.category_data.write_csv(cat);
    r.ordering_data.write_csv(ord);
    write_file(fs::path(o.dump_samples) / "category.csv", cat.str());
    write_file(fs::path(o.dump_samples) / "ordering.csv", ord.str());
  }
  r.report.write(out, r.model);
  for (const auto& w : r.report.warnings) err << "warning: " << w << '\n';
  return kOk;
}

std::string describe_neighbor(const SourceFile& file, const Component& container,
                              std::optional<std::size_t> i) {
  return i ? qualified_name(file, container.children[*i]) : "-";
}

int cmd_insert(const Options& o, std::ostream& out, std::istream& in) {
  const OrderModel m = load_model(o.model);
  const SourceFile file = load_source(o.file);
  std::string snippet;
  if (o.snippet.empty() || o.snippet == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    snippet = ss.str();
  } else {
    snippet = read_file(o.snippet);
  }
  const Component* container = find_container(file, o.into);
  if (!container) throw ParseError("no type named '" + o.into + "' in " + o.file, 0, 0);
  if (!container->is_type()) throw ParseError(o.into + " is not a type", 0, 0);
  const Component member = parse_member(snippet, *container);

  InsertionPlan plan = plan_insertion(m, *container, member, file);
  const std::string indent = member_indent(file, *container);
  const std::string_view before = plan.prepend.empty()
                                      ? std::string_view(file.text).substr(0, plan.position)
                                      : std::string_view(plan.prepend);
  const bool at_line_start = before.empty() || before.back() == '\n';
  if (plan.prepend.empty() && !at_line_start && plan.position == container->body.begin) {
    plan.prepend = "\n";
  }
  const bool indent_first = plan.prepend.empty() ? at_line_start : plan.prepend.back() == '\n';
  std::string text = indent_snippet(snippet, indent, indent_first);
  const std::string_view rest = std::string_view(file.text).substr(plan.position);
  if (!plan.append.empty() && plan.append.back() == '\n' && !rest.empty() && rest.front() != '\n' &&
      rest.front() != ' ' && rest.front() != '\t') {
    plan.append += line_indent(file.text, plan.position);
  } else if (plan.append.empty() && !rest.empty() && rest.front() == '}') {
    plan.append = "\n" + line_indent(file.text, plan.position);
  }

  if (o.dry_run) {
    const auto& spec = m.regions(container->member_context)[plan.region];
    out << "position\t" << plan.position << '\n' << "region\t" << plan.region << '\n' << "region_ids\t";
    for (std::size_t i = 0; i < spec.ids.size(); ++i) out << (i ? "," : "") << spec.ids[i];
    out << '\n'
        << "prepend\t" << escape(plan.prepend) << '\n'
        << "append\t" << escape(plan.append) << '\n'
        << "prior\t" << describe_neighbor(file, *container, plan.prior) << '\n'
        << "next\t" << describe_neighbor(file, *container, plan.next) << '\n'
        << "region_end\t" << (plan.region_end ? "true" : "false") << '\n';
    return kOk;
  }
  const std::string result = apply_insertion(file.text, plan, text);
  if (o.in_place) {
    write_file(o.file, result);
  } else {
    out << result;
  }
  return kOk;
}

int cmd_reorder(const Options& o, std::ostream& out, std::ostream& err) {
  const OrderModel m = load_model(o.model);
  for (const auto& p : expand_files(o.files)) {
    const SourceFile file = load_source(p);
    const ReorderResult r = reorder_file(m, file, o.keep_comments);
    for (const auto& w : r.warnings) err << "warning: " << p.string() << ": " << w << '\n';
    if (o.in_place) {
      if (r.text != file.text) write_file(p, r.text);
    } else {
      out << r.text;
    }
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const OrderModel m = load_model(o.model);
  bool any = false;
  for (const auto& p : expand_files(o.files)) {
    const SourceFile file = load_source(p);
    for (const auto& v : check_file(m, file)) {
      any = true;
      const auto line = 1 + std::count(file.text.begin(),
                                       file.text.begin() + static_cast<std::ptrdiff_t>(v.offset), '\n');
      out << p.string() << '\t' << line << '\t'
          << (v.type == Violation::Type::RegionOrder ? "region-order" : "reversed") << '\t'
          << (v.container.empty() ? "-" : v.container) << '\t' << v.first << '\t' << v.second << '\n';
    }
  }
  return any ? kViolations : kOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const OrderModel m = load_model(o.model);
  std::vector<SourceFile> files;
  for (const auto& p : expand_files(o.files)) files.push_back(load_source(p));
  EvalConfig cfg;
  cfg.per_file = o.per_file;
  cfg.seed = o.seed;
  const EvalResult r = run_eval(m, std::move(files), cfg);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  write_eval(out, r.rows);
  return kOk;
}

}  // namespace

std::string indent_snippet(std::string_view snippet, std::string_view indent, bool indent_first) {
  std::vector<std::string_view> lines;
  while (!snippet.empty() && (snippet.back() == '\n' || snippet.back() == '\r' ||
                              snippet.back() == ' ' || snippet.back() == '\t')) {
    snippet.remove_suffix(1);
  }
  while (!snippet.empty() && snippet.front() == '\n') snippet.remove_prefix(1);
  for (std::size_t b = 0; b <= snippet.size();) {
    const auto e = snippet.find('\n', b);
    const auto end = e == std::string_view::npos ? snippet.size() : e;
    lines.push_back(snippet.substr(b, end - b));
    b = end + 1;
  }
  std::size_t common = std::string_view::npos;
  for (const auto line : lines) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) common = std::min(common, first);
  }
  if (common == std::string_view::npos) common = 0;
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (i > 0) out += '\n';
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (i > 0 || indent_first) out += indent;
    out += line.substr(common);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Learns member-ordering conventions from Java code and applies them", "ordo"};
  app.require_subcommand(1);
  Options o;

  auto* learn = app.add_subcommand("learn", "learn a model from a corpus");
  learn->add_option("--corpus", o.corpus, "corpus root directory")->required();
  learn->add_option("--out", o.out, "model file to write")->capture_default_str();
  learn->add_flag("--include-tests", o.include_tests, "keep test sources");
  learn->add_option("--patterns", o.patterns, "name pattern file (default $ORDO_PATTERNS)");
  learn->add_option("--dump-samples", o.dump_samples, "write category.csv and ordering.csv here");
  learn->add_option("--name", o.name, "corpus name recorded in the model");
  learn->add_option("--min-mode", o.min_mode, "minimum comment mode count")->capture_default_str();
  learn->add_option("--min-arc", o.min_arc, "minimum significant arc weight")->capture_default_str();
  learn->add_option("--min-leaf-agree", o.min_leaf_agree, "minimum agreeing samples per leaf")
      ->capture_default_str();

  auto* insert = app.add_subcommand("insert", "insert a member into a file");
  insert->add_option("--model", o.model, "model file")->required();
  insert->add_option("--file", o.file, "target source file")->required();
  insert->add_option("--snippet", o.snippet, "member source (default stdin)");
  insert->add_option("--into", o.into, "target type (default the first top-level type)");
  insert->add_flag("--in-place", o.in_place, "rewrite the file");
  insert->add_flag("--dry-run", o.dry_run, "print the plan only");

  auto* reorder = app.add_subcommand("reorder", "rewrite files into model order");
  reorder->add_option("--model", o.model, "model file")->required();
  reorder->add_option("files", o.files, "source files or directories")->required();
  reorder->add_flag("--in-place", o.in_place, "rewrite the files");
  reorder->add_flag("--keep-comments", o.keep_comments, "keep comments the model does not know");

  auto* check = app.add_subcommand("check", "report members out of model order");
  check->add_option("--model", o.model, "model file")->required();
  check->add_option("files", o.files, "source files or directories")->required();

  auto* eval = app.add_subcommand("eval", "remove-and-reinsert evaluation");
  eval->add_option("--model", o.model, "model file")->required();
  eval->add_option("--files", o.files, "held-out source files or directories")->required();
  eval->add_option("--per-file", o.per_file, "components removed per file")->capture_default_str();
  eval->add_option("--seed", o.seed, "random seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ordo: " << e.what() << '\n';
    return kParse;
  }

  try {
    if (learn->parsed()) return cmd_learn(o, out, err);
    if (insert->parsed()) return cmd_insert(o, out, in);
    if (reorder->parsed()) return cmd_reorder(o, out, err);
    if (check->parsed()) return cmd_check(o, out);
    if (eval->parsed()) return cmd_eval(o, out, err);
  } catch (const IoError& e) {
    err << "ordo: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "ordo: " << e.what() << '\n';
    return kIo;
  } catch (const NoRegion& e) {
    err << "ordo: " << e.what() << '\n';
    return kNoRegion;
  } catch (const ParseError& e) {
    err << "ordo: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "ordo: " << e.what() << '\n';
    return kParse;
  }
  return kParse;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(args, out, err, std::cin);
}

}  // namespace ordo::cli
