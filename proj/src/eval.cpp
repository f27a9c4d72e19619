#include "ordo/eval.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace ordo {

namespace {

const Component* parent_of(const SourceFile& file, const Component& x) {
  auto path = path_to(file, x.id);
  if (!path || path->size() < 2) return nullptr;
  path->pop_back();
  return component_at(file, *path);
}

void collect_candidates(const Component& c, std::vector<const Component*>& out) {
  for (const auto& child : c.children) {
    if (c.children.size() >= 2) out.push_back(&child);
    if (child.is_type()) collect_candidates(child, out);
  }
}

}  // namespace

Removal remove_component(const OrderModel& m, const SourceFile& file, const Component& container,
                         const Component& x) {
  const auto& kids = container.children;
  const auto it = std::find_if(kids.begin(), kids.end(), [&](const Component& c) { return &c == &x; });
  if (it == kids.end()) throw std::invalid_argument("component is not a member of the container");
  const auto i = static_cast<std::size_t>(it - kids.begin());
  const Context ctx = container.member_context;
  const std::size_t rgn = find_region_for(m, ctx, x);

  std::size_t begin = x.leading_begin;
  std::size_t end = x.span.end;
  std::size_t location = x.leading_begin;
  if (i > 0 && find_region_for(m, ctx, kids[i - 1]) == rgn) {
    begin = kids[i - 1].span.end;
    location = begin;
  } else if (i + 1 < kids.size() && find_region_for(m, ctx, kids[i + 1]) == rgn) {
    begin = x.span.begin;
    end = kids[i + 1].span.begin;
    location = begin;
  }
  Removal out;
  out.text = file.text.substr(0, begin) + file.text.substr(end);
  out.location = location;
  return out;
}

std::vector<const Component*> removal_candidates(const SourceFile& file) {
  std::vector<const Component*> out;
  for (const auto& top : file.top_level) collect_candidates(top, out);
  return out;
}

TrialResult reinsert_trial(const OrderModel& m, const SourceFile& file, const Component& x) {
  const Component* container = parent_of(file, x);
  if (!container) throw std::invalid_argument("top-level components cannot be removed");
  auto container_path = path_to(file, container->id);

  TrialResult out;
  out.removal = remove_component(m, file, *container, x);
  const SourceFile removed = parse_file(file.path, out.removal.text);
  const Component* target = component_at(removed, *container_path);
  if (!target) throw ParseError("container lost after removal", 0, 0);

  out.plan = plan_insertion(m, *target, x, removed);
  out.reinserted = apply_insertion(removed.text, out.plan, file.span_text(x));
  out.row.file = file.path.string();
  out.row.kind = x.kind;
  out.row.name = qualified_name(file, x);
  out.row.delta = static_cast<std::int64_t>(out.plan.position) -
                  static_cast<std::int64_t>(out.removal.location);
  out.row.region_end = out.plan.region_end;
  return out;
}

EvalResult run_eval(const OrderModel& m, std::vector<SourceFile> files, const EvalConfig& cfg) {
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  std::mt19937_64 rng(cfg.seed);
  EvalResult out;
  for (const auto& file : files) {
    auto pool = removal_candidates(file);
    std::size_t n = cfg.per_file;
    if (pool.size() < n) {
      out.warnings.push_back(file.path.string() + ": only " + std::to_string(pool.size()) +
                             " removable components, using " + std::to_string(pool.size()));
      n = pool.size();
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pick = static_cast<std::size_t>(rng() % pool.size());
      const Component* x = pool[pick];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      try {
        out.rows.push_back(reinsert_trial(m, file, *x).row);
      } catch (const ParseError& e) {
        out.warnings.push_back(file.path.string() + ": " + qualified_name(file, *x) +
                               " skipped: " + e.what());
      }
    }
  }
  return out;
}

EvalSummary summarize(const std::vector<EvalRow>& rows) {
  EvalSummary s;
  s.rows = rows.size();
  std::vector<std::int64_t> abs_deltas;
  for (const auto& r : rows) {
    s.exact += r.delta == 0 ? 1 : 0;
    s.region_end += r.region_end ? 1 : 0;
    abs_deltas.push_back(r.delta < 0 ? -r.delta : r.delta);
  }
  if (!abs_deltas.empty()) {
    const auto mid = abs_deltas.begin() + static_cast<std::ptrdiff_t>((abs_deltas.size() - 1) / 2);
    std::nth_element(abs_deltas.begin(), mid, abs_deltas.end());
    s.median_abs_delta = *mid;
  }
  return s;
}

void write_eval(std::ostream& out, const std::vector<EvalRow>& rows) {
  out << "File\tType\tName\tDelta\tRegion End\n";
  for (const auto& r : rows) {
    out << r.file << '\t' << to_string(r.kind) << '\t' << r.name << '\t' << r.delta << '\t'
        << (r.region_end ? "true" : "false") << '\n';
  }
  const EvalSummary s = summarize(rows);
  out << "# exact\t" << s.exact << '/' << s.rows << '\n'
      << "# median_abs_delta\t" << s.median_abs_delta << '\n'
      << "# region_end\t" << s.region_end << '/' << s.rows << '\n';
}

}  // namespace ordo
