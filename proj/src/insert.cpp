#include "ordo/insert.hpp"

#include <algorithm>
#include <set>

namespace ordo {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\n'; }

// Whitespace between the last line break of `lead` and the end of `lead`.
std::string_view trailing_indent(std::string_view lead) {
  const auto nl = lead.rfind('\n');
  if (nl == std::string_view::npos) return {};
  const auto rest = lead.substr(nl + 1);
  return std::all_of(rest.begin(), rest.end(), [](char c) { return c == ' ' || c == '\t'; })
             ? rest
             : std::string_view{};
}

bool is_shape(CommentKind k) { return k == CommentKind::Shape || k == CommentKind::ShapeDedup; }

struct Gap {
  std::string text;
  bool shape = false;
};

class Reorderer {
 public:
  Reorderer(const OrderModel& m, const SourceFile& file, bool keep_comments)
      : m_(m), file_(file), keep_(keep_comments) {}

  ReorderResult run() {
    ReorderResult out;
    std::size_t cursor = 0;
    for (const auto& top : file_.top_level) {
      facts_ = compute_call_facts(top);
      out.text.append(file_.text, cursor, top.span.begin - cursor);
      out.text += render(top);
      cursor = top.span.end;
    }
    out.text.append(file_.text, cursor, std::string::npos);
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  std::string_view slice(std::size_t b, std::size_t e) const {
    return std::string_view(file_.text).substr(b, e - b);
  }

  std::string render(const Component& c) {
    if (!c.is_type() || c.children.empty()) return std::string(file_.span_text(c));
    std::string out(slice(c.span.begin, c.body.begin));
    out += render_body(c);
    out += slice(c.body.end, c.span.end);
    return out;
  }

  std::vector<std::size_t> order_children(const Component& c, const std::vector<std::size_t>& regions) {
    const auto& specs = m_.regions(c.member_context);
    const std::size_t n = c.children.size();
    std::vector<std::size_t> order;
    std::size_t max_region = 0;
    for (auto r : regions) max_region = std::max(max_region, r);
    for (std::size_t region = 0; region <= max_region && n > 0; ++region) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (regions[i] == region) members.push_back(i);
      }
      if (members.empty()) continue;
      const RegionSpec& spec = specs[region];
      if (!spec.ordering || members.size() < 2) {
        order.insert(order.end(), members.begin(), members.end());
        continue;
      }
      // Edges a -> b where the tree says a belongs before b.
      std::vector<std::vector<bool>> before(members.size(), std::vector<bool>(members.size(), false));
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
          if (a == b) continue;
          const auto verdict = compare_in_region(m_, spec, facts_, c.children[members[a]], c.children[members[b]]);
          if (verdict == dtree::Label::Before) before[a][b] = true;
          if (verdict == dtree::Label::After) before[b][a] = true;
        }
      }
      std::vector<bool> done(members.size(), false);
      std::vector<std::size_t> sorted;
      for (std::size_t step = 0; step < members.size(); ++step) {
        std::optional<std::size_t> pick;
        for (std::size_t b = 0; b < members.size() && !pick; ++b) {
          if (done[b]) continue;
          bool ready = true;
          for (std::size_t a = 0; a < members.size() && ready; ++a) {
            if (!done[a] && a != b && before[a][b]) ready = false;
          }
          if (ready) pick = b;
        }
        if (!pick) break;
        done[*pick] = true;
        sorted.push_back(members[*pick]);
      }
      if (sorted.size() != members.size()) {
        warnings_.push_back("cyclic ordering verdicts in " + qualified_name(file_, c) +
                            "; kept the existing order within a region");
        sorted = members;
      }
      order.insert(order.end(), sorted.begin(), sorted.end());
    }
    return order;
  }

  // Longest rendered scaffolding text that starts `lead`.
  std::size_t known_prefix(const std::vector<RegionSpec>& specs, std::string_view lead) const {
    std::size_t best = 0;
    auto consider = [&](const std::string& t) {
      if (t.size() > best && lead.starts_with(t)) best = t.size();
    };
    for (const auto& a : specs) {
      consider(a.prefix.render());
      consider(a.between.render());
      for (const auto& b : specs) consider(a.suffix.render() + b.prefix.render());
    }
    return best;
  }

  std::string gap_for(const Gap& gap, const Component& child, const std::vector<RegionSpec>& specs) {
    std::string out = gap.text;
    std::string_view kept;
    if (keep_) {
      std::string_view lead = child.leading_text;
      lead.remove_prefix(known_prefix(specs, lead));
      const auto first = std::find_if(lead.begin(), lead.end(), [](char ch) { return !is_space(ch); });
      if (first != lead.end()) {
        kept = lead.substr(static_cast<std::size_t>(first - lead.begin()));
        const std::string_view before = child.leading_text.substr(0, child.leading_text.size() - kept.size());
        if (gap.shape) {
          const auto ws = std::find_if(out.begin(), out.end(), [](char ch) { return !is_space(ch); });
          out.erase(ws, out.end());
        }
        if (out.empty() || out.back() == '\n') out += trailing_indent(before);
        out += kept;
        return out;
      }
    }
    if (out.empty() || out.back() == '\n') out += trailing_indent(child.leading_text);
    return out;
  }

  std::string render_body(const Component& c) {
    const auto& specs = m_.regions(c.member_context);
    const std::size_t n = c.children.size();
    std::vector<std::size_t> regions(n);
    for (std::size_t i = 0; i < n; ++i) regions[i] = find_region_for(m_, c.member_context, c.children[i]);
    const auto order = order_children(c, regions);

    std::string out;
    std::optional<std::size_t> prev_region;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Component& child = c.children[order[k]];
      const std::size_t r = regions[order[k]];
      Gap gap;
      if (!prev_region) {
        gap = {specs[r].prefix.render(), is_shape(specs[r].prefix.kind)};
      } else if (*prev_region == r) {
        gap = {specs[r].between.render(), is_shape(specs[r].between.kind)};
      } else {
        gap = {specs[*prev_region].suffix.render() + specs[r].prefix.render(),
               is_shape(specs[r].prefix.kind) || is_shape(specs[*prev_region].suffix.kind)};
      }
      out += gap_for(gap, child, specs);
      out += render(child);
      prev_region = r;
    }
    out += slice(c.children.back().span.end, c.body.end);
    return out;
  }

  const OrderModel& m_;
  const SourceFile& file_;
  bool keep_;
  CallFacts facts_;
  std::vector<std::string> warnings_;
};

bool contains(const Component& root, const Component& target) {
  if (&root == &target) return true;
  return std::any_of(root.children.begin(), root.children.end(),
                     [&](const Component& c) { return contains(c, target); });
}

std::string simple_name(const Component& c) {
  if (c.kind == Kind::Constructor) return "<init>";
  if (c.kind == Kind::Initializer) return c.modifiers.is_static ? "<clinit>" : "<instinit>";
  return c.name;
}

void check_container(const OrderModel& m, const SourceFile& file, const Component& c,
                     const CallFacts& facts, std::vector<Violation>& out) {
  const auto& specs = m.regions(c.member_context);
  std::vector<std::size_t> regions;
  for (const auto& child : c.children) regions.push_back(find_region_for(m, c.member_context, child));
  const std::string container = qualified_name(file, c);
  std::optional<std::size_t> max_at;
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    if (max_at && regions[i] < regions[*max_at]) {
      out.push_back({Violation::Type::RegionOrder, container, qualified_name(file, c.children[*max_at]),
                     qualified_name(file, c.children[i]), c.children[i].span.begin});
    }
    if (!max_at || regions[i] > regions[*max_at]) max_at = i;
  }
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    for (std::size_t j = i + 1; j < c.children.size(); ++j) {
      if (regions[i] != regions[j]) continue;
      const auto verdict = compare_in_region(m, specs[regions[i]], facts, c.children[i], c.children[j]);
      if (verdict == dtree::Label::After) {
        out.push_back({Violation::Type::Reversed, container, qualified_name(file, c.children[i]),
                       qualified_name(file, c.children[j]), c.children[j].span.begin});
      }
    }
  }
  for (const auto& child : c.children) {
    if (child.is_type()) check_container(m, file, child, facts, out);
  }
}

}  // namespace

std::size_t find_region_for(const OrderModel& m, Context ctx, const Component& e) {
  return m.find_region(ctx, traits_of(m.patterns, e));
}

dtree::Label compare_in_region(const OrderModel& m, const RegionSpec& region, const CallFacts& facts,
                               const Component& a, const Component& b) {
  if (!region.ordering) return dtree::Label::Equal;
  const auto attrs = ordering_attrs(m.patterns, 0, facts, a, b);
  return dtree::classify(*region.ordering, attrs.values(region.ordering->schema));
}

const Component* top_level_of(const SourceFile& file, const Component& container) {
  for (const auto& top : file.top_level) {
    if (contains(top, container)) return &top;
  }
  return nullptr;
}

InsertionPlan plan_insertion(const OrderModel& m, const Component& container,
                             const Component& new_e, const SourceFile& file) {
  Component fresh = new_e;
  fresh.id = file.component_count;
  fresh.context = container.member_context;

  const Component* top = top_level_of(file, container);
  const Component* extra[] = {&fresh};
  const CallFacts facts = top ? compute_call_facts(*top, extra) : CallFacts{};

  const Context ctx = container.member_context;
  const auto& specs = m.regions(ctx);
  const std::size_t rgn = find_region_for(m, ctx, fresh);
  const RegionSpec& region = specs[rgn];
  const auto& kids = container.children;

  std::vector<std::size_t> regions;
  for (const auto& e : kids) regions.push_back(find_region_for(m, ctx, e));

  InsertionPlan plan;
  plan.region = rgn;
  std::optional<std::size_t> prior;
  std::optional<std::size_t> next;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (regions[i] < rgn) {
      prior = i;
    } else if (regions[i] == rgn) {
      const auto verdict = compare_in_region(m, region, facts, fresh, kids[i]);
      if (verdict == dtree::Label::Before) {
        if (!next) next = i;
      } else if (verdict == dtree::Label::After) {
        prior = i;
        next.reset();
      } else if (!next) {
        prior = i;
      }
    } else if (!next) {
      next = i;
    }
  }

  plan.position = container.body.begin;
  if (prior) {
    plan.position = kids[*prior].span.end;
    next = *prior + 1 < kids.size() ? std::optional<std::size_t>(*prior + 1) : std::nullopt;
  }
  if (prior && regions[*prior] == rgn) {
    plan.prepend = region.between.render();
  } else if (next && regions[*next] == rgn) {
    plan.position = kids[*next].span.begin;
    plan.append = region.between.render();
  } else {
    plan.prepend = region.prefix.render();
    plan.append = region.suffix.render();
  }
  plan.prior = prior;
  plan.next = next;
  plan.region_end = true;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (regions[i] == rgn && kids[i].span.begin >= plan.position) plan.region_end = false;
  }
  return plan;
}

std::string apply_insertion(std::string_view text, const InsertionPlan& plan,
                            std::string_view new_text) {
  std::string out;
  out.reserve(text.size() + plan.prepend.size() + new_text.size() + plan.append.size());
  out.append(text.substr(0, plan.position));
  out += plan.prepend;
  out += new_text;
  out += plan.append;
  out.append(text.substr(plan.position));
  return out;
}

ReorderResult reorder_file(const OrderModel& m, const SourceFile& file, bool keep_comments) {
  return Reorderer(m, file, keep_comments).run();
}

std::vector<Violation> check_file(const OrderModel& m, const SourceFile& file) {
  std::vector<Violation> out;
  for (const auto& top : file.top_level) {
    const CallFacts facts = compute_call_facts(top);
    check_container(m, file, top, facts, out);
  }
  return out;
}

std::string qualified_name(const SourceFile& file, const Component& c) {
  const auto path = path_to(file, c.id);
  if (!path || path->size() == 1) return simple_name(c);
  std::string out;
  const Component* cur = &file.top_level[(*path)[0]];
  for (std::size_t i = 1; i < path->size(); ++i) {
    cur = &cur->children[(*path)[i]];
    if (!out.empty()) out += '.';
    out += simple_name(*cur);
  }
  return out;
}

}  // namespace ordo
