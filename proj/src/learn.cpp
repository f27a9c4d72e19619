#include "ordo/learn.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace ordo {

namespace {

void category_samples_of(const Component& container, const NamePatternConfig& cfg,
                         dtree::Dataset& out) {
  std::vector<ComponentTraits> traits;
  traits.reserve(container.children.size());
  for (const auto& e : container.children) {
    if (e.is_type()) category_samples_of(e, cfg, out);
    traits.push_back(traits_of(cfg, e));
  }
  const Context ctx = container.member_context;
  for (std::size_t i = 0; i < traits.size(); ++i) {
    out.rows.push_back({category_attrs(ctx, traits[i], traits[i]).values(), dtree::Label::Equal});
    for (std::size_t j = 0; j < traits.size(); ++j) {
      if (i == j) continue;
      out.rows.push_back({category_attrs(ctx, traits[i], traits[j]).values(),
                          i < j ? dtree::Label::Before : dtree::Label::After});
    }
  }
}

void ordering_samples_of(const Component& container, const std::vector<std::uint32_t>& regions,
                         const CallFacts& facts, const NamePatternConfig& cfg,
                         dtree::Dataset& out) {
  std::map<std::uint32_t, std::vector<const Component*>> by_region;
  for (const auto& e : container.children) {
    if (e.is_type()) ordering_samples_of(e, regions, facts, cfg, out);
    by_region[regions[e.id]].push_back(&e);
  }
  for (const auto& [region, members] : by_region) {
    if (region == kNoRegion) continue;
    std::vector<ComponentTraits> traits;
    for (const auto* m : members) traits.push_back(traits_of(cfg, *m));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        const auto attrs =
            ordering_attrs(region, facts, *members[i], traits[i], *members[j], traits[j]);
        const dtree::Label label =
            i == j ? dtree::Label::Equal : (i < j ? dtree::Label::Before : dtree::Label::After);
        out.rows.push_back({attrs.values(out.schema), label});
      }
    }
  }
}

}  // namespace

void LearnReport::write(std::ostream& out, const OrderModel& m) const {
  out << "files\t" << files << '\n'
      << "skipped\t" << skipped << '\n'
      << "excluded\t" << excluded << '\n'
      << "category_samples\t" << category_samples << '\n'
      << "ordering_samples\t" << ordering_samples << '\n'
      << "initial_regions\t" << initial_regions << '\n'
      << "occupied_regions\t" << occupied_regions << '\n'
      << "merged_regions\t" << merged_regions << '\n'
      << "catch_all_regions\t" << catch_all_regions << '\n'
      << "arcs\t" << arcs << '\n'
      << "significant_arcs\t" << significant_arcs << '\n';
  for (const auto& [ctx, regions] : m.contexts) {
    out << "context\t" << to_string(ctx) << '\t' << regions.size() << " regions";
    std::size_t ordered = 0;
    for (const auto& r : regions) ordered += r.ordering ? 1 : 0;
    out << ", " << ordered << " ordered\n";
  }
  out << "seconds\t" << seconds << '\n';
  for (const auto& w : warnings) out << "warning\t" << w << '\n';
}

dtree::Dataset build_category_samples(std::span<const SourceFile> corpus,
                                      const NamePatternConfig& cfg) {
  dtree::Dataset data;
  data.schema = category_schema();
  for (const auto& file : corpus) {
    for (const auto& top : file.top_level) category_samples_of(top, cfg, data);
  }
  return data;
}

dtree::Dataset build_ordering_samples(std::span<const SourceFile> corpus,
                                      const Assignment& assignment,
                                      const std::vector<std::uint32_t>& region_ids,
                                      const NamePatternConfig& cfg) {
  dtree::Dataset data;
  data.schema = ordering_schema(region_ids);
  for (std::size_t f = 0; f < corpus.size(); ++f) {
    for (const auto& top : corpus[f].top_level) {
      const CallFacts facts = compute_call_facts(top);
      ordering_samples_of(top, assignment[f], facts, cfg, data);
    }
  }
  return data;
}

LearnResult learn_from_files(std::vector<SourceFile> files, const LearnConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  files.erase(std::remove_if(files.begin(), files.end(),
                             [](const SourceFile& f) { return f.top_level.empty(); }),
              files.end());
  if (files.empty()) throw EmptyCorpus();
  resolve_overrides(files);

  LearnResult out;
  out.report.files = files.size();

  out.category_data = build_category_samples(files, cfg.patterns);
  out.report.category_samples = out.category_data.rows.size();
  if (out.category_data.rows.empty()) throw EmptyCorpus();
  out.category_tree = dtree::train(out.category_data);
  out.category_tree = dtree::cleanup_significance(std::move(out.category_tree), cfg.min_leaf_agree);
  out.category_tree =
      dtree::cleanup_consistency(std::move(out.category_tree), swap_map(category_schema()));

  out.regions = build_initial_regions(out.category_tree);
  out.report.initial_regions = out.regions.regions.size();
  AssignResult assigned = assign_regions(out.regions, files, cfg.patterns);
  out.graph = assigned.graph;
  out.report.occupied_regions = static_cast<std::size_t>(std::count_if(
      out.regions.regions.begin(), out.regions.regions.end(), [](const Region& r) { return r.members > 0; }));
  merge_empty_regions(out.regions);
  out.report.merged_regions = out.regions.regions.size();
  out.report.catch_all_regions = static_cast<std::size_t>(add_catch_all_regions(out.regions));

  const RegionGraph clean = clean_graph(out.graph, cfg.min_arc);
  out.report.arcs = out.graph.arcs.size();
  out.report.significant_arcs = clean.arcs.size();
  const RegionGroups groups = top_sort_merge(clean, out.graph, out.regions, cfg.min_arc);

  std::vector<std::uint32_t> ids;
  for (const auto& r : out.regions.regions) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  out.ordering_data = build_ordering_samples(files, assigned.assignment, ids, cfg.patterns);
  out.report.ordering_samples = out.ordering_data.rows.size();
  if (!out.ordering_data.rows.empty()) {
    dtree::DecisionTree t = dtree::train(out.ordering_data);
    t = dtree::cleanup_significance(std::move(t), cfg.min_leaf_agree);
    t = dtree::cleanup_consistency(std::move(t), swap_map(out.ordering_data.schema));
    out.ordering_tree = std::move(t);
  }

  AssembleInput in;
  in.groups = &groups;
  in.table = &out.regions;
  in.samples = &assigned.samples;
  in.order_tree = out.ordering_tree ? &*out.ordering_tree : nullptr;
  in.order_rows = &out.ordering_data;
  in.patterns = &cfg.patterns;
  in.mode = {cfg.min_mode, cfg.mode_num, cfg.mode_den};
  out.model = assemble_model(in);
  out.model.meta.corpus = cfg.corpus_name.empty() ? cfg.corpus_root.filename().string() : cfg.corpus_name;
  out.model.meta.file_count = files.size();
  out.model.meta.created = cfg.created;

  out.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

LearnResult learn_model(const LearnConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Corpus corpus = collect_corpus(cfg.corpus_root, cfg.exclude_tests);
  const std::size_t skipped = corpus.skipped;
  const std::size_t excluded = corpus.excluded;
  std::vector<std::string> warnings = std::move(corpus.warnings);
  LearnResult out = learn_from_files(std::move(corpus.files), cfg);
  out.report.skipped = skipped;
  out.report.excluded = excluded;
  out.report.warnings = std::move(warnings);
  out.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ordo
