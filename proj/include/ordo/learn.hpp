#pragma once

// End-to-end learning: corpus, category tree, regions, comments, ordering
// tree, model.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordo/dtree.hpp"
#include "ordo/extract.hpp"
#include "ordo/model.hpp"
#include "ordo/props.hpp"
#include "ordo/regions.hpp"

namespace ordo {

class EmptyCorpus : public std::runtime_error {
 public:
  EmptyCorpus() : std::runtime_error("no usable source files in the corpus") {}
};

struct LearnConfig {
  std::filesystem::path corpus_root;
  bool exclude_tests = true;
  NamePatternConfig patterns;
  std::uint32_t min_mode = 4;
  std::uint32_t mode_num = 1;
  std::uint32_t mode_den = 4;
  std::uint32_t min_arc = 4;
  std::uint32_t min_leaf_agree = 5;
  std::string corpus_name;  // defaults to the corpus directory name
  std::string created;      // timestamp recorded in the model
};

struct LearnReport {
  std::size_t files = 0;
  std::size_t skipped = 0;
  std::size_t excluded = 0;
  std::vector<std::string> warnings;
  std::size_t category_samples = 0;
  std::size_t ordering_samples = 0;
  std::size_t initial_regions = 0;
  std::size_t occupied_regions = 0;
  std::size_t merged_regions = 0;
  std::size_t catch_all_regions = 0;
  std::size_t arcs = 0;
  std::size_t significant_arcs = 0;
  double seconds = 0.0;

  void write(std::ostream& out, const OrderModel& m) const;
};

struct LearnResult {
  OrderModel model;
  LearnReport report;
  dtree::Dataset category_data;
  dtree::Dataset ordering_data;
  dtree::DecisionTree category_tree;
  std::optional<dtree::DecisionTree> ordering_tree;
  RegionTable regions;
  RegionGraph graph;
};

/// Pairwise samples of every type's direct children, plus self samples.
dtree::Dataset build_category_samples(std::span<const SourceFile> corpus,
                                      const NamePatternConfig& cfg);

/// Pairwise samples of co-region siblings, plus self samples, over
/// ordering_schema(region_ids).
dtree::Dataset build_ordering_samples(std::span<const SourceFile> corpus,
                                      const Assignment& assignment,
                                      const std::vector<std::uint32_t>& region_ids,
                                      const NamePatternConfig& cfg);

/// Learns from already parsed files (sorted by path for determinism).
LearnResult learn_from_files(std::vector<SourceFile> files, const LearnConfig& cfg);

/// Collects the corpus under cfg.corpus_root and learns from it. Throws
/// EmptyCorpus when nothing usable remains.
LearnResult learn_model(const LearnConfig& cfg);

}  // namespace ordo
