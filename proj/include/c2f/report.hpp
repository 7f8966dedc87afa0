#pragma once

#include <json.hpp>

#include "c2f/core.hpp"
#include "c2f/segmentation.hpp"

namespace c2f {

inline nlohmann::json to_json(const RankedItems& r) {
  auto arr = nlohmann::json::array();
  for (const auto& it : r.items) arr.push_back({{"id", it.id}, {"score", it.score}});
  return arr;
}

inline nlohmann::json to_json(const StageTrace& t) {
  return {{"block_scores", to_json(t.block_scores)},
          {"kept_blocks", t.kept_blocks},
          {"beta", t.beta_used},
          {"candidates", t.candidates},
          {"candidate_scores", to_json(t.candidate_scores)},
          {"op_counts",
           {{"coarse_dot_products", t.op_counts.coarse_dot_products},
            {"relevance_cosines", t.op_counts.relevance_cosines},
            {"fine_dot_products", t.op_counts.fine_dot_products}}}};
}

inline nlohmann::json blocks_json(const Segmentation& seg) {
  auto arr = nlohmann::json::array();
  for (const auto& b : seg.blocks) arr.push_back({b.start, b.end});
  return arr;
}

// {"id", "boundaries", "blocks", "epsilon", "depth_scores"}
inline nlohmann::json segment_json(const std::string& id, const SegmentOutput& s) {
  return {{"id", id},
          {"boundaries", s.profile.boundaries},
          {"blocks", blocks_json(s.segmentation)},
          {"epsilon", s.profile.epsilon},
          {"depth_scores", s.profile.depth_scores}};
}

}  // namespace c2f
