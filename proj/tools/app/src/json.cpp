#include "sl2grow/app/json.hpp"

#include "sl2grow/io.hpp"

namespace sl2grow::app {

Json to_json(const GrowthReport& r) {
  return Json{{"sizeS", r.sizeS},
              {"sizeS2", r.sizeS2},
              {"sizeS3", r.sizeS3},
              {"delta_ratio", r.delta_ratio},
              {"generates", r.generates},
              {"symmetric", r.symmetric},
              {"contains_identity", r.contains_identity}};
}

GrowthReport growth_report_from_json(const Json& j) {
  GrowthReport r;
  r.sizeS = j.at("sizeS").get<std::size_t>();
  r.sizeS2 = j.at("sizeS2").get<std::size_t>();
  r.sizeS3 = j.at("sizeS3").get<std::size_t>();
  r.delta_ratio = j.at("delta_ratio").get<double>();
  r.generates = j.at("generates").get<bool>();
  r.symmetric = j.at("symmetric").get<bool>();
  r.contains_identity = j.at("contains_identity").get<bool>();
  return r;
}

Json to_json(const SubgroupSpec& spec) {
  Json gens = Json::array();
  for (const auto& g : spec.generators) gens.push_back(g.to_string());
  return Json{{"kind", spec.kind.to_string()}, {"p", spec.p}, {"order", spec.group.order()}, {"generators", gens}};
}

Json to_json(const SearchResult& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(format_set(w));
  return Json{{"best_delta", r.best_delta},
              {"best_size", r.best_size},
              {"best_cube", r.best_cube},
              {"witnesses", witnesses},
              {"nodes_visited", r.nodes_visited},
              {"nodes_cut", r.nodes_cut},
              {"timing", Json{{"wall_time", r.wall_time.count()}}}};
}

Json to_json(const PerturbationReport& r) {
  return Json{{"kind", std::string(to_string(r.kind))},
              {"base_delta", r.base_delta},
              {"base_size", r.base_size},
              {"base_cube", r.base_cube},
              {"trials", r.trials},
              {"min_delta_seen", r.min_delta_seen},
              {"all_exceed_base", r.all_exceed_base},
              {"worst_size", r.worst_size},
              {"worst_cube", r.worst_cube},
              {"min_cube_seen", r.min_cube_seen},
              {"cube_invariant", r.cube_invariant},
              {"worst_case", format_set(r.worst_case)}};
}

}  // namespace sl2grow::app
