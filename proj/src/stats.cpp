#include <accx/stats.hpp>

#include <json.hpp>

#include <sstream>

namespace accx {

std::vector<Direction> RunStats::direction_trace() const {
  std::vector<Direction> out;
  out.reserve(iterations.size());
  for (const auto& it : iterations) out.push_back(it.direction);
  return out;
}

std::uint64_t RunStats::edges_examined() const {
  std::uint64_t n = 0;
  for (const auto& it : iterations) n += it.edges_examined;
  return n;
}

std::string stats_csv(const RunStats& stats) {
  std::ostringstream os;
  os << "iteration,direction,filter,overflow,small,medium,large,active_vertices,active_edges,edges_examined,"
        "updated,flagged,delta_l1,buffer_entries,seconds\n";
  for (const auto& r : stats.iterations)
    os << r.iteration << ',' << to_string(r.direction) << ',' << to_string(r.filter) << ',' << (r.overflow ? 1 : 0)
       << ',' << r.small << ',' << r.medium << ',' << r.large << ',' << r.active_vertices << ',' << r.active_edges
       << ',' << r.edges_examined << ',' << r.updated << ',' << r.flagged << ',' << r.delta_l1 << ',' << r.buffer_entries << ','
       << r.seconds << '\n';
  return os.str();
}

std::string stats_json(const RunStats& stats, int indent) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : stats.iterations)
    rows.push_back({{"iteration", r.iteration},
                    {"direction", to_string(r.direction)},
                    {"filter", to_string(r.filter)},
                    {"overflow", r.overflow},
                    {"all_active", r.all_active},
                    {"small", r.small},
                    {"medium", r.medium},
                    {"large", r.large},
                    {"active_vertices", r.active_vertices},
                    {"active_edges", r.active_edges},
                    {"edges_examined", r.edges_examined},
                    {"updated", r.updated},
                    {"flagged", r.flagged},
                    {"delta_l1", r.delta_l1},
                    {"buffer_entries", r.buffer_entries},
                    {"seconds", r.seconds}});
  nlohmann::json j{{"iterations", rows},
                   {"converged", stats.converged},
                   {"seconds", stats.seconds},
                   {"peak_buffer_entries", stats.peak_buffer_entries},
                   {"direction_heuristic", kDirectionHeuristic}};
  return j.dump(indent);
}

}  // namespace accx
