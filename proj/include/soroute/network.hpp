#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "soroute/latency.hpp"

namespace soroute {

struct Link {
  int tail = -1;
  int head = -1;
  LatencyFunction latency;
};

using OriginDest = std::pair<int, int>;

// Ordered map so every iteration over demand is deterministic.
using DemandMap = std::map<OriginDest, double>;

// Aggregate flow per link, indexed by link id.
using LinkFlow = std::vector<double>;

// Directed network with vertices 0..num_vertices-1. Vertices 0..num_zones-1
// are zones (the only vertices allowed to source or sink demand). Vertices
// with index < first_through_vertex may appear in a path only as its first or
// last vertex, never as an intermediate (TNTP "first through node" rule).
struct NetworkModel {
  int num_vertices = 0;
  int num_zones = 0;
  int first_through_vertex = 0;
  std::vector<Link> links;
  DemandMap demand;
  std::vector<std::int64_t> external_id;  // dense vertex -> input-file id

  // Derived by finalize().
  std::vector<std::vector<int>> out_links;
  std::vector<std::vector<int>> in_links;
  std::uint64_t fingerprint = 0;

  // Validates, then builds adjacency lists and the model fingerprint.
  // Call once after filling the fields above.
  void finalize();

  void validate() const;  // throws ValidationError

  bool is_zone(int v) const { return v >= 0 && v < num_zones; }
  bool can_pass_through(int v) const { return v >= first_through_vertex; }

  double total_demand() const;

  // Zones with positive outbound demand, ascending.
  std::vector<int> origins() const;

  // Destinations with positive demand from `origin`, ascending.
  std::vector<int> destinations_of(int origin) const;
};

// One routed path carrying `flow` units from origin to dest. `links` are
// consecutive link ids (head of links[i] == tail of links[i+1]).
struct PathFlow {
  int origin = -1;
  int dest = -1;
  std::vector<int> links;
  double flow = 0.0;
};

using PathFlowSet = std::vector<PathFlow>;

// Throws ValidationError if the path is not a contiguous origin->dest walk
// over existing links or carries negative flow.
void check_path(const NetworkModel& net, const PathFlow& p);

// Sums path flows onto links. Every path is check_path()ed first.
LinkFlow aggregate_link_flow(const NetworkModel& net, const PathFlowSet& paths);

double total_travel_time(const NetworkModel& net, const LinkFlow& flow);

double path_latency(const NetworkModel& net, const LinkFlow& flow,
                    const std::vector<int>& links);
double path_marginal_cost(const NetworkModel& net, const LinkFlow& flow,
                          const std::vector<int>& links);

// Per-link latencies / marginal costs at the given flow.
std::vector<double> link_latencies(const NetworkModel& net,
                                   const LinkFlow& flow);
std::vector<double> link_marginal_costs(const NetworkModel& net,
                                        const LinkFlow& flow);

}  // namespace soroute
