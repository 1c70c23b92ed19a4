#include "soroute/network.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "soroute/errors.hpp"

namespace soroute {

namespace {

// FNV-1a, 64 bit. Good enough to distinguish "same inputs" from "different
// inputs" across solver stages; not cryptographic.
struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  void mix(int v) { mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  void mix(double v) { mix(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v)); }
};

}  // namespace

void NetworkModel::validate() const {
  if (num_vertices <= 0) throw ValidationError("network has no vertices");
  if (num_zones < 0 || num_zones > num_vertices)
    throw ValidationError("zone count out of range");
  if (first_through_vertex < 0 || first_through_vertex > num_vertices)
    throw ValidationError("first-through vertex out of range");
  if (!external_id.empty() &&
      external_id.size() != static_cast<size_t>(num_vertices))
    throw ValidationError("external id table size mismatch");

  for (size_t e = 0; e < links.size(); ++e) {
    const Link& l = links[e];
    std::ostringstream where;
    where << "link " << e;
    if (l.tail < 0 || l.tail >= num_vertices || l.head < 0 ||
        l.head >= num_vertices)
      throw ValidationError(where.str() + ": endpoint out of range");
    if (l.tail == l.head)
      throw ValidationError(where.str() + ": self-loop");
    const LatencyFunction& f = l.latency;
    if (!(f.t0 >= 0.0) || !std::isfinite(f.t0))
      throw ValidationError(where.str() + ": bad free-flow time");
    if (f.kind == LatencyKind::Affine && (!(f.slope >= 0.0) || !std::isfinite(f.slope)))
      throw ValidationError(where.str() + ": bad latency slope");
    if (f.kind == LatencyKind::Bpr) {
      if (!(f.capacity > 0.0) || !std::isfinite(f.capacity))
        throw ValidationError(where.str() + ": bad capacity");
      if (!(f.alpha >= 0.0) || !(f.beta >= 1.0))
        throw ValidationError(where.str() + ": bad BPR coefficients");
    }
  }

  for (const auto& [od, r] : demand) {
    auto [s, t] = od;
    std::ostringstream where;
    where << "demand " << s << "->" << t;
    if (s < 0 || s >= num_vertices || t < 0 || t >= num_vertices)
      throw ValidationError(where.str() + ": unknown vertex");
    if (!is_zone(s) || !is_zone(t))
      throw ValidationError(where.str() + ": demand endpoint is not a zone");
    if (s == t) throw ValidationError(where.str() + ": origin equals destination");
    if (!(r >= 0.0) || !std::isfinite(r))
      throw ValidationError(where.str() + ": negative or non-finite demand");
  }

  // Every demand pair must be routable under the first-through rule.
  std::vector<std::vector<int>> out(num_vertices);
  for (size_t e = 0; e < links.size(); ++e)
    out[links[e].tail].push_back(static_cast<int>(e));
  int last_origin = -1;
  std::vector<char> seen;
  for (const auto& [od, r] : demand) {
    if (r <= 0.0) continue;
    auto [s, t] = od;
    if (s != last_origin) {
      last_origin = s;
      seen.assign(num_vertices, 0);
      std::deque<int> queue{s};
      seen[s] = 1;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v != s && !can_pass_through(v)) continue;  // endpoint only
        for (int e : out[v]) {
          int w = links[e].head;
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    if (!seen[t]) {
      std::ostringstream msg;
      msg << "demand " << s << "->" << t << ": destination unreachable";
      throw ValidationError(msg.str());
    }
  }
}

void NetworkModel::finalize() {
  validate();
  out_links.assign(num_vertices, {});
  in_links.assign(num_vertices, {});
  for (size_t e = 0; e < links.size(); ++e) {
    out_links[links[e].tail].push_back(static_cast<int>(e));
    in_links[links[e].head].push_back(static_cast<int>(e));
  }

  Fnv fnv;
  fnv.mix(num_vertices);
  fnv.mix(num_zones);
  fnv.mix(first_through_vertex);
  fnv.mix(static_cast<std::uint64_t>(links.size()));
  for (const Link& l : links) {
    fnv.mix(l.tail);
    fnv.mix(l.head);
    fnv.mix(static_cast<int>(l.latency.kind));
    fnv.mix(l.latency.t0);
    fnv.mix(l.latency.slope);
    fnv.mix(l.latency.capacity);
    fnv.mix(l.latency.alpha);
    fnv.mix(l.latency.beta);
  }
  for (const auto& [od, r] : demand) {
    fnv.mix(od.first);
    fnv.mix(od.second);
    fnv.mix(r);
  }
  fingerprint = fnv.h;
}

double NetworkModel::total_demand() const {
  double sum = 0.0;
  for (const auto& [od, r] : demand) sum += r;
  return sum;
}

std::vector<int> NetworkModel::origins() const {
  std::vector<int> out;
  for (const auto& [od, r] : demand)
    if (r > 0.0 && (out.empty() || out.back() != od.first))
      out.push_back(od.first);
  return out;  // DemandMap is ordered by (origin, dest)
}

std::vector<int> NetworkModel::destinations_of(int origin) const {
  std::vector<int> out;
  auto it = demand.lower_bound({origin, 0});
  for (; it != demand.end() && it->first.first == origin; ++it)
    if (it->second > 0.0) out.push_back(it->first.second);
  return out;
}

void check_path(const NetworkModel& net, const PathFlow& p) {
  if (!(p.flow >= 0.0))
    throw ValidationError("path carries negative flow");
  if (p.links.empty()) throw ValidationError("path has no links");
  int at = p.origin;
  for (int e : p.links) {
    if (e < 0 || e >= static_cast<int>(net.links.size()))
      throw ValidationError("path references unknown link");
    if (net.links[e].tail != at)
      throw ValidationError("path links are not contiguous");
    at = net.links[e].head;
  }
  if (at != p.dest) throw ValidationError("path does not end at its destination");
}

LinkFlow aggregate_link_flow(const NetworkModel& net, const PathFlowSet& paths) {
  LinkFlow flow(net.links.size(), 0.0);
  for (const PathFlow& p : paths) {
    check_path(net, p);
    for (int e : p.links) flow[e] += p.flow;
  }
  return flow;
}

double total_travel_time(const NetworkModel& net, const LinkFlow& flow) {
  if (flow.size() != net.links.size())
    throw std::invalid_argument("flow vector size does not match link count");
  double ttt = 0.0;
  for (size_t e = 0; e < flow.size(); ++e)
    ttt += net.links[e].latency.value(flow[e]) * flow[e];
  return ttt;
}

double path_latency(const NetworkModel& net, const LinkFlow& flow,
                    const std::vector<int>& links) {
  double c = 0.0;
  for (int e : links) c += net.links[e].latency.value(flow[e]);
  return c;
}

double path_marginal_cost(const NetworkModel& net, const LinkFlow& flow,
                          const std::vector<int>& links) {
  double c = 0.0;
  for (int e : links) c += net.links[e].latency.marginal(flow[e]);
  return c;
}

std::vector<double> link_latencies(const NetworkModel& net,
                                   const LinkFlow& flow) {
  if (flow.size() != net.links.size())
    throw std::invalid_argument("flow vector size does not match link count");
  std::vector<double> out(flow.size());
  for (size_t e = 0; e < flow.size(); ++e)
    out[e] = net.links[e].latency.value(flow[e]);
  return out;
}

std::vector<double> link_marginal_costs(const NetworkModel& net,
                                        const LinkFlow& flow) {
  if (flow.size() != net.links.size())
    throw std::invalid_argument("flow vector size does not match link count");
  std::vector<double> out(flow.size());
  for (size_t e = 0; e < flow.size(); ++e)
    out[e] = net.links[e].latency.marginal(flow[e]);
  return out;
}

}  // namespace soroute
