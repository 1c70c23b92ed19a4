#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "soroute/network.hpp"

namespace soroute {

// One row of a TNTP <network> file, fields in file order. Only the first
// seven fields drive the model; the rest are carried through for round-trips.
struct TntpLinkRecord {
  std::int64_t init_node = 0;
  std::int64_t term_node = 0;
  double capacity = 0.0;
  double length = 0.0;
  double free_flow_time = 0.0;
  double b = 0.15;
  double power = 4.0;
  double speed = 0.0;
  double toll = 0.0;
  double link_type = 1.0;
};

struct TntpNet {
  std::int64_t num_zones = 0;
  std::int64_t num_nodes = 0;
  std::int64_t first_thru_node = 1;
  std::vector<TntpLinkRecord> links;
};

struct TntpTripEntry {
  std::int64_t origin = 0;
  std::int64_t dest = 0;
  double flow = 0.0;
};

struct TntpTrips {
  std::int64_t num_zones = 0;
  double total_od_flow = 0.0;
  bool has_total = false;
  std::vector<TntpTripEntry> entries;  // file order, intrazonal included
};

// Parsers accept the published dialect: <KEY> value metadata lines ending at
// <END OF METADATA>, '~' comments, tab-or-space separated link rows terminated
// by ';', and "Origin n" blocks of "dest : flow;" pairs. Throw ParseError
// with a line number on malformed input.
TntpNet parse_tntp_net(const std::string& text);
TntpTrips parse_tntp_trips(const std::string& text);

// Canonical serializers; parse(write(x)) reproduces x.
std::string write_tntp_net(const TntpNet& net);
std::string write_tntp_trips(const TntpTrips& trips);

// Assembles a validated NetworkModel. Node n maps to dense vertex n-1, zones
// come first, BPR latencies use the row's (free_flow_time, capacity, b,
// power); rows with power == 0 become constant latencies. Intrazonal and
// zero demand entries are dropped. Throws ValidationError on inconsistent
// inputs (unknown nodes, zone mismatch, demand total off the declared total).
NetworkModel build_model(const TntpNet& net, const TntpTrips& trips);

std::string read_file(const std::string& path);  // throws ParseError
NetworkModel load_model(const std::string& net_path,
                        const std::string& trips_path);

}  // namespace soroute
