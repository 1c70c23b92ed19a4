#include "soroute/tntp.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "soroute/errors.hpp"

namespace soroute {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line << ": " << what;
  throw ParseError(msg.str());
}

// Strips '~' comments and trailing whitespace.
std::string clean(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('~'); pos != std::string::npos) s.erase(pos);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  return s;
}

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

// "<NUMBER OF NODES> 24" -> key "NUMBER OF NODES", value "24".
bool metadata_line(const std::string& s, std::string& key, std::string& value) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || s[i] != '<') return false;
  size_t close = s.find('>', i);
  if (close == std::string::npos) return false;
  key = s.substr(i + 1, close - i - 1);
  value = s.substr(close + 1);
  return true;
}

double parse_number(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    fail(line, "expected a number, got '" + tok + "'");
  return v;
}

std::int64_t parse_int(const std::string& tok, int line) {
  double v = parse_number(tok, line);
  auto r = static_cast<std::int64_t>(std::llround(v));
  if (static_cast<double>(r) != v) fail(line, "expected an integer, got '" + tok + "'");
  return r;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct Metadata {
  std::int64_t zones = -1, nodes = -1, first_thru = -1, links = -1;
  double total_flow = 0.0;
  bool has_total = false;
};

// Reads metadata lines until <END OF METADATA>; returns the first body line index.
size_t read_metadata(const std::vector<std::string>& lines, Metadata& md) {
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string s = clean(lines[i]);
    if (blank(s)) continue;
    std::string key, value;
    if (!metadata_line(s, key, value)) return i;  // no metadata block at all
    int line_no = static_cast<int>(i) + 1;
    if (key == "END OF METADATA") return i + 1;
    if (key == "NUMBER OF ZONES") md.zones = parse_int(tokens(value).at(0), line_no);
    else if (key == "NUMBER OF NODES") md.nodes = parse_int(tokens(value).at(0), line_no);
    else if (key == "FIRST THRU NODE") md.first_thru = parse_int(tokens(value).at(0), line_no);
    else if (key == "NUMBER OF LINKS") md.links = parse_int(tokens(value).at(0), line_no);
    else if (key == "TOTAL OD FLOW") {
      md.total_flow = parse_number(tokens(value).at(0), line_no);
      md.has_total = true;
    }
    // unknown keys are ignored
  }
  return lines.size();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

TntpNet parse_tntp_net(const std::string& text) {
  auto lines = split_lines(text);
  Metadata md;
  size_t body = read_metadata(lines, md);
  if (md.nodes < 0) throw ParseError("missing <NUMBER OF NODES>");
  if (md.zones < 0) throw ParseError("missing <NUMBER OF ZONES>");

  TntpNet net;
  net.num_zones = md.zones;
  net.num_nodes = md.nodes;
  net.first_thru_node = md.first_thru < 0 ? 1 : md.first_thru;

  for (size_t i = body; i < lines.size(); ++i) {
    std::string s = clean(lines[i]);
    if (blank(s)) continue;
    int line_no = static_cast<int>(i) + 1;
    // Each row ends with ';'. Tolerate several rows on one line.
    size_t start = 0;
    while (start < s.size()) {
      size_t semi = s.find(';', start);
      std::string row = s.substr(start, semi == std::string::npos
                                            ? std::string::npos
                                            : semi - start);
      start = semi == std::string::npos ? s.size() : semi + 1;
      auto tk = tokens(row);
      if (tk.empty()) continue;
      if (tk.size() < 7)
        fail(line_no, "link row needs at least 7 fields, got " +
                          std::to_string(tk.size()));
      TntpLinkRecord r;
      r.init_node = parse_int(tk[0], line_no);
      r.term_node = parse_int(tk[1], line_no);
      r.capacity = parse_number(tk[2], line_no);
      r.length = parse_number(tk[3], line_no);
      r.free_flow_time = parse_number(tk[4], line_no);
      r.b = parse_number(tk[5], line_no);
      r.power = parse_number(tk[6], line_no);
      if (tk.size() > 7) r.speed = parse_number(tk[7], line_no);
      if (tk.size() > 8) r.toll = parse_number(tk[8], line_no);
      if (tk.size() > 9) r.link_type = parse_number(tk[9], line_no);
      net.links.push_back(r);
    }
  }

  if (md.links >= 0 && md.links != static_cast<std::int64_t>(net.links.size())) {
    std::ostringstream msg;
    msg << "<NUMBER OF LINKS> declares " << md.links << " links but file has "
        << net.links.size();
    throw ParseError(msg.str());
  }
  return net;
}

TntpTrips parse_tntp_trips(const std::string& text) {
  auto lines = split_lines(text);
  Metadata md;
  size_t body = read_metadata(lines, md);
  if (md.zones < 0) throw ParseError("missing <NUMBER OF ZONES>");

  TntpTrips trips;
  trips.num_zones = md.zones;
  trips.total_od_flow = md.total_flow;
  trips.has_total = md.has_total;

  std::int64_t origin = -1;
  for (size_t i = body; i < lines.size(); ++i) {
    std::string s = clean(lines[i]);
    if (blank(s)) continue;
    int line_no = static_cast<int>(i) + 1;
    auto tk = tokens(s);
    if (!tk.empty() && (tk[0] == "Origin" || tk[0] == "origin" || tk[0] == "ORIGIN")) {
      if (tk.size() < 2) fail(line_no, "Origin line without a zone id");
      origin = parse_int(tk[1], line_no);
      continue;
    }
    if (origin < 0) fail(line_no, "demand entry before any Origin line");
    // "dest : flow; dest : flow; ..."
    size_t start = 0;
    while (start < s.size()) {
      size_t semi = s.find(';', start);
      std::string cell = s.substr(start, semi == std::string::npos
                                             ? std::string::npos
                                             : semi - start);
      start = semi == std::string::npos ? s.size() : semi + 1;
      if (blank(cell)) continue;
      size_t colon = cell.find(':');
      if (colon == std::string::npos) fail(line_no, "expected 'dest : flow'");
      auto dtok = tokens(cell.substr(0, colon));
      auto ftok = tokens(cell.substr(colon + 1));
      if (dtok.size() != 1 || ftok.size() != 1)
        fail(line_no, "expected 'dest : flow'");
      TntpTripEntry e;
      e.origin = origin;
      e.dest = parse_int(dtok[0], line_no);
      e.flow = parse_number(ftok[0], line_no);
      trips.entries.push_back(e);
    }
  }
  return trips;
}

std::string write_tntp_net(const TntpNet& net) {
  std::ostringstream out;
  out.precision(17);
  out << "<NUMBER OF ZONES> " << net.num_zones << "\n";
  out << "<NUMBER OF NODES> " << net.num_nodes << "\n";
  out << "<FIRST THRU NODE> " << net.first_thru_node << "\n";
  out << "<NUMBER OF LINKS> " << net.links.size() << "\n";
  out << "<END OF METADATA>\n\n";
  out << "~\tinit\tterm\tcapacity\tlength\tfft\tb\tpower\tspeed\ttoll\ttype\t;\n";
  for (const TntpLinkRecord& r : net.links) {
    out << '\t' << r.init_node << '\t' << r.term_node << '\t' << r.capacity
        << '\t' << r.length << '\t' << r.free_flow_time << '\t' << r.b << '\t'
        << r.power << '\t' << r.speed << '\t' << r.toll << '\t' << r.link_type
        << "\t;\n";
  }
  return out.str();
}

std::string write_tntp_trips(const TntpTrips& trips) {
  std::ostringstream out;
  out.precision(17);
  out << "<NUMBER OF ZONES> " << trips.num_zones << "\n";
  if (trips.has_total) out << "<TOTAL OD FLOW> " << trips.total_od_flow << "\n";
  out << "<END OF METADATA>\n";
  std::int64_t origin = -1;
  for (const TntpTripEntry& e : trips.entries) {
    if (e.origin != origin) {
      origin = e.origin;
      out << "\nOrigin " << origin << "\n";
    }
    out << "    " << e.dest << " : " << e.flow << ";\n";
  }
  return out.str();
}

NetworkModel build_model(const TntpNet& net, const TntpTrips& trips) {
  if (net.num_nodes <= 0) throw ValidationError("network declares no nodes");
  if (net.num_zones > net.num_nodes)
    throw ValidationError("more zones than nodes");
  if (trips.num_zones != net.num_zones) {
    std::ostringstream msg;
    msg << "trips file declares " << trips.num_zones << " zones, network has "
        << net.num_zones;
    throw ValidationError(msg.str());
  }

  NetworkModel model;
  model.num_vertices = static_cast<int>(net.num_nodes);
  model.num_zones = static_cast<int>(net.num_zones);
  model.first_through_vertex =
      static_cast<int>(std::max<std::int64_t>(net.first_thru_node, 1) - 1);
  model.external_id.resize(model.num_vertices);
  for (int v = 0; v < model.num_vertices; ++v) model.external_id[v] = v + 1;

  for (size_t i = 0; i < net.links.size(); ++i) {
    const TntpLinkRecord& r = net.links[i];
    if (r.init_node < 1 || r.init_node > net.num_nodes || r.term_node < 1 ||
        r.term_node > net.num_nodes) {
      std::ostringstream msg;
      msg << "link " << i + 1 << ": node id out of range";
      throw ValidationError(msg.str());
    }
    Link l;
    l.tail = static_cast<int>(r.init_node - 1);
    l.head = static_cast<int>(r.term_node - 1);
    l.latency = r.power == 0.0
                    ? LatencyFunction::constant(r.free_flow_time * (1.0 + r.b))
                    : LatencyFunction::bpr(r.free_flow_time, r.capacity, r.b,
                                           r.power);
    model.links.push_back(l);
  }

  double raw_total = 0.0;
  for (const TntpTripEntry& e : trips.entries) {
    raw_total += e.flow;
    if (e.origin < 1 || e.origin > net.num_zones || e.dest < 1 ||
        e.dest > net.num_zones) {
      std::ostringstream msg;
      msg << "demand " << e.origin << "->" << e.dest << ": unknown zone";
      throw ValidationError(msg.str());
    }
    if (e.flow < 0.0) {
      std::ostringstream msg;
      msg << "demand " << e.origin << "->" << e.dest << ": negative flow";
      throw ValidationError(msg.str());
    }
    if (e.origin == e.dest || e.flow == 0.0) continue;  // intrazonal / empty
    OriginDest od{static_cast<int>(e.origin - 1), static_cast<int>(e.dest - 1)};
    model.demand[od] += e.flow;
  }

  if (trips.has_total) {
    double tol = std::max(1e-6 * std::abs(trips.total_od_flow), 1e-3);
    if (std::abs(raw_total - trips.total_od_flow) > tol) {
      std::ostringstream msg;
      msg << "trips sum to " << raw_total << " but <TOTAL OD FLOW> declares "
          << trips.total_od_flow;
      throw ValidationError(msg.str());
    }
  }

  model.finalize();
  return model;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

NetworkModel load_model(const std::string& net_path,
                        const std::string& trips_path) {
  return build_model(parse_tntp_net(read_file(net_path)),
                     parse_tntp_trips(read_file(trips_path)));
}

}  // namespace soroute
