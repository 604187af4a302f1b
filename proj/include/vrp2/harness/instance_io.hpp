#pragma once

// Plain-text instance files.
//
//   NAME: <text>
//   TYPE: 2VRP | 2TSP
//   DIMENSION: <nodes>
//   CAPACITY: W1 W2            (2VRP)
//   DEPOTS: d1s d1e d2s d2e    (2VRP; a 2TSP takes one depot or four equal)
//   BALANCED: 0 | 1            (2TSP, default 1)
//   NODE_COORD_SECTION         one "id x y" row per node, ids 0..DIMENSION-1
//   EDGE_COST_SECTION_V1       DIMENSION rows of DIMENSION costs, INF allowed
//   EDGE_COST_SECTION_V2       (2VRP; a 2TSP takes EDGE_COST_SECTION alone)
//   CUSTOMER_SECTION           2VRP rows "id L R l1L l1R l2L l2R demand fixed"
//   BOTH_PERIODS_SECTION       2TSP node ids
//   SINGLE_PERIOD_SECTION      2TSP node ids; default every other non-depot node
//   EOF
//
// '#' starts a comment that runs to the end of the line. Coordinates give
// nearest-integer Euclidean costs for both vehicles.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vrp2/harness/generator.hpp"
#include "vrp2/model.hpp"
#include "vrp2/two_period.hpp"

namespace vrp2 {

using AnyInstance = std::variant<Instance, TwoPeriodInstance>;

namespace io_detail {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_keyword(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!(std::isupper(static_cast<unsigned char>(c)) || c == '_' || c == ':' || std::isdigit(static_cast<unsigned char>(c))))
      return false;
  return std::isupper(static_cast<unsigned char>(t[0])) && t != "INF";
}

inline long long parse_int(const std::string& t, int line, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + t + "'");
  return v;
}

inline double parse_double(const std::string& t, int line) {
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(v))
    throw ParseError(line, "expected number, got '" + t + "'");
  return v;
}

inline Cost parse_cost(const std::string& t, int line) {
  if (t == "INF") return kInfinity;
  long long v = parse_int(t, line, "cost");
  if (v < 0) throw ParseError(line, "negative cost " + t);
  if (v > kMaxFiniteInput) throw ParseError(line, "cost " + t + " exceeds the finite range");
  return v;
}

inline std::string format_cost(Cost c) { return is_infinite(c) ? "INF" : std::to_string(c); }

inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

struct Parser {
  std::vector<Line> lines;
  std::size_t at = 0;

  bool done() const { return at >= lines.size(); }
  const Line& peek() const { return lines[at]; }
  int last_line() const { return lines.empty() ? 0 : lines.back().number; }

  std::vector<const Line*> rows_until_keyword() {
    std::vector<const Line*> rows;
    while (!done() && !is_keyword(peek().tokens[0])) rows.push_back(&lines[at++]);
    return rows;
  }

  std::vector<const Line*> exact_rows(std::size_t count, const std::string& section) {
    std::vector<const Line*> rows;
    while (rows.size() < count) {
      if (done() || is_keyword(peek().tokens[0]))
        throw ParseError(done() ? last_line() : peek().number,
                         section + " has " + std::to_string(rows.size()) + " rows, DIMENSION is " +
                             std::to_string(count));
      rows.push_back(&lines[at++]);
    }
    return rows;
  }
};

inline CostMatrix read_matrix(Parser& ps, int dim, const std::string& section) {
  CostMatrix m(dim);
  auto rows = ps.exact_rows(static_cast<std::size_t>(dim), section);
  for (int i = 0; i < dim; ++i) {
    const Line& ln = *rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(ln.tokens.size()) != dim)
      throw ParseError(ln.number, section + " row has " + std::to_string(ln.tokens.size()) +
                                      " entries, DIMENSION is " + std::to_string(dim));
    for (int j = 0; j < dim; ++j) {
      Cost c = parse_cost(ln.tokens[static_cast<std::size_t>(j)], ln.number);
      if (i == j && c != 0) throw ParseError(ln.number, "nonzero diagonal entry in " + section);
      m.at(i, j) = c;
    }
  }
  return m;
}

inline std::vector<int> read_id_list(Parser& ps, int dim, const std::string& section) {
  std::vector<int> ids;
  for (const Line* ln : ps.rows_until_keyword())
    for (const auto& t : ln->tokens) {
      long long v = parse_int(t, ln->number, "node id");
      if (v < 0 || v >= dim) throw ParseError(ln->number, section + " node " + t + " out of range");
      ids.push_back(static_cast<int>(v));
    }
  return ids;
}

}  // namespace io_detail

inline AnyInstance parse_instance_text(const std::string& text) {
  using namespace io_detail;
  Parser ps;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      auto tokens = split(raw);
      if (tokens.empty()) continue;
      ps.lines.push_back({number, std::move(tokens)});
    }
  }

  std::map<std::string, std::pair<int, std::vector<std::string>>> header;
  std::string name;
  std::optional<std::vector<Point2>> coords;
  std::optional<CostMatrix> c1, c2;
  std::vector<const Line*> customer_rows;
  std::optional<std::vector<int>> both, single;
  bool have_customers = false;
  bool saw_eof = false;
  int dim = -1;

  auto need_dim = [&](int line) {
    if (dim < 0) throw ParseError(line, "DIMENSION must precede the sections");
  };

  while (!ps.done()) {
    const Line& ln = ps.lines[ps.at++];
    std::string key = ln.tokens[0];
    std::vector<std::string> rest(ln.tokens.begin() + 1, ln.tokens.end());
    if (key.size() > 1 && key.back() == ':') {
      key.pop_back();
    } else if (!rest.empty() && rest[0] == ":") {
      rest.erase(rest.begin());
    }

    if (key == "EOF") {
      saw_eof = true;
      if (!ps.done()) throw ParseError(ps.peek().number, "content after EOF");
      break;
    }
    if (key == "NAME") {
      // Words of the name are rejoined with single spaces.
      name.clear();
      for (std::size_t k = 0; k < rest.size(); ++k) name += (k ? " " : "") + rest[k];
      continue;
    }
    if (key == "TYPE" || key == "DIMENSION" || key == "CAPACITY" || key == "DEPOTS" || key == "BALANCED") {
      if (header.count(key)) throw ParseError(ln.number, "duplicate " + key);
      if (rest.empty()) throw ParseError(ln.number, key + " has no value");
      header[key] = {ln.number, rest};
      if (key == "DIMENSION") {
        dim = static_cast<int>(parse_int(rest[0], ln.number, "DIMENSION"));
        if (dim < 1 || rest.size() != 1) throw ParseError(ln.number, "bad DIMENSION");
      }
      continue;
    }
    if (key == "NODE_COORD_SECTION") {
      need_dim(ln.number);
      std::vector<Point2> pts(static_cast<std::size_t>(dim));
      auto rows = ps.exact_rows(static_cast<std::size_t>(dim), key);
      for (int i = 0; i < dim; ++i) {
        const Line& r = *rows[static_cast<std::size_t>(i)];
        if (r.tokens.size() != 3) throw ParseError(r.number, "coordinate rows are 'id x y'");
        if (parse_int(r.tokens[0], r.number, "node id") != i)
          throw ParseError(r.number, "coordinate ids must run 0.." + std::to_string(dim - 1) + " in order");
        pts[static_cast<std::size_t>(i)] = {parse_double(r.tokens[1], r.number), parse_double(r.tokens[2], r.number)};
      }
      coords = std::move(pts);
      continue;
    }
    if (key == "EDGE_COST_SECTION_V1" || key == "EDGE_COST_SECTION") {
      need_dim(ln.number);
      c1 = read_matrix(ps, dim, key);
      continue;
    }
    if (key == "EDGE_COST_SECTION_V2") {
      need_dim(ln.number);
      c2 = read_matrix(ps, dim, key);
      continue;
    }
    if (key == "CUSTOMER_SECTION") {
      need_dim(ln.number);
      have_customers = true;
      customer_rows = ps.rows_until_keyword();
      continue;
    }
    if (key == "BOTH_PERIODS_SECTION") {
      need_dim(ln.number);
      both = read_id_list(ps, dim, key);
      continue;
    }
    if (key == "SINGLE_PERIOD_SECTION") {
      need_dim(ln.number);
      single = read_id_list(ps, dim, key);
      continue;
    }
    throw ParseError(ln.number, "unknown keyword '" + ln.tokens[0] + "'");
  }

  const int end_line = ps.last_line();
  if (!saw_eof) throw ParseError(end_line, "missing EOF (truncated file?)");
  if (!header.count("TYPE")) throw ParseError(end_line, "missing TYPE");
  if (dim < 0) throw ParseError(end_line, "missing DIMENSION");
  const std::string type = header["TYPE"].second[0];
  if (type != "2VRP" && type != "2TSP") throw ParseError(header["TYPE"].first, "TYPE must be 2VRP or 2TSP");

  if (coords && (c1 || c2))
    throw ParseError(end_line, "give either NODE_COORD_SECTION or edge cost sections, not both");

  auto depots_of = [&](std::size_t expected_min) {
    if (!header.count("DEPOTS")) throw ParseError(end_line, "missing DEPOTS");
    auto& [line, vals] = header["DEPOTS"];
    if (vals.size() != 4 && vals.size() < expected_min) throw ParseError(line, "DEPOTS needs four node ids");
    std::vector<int> out;
    for (const auto& v : vals) {
      long long d = parse_int(v, line, "depot");
      if (d < 0 || d >= dim) throw ParseError(line, "depot " + v + " out of range");
      out.push_back(static_cast<int>(d));
    }
    if (out.size() != 4 && out.size() != 1) throw ParseError(line, "DEPOTS needs one or four node ids");
    return std::pair<int, std::vector<int>>{line, out};
  };

  if (type == "2TSP") {
    if (c2) throw ParseError(end_line, "2TSP takes a single cost matrix");
    if (have_customers) throw ParseError(end_line, "2TSP lists customers in BOTH_PERIODS_SECTION");
    if (header.count("CAPACITY")) throw ParseError(header["CAPACITY"].first, "2TSP capacities are derived");
    if (!coords && !c1) throw ParseError(end_line, "missing NODE_COORD_SECTION or EDGE_COST_SECTION");
    if (!both) throw ParseError(end_line, "missing BOTH_PERIODS_SECTION");
    auto [dline, dep] = depots_of(1);
    for (int d : dep)
      if (d != dep[0]) throw ParseError(dline, "2TSP has a single depot");
    TwoPeriodInstance tp;
    tp.name = name;
    tp.depot = dep[0];
    tp.both_periods = *both;
    if (single) {
      tp.single_period = *single;
    } else {
      std::set<int> listed(both->begin(), both->end());
      for (int v = 0; v < dim; ++v)
        if (v != tp.depot && !listed.count(v)) tp.single_period.push_back(v);
    }
    if (header.count("BALANCED")) {
      auto& [line, vals] = header["BALANCED"];
      long long b = parse_int(vals[0], line, "BALANCED");
      if (b != 0 && b != 1) throw ParseError(line, "BALANCED must be 0 or 1");
      tp.balanced = b == 1;
    }
    if (coords) {
      tp.distances = euclidean_matrix(*coords);
      tp.coordinates = std::move(coords);
    } else {
      tp.distances = std::move(*c1);
    }
    try {
      validate(tp);
    } catch (const Error& e) {
      throw ParseError(end_line, e.what());
    }
    return tp;
  }

  if (both || single) throw ParseError(end_line, "period sections belong to 2TSP files");
  if (header.count("BALANCED")) throw ParseError(header["BALANCED"].first, "BALANCED belongs to 2TSP files");
  if (!header.count("CAPACITY")) throw ParseError(end_line, "missing CAPACITY");
  if (!have_customers) throw ParseError(end_line, "missing CUSTOMER_SECTION");
  auto costs = std::make_shared<CostModel>();
  if (coords) {
    costs->c1 = euclidean_matrix(*coords);
    costs->c2 = costs->c1;
  } else {
    if (!c1) throw ParseError(end_line, "missing EDGE_COST_SECTION_V1");
    if (!c2) throw ParseError(end_line, "missing EDGE_COST_SECTION_V2");
    costs->c1 = std::move(*c1);
    costs->c2 = std::move(*c2);
  }

  auto& [cline, cvals] = header["CAPACITY"];
  if (cvals.size() != 2) throw ParseError(cline, "CAPACITY needs two values");
  const long long w1 = parse_int(cvals[0], cline, "capacity");
  const long long w2 = parse_int(cvals[1], cline, "capacity");
  if (w1 < 0 || w2 < 0) throw ParseError(cline, "negative capacity");
  auto [dline, dep] = depots_of(4);
  if (dep.size() != 4) throw ParseError(dline, "DEPOTS needs four node ids");
  Fleet fleet{{w1, w2}, NodeId{dep[0]}, NodeId{dep[1]}, NodeId{dep[2]}, NodeId{dep[3]}};

  std::vector<SegmentCustomer> customers;
  for (const Line* r : customer_rows) {
    if (r->tokens.size() != 9)
      throw ParseError(r->number, "customer rows are 'id L R l1L l1R l2L l2R demand fixed'");
    const long long id = parse_int(r->tokens[0], r->number, "customer id");
    if (id != static_cast<long long>(customers.size()) + 1)
      throw ParseError(r->number, "customer ids must run 1..n in order");
    auto node = [&](const std::string& t) {
      long long v = parse_int(t, r->number, "node");
      if (v < 0 || v >= dim) throw ParseError(r->number, "node " + t + " out of range");
      return NodeId{static_cast<int>(v)};
    };
    std::array<Cost, 4> trav{};
    for (int k = 0; k < 4; ++k) trav[static_cast<std::size_t>(k)] = parse_cost(r->tokens[3 + static_cast<std::size_t>(k)], r->number);
    const long long demand = parse_int(r->tokens[7], r->number, "demand");
    if (demand < 0) throw ParseError(r->number, "negative demand");
    const long long fixed = parse_int(r->tokens[8], r->number, "fixed");
    if (fixed < 0 || fixed > 2) throw ParseError(r->number, "fixed must be 0, 1 or 2");
    std::optional<Vehicle> fv;
    if (fixed) fv = fixed == 1 ? Vehicle::One : Vehicle::Two;
    customers.push_back(make_customer(static_cast<int>(id), node(r->tokens[1]), node(r->tokens[2]), trav,
                                      demand, fv));
  }
  try {
    return make_instance(fleet, std::move(costs), std::move(customers), name);
  } catch (const InfeasibleError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(end_line, e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

inline AnyInstance parse_instance(const std::string& path) {
  try {
    return parse_instance_text(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

namespace io_detail {

inline void write_matrix(std::ostringstream& out, const CostMatrix& m) {
  for (int i = 0; i < m.dimension(); ++i) {
    for (int j = 0; j < m.dimension(); ++j) out << (j ? " " : "") << format_cost(m.at(i, j));
    out << '\n';
  }
}

}  // namespace io_detail

inline std::string instance_to_text(const Instance& inst) {
  using namespace io_detail;
  std::ostringstream out;
  const Fleet& f = inst.fleet;
  out << "NAME: " << inst.name << '\n'
      << "TYPE: 2VRP\n"
      << "DIMENSION: " << inst.costs->dimension() << '\n'
      << "CAPACITY: " << f.capacity[0] << ' ' << f.capacity[1] << '\n'
      << "DEPOTS: " << f.v1_start.index << ' ' << f.v1_end.index << ' ' << f.v2_start.index << ' '
      << f.v2_end.index << '\n';
  out << "EDGE_COST_SECTION_V1\n";
  write_matrix(out, inst.costs->c1);
  out << "EDGE_COST_SECTION_V2\n";
  write_matrix(out, inst.costs->c2);
  out << "CUSTOMER_SECTION\n";
  for (const auto& c : inst.customers) {
    out << c.id << ' ' << c.left.index << ' ' << c.right.index;
    for (int m = 0; m < 2; ++m)
      for (int o = 0; o < 2; ++o) out << ' ' << format_cost(c.traverse[m][o]);
    out << ' ' << c.demand << ' ' << (c.fixed_to ? static_cast<int>(*c.fixed_to) : 0) << '\n';
  }
  out << "EOF\n";
  return out.str();
}

inline std::string instance_to_text(const TwoPeriodInstance& tp) {
  using namespace io_detail;
  std::ostringstream out;
  out << "NAME: " << tp.name << '\n'
      << "TYPE: 2TSP\n"
      << "DIMENSION: " << tp.distances.dimension() << '\n'
      << "DEPOTS: " << tp.depot << '\n'
      << "BALANCED: " << (tp.balanced ? 1 : 0) << '\n';
  if (tp.coordinates) {
    out << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < tp.coordinates->size(); ++i)
      out << i << ' ' << format_double((*tp.coordinates)[i].x) << ' ' << format_double((*tp.coordinates)[i].y)
          << '\n';
  } else {
    out << "EDGE_COST_SECTION\n";
    write_matrix(out, tp.distances);
  }
  auto list = [&](const char* title, const std::vector<int>& ids) {
    out << title << '\n';
    for (std::size_t k = 0; k < ids.size(); ++k) out << ids[k] << ((k + 1) % 16 == 0 || k + 1 == ids.size() ? "\n" : " ");
  };
  list("BOTH_PERIODS_SECTION", tp.both_periods);
  list("SINGLE_PERIOD_SECTION", tp.single_period);
  out << "EOF\n";
  return out.str();
}

inline std::string instance_to_text(const AnyInstance& any) {
  return std::visit([](const auto& x) { return instance_to_text(x); }, any);
}

template <class T>
void write_instance(const T& inst, const std::string& path) {
  write_text_file(path, instance_to_text(inst));
}

}  // namespace vrp2
