#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hdr/errors.hpp"
#include "hdr/io.hpp"

namespace hdr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MalformedFile("cannot write " + path.string());
  out << text;
  if (!out) throw MalformedFile("write failed for " + path.string());
}

// Splits "KEY : value" / "KEY: value" / "KEY" into key and value.
std::pair<std::string, std::string> split_keyword(std::string_view line) {
  const auto colon = line.find(':');
  if (colon != std::string_view::npos) {
    return {upper(trim(line.substr(0, colon))),
            std::string(trim(line.substr(colon + 1)))};
  }
  const auto sp = line.find_first_of(" \t");
  if (sp == std::string_view::npos) return {upper(line), {}};
  return {upper(trim(line.substr(0, sp))), std::string(trim(line.substr(sp)))};
}

class Tokens {
 public:
  explicit Tokens(std::string_view line) : rest_(line) {}

  bool next(std::string_view& tok) {
    rest_ = trim(rest_);
    if (rest_.empty()) return false;
    auto end = rest_.find_first_of(" \t\r");
    if (end == std::string_view::npos) end = rest_.size();
    tok = rest_.substr(0, end);
    rest_.remove_prefix(end);
    return true;
  }

 private:
  std::string_view rest_;
};

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Instance parse_tsplib_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string name;
  int dimension = -1;
  std::optional<Metric> metric;
  bool in_coords = false;
  std::vector<Point> coords;
  std::vector<char> seen;
  int count = 0;
  int lineno = 0;

  auto fail = [&](const std::string& msg) {
    throw MalformedFile("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (in_coords) {
      if (upper(sv) == "EOF") break;
      Tokens toks(sv);
      std::string_view a, b, c, extra;
      long long id = 0;
      double x = 0, y = 0;
      if (!toks.next(a) || !parse_number(a, id)) {
        // A keyword ends the section (e.g. DISPLAY_DATA_SECTION).
        if (std::isalpha(static_cast<unsigned char>(sv.front()))) {
          in_coords = false;
          const auto [key, value] = split_keyword(sv);
          if (key == "EOF") break;
          continue;
        }
        fail("bad node id");
      }
      if (!toks.next(b) || !parse_number(b, x) || !toks.next(c) ||
          !parse_number(c, y)) {
        fail("bad coordinates");
      }
      if (toks.next(extra)) fail("unexpected token after coordinates");
      if (id < 1 || id > dimension) fail("node id out of range");
      if (seen[id - 1]) fail("duplicate node id");
      seen[id - 1] = 1;
      coords[id - 1] = {x, y};
      ++count;
      continue;
    }
    const auto [key, value] = split_keyword(sv);
    if (key == "NAME") {
      name = value;
    } else if (key == "TYPE") {
      if (upper(value) != "TSP") throw UnsupportedFormat("TYPE " + value);
    } else if (key == "DIMENSION") {
      if (!parse_number(std::string_view(value), dimension) || dimension < 1) {
        fail("bad DIMENSION");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      const std::string v = upper(value);
      if (v == "EUC_2D") {
        metric = Metric::kEuc2D;
      } else if (v == "CEIL_2D") {
        metric = Metric::kCeil2D;
      } else {
        throw UnsupportedFormat("EDGE_WEIGHT_TYPE " + value);
      }
    } else if (key == "NODE_COORD_SECTION") {
      if (dimension < 0) fail("NODE_COORD_SECTION before DIMENSION");
      if (!metric) throw UnsupportedFormat("missing EDGE_WEIGHT_TYPE");
      coords.assign(dimension, Point{});
      seen.assign(dimension, 0);
      in_coords = true;
    } else if (key == "EOF") {
      break;
    } else if (key == "EDGE_WEIGHT_SECTION") {
      throw UnsupportedFormat("explicit edge weights");
    }
    // COMMENT, DISPLAY_DATA_TYPE and other keywords are ignored.
  }
  if (dimension < 0) throw MalformedFile("missing DIMENSION");
  if (!metric) throw UnsupportedFormat("missing EDGE_WEIGHT_TYPE");
  if (count != dimension) {
    throw MalformedFile("DIMENSION " + std::to_string(dimension) + " but " +
                        std::to_string(count) + " coordinates");
  }
  if (dimension < 3) throw MalformedFile("fewer than 3 cities");
  return Instance(std::move(coords), *metric, {}, 0, name);
}

Instance parse_tsplib(const std::filesystem::path& path) {
  return parse_tsplib_text(read_file(path));
}

std::string format_tsplib(const Instance& inst) {
  if (inst.has_forced_edges()) {
    throw ContractViolation("forced edges cannot be written to TSPLIB");
  }
  std::string out;
  out += "NAME : " + (inst.name().empty() ? std::string("instance") : inst.name()) + "\n";
  out += "TYPE : TSP\n";
  out += "DIMENSION : " + std::to_string(inst.size()) + "\n";
  out += std::string("EDGE_WEIGHT_TYPE : ") +
         (inst.metric() == Metric::kCeil2D ? "CEIL_2D" : "EUC_2D") + "\n";
  out += "NODE_COORD_SECTION\n";
  for (Vertex v = 0; v < inst.size(); ++v) {
    const Point& p = inst.coord(v);
    out += std::to_string(v + 1) + ' ' + format_double(p.x) + ' ' +
           format_double(p.y) + '\n';
  }
  out += "EOF\n";
  return out;
}

void write_tsplib(const std::filesystem::path& path, const Instance& inst) {
  write_file(path, format_tsplib(inst));
}

std::vector<Vertex> parse_tour_text(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  bool in_section = false;
  std::vector<Vertex> order;
  std::vector<char> seen(std::max(n, 0), 0);
  while (std::getline(in, line)) {
    const std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (!in_section) {
      const auto [key, value] = split_keyword(sv);
      if (key == "TOUR_SECTION") in_section = true;
      if (key == "DIMENSION") {
        int dim = 0;
        if (!parse_number(std::string_view(value), dim) || dim != n) {
          throw MalformedFile("tour DIMENSION does not match instance");
        }
      }
      if (key == "EOF") break;
      continue;
    }
    if (upper(sv) == "EOF") break;
    Tokens toks(sv);
    std::string_view tok;
    bool done = false;
    while (toks.next(tok)) {
      long long id = 0;
      if (!parse_number(tok, id)) throw MalformedFile("bad tour entry");
      if (id == -1) {
        done = true;
        break;
      }
      if (id < 1 || id > n) {
        throw MalformedFile("unknown vertex id " + std::to_string(id));
      }
      if (seen[id - 1]) {
        throw MalformedFile("vertex " + std::to_string(id) + " repeated");
      }
      seen[id - 1] = 1;
      order.push_back(static_cast<Vertex>(id - 1));
    }
    if (done) break;
  }
  if (!in_section) throw MalformedFile("missing TOUR_SECTION");
  if (static_cast<int>(order.size()) != n) {
    throw MalformedFile("tour lists " + std::to_string(order.size()) +
                        " of " + std::to_string(n) + " vertices");
  }
  return order;
}

std::vector<Vertex> parse_tour(const std::filesystem::path& path, int n) {
  return parse_tour_text(read_file(path), n);
}

std::string format_tour(const Tour& tour, const std::string& name) {
  std::string out;
  out += "NAME : " + name + "\n";
  out += "TYPE : TOUR\n";
  out += "COMMENT : cost " + std::to_string(tour.cost()) + "\n";
  out += "DIMENSION : " + std::to_string(tour.size()) + "\n";
  out += "TOUR_SECTION\n";
  for (Vertex v : tour.order()) out += std::to_string(v + 1) + '\n';
  out += "-1\nEOF\n";
  return out;
}

void write_tour(const std::filesystem::path& path, const Tour& tour,
                const std::string& name) {
  write_file(path, format_tour(tour, name));
}

}  // namespace hdr
