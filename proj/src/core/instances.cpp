#include "instances.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace closest_pair {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal pair (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double u1 = 1.0 - unit();  // (0, 1]
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::mt19937_64 engine_;
};

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

void validate(const GenSpec& spec) {
  if (spec.n < 2) throw_invalid("n must be at least 2, got " + std::to_string(spec.n));
  if (const auto* box = std::get_if<UniformBox>(&spec.distribution)) {
    const bool finite = std::isfinite(box->xmin) && std::isfinite(box->xmax) &&
                        std::isfinite(box->ymin) && std::isfinite(box->ymax);
    if (!finite) throw_invalid("box bounds must be finite");
    if (!(box->xmin < box->xmax) || !(box->ymin < box->ymax)) {
      throw_invalid("box bounds must satisfy xmin < xmax and ymin < ymax");
    }
  } else if (const auto* clustered = std::get_if<Clustered>(&spec.distribution)) {
    if (clustered->clusters < 1) throw_invalid("cluster count must be at least 1");
    if (!(clustered->sigma > 0.0) || !std::isfinite(clustered->sigma)) {
      throw_invalid("cluster sigma must be finite and > 0");
    }
  }
}

PointSet generate(const GenSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  std::vector<Point> points;
  points.reserve(spec.n);

  if (std::holds_alternative<UniformUnitSquare>(spec.distribution)) {
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double x = rng.unit();
      const double y = rng.unit();
      points.push_back(Point{x, y, i});
    }
  } else if (const auto* box = std::get_if<UniformBox>(&spec.distribution)) {
    const double width = box->xmax - box->xmin;
    const double height = box->ymax - box->ymin;
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double x = box->xmin + width * rng.unit();
      const double y = box->ymin + height * rng.unit();
      points.push_back(Point{x, y, i});
    }
  } else {
    const auto& clustered = std::get<Clustered>(spec.distribution);
    std::vector<std::pair<double, double>> centres(clustered.clusters);
    for (auto& [cx, cy] : centres) {
      cx = rng.unit();
      cy = rng.unit();
    }
    for (std::size_t i = 0; i < spec.n; ++i) {
      const auto& [cx, cy] = centres[i % centres.size()];
      const auto [dx, dy] = rng.normal_pair();
      points.push_back(Point{cx + clustered.sigma * dx, cy + clustered.sigma * dy, i});
    }
  }
  return PointSet(std::move(points));
}

Distribution parse_distribution(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto fields = args.empty() ? std::vector<std::string_view>{} : split_fields(args, ',');

  auto number = [&](std::string_view field) {
    double v = 0.0;
    if (!parse_double(field, v)) {
      throw_invalid("invalid number '" + std::string(field) + "' in distribution '" +
                    std::string(text) + "'");
    }
    return v;
  };

  if (name == "uniform" && fields.empty()) return UniformUnitSquare{};
  if (name == "box" && fields.size() == 4) {
    return UniformBox{number(fields[0]), number(fields[1]), number(fields[2]), number(fields[3])};
  }
  if (name == "clustered" && fields.size() == 2) {
    const double k = number(fields[0]);
    if (k < 1 || k != std::floor(k)) throw_invalid("cluster count must be a positive integer");
    return Clustered{static_cast<std::size_t>(k), number(fields[1])};
  }
  throw_invalid("unknown distribution '" + std::string(text) +
                "': expected uniform, box:xmin,xmax,ymin,ymax or clustered:k,sigma");
}

std::string to_string(const Distribution& distribution) {
  if (std::holds_alternative<UniformUnitSquare>(distribution)) return "uniform";
  std::string out;
  if (const auto* box = std::get_if<UniformBox>(&distribution)) {
    out = "box:";
    for (double v : {box->xmin, box->xmax, box->ymin, box->ymax}) {
      append_shortest(out, v);
      out += ',';
    }
    out.pop_back();
    return out;
  }
  const auto& clustered = std::get<Clustered>(distribution);
  out = "clustered:" + std::to_string(clustered.clusters) + ",";
  append_shortest(out, clustered.sigma);
  return out;
}

PointSet parse_points(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto tokens = split_whitespace(view);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    double x = 0.0;
    double y = 0.0;
    if (tokens.size() != 2 || !parse_double(tokens[0], x) || !parse_double(tokens[1], y)) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                        ": malformed point, expected 'x y' but got '" +
                                        std::string(view) + "'");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": non-finite coordinate in '" +
                      std::string(view) + "'");
    }
    points.push_back(Point{x, y, points.size()});
  }
  if (in.bad()) throw Error(ErrorKind::Io, "read failure after line " + std::to_string(line_no));
  if (points.size() < 2) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                      ": point set too small: found " +
                                      std::to_string(points.size()) +
                                      " point(s) by end of input, need at least 2");
  }
  return PointSet(std::move(points));
}

PointSet read_points(const std::string& path) {
  if (path == "-") return parse_points(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return parse_points(in);
}

void write_points(const PointSet& points, std::ostream& out) {
  std::string text;
  text.reserve(points.size() * 40);
  for (const Point& p : points.points()) {
    append_shortest(text, p.x);
    text += ' ';
    append_shortest(text, p.y);
    text += '\n';
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_points(const PointSet& points, const std::string& path) {
  if (path == "-") {
    write_points(points, std::cout);
    std::cout.flush();
    if (!std::cout) throw Error(ErrorKind::Io, "write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_points(points, out);
  out.close();
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace closest_pair
