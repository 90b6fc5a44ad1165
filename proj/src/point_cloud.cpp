#include "riesz/point_cloud.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "riesz/core.hpp"
#include "riesz/detail/text.hpp"

namespace riesz {

namespace {

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("failed to parse number: '" + s + "'");
  return v;
}

}  // namespace

double PointCloud::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double PointCloud::diameter() const {
  const std::size_t count = size();
  if (count < 2) return 0.0;
  if (count <= 4096) {
    double best = 0.0;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j)
        best = std::max(best, squared_distance(point(i), point(j)));
    return std::sqrt(best);
  }
  // Bounding-box diagonal; an upper bound within sqrt(n) of the diameter,
  // good enough for radius grids.
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    double lo = coords[static_cast<std::size_t>(k)], hi = lo;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = point(i)[static_cast<std::size_t>(k)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    s += (hi - lo) * (hi - lo);
  }
  return std::sqrt(s);
}

std::vector<double> PointCloud::normalized_weights() const {
  const double total = total_weight();
  if (!(total > 0.0)) throw std::invalid_argument("PointCloud: total weight must be positive");
  std::vector<double> w(weights);
  for (double& v : w) v /= total;
  return w;
}

void PointCloud::validate() const {
  if (n < 1) throw std::invalid_argument("PointCloud: ambient dimension must be >= 1");
  if (weights.empty()) throw std::invalid_argument("PointCloud: at least one point required");
  if (coords.size() != weights.size() * static_cast<std::size_t>(n))
    throw std::invalid_argument("PointCloud: coords/weights length mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("PointCloud: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("PointCloud: total weight must be positive");
  for (double c : coords)
    if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
}

double point_distance(const PointCloud& cloud, std::size_t i, std::size_t j) {
  return distance(cloud.point(i), cloud.point(j));
}

void save_cloud_csv(const PointCloud& cloud, const std::string& path) {
  cloud.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (int k = 1; k <= cloud.n; ++k) out << "x" << k << ",";
  out << "weight\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto pt = cloud.point(i);
    for (int k = 0; k < cloud.n; ++k) out << detail::fmt17(pt[static_cast<std::size_t>(k)]) << ",";
    out << detail::fmt17(cloud.weights[i]) << "\n";
  }
  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open for writing: " + path + ".meta");
  meta << "n=" << cloud.n << "\n";
  meta << "d=" << detail::fmt17(cloud.d) << "\n";
  meta << "label=" << cloud.label << "\n";
  meta << "seed=" << cloud.seed << "\n";
}

PointCloud load_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty cloud file: " + path);
  const auto header = detail::split(detail::trim(line), ',');
  if (header.size() < 2 || header.back() != "weight")
    throw std::runtime_error("bad cloud header in " + path);
  PointCloud cloud;
  cloud.n = static_cast<int>(header.size()) - 1;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != header.size()) throw std::runtime_error("bad cloud row in " + path);
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) cloud.coords.push_back(parse_double(cells[k]));
    cloud.weights.push_back(parse_double(cells.back()));
  }
  cloud.d = cloud.n;
  cloud.label = path;

  std::ifstream meta(path + ".meta");
  if (meta) {
    while (std::getline(meta, line)) {
      const auto pos = line.find('=');
      if (pos == std::string::npos) continue;
      const std::string key = detail::trim(line.substr(0, pos));
      const std::string value = detail::trim(line.substr(pos + 1));
      if (key == "n") {
        if (std::stoi(value) != cloud.n) throw std::runtime_error("metadata n mismatch for " + path);
      } else if (key == "d") {
        cloud.d = parse_double(value);
      } else if (key == "label") {
        cloud.label = value;
      } else if (key == "seed") {
        cloud.seed = std::stoull(value);
      }
    }
  }
  cloud.validate();
  return cloud;
}

void save_cloud_json(const PointCloud& cloud, const std::string& path) {
  cloud.validate();
  nlohmann::json j;
  j["n"] = cloud.n;
  j["d"] = cloud.d;
  j["label"] = cloud.label;
  j["seed"] = cloud.seed;
  auto points = nlohmann::json::array();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto row = nlohmann::json::array();
    for (double v : cloud.point(i)) row.push_back(v);
    points.push_back(std::move(row));
  }
  j["points"] = std::move(points);
  j["weights"] = cloud.weights;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

PointCloud load_cloud_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  PointCloud cloud;
  cloud.n = j.at("n").get<int>();
  cloud.d = j.at("d").get<double>();
  cloud.label = j.at("label").get<std::string>();
  cloud.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("points")) {
    if (static_cast<int>(row.size()) != cloud.n) throw std::runtime_error("bad point row in " + path);
    for (const auto& v : row) cloud.coords.push_back(v.get<double>());
  }
  cloud.weights = j.at("weights").get<std::vector<double>>();
  cloud.validate();
  return cloud;
}

}  // namespace riesz
