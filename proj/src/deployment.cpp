#include "dss/deployment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "dss/rng.hpp"
#include "dss/spatial_hash.hpp"

namespace dss {

namespace {

std::vector<Point> uniform_points(std::size_t count, const Region& region, Rng& rng) {
  std::uniform_real_distribution<double> ux(region.origin.x, region.max_x());
  std::uniform_real_distribution<double> uy(region.origin.y, region.max_y());
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    pts.push_back({x, y});
  }
  return pts;
}

void check_region(const Region& region) {
  if (!(region.width > 0.0) || !(region.height > 0.0) || !std::isfinite(region.width) ||
      !std::isfinite(region.height))
    throw std::invalid_argument("region width and height must be > 0");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(',', pos);
    out.push_back(trim(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

NodeSet generate_ppp(double density_per_km2, const Region& region, std::uint64_t seed) {
  if (!(density_per_km2 >= 0.0) || !std::isfinite(density_per_km2))
    throw std::invalid_argument("density must be finite and >= 0");
  check_region(region);
  Rng rng(seed);
  const double mean = density_per_km2 * region.area_km2();
  std::size_t count = 0;
  if (mean > 0.0) {
    std::poisson_distribution<std::int64_t> poisson(mean);
    count = static_cast<std::size_t>(poisson(rng));
  }
  return NodeSet(uniform_points(count, region, rng));
}

NodeSet generate_uniform(std::size_t count, const Region& region, std::uint64_t seed) {
  check_region(region);
  Rng rng(seed);
  return NodeSet(uniform_points(count, region, rng));
}

Point project_lonlat_to_meters(double lon, double lat, double origin_lon, double origin_lat) {
  if (!(std::abs(lat) < 90.0) || !(std::abs(origin_lat) < 90.0))
    throw std::invalid_argument("latitude must satisfy |lat| < 90");
  constexpr double deg = std::numbers::pi / 180.0;
  return {(lon - origin_lon) * deg * kEarthRadiusM * std::cos(origin_lat * deg),
          (lat - origin_lat) * deg * kEarthRadiusM};
}

NodeSet ingest_ap_csv(const std::filesystem::path& path, CsvMode mode,
                      std::optional<LonLat> projection_origin) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());

  std::vector<Point> raw;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    const auto fields = split_commas(view);
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 columns, found " + std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(line_no, "empty id");
    const auto a = parse_double(fields[1]);
    const auto b = parse_double(fields[2]);
    if (!a || !b)
      throw ParseError(line_no, "cannot parse coordinates '" + std::string(fields[1]) + "', '" +
                                    std::string(fields[2]) + "'");
    if (mode == CsvMode::LonLat && (std::abs(*b) >= 90.0 || std::abs(*a) > 180.0))
      throw ParseError(line_no, "longitude/latitude out of range");
    raw.push_back({*a, *b});
  }

  if (mode == CsvMode::Meters || raw.empty()) return NodeSet(raw);

  LonLat origin;
  if (projection_origin) {
    origin = *projection_origin;
  } else {
    double lo_x = raw[0].x, hi_x = raw[0].x, lo_y = raw[0].y, hi_y = raw[0].y;
    for (const auto& p : raw) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    origin = {0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  }
  std::vector<Point> projected;
  projected.reserve(raw.size());
  for (const auto& p : raw)
    projected.push_back(project_lonlat_to_meters(p.x, p.y, origin.lon, origin.lat));
  return NodeSet(projected);
}

void write_nodes_csv(const std::filesystem::path& path, const NodeSet& nodes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  out << "id,x_m,y_m\n";
  for (const auto& n : nodes) out << n.id << ',' << n.position.x << ',' << n.position.y << '\n';
}

Region bounding_box(const NodeSet& nodes) {
  if (nodes.empty()) throw std::invalid_argument("bounding box of an empty node set");
  double lo_x = nodes.position(0).x, hi_x = lo_x;
  double lo_y = nodes.position(0).y, hi_y = lo_y;
  for (const auto& n : nodes) {
    lo_x = std::min(lo_x, n.position.x);
    hi_x = std::max(hi_x, n.position.x);
    lo_y = std::min(lo_y, n.position.y);
    hi_y = std::max(hi_y, n.position.y);
  }
  return Region{hi_x - lo_x, hi_y - lo_y, {lo_x, lo_y}};
}

namespace {

std::vector<GridCell> partition_impl(const NodeSet& nodes, const Region& frame, std::size_t rows,
                                     std::size_t cols, bool keep_all) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rows and cols must be >= 1");
  if (!(frame.width >= 0.0) || !(frame.height >= 0.0))
    throw std::invalid_argument("grid frame must have non-negative extent");

  const double cw = frame.width / static_cast<double>(cols);
  const double ch = frame.height / static_cast<double>(rows);
  std::vector<GridCell> cells;
  cells.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      cells.push_back(GridCell{r, c,
                               Region{cw, ch,
                                      {frame.origin.x + static_cast<double>(c) * cw,
                                       frame.origin.y + static_cast<double>(r) * ch}},
                               {}});

  auto index_of = [keep_all](double v, double lo, double step, double extent, std::size_t n)
      -> std::optional<std::size_t> {
    if (!keep_all && (v < lo || v > lo + extent)) return std::nullopt;
    if (!(step > 0.0) || v <= lo) return 0;
    auto i = static_cast<std::size_t>(std::floor((v - lo) / step));
    return std::min(i, n - 1);
  };

  for (const auto& n : nodes) {
    const auto c = index_of(n.position.x, frame.origin.x, cw, frame.width, cols);
    const auto r = index_of(n.position.y, frame.origin.y, ch, frame.height, rows);
    if (!c || !r) continue;
    cells[*r * cols + *c].node_ids.push_back(n.id);
  }
  return cells;
}

}  // namespace

std::vector<GridCell> partition_grid(const NodeSet& nodes, std::size_t rows, std::size_t cols) {
  if (nodes.empty()) throw std::invalid_argument("cannot partition an empty node set");
  // The box is derived from the nodes, so every node belongs to some cell even
  // when origin + extent rounds below the maximum coordinate.
  return partition_impl(nodes, bounding_box(nodes), rows, cols, true);
}

std::vector<GridCell> partition_grid(const NodeSet& nodes, const Region& frame, std::size_t rows,
                                     std::size_t cols) {
  return partition_impl(nodes, frame, rows, cols, false);
}

std::vector<double> nearest_neighbor_distances_serial(const NodeSet& nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("nearest neighbour needs at least 2 nodes");
  std::vector<double> out(nodes.size(), std::numeric_limits<double>::infinity());
  for (NodeId i = 0; i < nodes.size(); ++i)
    for (NodeId j = 0; j < nodes.size(); ++j)
      if (i != j) out[i] = std::min(out[i], distance(nodes.position(i), nodes.position(j)));
  return out;
}

std::vector<double> nearest_neighbor_distances(const NodeSet& nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("nearest neighbour needs at least 2 nodes");
  const Region box = bounding_box(nodes);
  const double area = std::max(box.area_m2(), 0.0);
  double cell = area > 0.0 ? std::sqrt(area / static_cast<double>(nodes.size()))
                           : std::max(box.width, box.height) / static_cast<double>(nodes.size());
  if (!(cell > 0.0)) cell = 1.0;
  const SpatialHash hash(nodes, cell);
  const double h = hash.cell_size();
  const std::ptrdiff_t max_ring = std::max(hash.rows(), hash.cols());

  std::vector<double> out(nodes.size());
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<NodeId>(ii);
    const Point p = nodes.position(i);
    const auto cx = hash.col_of(p.x);
    const auto cy = hash.row_of(p.y);
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](NodeId j) {
      if (j != i) best = std::min(best, distance(p, nodes.position(j)));
    };
    for (std::ptrdiff_t ring = 0; ring <= max_ring; ++ring) {
      if (ring == 0) {
        hash.for_bucket(cx, cy, visit);
      } else {
        for (std::ptrdiff_t d = -ring; d <= ring; ++d) {
          hash.for_bucket(cx + d, cy - ring, visit);
          hash.for_bucket(cx + d, cy + ring, visit);
        }
        for (std::ptrdiff_t d = -ring + 1; d <= ring - 1; ++d) {
          hash.for_bucket(cx - ring, cy + d, visit);
          hash.for_bucket(cx + ring, cy + d, visit);
        }
      }
      // Anything beyond this ring is at least ring * h away.
      if (best <= static_cast<double>(ring) * h) break;
    }
    out[i] = best;
  }
  return out;
}

}  // namespace dss
