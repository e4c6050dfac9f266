#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dss/network_model.hpp"

namespace dss {

struct Region {
  double width = 1000.0;   // m
  double height = 1000.0;  // m
  Point origin;

  double area_m2() const { return width * height; }
  double area_km2() const { return area_m2() * 1e-6; }
  double max_x() const { return origin.x + width; }
  double max_y() const { return origin.y + height; }
};

struct GridCell {
  std::size_t row = 0;
  std::size_t col = 0;
  Region bounds;
  std::vector<NodeId> node_ids;
};

/// Homogeneous PPP: Poisson count with mean density * area (km^2), uniform
/// positions. Throws std::invalid_argument on negative density.
NodeSet generate_ppp(double density_per_km2, const Region& region, std::uint64_t seed);

/// Exactly `count` i.i.d. uniform points, used for fixed-size sweeps.
NodeSet generate_uniform(std::size_t count, const Region& region, std::uint64_t seed);

struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
};

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Equirectangular projection about `origin`. Throws when |lat| >= 90.
Point project_lonlat_to_meters(double lon, double lat, double origin_lon, double origin_lat);

enum class CsvMode { LonLat, Meters };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads (id, lon, lat) or (id, x_m, y_m) rows after a header line. Row
/// order is kept and ids are reassigned from 0. In LonLat mode the
/// projection origin defaults to the centre of the coordinate bounding box.
NodeSet ingest_ap_csv(const std::filesystem::path& path, CsvMode mode,
                      std::optional<LonLat> projection_origin = std::nullopt);

/// Writes (id, x_m, y_m).
void write_nodes_csv(const std::filesystem::path& path, const NodeSet& nodes);

/// Bounding box of the node positions. Throws on an empty set.
Region bounding_box(const NodeSet& nodes);

/// Splits the bounding box into rows x cols equal cells, row-major with row 0
/// at the minimum y. Nodes on the maximum edges go to the last row/column.
std::vector<GridCell> partition_grid(const NodeSet& nodes, std::size_t rows, std::size_t cols);

/// Same split over an explicit frame; nodes outside the frame are dropped.
std::vector<GridCell> partition_grid(const NodeSet& nodes, const Region& frame,
                                     std::size_t rows, std::size_t cols);

/// Distance from each node to its closest other node (cell-hash search).
std::vector<double> nearest_neighbor_distances(const NodeSet& nodes);

/// Exhaustive O(N^2) version kept as the reference.
std::vector<double> nearest_neighbor_distances_serial(const NodeSet& nodes);

}  // namespace dss
