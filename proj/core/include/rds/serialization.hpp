#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rds/construct_cantor.hpp"
#include "rds/construct_minimal.hpp"
#include "rds/monte_carlo.hpp"
#include "rds/random_system.hpp"
#include "rds/stationary_solver.hpp"

namespace rds {

/// Depth at which stored transport pairs are checked against the rebuilt plan.
inline constexpr int kStoredPairDepth = 2;

/// JSON text of a system file. Exact values are written as rational strings.
/// `provenance` must be a JSON object text or empty.
std::string system_to_json(const RandomSystem& system, const std::string& provenance = {});
/// Parses a system file ("coordinates": "real" or "unit"). Throws ParseError on
/// malformed text and InvalidMapError on maps that are not homeomorphisms.
RandomSystem system_from_json(const std::string& text);

RandomSystem load_system(const std::filesystem::path& path);
void save_system(const std::filesystem::path& path, const RandomSystem& system,
                 const std::string& provenance = {});

/// Segment-by-segment equality (transport plans compared by their blocks).
bool identical(const MonotoneMap& a, const MonotoneMap& b);
bool identical(const RandomSystem& a, const RandomSystem& b);

struct CantorDescriptor {
  GridCantorSet set;
  ConstructionParams params;
  BoxChain chain0;
  BoxChain chain1;
};

struct MinimalDescriptor {
  MinimalOffsets offsets;
  Rational R;
  Rational eps;
};

struct Bundle {
  RandomSystem system;
  std::optional<CantorDescriptor> cantor;
  std::optional<MinimalDescriptor> minimal;
  std::string report;  // JSON text
};

std::string descriptor_to_json(const CantorDescriptor& d);
std::string descriptor_to_json(const MinimalDescriptor& d);
/// Either kind, told apart by its "kind" field.
void descriptor_from_json(const std::string& text, Bundle& into);

bool operator==(const CantorDescriptor& a, const CantorDescriptor& b);
bool operator==(const MinimalDescriptor& a, const MinimalDescriptor& b);

std::string report_json(const CantorPerturbation& g, const Rational& requested_eps);
std::string report_json(const MinimalPerturbation& g, const Rational& requested_eps);

/// Writes system.json, descriptor.json and report.json into `dir`.
void save_bundle(const std::filesystem::path& dir, const CantorPerturbation& g, const Rational& eps);
void save_bundle(const std::filesystem::path& dir, const MinimalPerturbation& g, const Rational& eps);
Bundle load_bundle(const std::filesystem::path& dir);

/// A system file, or the system of a bundle directory.
RandomSystem load_system_or_bundle(const std::filesystem::path& path);

/// CDF rows x_real, x_unit, cdf_lower, cdf_upper after a "# key: value" header
/// holding the window and tail certificate. At most max_rows rows.
void write_cdf_csv(std::ostream& out, const CdfEnvelope& env, std::int64_t max_rows = 20000);
/// Rows step, symbol, x_real, x_unit.
void write_orbit_csv(std::ostream& out, const std::vector<OrbitPoint>& orbit);

}  // namespace rds
