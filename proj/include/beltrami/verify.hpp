#pragma once

// Residual sweeps behind `verify`, and the JSON forms of every report the
// command-line tool writes.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "beltrami/geometry.hpp"
#include "beltrami/knotcheck.hpp"
#include "beltrami/zeroset.hpp"

namespace beltrami {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Check {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t n_samples = 0;
};

struct VerifyConfig {
  int n_points = 1000;
  std::uint64_t seed = kDefaultSeed;
  double tol_curl = 1e-8;
  double tol_div = 1e-8;
  double tol_pushforward = 1e-10;
  double tol_pullback = 1e-9;
  double tol_trefoil = 1e-12;
  bool zero_set = true;
  CertifyConfig certify;
  unsigned threads = 0;
};

struct SpecReport {
  KnotSpec spec;
  std::vector<Check> checks;

  bool pass() const;
};

/// n seeded points of the annulus, inside the scan margin.
std::vector<Vec3d> sample_points(std::uint64_t seed, int n);

/// Runs every residual sweep for one spec. The trefoil check is included
/// only for (p, q) = (2, 3).
SpecReport verify_spec(const KnotSpec& spec, const VerifyConfig& config = {});

/// The zero-set checks of a certificate, appended by verify_spec.
std::vector<Check> zero_set_checks(const ZeroSetReport& report);

nlohmann::ordered_json to_json(const KnotSpec& spec);
nlohmann::ordered_json to_json(const Check& check);
nlohmann::ordered_json to_json(const ZeroSetReport& report);
nlohmann::ordered_json to_json(const TamenessReport& report);

/// {name, library versions}; fixed for a given build so reports are
/// byte-identical across runs.
nlohmann::ordered_json versions_json();

/// {spec, checks, versions, seed} for one spec; a list of specs becomes
/// {sections: [{spec, checks}, ...], versions, seed}. Both carry "pass".
nlohmann::ordered_json verify_report_json(const std::vector<SpecReport>& reports,
                                          std::uint64_t seed);

}  // namespace beltrami
