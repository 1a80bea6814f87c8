#pragma once

// Verification suites behind `verify`: each runs a deterministic, seeded
// batch of checks and reports them as JSON.  Not installed.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "helmfs/verify.hpp"

namespace helmfs::suites {

struct SuiteConfig {
  HelmholtzParams hp;
  SeriesOptions series;
  StencilConfig stencil;
  std::uint64_t seed = 7;
};

const std::vector<std::string>& all_suites();

// {"name": ..., "checks": [{id, location, residual, scale, relative,
// pass[, error]}], "pass": bool}
nlohmann::json run_suite(const std::string& name, const SuiteConfig& cfg);

} // namespace helmfs::suites
