#include "helmfs/series.hpp"

namespace helmfs {

void SeriesOptions::check() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("SeriesOptions: rel_tol must be in (0,1)");
  if (max_terms_per_index < 1)
    throw std::invalid_argument("SeriesOptions: max_terms_per_index must be >= 1");
  if (stagnation_window < 1)
    throw std::invalid_argument("SeriesOptions: stagnation_window must be >= 1");
}

const char* to_string(Representation r) noexcept {
  switch (r) {
    case Representation::direct: return "direct";
    case Representation::expanded: return "expanded";
    case Representation::via_f2: return "via_f2";
    case Representation::regularized: return "regularized";
    case Representation::regularized_accel: return "regularized_accel";
    case Representation::one_minus_z: return "one_minus_z";
    case Representation::integral: return "integral";
  }
  return "unknown";
}

} // namespace helmfs
