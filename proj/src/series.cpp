#include "lsat/series.hpp"

#include <cmath>

#include "lsat/error.hpp"

namespace lsat {

void TimeSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].timestamp) || !std::isfinite(points[i].intensity)) {
      throw Error(ErrorCode::NonFinite, "series '" + id + "' point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(points[i].timestamp > points[i - 1].timestamp)) {
      throw Error(ErrorCode::InvalidArgument,
                  "series '" + id + "' timestamps not strictly increasing at point " + std::to_string(i));
    }
  }
}

}  // namespace lsat
