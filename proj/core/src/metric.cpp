#include "wpg/metric.hpp"

#include <cmath>

namespace wpg {

double HMetric::speed(cplx z, cplx v) { return std::abs(v) / z.imag(); }

}  // namespace wpg
