#include "contactqm/sweep.hpp"

namespace contactqm::sweep {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "grid bounds must be strictly increasing");
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace contactqm::sweep
