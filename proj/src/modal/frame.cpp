#include "sks/modal.hpp"

namespace sks {

Report validate_frame(const Frame& frame) {
  Report r;
  const std::size_t n = frame.size();
  if (n == 0) r.violations.push_back("frame has no worlds");
  if (frame.R.size() != n || frame.rank.size() != n) {
    r.violations.push_back("frame tables do not match the world count");
    return r;
  }
  for (std::uint32_t w = 0; w < n; ++w) {
    for (auto v : frame.R[w])
      if (v >= n) r.violations.push_back("R names an unknown world from " + frame.worlds[w]);
    if (frame.rank[w].size() != n) {
      r.violations.push_back("rank table of " + frame.worlds[w] + " has the wrong size");
      continue;
    }
    // A ranking is reflexive, transitive and total on whatever it ranks;
    // only unranked carrier members break comparability.
    for (auto v : frame.carrier(w))
      if (frame.rank[w][v] < 0)
        r.violations.push_back("order at " + frame.worlds[w] + " does not compare " + frame.worlds[v]);
  }
  return r;
}

}  // namespace sks
