#include "hypfill/nets.hpp"

#include <algorithm>
#include <cmath>

namespace hypfill {

bool NetHierarchy::contains(int level, int point) const {
  if (level < 0) return false;
  if (level >= static_cast<int>(levels.size())) level = static_cast<int>(levels.size()) - 1;
  const auto& a = levels[level];
  return std::binary_search(a.begin(), a.end(), point);
}

int isolation_level(const FiniteMetricSpace& space, double alpha) {
  if (space.size() == 1) return 0;
  int n = 0;
  while (std::pow(alpha, -n) > space.min_sep()) ++n;
  return n;
}

NetHierarchy build_nets(const FiniteMetricSpace& space, double alpha, int max_depth,
                        int root) {
  if (!(alpha > 1.0)) throw BadParams("alpha must exceed 1");
  if (root < 0 || root >= space.size()) throw BadParams("root point out of range");
  if (max_depth < 0) throw BadParams("depth must be nonnegative");

  NetHierarchy h;
  h.alpha = alpha;
  h.depth = max_depth;
  h.root = root;
  h.isolation_level = isolation_level(space, alpha);
  h.levels.resize(max_depth + 1);
  h.levels[0] = {root};

  int n_pts = space.size();
  std::vector<char> in_net(n_pts, 0);
  std::vector<int> current = {root};
  in_net[root] = 1;

  for (int level = 1; level <= max_depth; ++level) {
    double radius = std::pow(alpha, -level);
    for (int p = 0; p < n_pts; ++p) {
      if (in_net[p]) continue;
      bool separated = true;
      for (int q : current)
        if (space.dist(p, q) < radius) {
          separated = false;
          break;
        }
      if (separated) {
        current.push_back(p);
        in_net[p] = 1;
      }
    }
    h.levels[level] = current;
    std::sort(h.levels[level].begin(), h.levels[level].end());
  }
  return h;
}

}  // namespace hypfill
