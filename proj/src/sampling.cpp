#include "hedonic/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hedonic/common.hpp"
#include "hedonic/rng.hpp"

namespace hedonic {

Split train_test_split(int n_rows, double ratio, std::uint64_t seed) {
  if (n_rows < 2) throw DomainError("train_test_split: need at least 2 rows");
  if (!(ratio > 0) || !(ratio < 1)) throw DomainError("train_test_split: ratio must lie in (0, 1)");

  std::vector<int> order(n_rows);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  const int n_train = static_cast<int>(ratio * n_rows);
  if (n_train == 0 || n_train == n_rows) {
    throw DomainError("train_test_split: ratio leaves one side empty");
  }
  Split split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.test.assign(order.begin() + n_train, order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

BootstrapResult stratified_bootstrap(const Eigen::VectorXd& targets, int n_strata,
                                     std::uint64_t seed) {
  const int n = static_cast<int>(targets.size());
  if (n == 0) throw DomainError("stratified_bootstrap: no rows");
  if (n_strata < 1) throw DomainError("stratified_bootstrap: n_strata must be >= 1");

  std::set<double> distinct(targets.begin(), targets.end());
  BootstrapResult result;
  int k = n_strata;
  if (static_cast<int>(distinct.size()) < n_strata) {
    k = static_cast<int>(distinct.size());
    result.merged_strata = true;
  }
  k = std::min(k, n);
  result.n_strata_used = k;

  // Quantile strata: sort by (target, index) and cut at floor(s * n / k).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (targets(a) != targets(b)) return targets(a) < targets(b);
    return a < b;
  });

  Rng rng(seed);
  result.indices.reserve(n);
  for (int s = 0; s < k; ++s) {
    const int begin = static_cast<int>(static_cast<long long>(s) * n / k);
    const int end = static_cast<int>(static_cast<long long>(s + 1) * n / k);
    for (int i = begin; i < end; ++i) {
      const int pick = begin + static_cast<int>(rng.uniform_index(end - begin));
      result.indices.push_back(order[pick]);
    }
  }
  return result;
}

}  // namespace hedonic
