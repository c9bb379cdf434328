#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fixpt/verify.hpp"

namespace fixpt {

/// f(x) = (0, x_1^2, b_2 x_2, ...) on the half ball plus the point e_1 of l2,
/// with the proximity graph |x - y| < 1/2.
struct Example34Row {
  std::size_t i = 0;
  double alpha_hat = 0.0;     ///< max ratio over edge pairs in the half ball
  double edge_bound = 0.0;    ///< prod_{n=2}^i b_n
  double global_ratio = 0.0;  ///< max ratio over full-graph pairs, e_1 included
  double global_bound = 0.0;  ///< (3/2) prod_{n=2}^i b_n
};

struct Example34Report {
  std::size_t dim = 16;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> b;
  HypothesisReport edge_preservation;  ///< (f x, f y) stays an edge
  HypothesisReport nonexpansive;       ///< |f x - f y| <= |x - y| on edges
  HypothesisReport edge_bound;         ///< alpha_hat_i <= prod b_n
  HypothesisReport global_bound;       ///< ratios with e_1 <= (3/2) prod b_n
  std::vector<Example34Row> table;
  /// Steps i at which some full-graph ratio exceeded prod b_n.
  std::size_t exceed_count = 0;
  Verdict overall = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

Example34Report verify_example34(std::size_t samples, std::uint64_t seed,
                                 std::size_t dim = 16, std::size_t steps = 10);

}  // namespace fixpt
