#include "cater/rules.hpp"

#include <algorithm>
#include <limits>

#include "cater/error.hpp"
#include "cater/random.hpp"

namespace cater {

namespace {

void check_dimensions(const CondDistribution& dist, const Assignment& x) {
  const std::size_t R = dist.W.size();
  const std::size_t C = dist.c.size();
  if (x.size() != C) {
    throw Error(ErrorCode::DimensionMismatch,
                "assignment has " + std::to_string(x.size()) + " columns, distribution has " +
                    std::to_string(C));
  }
  for (std::size_t r = 0; r < R; ++r) {
    if (dist.W[r].size() != C) throw Error(ErrorCode::DimensionMismatch, "ragged W matrix");
  }
  for (std::size_t j = 0; j < C; ++j) {
    if (x[j] >= R) {
      throw Error(ErrorCode::DimensionMismatch,
                  "assignment row " + std::to_string(x[j]) + " out of range for R = " +
                      std::to_string(R));
    }
  }
}

// Precomputed pieces shared by the solvers. col_cost[j][r] is the squared
// distance between W[:,j] and the unit vector e_r.
struct Instance {
  std::size_t R = 0;
  std::size_t C = 0;
  double scale = 0.0;  // alpha / |C|
  std::vector<double> wc;
  std::vector<double> c;
  std::vector<std::vector<double>> col_cost;

  Instance(const CondDistribution& dist, double alpha)
      : R(dist.W.size()), C(dist.c.size()), c(dist.c) {
    if (R == 0 || C == 0) {
      throw Error(ErrorCode::DimensionMismatch, "empty distribution");
    }
    scale = alpha / static_cast<double>(C);
    wc.assign(R, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      if (dist.W[r].size() != C) throw Error(ErrorCode::DimensionMismatch, "ragged W matrix");
      for (std::size_t j = 0; j < C; ++j) wc[r] += dist.W[r][j] * c[j];
    }
    col_cost.assign(C, std::vector<double>(R, 0.0));
    for (std::size_t j = 0; j < C; ++j) {
      for (std::size_t r = 0; r < R; ++r) {
        double s = 0.0;
        for (std::size_t q = 0; q < R; ++q) {
          const double d = dist.W[q][j] - (q == r ? 1.0 : 0.0);
          s += d * d;
        }
        col_cost[j][r] = s;
      }
    }
  }

  // Evaluated from scratch in a fixed order so that the value of an
  // assignment does not depend on how the search reached it.
  ObjectiveBreakdown evaluate(const Assignment& x, std::vector<double>& xc) const {
    xc.assign(R, 0.0);
    double distinct = 0.0;
    for (std::size_t j = 0; j < C; ++j) {
      xc[x[j]] += c[j];
      distinct += col_cost[j][x[j]];
    }
    const double indist = indistinguishable(xc);
    return {indist, distinct, indist - scale * distinct};
  }

  double indistinguishable(const std::vector<double>& xc) const {
    double s = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double d = wc[r] - xc[r];
      s += d * d;
    }
    return s;
  }
};

// One pass of best single-coordinate moves. Returns whether anything moved.
bool single_sweep(const Instance& inst, Assignment& x, std::vector<double>& xc,
                  std::vector<double>& trial) {
  bool moved = false;
  for (std::size_t j = 0; j < inst.C; ++j) {
    const std::size_t from = x[j];
    xc[from] -= inst.c[j];
    for (std::size_t r = 0; r < inst.R; ++r) {
      xc[r] += inst.c[j];
      trial[r] = inst.indistinguishable(xc) - inst.scale * inst.col_cost[j][r];
      xc[r] -= inst.c[j];
    }
    std::size_t pick = from;
    for (std::size_t r = 0; r < inst.R; ++r) {
      if (trial[r] < trial[pick] - kTieTolerance) pick = r;
    }
    xc[pick] += inst.c[j];
    if (pick != from) {
      x[j] = pick;
      moved = true;
    }
  }
  return moved;
}

// Applies the best improving move of two coordinates at once, if any.
bool pair_move(const Instance& inst, Assignment& x, std::vector<double>& xc) {
  const double current = inst.indistinguishable(xc);
  double best_gain = kTieTolerance;
  std::size_t bj = 0, bk = 0, ba = 0, bb = 0;
  bool found = false;
  for (std::size_t j = 0; j < inst.C; ++j) {
    for (std::size_t k = j + 1; k < inst.C; ++k) {
      const double base = inst.scale * (inst.col_cost[j][x[j]] + inst.col_cost[k][x[k]]);
      xc[x[j]] -= inst.c[j];
      xc[x[k]] -= inst.c[k];
      for (std::size_t a = 0; a < inst.R; ++a) {
        xc[a] += inst.c[j];
        for (std::size_t b = 0; b < inst.R; ++b) {
          if (a == x[j] || b == x[k]) continue;
          xc[b] += inst.c[k];
          const double after = inst.indistinguishable(xc) -
                               inst.scale * (inst.col_cost[j][a] + inst.col_cost[k][b]);
          xc[b] -= inst.c[k];
          const double gain = current - base - after;
          if (gain > best_gain) {
            best_gain = gain;
            bj = j, bk = k, ba = a, bb = b;
            found = true;
          }
        }
        xc[a] -= inst.c[j];
      }
      xc[x[j]] += inst.c[j];
      xc[x[k]] += inst.c[k];
    }
  }
  if (!found) return false;
  xc[x[bj]] -= inst.c[bj];
  xc[x[bk]] -= inst.c[bk];
  x[bj] = ba;
  x[bk] = bb;
  xc[ba] += inst.c[bj];
  xc[bb] += inst.c[bk];
  return true;
}

bool better(const ObjectiveBreakdown& a, const Assignment& xa, const ObjectiveBreakdown& b,
            const Assignment& xb) {
  if (a.total < b.total - kTieTolerance) return true;
  if (b.total < a.total - kTieTolerance) return false;
  return xa < xb;
}

}  // namespace

ObjectiveBreakdown objective(const CondDistribution& dist, const Assignment& x, double alpha) {
  check_dimensions(dist, x);
  Instance inst(dist, alpha);
  std::vector<double> xc;
  return inst.evaluate(x, xc);
}

std::uint64_t assignment_count(std::size_t num_words, std::size_t num_conditions) {
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < num_conditions; ++j) {
    if (num_words != 0 && n > std::numeric_limits<std::uint64_t>::max() / num_words) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= num_words;
  }
  return n;
}

Solution solve_exact(const CondDistribution& dist, const OptimizerConfig& config) {
  if (config.alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
  Instance inst(dist, config.alpha);
  const std::uint64_t space = assignment_count(inst.R, inst.C);
  if (space > config.exact_threshold) {
    throw Error(ErrorCode::TooLarge, "set " + std::to_string(dist.set_id) + ": " +
                                         std::to_string(inst.R) + "^" +
                                         std::to_string(inst.C) +
                                         " assignments exceed the exact threshold " +
                                         std::to_string(config.exact_threshold));
  }
  // Odometer with condition 0 as the most significant digit, so assignments
  // are visited in lexicographic order and the first of a tie wins.
  Assignment x(inst.C, 0);
  std::vector<double> xc;
  Solution best{x, inst.evaluate(x, xc), true};
  while (true) {
    std::size_t j = inst.C;
    while (j > 0) {
      --j;
      if (++x[j] < inst.R) break;
      x[j] = 0;
      if (j == 0) return best;
    }
    const ObjectiveBreakdown value = inst.evaluate(x, xc);
    if (value.total < best.objective.total - kTieTolerance) {
      best.assignment = x;
      best.objective = value;
    }
  }
}

Solution solve_local(const CondDistribution& dist, const OptimizerConfig& config) {
  if (config.alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
  if (config.restarts < 1 || config.max_sweeps < 1) {
    throw Error(ErrorCode::InvalidArgument, "restarts and max_sweeps must be >= 1");
  }
  Instance inst(dist, config.alpha);
  std::uint64_t seed_state = config.seed;
  std::vector<double> xc;
  std::vector<double> trial(inst.R);
  Solution best;

  for (int restart = 0; restart < config.restarts; ++restart) {
    Rng rng(splitmix64(seed_state));
    Assignment x(inst.C);
    for (auto& r : x) r = rng.below(inst.R);

    inst.evaluate(x, xc);
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      if (single_sweep(inst, x, xc, trial)) continue;
      // Single moves are stuck; a pair move can shift mass between two rows
      // while keeping Xc close to Wc.
      if (!pair_move(inst, x, xc)) break;
    }
    const ObjectiveBreakdown value = inst.evaluate(x, xc);
    if (restart == 0 || better(value, x, best.objective, best.assignment)) {
      best.assignment = x;
      best.objective = value;
    }
  }
  best.exact = false;
  return best;
}

Solution solve(const CondDistribution& dist, const OptimizerConfig& config) {
  if (assignment_count(dist.W.size(), dist.c.size()) <= config.exact_threshold) {
    return solve_exact(dist, config);
  }
  return solve_local(dist, config);
}

Assignment argmax_assignment(const CondDistribution& dist) {
  Assignment x(dist.c.size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t r = 1; r < dist.W.size(); ++r) {
      if (dist.W[r][j] > dist.W[x[j]][j]) x[j] = r;
    }
  }
  return x;
}

ConvexityDiagnostic convexity_diagnostic(const std::vector<double>& c, double alpha,
                                         std::size_t num_words) {
  if (c.empty() || num_words == 0) {
    throw Error(ErrorCode::DimensionMismatch, "convexity diagnostic needs |C| >= 1 and R >= 1");
  }
  const double C = static_cast<double>(c.size());
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  const double shift = 2.0 * alpha / C;

  ConvexityDiagnostic d;
  const double top = 2.0 * norm2 - shift;
  if (c.size() > 1) {
    d.spectrum.emplace_back(-shift, num_words * (c.size() - 1));
  }
  d.spectrum.emplace_back(top, num_words);
  std::sort(d.spectrum.begin(), d.spectrum.end());
  d.min_eigenvalue = d.spectrum.front().first;
  // |C| * lambda_min(c c^T); the rank-one Gram matrix has lambda_min = 0
  // whenever |C| > 1.
  d.alpha_threshold = c.size() > 1 ? 0.0 : C * norm2;
  d.convex = d.min_eigenvalue >= -1e-12;
  return d;
}

ConvexityDiagnostic convexity_diagnostic(const CondDistribution& dist, double alpha) {
  return convexity_diagnostic(dist.c, alpha, dist.W.size());
}

std::vector<double> hessian_eigenvalues(const ConvexityDiagnostic& diagnostic) {
  std::vector<double> out;
  for (const auto& [value, multiplicity] : diagnostic.spectrum) {
    out.insert(out.end(), multiplicity, value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const SetRules* RuleTable::find(int set_id) const {
  for (const SetRules& s : sets) {
    if (s.set_id == set_id) return &s;
  }
  return nullptr;
}

Candidate make_candidate(const CondDistribution& dist, const Solution& solution) {
  if (dist.words.size() != dist.W.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "set " + std::to_string(dist.set_id) + ": distribution carries no word list");
  }
  check_dimensions(dist, solution.assignment);
  return Candidate{dist.set_id, dist.words, dist.conditions, solution.assignment,
                   solution.objective};
}

RuleTable rank_and_select(std::vector<Candidate> candidates, std::size_t top_k,
                          const FeatureSpec& feature, double alpha) {
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidates, "no candidate rule sets to rank");
  }
  if (top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.objective.indistinguishable != b.objective.indistinguishable) {
                       return a.objective.indistinguishable < b.objective.indistinguishable;
                     }
                     return a.set_id < b.set_id;
                   });
  if (candidates.size() > top_k) candidates.resize(top_k);

  RuleTable table;
  table.feature = feature;
  table.alpha = alpha;
  for (const Candidate& cand : candidates) {
    SetRules s;
    s.set_id = cand.set_id;
    s.objective = cand.objective;
    for (std::size_t j = 0; j < cand.conditions.size(); ++j) {
      s.rules.emplace(cand.conditions[j], cand.words.at(cand.assignment.at(j)));
    }
    table.sets.push_back(std::move(s));
  }
  return table;
}

}  // namespace cater
