#include "sbn/em.hpp"

#include <cmath>
#include <unordered_map>

#include "sbn/errors.hpp"
#include "sbn/estimators.hpp"
#include "sbn/evaluation.hpp"
#include "sbn/rooting_layout.hpp"

namespace sbn {

namespace {

constexpr double kMonotoneSlack = 1e-8;

// Parameters are stored densely. Index 0..roots-1 are root splits, the rest are PCSPs;
// group_ holds one group id per parameter (group 0 is the root distribution).
class ParameterIndex {
 public:
  explicit ParameterIndex(TaxonSetPtr taxa) : taxa_(std::move(taxa)) {}

  int Root(const Subsplit &split) {
    auto [it, inserted] = root_ids_.try_emplace(split, static_cast<int>(group_.size()));
    if (inserted) group_.push_back(0);
    return it->second;
  }

  int Pcsp(const PcspKey &pcsp) {
    auto [it, inserted] = pcsp_ids_.try_emplace(pcsp, static_cast<int>(group_.size()));
    if (inserted) {
      auto group = context_ids_.try_emplace(pcsp.Context(), context_ids_.size() + 1).first;
      group_.push_back(group->second);
    }
    return it->second;
  }

  size_t Size() const { return group_.size(); }
  size_t GroupCount() const { return context_ids_.size() + 1; }
  size_t GroupOf(size_t i) const { return group_[i]; }

  std::vector<double> Gather(const SbnParams &params) const {
    std::vector<double> values(Size(), 0.0);
    for (const auto &[split, i] : root_ids_) values[static_cast<size_t>(i)] = params.Root(split);
    for (const auto &[pcsp, i] : pcsp_ids_) {
      values[static_cast<size_t>(i)] = params.Conditional(pcsp);
    }
    return values;
  }

  std::vector<double> Gather(const CountsTable &counts) {
    std::vector<double> values;
    auto put = [&](int i, double m) {
      if (values.size() < Size()) values.resize(Size(), 0.0);
      values[static_cast<size_t>(i)] += m;
    };
    for (const auto &[split, m] : counts.root_counts) put(Root(split), m);
    for (const auto &[pcsp, m] : counts.pcsp_counts) put(Pcsp(pcsp), m);
    values.resize(Size(), 0.0);
    return values;
  }

  SbnParams Scatter(const std::vector<double> &theta) const {
    SbnParams params(taxa_);
    for (const auto &[split, i] : root_ids_) {
      if (theta[static_cast<size_t>(i)] > 0.0) params.SetRoot(split, theta[static_cast<size_t>(i)]);
    }
    for (const auto &[pcsp, i] : pcsp_ids_) {
      if (theta[static_cast<size_t>(i)] > 0.0) {
        params.SetConditional(pcsp, theta[static_cast<size_t>(i)]);
      }
    }
    return params;
  }

 private:
  TaxonSetPtr taxa_;
  std::unordered_map<Subsplit, int> root_ids_;
  std::unordered_map<PcspKey, int> pcsp_ids_;
  std::unordered_map<ParentContext, size_t> context_ids_;
  std::vector<size_t> group_;
};

// One tree with every parameter occurrence resolved to an index.
struct IndexedTree {
  RootingSkeleton skeleton;
  double weight;
  std::vector<int> root;                   // per edge
  std::vector<int> adjacent;               // per directed edge, -1 without conditional
  std::vector<std::array<int, 2>> child;   // per directed edge and outgoing edge
};

IndexedTree IndexTree(const UnrootedTopology &tree, double weight, ParameterIndex &index) {
  const RootingLayout layout(tree);
  const size_t edge_count = layout.EdgeCount();
  IndexedTree out{layout, weight, std::vector<int>(edge_count),
                  std::vector<int>(2 * edge_count, -1),
                  std::vector<std::array<int, 2>>(2 * edge_count, {-1, -1})};
  for (size_t e = 0; e < edge_count; ++e) out.root[e] = index.Root(layout.EdgeSplit(e));
  for (size_t d = 0; d < 2 * edge_count; ++d) {
    if (layout.HasConditional(d)) out.adjacent[d] = index.Pcsp(layout.AdjacentPcsp(d));
    if (layout.HeadIsLeaf(d)) continue;
    for (size_t k = 0; k < 2; ++k) {
      const auto c = static_cast<size_t>(layout.Out(d)[k]);
      if (layout.HasConditional(c)) out.child[d][k] = index.Pcsp(layout.ChildPcsp(d, c));
    }
  }
  return out;
}

struct EStep {
  std::vector<double> counts;
  double log_likelihood = 0.0;  // over supported trees
  size_t zero_support = 0;
};

EStep Expect(const std::vector<IndexedTree> &trees, const std::vector<double> &log_theta) {
  EStep out;
  out.counts.assign(log_theta.size(), 0.0);
  std::vector<double> posterior;
  for (const auto &t : trees) {
    const auto &sk = t.skeleton;
    auto slot = [&](size_t d, size_t c) {
      return t.child[d][static_cast<size_t>(sk.Out(d)[0]) == c ? 0 : 1];
    };
    const auto joints = sk.LogJoints(
        [&](size_t e) { return log_theta[static_cast<size_t>(t.root[e])]; },
        [&](size_t d) { return log_theta[static_cast<size_t>(t.adjacent[d])]; },
        [&](size_t d, size_t c) { return log_theta[static_cast<size_t>(slot(d, c))]; });
    const double log_total = LogSumExp(joints);
    if (log_total == -INFINITY) {
      ++out.zero_support;
      continue;
    }
    out.log_likelihood += t.weight * log_total;
    posterior.resize(joints.size());
    for (size_t e = 0; e < joints.size(); ++e) posterior[e] = std::exp(joints[e] - log_total);
    sk.Accumulate(
        posterior, t.weight,
        [&](size_t e, double w) { out.counts[static_cast<size_t>(t.root[e])] += w; },
        [&](size_t d, double w) { out.counts[static_cast<size_t>(t.adjacent[d])] += w; },
        [&](size_t d, size_t c, double w) {
          out.counts[static_cast<size_t>(slot(d, c))] += w;
        });
  }
  return out;
}

std::vector<double> Logs(const std::vector<double> &theta) {
  std::vector<double> logs(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    logs[i] = theta[i] > 0.0 ? std::log(theta[i]) : -INFINITY;
  }
  return logs;
}

double Regularizer(const std::vector<double> &log_theta, const std::vector<double> &equivalent,
                   double alpha) {
  if (alpha == 0.0) return 0.0;
  double term = 0.0;
  for (size_t i = 0; i < equivalent.size(); ++i) {
    if (equivalent[i] > 0.0) term += alpha * equivalent[i] * log_theta[i];
  }
  return term;
}

}  // namespace

void EmConfig::Validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be nonnegative");
  if (max_iters == 0) throw ValidationError("max_iters must be positive");
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  if (init == EmInit::kExplicit && !initial) {
    throw ValidationError("explicit initialization needs initial parameters");
  }
}

EmResult FitEm(const UnrootedSample &trees, const EmConfig &config) {
  config.Validate();
  const TaxonSetPtr taxa = CheckSample(trees);
  if (config.initial && !SameTaxa(config.initial->Taxa(), taxa)) {
    throw ValidationError("initial parameters use different taxa");
  }

  ParameterIndex index(taxa);
  std::vector<IndexedTree> indexed;
  indexed.reserve(trees.size());
  double total_weight = 0.0;
  for (const auto &[tree, weight] : trees) {
    indexed.push_back(IndexTree(tree, weight, index));
    total_weight += weight;
  }

  std::vector<double> equivalent;
  if (config.alpha > 0.0) {
    equivalent = config.equivalent_counts ? index.Gather(*config.equivalent_counts)
                                          : index.Gather(CollectSaCounts(trees));
  }
  if (config.init == EmInit::kExplicit) {
    // Keys of the initial parameters that no tree uses keep no mass after the first
    // update, so only the observed support needs indexing.
    config.initial->Validate(1e-9);
  }
  equivalent.resize(index.Size(), 0.0);

  std::vector<double> theta;
  switch (config.init) {
    case EmInit::kSa: {
      const SbnParams sa = FitFromCounts(CollectSaCounts(trees));
      theta = index.Gather(sa);
      break;
    }
    case EmInit::kUniform: {
      std::vector<double> sizes(index.GroupCount(), 0.0);
      for (size_t i = 0; i < index.Size(); ++i) sizes[index.GroupOf(i)] += 1.0;
      theta.resize(index.Size());
      for (size_t i = 0; i < index.Size(); ++i) theta[i] = 1.0 / sizes[index.GroupOf(i)];
      break;
    }
    case EmInit::kExplicit:
      theta = index.Gather(*config.initial);
      break;
  }

  EmDiagnostics diagnostics;
  auto log_theta = Logs(theta);
  EStep step = Expect(indexed, log_theta);
  auto objective = [&](const EStep &s) -> double {
    if (s.zero_support > 0) return -INFINITY;
    return s.log_likelihood + Regularizer(log_theta, equivalent, config.alpha);
  };
  diagnostics.log_likelihoods.push_back(objective(step));

  std::vector<double> group_sums(index.GroupCount());
  for (size_t iter = 1; iter <= config.max_iters; ++iter) {
    // M-step: normalize m + alpha m~ within each group; groups without mass keep
    // their previous values.
    std::fill(group_sums.begin(), group_sums.end(), 0.0);
    for (size_t i = 0; i < theta.size(); ++i) {
      group_sums[index.GroupOf(i)] += step.counts[i] + config.alpha * equivalent[i];
    }
    for (size_t i = 0; i < theta.size(); ++i) {
      const double sum = group_sums[index.GroupOf(i)];
      if (sum > 0.0) theta[i] = (step.counts[i] + config.alpha * equivalent[i]) / sum;
    }
    log_theta = Logs(theta);

    const EStep previous_step = std::move(step);
    step = Expect(indexed, log_theta);
    const double previous = diagnostics.log_likelihoods.back();
    const double current = objective(step);
    diagnostics.log_likelihoods.push_back(current);
    diagnostics.iterations = iter;

    if (std::isfinite(previous) && current < previous - kMonotoneSlack * total_weight) {
      throw InternalError("EM objective decreased from " + std::to_string(previous) + " to " +
                          std::to_string(current));
    }
    double change;
    if (std::isfinite(previous) && std::isfinite(current)) {
      change = std::abs(current - previous);
    } else if (!std::isfinite(previous) && !std::isfinite(current) &&
               previous_step.zero_support == step.zero_support) {
      change = std::abs(step.log_likelihood - previous_step.log_likelihood);
    } else {
      change = INFINITY;
    }
    if (change / total_weight < config.rel_tol) {
      diagnostics.converged = true;
      break;
    }
  }
  diagnostics.zero_support_trees = step.zero_support;
  return {index.Scatter(theta), std::move(diagnostics)};
}

}  // namespace sbn
