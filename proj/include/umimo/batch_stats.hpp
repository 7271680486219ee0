#pragma once

#include <algorithm>
#include <cmath>

#include "umimo/types.hpp"

namespace umimo {

struct Estimate
{
  double value = 0.0;
  double std_error = 0.0;
};

/// Accumulates a fixed set of per-sample quantities into contiguous batches so
/// that smooth functions of their means (ratios, squared magnitudes) get a
/// batch-means standard error.
class BatchedSums
{
public:
  BatchedSums(Index n_quantities, int n_samples, int n_batches = 50)
    : n_samples_(std::max(1, n_samples))
    , n_batches_(std::clamp(n_batches, 1, std::max(1, n_samples)))
    , sums_(MatrixXd::Zero(n_batches_, n_quantities))
    , counts_(VectorXd::Zero(n_batches_))
  {}

  template <typename Derived> void add(int sample_index, Eigen::MatrixBase<Derived> const &values)
  {
    Index const b = batch_of(sample_index);
    sums_.row(b) += values.transpose();
    counts_(b) += 1.0;
  }

  VectorXd mean() const { return sums_.colwise().sum().transpose() / counts_.sum(); }

  MatrixXd batch_means() const
  {
    MatrixXd out = sums_;
    for (Index b = 0; b < out.rows(); ++b) {
      if (counts_(b) > 0.0) { out.row(b) /= counts_(b); }
    }
    return out;
  }

  /// f maps a vector of quantity means to a scalar.
  template <typename F> Estimate estimate(F &&f) const
  {
    Estimate e{f(mean()), 0.0};
    MatrixXd const bm = batch_means();
    Index const used = (counts_.array() > 0.0).count();
    if (used < 2) { return e; }
    VectorXd vals(used);
    Index j = 0;
    for (Index b = 0; b < bm.rows(); ++b) {
      if (counts_(b) > 0.0) { vals(j++) = f(VectorXd(bm.row(b).transpose())); }
    }
    double const mu = vals.mean();
    double const var = (vals.array() - mu).square().sum() / static_cast<double>(used - 1);
    e.std_error = std::sqrt(var / static_cast<double>(used));
    return e;
  }

private:
  Index batch_of(int sample_index) const
  {
    auto const b = static_cast<Index>(static_cast<long long>(sample_index) * n_batches_ / n_samples_);
    return std::min<Index>(b, n_batches_ - 1);
  }

  int n_samples_;
  int n_batches_;
  MatrixXd sums_;
  VectorXd counts_;
};

} // namespace umimo
