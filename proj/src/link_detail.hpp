#pragma once

#include <cmath>
#include <limits>

#include "umimo/batch_stats.hpp"
#include "umimo/uplink.hpp"

namespace umimo::detail {

/// num / den, mapping a positive numerator over a vanishing denominator to the
/// largest finite double instead of inf.
inline double safe_ratio(double num, double den)
{
  if (!(num > 0.0)) { return 0.0; }
  if (!(den > 0.0)) { return std::numeric_limits<double>::max(); }
  double const r = num / den;
  return std::isfinite(r) ? r : std::numeric_limits<double>::max();
}

inline int batches_for(int n_samples) { return n_samples >= 1000 ? 50 : std::max(1, n_samples / 20); }

/// Accumulates [Re(y x*), Im(y x*), |y|^2] per user.
class SinrAccumulator
{
public:
  SinrAccumulator(Index n_users, int n_samples)
    : n_users_(n_users), sums_(3 * n_users, n_samples, batches_for(n_samples)), q_(3 * n_users)
  {}

  void add(int sample, VectorXcd const &received, VectorXcd const &symbols)
  {
    for (Index k = 0; k < n_users_; ++k) {
      std::complex<double> const z = received(k) * std::conj(symbols(k));
      q_(3 * k) = z.real();
      q_(3 * k + 1) = z.imag();
      q_(3 * k + 2) = std::norm(received(k));
    }
    sums_.add(sample, q_);
  }

  EmpiricalSinr result() const
  {
    EmpiricalSinr out{VectorXd(n_users_), VectorXd(n_users_)};
    for (Index k = 0; k < n_users_; ++k) {
      auto const e = sums_.estimate([k](VectorXd const &m) {
        double const sig = m(3 * k) * m(3 * k) + m(3 * k + 1) * m(3 * k + 1);
        return safe_ratio(sig, m(3 * k + 2) - sig);
      });
      out.gamma(k) = e.value;
      out.std_error(k) = e.std_error;
    }
    return out;
  }

private:
  Index n_users_;
  BatchedSums sums_;
  VectorXd q_;
};

} // namespace umimo::detail
