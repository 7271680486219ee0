#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace umimo {

using Index = Eigen::Index;

template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using MatrixXcd = Matrix<std::complex<double>>;
using VectorXd = Vector<double>;
using VectorXcd = Vector<std::complex<double>>;

// All stochastic operations take an explicit engine; no global RNG state.
using Rng = std::mt19937_64;

} // namespace umimo
