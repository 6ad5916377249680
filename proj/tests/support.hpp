// support.hpp — Shared helpers for the test suites

#pragma once

#include <random>
#include <vector>

#include "redreg/model.hpp"
#include "redreg/reference.hpp"

namespace redreg::test {

inline std::mt19937_64 rng(std::uint64_t seed)
{
    return std::mt19937_64{seed};
}

inline Complex random_complex(std::mt19937_64& gen)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    return {normal(gen), normal(gen)};
}

inline Matrix random_matrix(std::mt19937_64& gen, int rows, int cols)
{
    Matrix X(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            X(i, j) = random_complex(gen);
        }
    }
    return X;
}

inline Matrix random_hermitian(std::mt19937_64& gen, int dim)
{
    const Matrix X = random_matrix(gen, dim, dim);
    return 0.5 * (X + X.adjoint());
}

inline Matrix random_psd(std::mt19937_64& gen, int dim)
{
    const Matrix X = random_matrix(gen, dim, dim);
    return X * X.adjoint();
}

inline Vector random_vector(std::mt19937_64& gen, int size)
{
    Vector v(size);
    for (int i = 0; i < size; ++i) {
        v(i) = random_complex(gen);
    }
    return v;
}

inline std::vector<double> linspace(double start, double stop, int count)
{
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    }
    return grid;
}

// Parameter sets behind the published scheme comparisons.
inline VSystemParams slow_vsystem() { return {1.0, 2.0, 1.0, 1.0, 4.0, 1.5}; }
inline VSystemParams fast_vsystem() { return {10.0, 20.0, 1.0, 1.0, 20.0, 15.0}; }

// The shared initial state (|1> + |2>)/sqrt(2).
inline Eigen::Vector3cd excited_superposition()
{
    Eigen::Vector3cd psi;
    psi << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return psi;
}

inline Matrix density_from_amplitudes(const Eigen::Vector3cd& psi)
{
    return psi * psi.adjoint();
}

} // namespace redreg::test
