#pragma once

#include <vector>

namespace ionnet::detail {

struct EigenSystem {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // vectors[m] pairs with values[m]
};

// Cyclic Jacobi diagonalization of a dense symmetric matrix (row-major).
// Eigenvectors are orthonormal; each has its first component of magnitude
// above 1e-12 made positive so results are reproducible.
EigenSystem jacobi_eigensymm(const std::vector<double>& a, std::size_t n);

// Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b);

struct TridiagonalFirstComponents {
    std::vector<double> values;            // ascending
    std::vector<double> first_components;  // first entry of each unit eigenvector
};

// Implicit-shift QL on a symmetric tridiagonal matrix, rotating only the
// first-row vector; exactly what Golub-Welsch quadrature needs. `off[k]`
// couples rows k and k+1 (off.size() == diag.size() - 1).
TridiagonalFirstComponents tridiagonal_eigen_first_components(
    std::vector<double> diag, std::vector<double> off);

}  // namespace ionnet::detail
