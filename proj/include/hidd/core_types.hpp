#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hidd/error.hpp"

namespace hidd {

/// Differentiator parameters.
///
/// `n` is the differentiator order (estimates derivatives 0..n), `L` the
/// Lipschitz bound of the n-th derivative, `lambda` the gains lambda_0..lambda_n
/// and `tau` the constant sampling period in seconds.
struct Params {
    int n = 1;
    double L = 1.0;
    std::vector<double> lambda;
    double tau = 1e-3;

    friend bool operator==(const Params&, const Params&) = default;
};

/// Validates and builds Params. Throws Error{NonPositive} or
/// Error{GainCountMismatch}.
Params make_params(int n, double L, std::vector<double> lambda, double tau);

/// Standard homogeneous-differentiator gains for 1 <= n <= 7.
/// Throws Error{UnsupportedOrder} for larger n.
std::vector<double> default_gains(int n);

/// Gains for the non-recursive differentiator form used here (each
/// lambda_{n-i} multiplies |sigma|^{(n-i)/(n+1)} directly), 1 <= n <= 7.
/// These converge where the default table does not (n >= 3).
/// Throws Error{UnsupportedOrder} for larger n.
std::vector<double> nonrecursive_gains(int n);

/// Dense row-major square matrix.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

    std::size_t dim() const noexcept { return dim_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Every constant that can be hoisted out of the run loop.
///
/// Indexing follows the natural (1-based where the math is 1-based) layout
/// so that loops read like the formulas:
///  - a[l], l = 0..n:             polynomial coefficients;
///  - phi[m], m = 0..n:           tau^m / m!  (phi_{m+1} in 1-based notation);
///  - bstar(i, j), 0 <= i <= j <= n: injection weight of column j in row i,
///                               tau^{j-i+1}/(j-i+1)! * lambda_{n-j} * L^{(j+1)/(n+1)};
///  - c[i], i = 1..n+1:           first-derivative coefficients (c[0] = 0);
///  - d[i], i = 2..n+1:           second-derivative coefficients (d[0] = d[1] = 0);
///  - Phi, Bstar:                 the (n+1)x(n+1) propagation matrices.
struct Tables {
    int n = 0;
    double tau = 0.0;
    double root_exponent = 0.0;  // 1/(n+1)
    std::vector<double> a;
    std::vector<double> phi;
    SquareMatrix bstar;
    std::vector<double> c;
    std::vector<double> d;
    SquareMatrix Phi;
    SquareMatrix Bstar;

    friend bool operator==(const Tables&, const Tables&) = default;
};

/// Pure function of Params. Throws Error{Overflow} if any entry is not finite.
Tables precompute(const Params& params);

}  // namespace hidd
