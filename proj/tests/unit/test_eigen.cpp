// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "../oracles.hpp"
#include "qprice/hermitian_eigen.hpp"

using namespace qprice;

TEST(HermitianEigen, RandomMatrices) {
    std::mt19937_64 rng(51);
    for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
        const auto h = oracle::random_hermitian(rng, n);
        const auto eig = hermitian_eigen(h);
        EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
        const auto& v = eig.vectors;
        const auto hv = oracle::matmul(h, v);
        double residual = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(hv(i, j) - eig.values[j] * v(i, j)));
        }
        EXPECT_LT(residual, 1e-11 * std::max(1.0, h.frobenius_norm())) << "N=" << n;
        const auto gram = oracle::matmul(v.adjoint(), v);
        EXPECT_LT(oracle::max_abs_diff(gram, DenseOperator::identity(n)), 1e-12);
        double trace = 0.0;
        for (double x : eig.values) trace += x;
        EXPECT_NEAR(trace, h.trace().real(), 1e-11 * std::max(1.0, h.frobenius_norm()));
    }
}

TEST(HermitianEigen, DiagonalInputNeedsNoSweeps) {
    const std::vector<Complex> d = {3.0, -1.0, 2.0};
    const auto eig = hermitian_eigen(DenseOperator::diagonal(d));
    EXPECT_EQ(eig.sweeps, 0);
    EXPECT_EQ(eig.values, (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(HermitianEigen, Errors) {
    std::mt19937_64 rng(52);
    EXPECT_THROW(hermitian_eigen(oracle::random_hermitian(rng, 6), {1e-13, 0}), ConvergenceError);
    DenseOperator nh(2);
    nh(0, 1) = 1.0;
    EXPECT_THROW(hermitian_eigen(nh), ContractError);
}
