#pragma once

#include <cmath>
#include <complex>

#include "collig/colligation.hpp"
#include "collig/matcore.hpp"

namespace testing {

using collig::Complex;
using collig::ComplexMatrix;
using collig::Index;

inline ComplexMatrix mat(Index rows, Index cols, std::initializer_list<Complex> entries) {
    ComplexMatrix out(rows, cols);
    auto it = entries.begin();
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) out(r, c) = *it++;
    return out;
}

// 1_j (x) S written out entry by entry: block (mu, nu) is s_{mu nu} 1_j.
inline ComplexMatrix kron_identity_left(Index j, const ComplexMatrix& s) {
    const Index m = s.rows();
    ComplexMatrix out = ComplexMatrix::Zero(m * j, m * j);
    for (Index mu = 0; mu < m; ++mu)
        for (Index nu = 0; nu < m; ++nu)
            for (Index r = 0; r < j; ++r) out(mu * j + r, nu * j + r) = s(mu, nu);
    return out;
}

// Characteristic function straight from the definition, using a dense inverse.
inline ComplexMatrix theta_by_inverse(const collig::Colligation& g, const ComplexMatrix& s) {
    if (g.j() == 0) return g.a();
    const ComplexMatrix x = kron_identity_left(g.j(), s);
    const ComplexMatrix one = ComplexMatrix::Identity(x.rows(), x.cols());
    return g.a() + g.b() * x * (one - g.d() * x).inverse() * g.c();
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

}  // namespace testing
