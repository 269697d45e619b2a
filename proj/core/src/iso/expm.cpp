// Copyright 2026 The koopq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "koopq/iso/expm.hpp"

#include <array>
#include <cmath>

#include "koopq/errors.hpp"

namespace koopq::iso {

namespace {

constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

template <class Mat>
Mat expm_impl(const Mat &a) {
    if (a.rows() != a.cols()) throw SizingError("expm needs a square matrix");
    if (!a.allFinite()) throw RangeError("expm input is not finite");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    // The LU solve below multiplies by reciprocal pivots, so exp(0) would
    // miss the identity by an ulp.
    if (norm1 == 0.0) return Mat::Identity(n, n);
    int s = 0;
    if (norm1 > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    const Mat x = a / std::ldexp(1.0, s);

    const auto &b = kPade13;
    const Mat id = Mat::Identity(n, n);
    const Mat x2 = x * x;
    const Mat x4 = x2 * x2;
    const Mat x6 = x4 * x2;
    const Mat u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 +
                       b[3] * x2 + b[1] * id);
    const Mat v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 +
                  b[2] * x2 + b[0] * id;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    if (!r.allFinite()) throw RangeError("matrix exponential overflowed");
    return r;
}

} // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a) { return expm_impl(a); }
Eigen::MatrixXd expm(const Eigen::MatrixXd &a) { return expm_impl(a); }

} // namespace koopq::iso
