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
#pragma once

#include <Eigen/Dense>

namespace koopq::iso {

/// Matrix exponential by scaling and squaring with a degree-13 Pade
/// approximant. Works for any square matrix, Hermitian or not.
/// Throws RangeError when the result overflows.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a);
Eigen::MatrixXd expm(const Eigen::MatrixXd &a);

} // namespace koopq::iso
