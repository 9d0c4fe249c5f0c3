// Copyright 2026 The Holant Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "holant/matrix.hpp"
#include "holant/types.hpp"

namespace holant {

enum class TransformKind { real_orthogonal, complex_general };

/// Square matrix used for holographic transformations. The real-orthogonal
/// kind is validated on construction.
class TransformMatrix {
 public:
  static TransformMatrix real_orthogonal(const RealMatrix& m);
  static TransformMatrix real_orthogonal(const RealMatrix& m, double tol_orth);
  static TransformMatrix general(const ComplexMatrix& m);

  std::size_t dim() const { return m_.rows(); }
  TransformKind kind() const { return kind_; }
  const ComplexMatrix& matrix() const { return m_; }
  /// Real part, valid for the real-orthogonal kind.
  RealMatrix real() const;

 private:
  TransformMatrix(ComplexMatrix m, TransformKind kind)
      : m_(std::move(m)), kind_(kind) {}
  ComplexMatrix m_;
  TransformKind kind_;
};

/// ||T T^T - I||_max.
double orthogonality_residual(const RealMatrix& t);

/// Eigendecomposition of a real symmetric matrix: rows of q are orthonormal
/// eigenvectors and q * M * q^T = diag(lambdas), lambdas descending.
struct EigenResult {
  RealMatrix q;
  RealVector lambdas;

  TransformMatrix transform() const { return TransformMatrix::real_orthogonal(q); }
  /// ||q M q^T - diag(lambdas)||_max
  double residual(const RealMatrix& m) const;
};

/// Cyclic Jacobi. Deterministic; each eigenvector row is signed so that its
/// largest-magnitude component (first among near ties) is positive.
EigenResult eig_sym(const RealMatrix& m);
EigenResult eig_sym(const ComplexMatrix& m);

/// Real orthogonal matrix whose first row is u/||u||: the Householder
/// reflection exchanging e1 and u/||u||, with every later row signed so its
/// first nonzero entry is positive. u = e1 gives the identity.
RealMatrix orthogonal_from_first_row(const RealVector& u);

struct IsotropicCanonical {
  RealMatrix t;  // real orthogonal, t * beta = c (1, i, 0)^T
  double c = 0.0;
};

/// For isotropic beta in C^3: writes beta = gamma + i delta, checks
/// ||gamma|| = ||delta|| and gamma _|_ delta, and returns the rotation taking
/// gamma to c e1 and delta to c e2 with third row gamma x delta / c^2.
IsotropicCanonical isotropic_canonicalize(const Vector& beta);

/// Number of singular values above tol_rank * (largest singular value).
int rank_with_tolerance(const RealMatrix& m);
int rank_with_tolerance(const RealMatrix& m, double tol_rank);

/// Singular values, descending.
RealVector singular_values(const RealMatrix& m);

}  // namespace holant
