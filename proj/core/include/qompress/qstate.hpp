// Copyright 2026 The Qompress Authors
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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qompress {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance used for every unitarity / orthonormality / state-equality check.
inline constexpr double kTolerance = 1e-10;

/// Pure state on a register of qudits.
///
/// The composite index is mixed-radix with subsystem 0 as the most
/// significant digit, so for dims {d0, d1} the basis state |i, j> sits at
/// index i * d1 + j. Amplitudes are not forced to unit norm: intermediate
/// results of projections are kept unnormalized so their squared norm can be
/// read off as a probability.
class PureState {
   public:
    PureState(std::vector<std::size_t> dims, Vector amps);

    /// Computational basis state |digits[0], digits[1], ...>.
    static PureState basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &digits);
    /// Single-subsystem basis state |index> of dimension dim.
    static PureState basis(std::size_t dim, std::size_t index);
    /// Single-subsystem state from a list of amplitudes (not normalized).
    static PureState from_amplitudes(const std::vector<Complex> &amps);

    const std::vector<std::size_t> &dims() const { return dims_; }
    const Vector &amps() const { return amps_; }
    std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
    std::size_t subsystem_count() const { return dims_.size(); }

    Complex operator[](std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
    Complex amplitude(const std::vector<std::size_t> &digits) const;

    std::size_t index_of(const std::vector<std::size_t> &digits) const;
    std::vector<std::size_t> digits_of(std::size_t index) const;

    double norm() const { return amps_.norm(); }
    double squared_norm() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = kTolerance) const;

    /// Throws std::domain_error for a (numerically) zero vector.
    PureState normalized() const;
    PureState scaled(Complex factor) const;

   private:
    std::vector<std::size_t> dims_;
    Vector amps_;
};

/// Dense unitary with an optional embedding descriptor.
///
/// When `targets` is empty the matrix acts on the whole register it is
/// applied to; otherwise it acts on the listed subsystems (in the listed
/// order, first target most significant) and as identity elsewhere.
class Unitary {
   public:
    explicit Unitary(Matrix entries, std::vector<std::size_t> targets = {});

    static Unitary identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix &matrix() const { return entries_; }
    const std::vector<std::size_t> &targets() const { return targets_; }

    Unitary on(std::vector<std::size_t> targets) const;
    Unitary adjoint() const;

    bool is_hermitian(double tol = kTolerance) const;
    bool is_diagonal(double tol = kTolerance) const;

   private:
    Matrix entries_;
    std::vector<std::size_t> targets_;
};

Unitary operator*(const Unitary &lhs, const Unitary &rhs);

/// True when m * m^dagger equals the identity entrywise within tol.
bool is_unitary(const Matrix &m, double tol = kTolerance);

PureState tensor(const PureState &a, const PureState &b);

/// Applies u (embedded per u.targets()) to s.
PureState apply(const Unitary &u, const PureState &s);

/// Applies an arbitrary square operator to the listed subsystems. The result
/// is not renormalized; this is how projections and Kraus operators are
/// applied.
PureState apply_operator(const Matrix &op, const PureState &s, std::span<const std::size_t> targets);

/// <a|b>.
Complex inner(const PureState &a, const PureState &b);

/// |<a|b>|^2.
double fidelity_up_to_phase(const PureState &a, const PureState &b);

/// Contracts the listed subsystems against <bra| and returns the
/// (unnormalized) state of the remaining subsystems.
PureState project_out(const PureState &s, std::span<const std::size_t> targets, const Vector &bra);

/// Restricts subsystem `sub` to its first `new_dim` levels. Throws
/// std::domain_error when the discarded levels carry more than `tol` weight.
PureState truncate_subsystem(const PureState &s, std::size_t sub, std::size_t new_dim, double tol = kTolerance);

/// Returns the pure state of subsystem `sub` when s is a product across that
/// cut; throws std::domain_error otherwise.
PureState factor_out(const PureState &s, std::size_t sub, double tol = 1e-9);

/// Completes `fixed` (orthonormal vectors of dimension dim) to an orthonormal
/// basis and returns the dim - fixed.size() new vectors.
std::vector<PureState> gram_schmidt_complement(std::span<const PureState> fixed, std::size_t dim);

}  // namespace qompress
