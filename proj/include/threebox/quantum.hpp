// Copyright 2026 The threebox Authors
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

// Finite-dimensional pure-state quantum mechanics for pre- and post-selected
// retrodiction: Born rule, the sandwich formula, ABL retrodiction for complete
// and partial intermediate manifestations, and the worked systems built on
// them (three boxes, three slits, the AAD variables).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "threebox/error.hpp"
#include "threebox/formulas.hpp"

namespace threebox::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Absolute tolerance for every floating-point comparison in this module.
inline constexpr double kTolerance = 1e-9;

/// A normalized vector over an orthonormal basis.
class QState {
public:
    explicit QState(Vector amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() == 0 || std::abs(amps_.norm() - 1.0) > kTolerance)
            throw Error(ErrorCode::NotNormalized, "state norm is " + std::to_string(amps_.norm()));
    }

    static QState normalized(const Vector& v) {
        double n = v.norm();
        if (n <= kTolerance) throw Error(ErrorCode::NotNormalized, "cannot normalize a zero vector");
        return QState(v / n);
    }

    static QState basis(Eigen::Index dimension, Eigen::Index i) {
        Vector v = Vector::Zero(dimension);
        v(i) = 1.0;
        return QState(std::move(v));
    }

    const Vector& amplitudes() const { return amps_; }
    Eigen::Index dimension() const { return amps_.size(); }

    /// <this|other>
    Complex inner(const QState& other) const {
        if (dimension() != other.dimension()) throw Error(ErrorCode::DimensionMismatch, "states differ in dimension");
        return amps_.dot(other.amps_);
    }

private:
    Vector amps_;
};

/// An orthogonal projector: Hermitian and idempotent.
class Projector {
public:
    explicit Projector(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw Error(ErrorCode::NonProjector, "matrix is not square");
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTolerance)
            throw Error(ErrorCode::NonProjector, "matrix is not Hermitian");
        if ((m_ * m_ - m_).cwiseAbs().maxCoeff() > kTolerance)
            throw Error(ErrorCode::NonProjector, "matrix is not idempotent");
    }

    static Projector onto(const QState& s) { return Projector(s.amplitudes() * s.amplitudes().adjoint()); }
    static Projector identity(Eigen::Index dimension) { return Projector(Matrix::Identity(dimension, dimension)); }

    const Matrix& matrix() const { return m_; }
    Eigen::Index dimension() const { return m_.rows(); }
    double rank() const { return m_.trace().real(); }

private:
    Matrix m_;
};

/// rho = |s><s|
inline Matrix density(const QState& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

/// |<v|s>|^2
inline double born_probability(const QState& s, const QState& v) { return std::norm(v.inner(s)); }

/// Tr(rho P Q P): probability of p followed by q, starting from s.
inline double sandwich_probability(const QState& s, const Projector& p, const Projector& q) {
    if (p.dimension() != s.dimension() || q.dimension() != s.dimension())
        throw Error(ErrorCode::DimensionMismatch, "projector and state differ in dimension");
    Complex tr = (density(s) * p.matrix() * q.matrix() * p.matrix()).trace();
    return tr.real();
}

/// 1 - P
inline Projector complement_projector(const Projector& p) {
    return Projector(Matrix::Identity(p.dimension(), p.dimension()) - p.matrix());
}

inline void check_basis(const std::vector<QState>& basis, Eigen::Index dimension) {
    if (static_cast<Eigen::Index>(basis.size()) != dimension)
        throw Error(ErrorCode::BasisNotOrthonormal,
                    "basis has " + std::to_string(basis.size()) + " vectors in dimension " + std::to_string(dimension));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dimension() != dimension)
            throw Error(ErrorCode::DimensionMismatch, "basis vector dimension differs from the state");
        for (std::size_t k = 0; k < basis.size(); ++k) {
            double expected = i == k ? 1.0 : 0.0;
            if (std::abs(basis[i].inner(basis[k]) - expected) > kTolerance)
                throw Error(ErrorCode::BasisNotOrthonormal, "basis vectors " + std::to_string(i) + " and " +
                                                                std::to_string(k) + " are not orthonormal");
        }
    }
}

/// c_t = <q|p_t><p_t|s> for every basis vector p_t.
inline std::vector<Complex> path_amplitudes(const QState& s, const std::vector<QState>& basis, const QState& q) {
    if (s.dimension() != q.dimension()) throw Error(ErrorCode::DimensionMismatch, "s and q differ in dimension");
    check_basis(basis, s.dimension());
    std::vector<Complex> c;
    c.reserve(basis.size());
    for (const auto& p : basis) c.push_back(q.inner(p) * p.inner(s));
    return c;
}

namespace detail {

inline void check_index(const std::vector<QState>& basis, std::size_t j) {
    if (j >= basis.size()) throw Error(ErrorCode::InvalidArguments, "basis index out of range");
}

}  // namespace detail

/// Retrodiction of p_j after a complete intermediate manifestation:
///   |c_j|^2 / sum_t |c_t|^2
inline double abl_complete(const QState& s, const std::vector<QState>& basis, std::size_t j, const QState& q) {
    auto c = path_amplitudes(s, basis, q);
    detail::check_index(basis, j);
    double denom = 0;
    for (const auto& ct : c) denom += std::norm(ct);
    if (denom <= kTolerance * kTolerance)
        throw Error(ErrorCode::ZeroDenominator, "the postselected state is unreachable");
    return std::norm(c[j]) / denom;
}

/// Retrodiction of p_j after the partial manifestation "p_j or not p_j":
///   |c_j|^2 / (|c_j|^2 + |sum_{t != j} c_t|^2)
inline double abl_partial(const QState& s, const std::vector<QState>& basis, std::size_t j, const QState& q) {
    auto c = path_amplitudes(s, basis, q);
    detail::check_index(basis, j);
    Complex rest = 0;
    for (std::size_t t = 0; t < c.size(); ++t)
        if (t != j) rest += c[t];
    double denom = std::norm(c[j]) + std::norm(rest);
    if (denom <= kTolerance * kTolerance)
        throw Error(ErrorCode::ZeroDenominator, "the postselected state is unreachable");
    return std::norm(c[j]) / denom;
}

/// Born-rule inputs for the partial-manifestation retrodiction formula:
/// likelihoods and priors of p_j and of its complement projector 1 - |p_j><p_j|.
inline formulas::RetrodictionInputs<double> born_retrodiction_inputs(const QState& s, const std::vector<QState>& basis,
                                                                    std::size_t j, const QState& q) {
    check_basis(basis, s.dimension());
    detail::check_index(basis, j);
    const Projector pj = Projector::onto(basis[j]);
    const Projector not_pj = complement_projector(pj);
    const Projector final_q = Projector::onto(q);

    formulas::RetrodictionInputs<double> in{};
    in.prior = born_probability(s, basis[j]);
    in.likelihood = born_probability(basis[j], q);
    in.prior_negated = sandwich_probability(s, not_pj, Projector::identity(s.dimension()));
    double joint_negated = sandwich_probability(s, not_pj, final_q);
    in.likelihood_negated = in.prior_negated > kTolerance * kTolerance ? joint_negated / in.prior_negated : 0.0;
    return in;
}

/// <q|p_1><p_1|s> = <q|p_2><p_2|s> = -<q|p_3><p_3|s>, compared as written.
inline bool threebox_condition_check(const QState& s, const QState& q, const std::vector<QState>& basis) {
    if (s.dimension() != 3 || q.dimension() != 3 || basis.size() != 3)
        throw Error(ErrorCode::DimensionMismatch, "the three-box condition needs dimension 3");
    auto c = path_amplitudes(s, basis, q);
    return std::abs(c[0] - c[1]) <= kTolerance && std::abs(c[1] + c[2]) <= kTolerance;
}

/// The two postselection states of the three-box example.
inline QState three_box_initial() { return QState::normalized(Vector::Ones(3)); }
inline QState three_box_final() {
    Vector v(3);
    v << 1.0, 1.0, -1.0;
    return QState::normalized(v);
}
inline std::vector<QState> standard_basis(Eigen::Index dimension) {
    std::vector<QState> out;
    for (Eigen::Index i = 0; i < dimension; ++i) out.push_back(QState::basis(dimension, i));
    return out;
}

// ---------------------------------------------------------------------------
// Three-slit geometry. Slits 1 and 2 sit a distance `separation` either side
// of the middle slit 3; the detector is on the axis at `distance` from slit 3.

struct SlitGeometry {
    double separation = 0;  // a
    double wavelength = 0;  // lambda
    double distance = 0;    // L

    double outer_path() const { return std::hypot(distance, separation); }  // r_1 = r_2
    double middle_path() const { return distance; }                         // r_3
    double wave_number() const { return 2 * std::numbers::pi / wavelength; }

    /// Relative phasors exp(i k r_t) at the detector for slits 1, 2, 3,
    /// referred to slit 1 and scaled by 1/sqrt(3).
    std::vector<Complex> detector_amplitudes() const {
        const double k = wave_number();
        const double lag = k * (middle_path() - outer_path());
        const double norm = 1 / std::sqrt(3.0);
        return {norm, norm, norm * std::polar(1.0, lag)};
    }
};

/// Solves sqrt(L^2 + a^2) - L = lambda/2 for L: L = a^2/lambda - lambda/4.
inline SlitGeometry three_slit_design(double separation, double wavelength) {
    if (!(wavelength > 0)) throw Error(ErrorCode::GeometryInfeasible, "wavelength must be positive");
    if (!(separation > wavelength / 2))
        throw Error(ErrorCode::GeometryInfeasible, "slit separation must exceed half a wavelength");
    SlitGeometry g{separation, wavelength, separation * separation / wavelength - wavelength / 4};
    if (std::abs((g.outer_path() - g.middle_path()) - wavelength / 2) > kTolerance * wavelength)
        throw Error(ErrorCode::GeometryInfeasible, "path difference misses half a wavelength");
    return g;
}

// ---------------------------------------------------------------------------
// AAD variables: X with eigenbasis |x_j>, |a> = (|x_1>+|x_2>)/sqrt2,
// |b> = (|x_2>+|x_3>)/sqrt2, and Q sharing |q_2> = |x_2>.

struct AadReport {
    std::vector<QState> x_basis;
    std::vector<QState> q_basis;
    double partial_x = 0;
    double partial_q = 0;
    double complete_x = 0;
    double complete_q = 0;
};

inline std::vector<QState> aad_q_basis(Complex alpha, Complex beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTolerance)
        throw Error(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 must equal 1");
    Vector q1(3), q2(3), q3(3);
    q1 << alpha, 0.0, beta;
    q2 << 0.0, 1.0, 0.0;
    q3 << std::conj(beta), 0.0, -std::conj(alpha);
    return {QState(q1), QState(q2), QState(q3)};
}

inline QState aad_preselected() {
    Vector v(3);
    v << 1.0, 1.0, 0.0;
    return QState::normalized(v);
}
inline QState aad_postselected() {
    Vector v(3);
    v << 0.0, 1.0, 1.0;
    return QState::normalized(v);
}

inline AadReport aad_analysis(Complex alpha, Complex beta) {
    AadReport r{standard_basis(3), aad_q_basis(alpha, beta)};
    const QState a = aad_preselected();
    const QState b = aad_postselected();
    r.partial_x = abl_partial(a, r.x_basis, 1, b);
    r.partial_q = abl_partial(a, r.q_basis, 1, b);
    r.complete_x = abl_complete(a, r.x_basis, 1, b);
    r.complete_q = abl_complete(a, r.q_basis, 1, b);
    return r;
}

// ---------------------------------------------------------------------------

/// Haar-random pure state: normalized vector of independent standard complex
/// Gaussians.
template <class Rng>
QState random_state(Eigen::Index dimension, Rng& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dimension);
    for (Eigen::Index i = 0; i < dimension; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return QState::normalized(v);
}

/// Random orthonormal basis: Gram-Schmidt (via QR) of a Gaussian matrix.
template <class Rng>
std::vector<QState> random_basis(Eigen::Index dimension, Rng& rng) {
    std::normal_distribution<double> gauss;
    Matrix m(dimension, dimension);
    for (Eigen::Index i = 0; i < dimension; ++i)
        for (Eigen::Index k = 0; k < dimension; ++k) m(i, k) = Complex(gauss(rng), gauss(rng));
    Matrix qr = Eigen::HouseholderQR<Matrix>(m).householderQ();
    std::vector<QState> out;
    for (Eigen::Index k = 0; k < dimension; ++k) out.push_back(QState::normalized(qr.col(k)));
    return out;
}

}  // namespace threebox::quantum
