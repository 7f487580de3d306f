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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "threebox/quantum.hpp"
#include "threebox/quantum_io.hpp"

using namespace threebox;
using namespace threebox::quantum;

namespace {

constexpr double kTol = 1e-9;

QState vec(std::initializer_list<Complex> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return QState::normalized(v);
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "nothing thrown";
    return ErrorCode::ParseError;
}

void expect_projector(const Projector& p) {
    const Matrix& m = p.matrix();
    EXPECT_LE((m * m - m).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), kTol);
    Matrix sum = m + complement_projector(p).matrix();
    EXPECT_LE((sum - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(), kTol);
}

// Complete-observation retrodiction from hand-written amplitudes, without
// any of the library's inner products: |<b|q_t><q_t|a>|^2 normalized.
double direct_complete(const std::array<std::array<Complex, 3>, 3>& basis, const std::array<Complex, 3>& a,
                       const std::array<Complex, 3>& b, std::size_t j) {
    auto dot = [](const std::array<Complex, 3>& u, const std::array<Complex, 3>& v) {
        Complex s = 0;
        for (int i = 0; i < 3; ++i) s += std::conj(u[i]) * v[i];
        return s;
    };
    std::array<double, 3> w{};
    double total = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        w[t] = std::norm(dot(b, basis[t]) * dot(basis[t], a));
        total += w[t];
    }
    return w[j] / total;
}

}  // namespace

TEST(Born, Examples) {
    QState s = three_box_initial(), q = three_box_final();
    EXPECT_NEAR(born_probability(s, s), 1.0, kTol);
    EXPECT_NEAR(born_probability(s, q), 1.0 / 9, kTol);
    EXPECT_NEAR(born_probability(QState::basis(3, 0), QState::basis(3, 2)), 0.0, kTol);
    EXPECT_EQ(code_of([&] { born_probability(s, QState::basis(2, 0)); }), ErrorCode::DimensionMismatch);
}

TEST(Sandwich, Examples) {
    QState s = three_box_initial(), q = three_box_final();
    Projector p1 = Projector::onto(QState::basis(3, 0));
    // |<q|p_1>|^2 |<p_1|s>|^2 = 1/3 * 1/3.
    EXPECT_NEAR(sandwich_probability(s, p1, Projector::onto(q)), 1.0 / 9, kTol);
    EXPECT_NEAR(sandwich_probability(s, p1, p1), born_probability(s, QState::basis(3, 0)), kTol);
    EXPECT_NEAR(sandwich_probability(s, Projector::identity(3), Projector::onto(q)), born_probability(s, q), kTol);
    EXPECT_EQ(code_of([&] { sandwich_probability(s, Projector::identity(2), p1); }), ErrorCode::DimensionMismatch);
}

TEST(Projector, ComplementAlgebra) {
    Projector p1 = Projector::onto(QState::basis(3, 0));
    Projector c = complement_projector(p1);
    EXPECT_NEAR(c.rank(), 2.0, kTol);
    EXPECT_LE((complement_projector(c).matrix() - p1.matrix()).cwiseAbs().maxCoeff(), kTol);
    Vector p2 = QState::basis(3, 1).amplitudes();
    EXPECT_LE((c.matrix() * p2 - p2).cwiseAbs().maxCoeff(), kTol);
    expect_projector(p1);
    expect_projector(c);
    expect_projector(Projector::identity(4));
}

TEST(Projector, RejectsNonProjectors) {
    Matrix m = Matrix::Identity(2, 2) * 2.0;
    EXPECT_EQ(code_of([&] { Projector p(m); }), ErrorCode::NonProjector);
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    EXPECT_EQ(code_of([&] { Projector p(skew); }), ErrorCode::NonProjector);
    EXPECT_EQ(code_of([&] { Projector p(Matrix::Zero(2, 3)); }), ErrorCode::NonProjector);
}

TEST(Projector, RandomRankOneProjectorsAreValid) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        auto basis = random_basis(4, rng);
        Matrix sum = Matrix::Zero(4, 4);
        for (const auto& b : basis) {
            Projector p = Projector::onto(b);
            expect_projector(p);
            sum += p.matrix();
        }
        EXPECT_LE((sum - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), kTol);
    }
}

TEST(States, Validation) {
    EXPECT_EQ(code_of([] { QState s(Vector::Ones(3)); }), ErrorCode::NotNormalized);
    EXPECT_EQ(code_of([] { QState::normalized(Vector::Zero(3)); }), ErrorCode::NotNormalized);
    auto skewed = standard_basis(3);
    skewed[1] = vec({1, 1, 0});
    EXPECT_EQ(code_of([&] { abl_complete(three_box_initial(), skewed, 0, three_box_final()); }),
              ErrorCode::BasisNotOrthonormal);
    EXPECT_EQ(code_of([&] { abl_complete(three_box_initial(), standard_basis(2), 0, three_box_final()); }),
              ErrorCode::BasisNotOrthonormal);
    EXPECT_EQ(code_of([&] { abl_complete(QState::basis(3, 0), standard_basis(3), 0, QState::basis(3, 1)); }),
              ErrorCode::ZeroDenominator);
}

TEST(Abl, ThreeBoxValues) {
    QState s = three_box_initial(), q = three_box_final();
    auto basis = standard_basis(3);
    EXPECT_NEAR(abl_partial(s, basis, 0, q), 1.0, kTol);
    EXPECT_NEAR(abl_partial(s, basis, 1, q), 1.0, kTol);
    EXPECT_NEAR(abl_partial(s, basis, 2, q), 0.2, kTol);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(abl_complete(s, basis, j, q), 1.0 / 3, kTol);
    EXPECT_TRUE(threebox_condition_check(s, q, basis));
    EXPECT_FALSE(threebox_condition_check(basis[0], basis[0], basis));
}

TEST(Abl, PreparedEigenstateIsPinned) {
    QState q = three_box_final();
    auto basis = standard_basis(3);
    EXPECT_NEAR(abl_complete(basis[0], basis, 0, q), 1.0, kTol);
    EXPECT_NEAR(abl_complete(basis[0], basis, 1, q), 0.0, kTol);
}

// The partial formula is the two-term retrodiction with Born-rule inputs; the
// complement term is the coherent |<q|(1 - P_j)|s>|^2.
TEST(Abl, PartialMatchesFormulaOnRandomTriples) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 3);
        QState s = random_state(d, rng), q = random_state(d, rng);
        auto basis = random_basis(d, rng);
        const std::size_t j = static_cast<std::size_t>(i) % static_cast<std::size_t>(d);

        const Vector& pj = basis[j].amplitudes();
        const double prior = std::norm(pj.dot(s.amplitudes()));
        const double likelihood = std::norm(q.amplitudes().dot(pj));
        const Vector rest = s.amplitudes() - pj * pj.dot(s.amplitudes());
        const double joint_rest = std::norm(q.amplitudes().dot(rest));
        formulas::RetrodictionInputs<double> in{likelihood, prior, joint_rest / (1 - prior), 1 - prior};

        const double expected = formulas::retrodict_partial(in);
        EXPECT_NEAR(abl_partial(s, basis, j, q), expected, kTol);
        EXPECT_NEAR(formulas::retrodict_partial(born_retrodiction_inputs(s, basis, j, q)), expected, kTol);
    }
}

TEST(Abl, CompleteSumsToOneAndCertaintyIsUnique) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 3);
        auto basis = random_basis(d, rng);
        // Every fourth pair prepares an eigenstate, where one certainty is reached.
        QState s = i % 4 == 0 ? basis[static_cast<std::size_t>(i / 4) % static_cast<std::size_t>(d)]
                              : random_state(d, rng);
        QState q = random_state(d, rng);
        double sum = 0;
        int certain = 0;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            double r = abl_complete(s, basis, j, q);
            sum += r;
            certain += r >= 1 - kTol;
        }
        EXPECT_NEAR(sum, 1.0, kTol);
        EXPECT_LE(certain, 1);
        if (i % 4 == 0) EXPECT_EQ(certain, 1);
    }
}

TEST(Condition, HaarPairsAlmostNeverSatisfyIt) {
    std::mt19937_64 rng(29);
    auto basis = standard_basis(3);
    int hits = 0;
    for (int i = 0; i < 100; ++i) hits += threebox_condition_check(random_state(3, rng), random_state(3, rng), basis);
    EXPECT_EQ(hits, 0);
    EXPECT_EQ(code_of([&] { threebox_condition_check(QState::basis(2, 0), QState::basis(2, 0), standard_basis(2)); }),
              ErrorCode::DimensionMismatch);
}

// Pick s at random, then solve for q so that the path products are
// (c, c, -c); the condition must hold and boxes 1 and 2 must both be certain.
TEST(Condition, ConstructedFamiliesGiveTwoCertainties) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        auto basis = random_basis(3, rng);
        QState s = random_state(3, rng);
        const Complex c = std::polar(1.0, std::uniform_real_distribution<double>(0, 6.28)(rng));
        const std::array<Complex, 3> target{c, c, -c};
        Vector q = Vector::Zero(3);
        for (std::size_t t = 0; t < 3; ++t) {
            // <q|p_t> = target_t / <p_t|s>, so q gets conj of that along p_t.
            const Complex overlap = target[t] / basis[t].amplitudes().dot(s.amplitudes());
            q += std::conj(overlap) * basis[t].amplitudes();
        }
        QState qs = QState::normalized(q);
        EXPECT_TRUE(threebox_condition_check(s, qs, basis));
        EXPECT_NEAR(abl_partial(s, basis, 0, qs), 1.0, 1e-9);
        EXPECT_NEAR(abl_partial(s, basis, 1, qs), 1.0, 1e-9);
    }
}

TEST(Slit, Geometry) {
    SlitGeometry g = three_slit_design(10, 1);
    EXPECT_NEAR(g.distance, 99.75, kTol);
    EXPECT_NEAR(std::hypot(g.distance, g.separation) - g.distance, 0.5, kTol);

    auto amps = g.detector_amplitudes();
    EXPECT_NEAR(std::abs(amps[1] + amps[2]), 0.0, kTol);
    Vector v(3);
    v << amps[0], amps[1], amps[2];
    EXPECT_NEAR(born_probability(QState(v), three_box_final()), 1.0, kTol);  // equal up to global phase

    SlitGeometry h = three_slit_design(3.7, 0.55);
    EXPECT_NEAR(h.outer_path() - h.middle_path(), 0.275, 1e-9 * 0.55);

    EXPECT_EQ(code_of([] { three_slit_design(0.5, 1); }), ErrorCode::GeometryInfeasible);
    EXPECT_EQ(code_of([] { three_slit_design(0.2, 1); }), ErrorCode::GeometryInfeasible);
    EXPECT_EQ(code_of([] { three_slit_design(1, 0); }), ErrorCode::GeometryInfeasible);
}

TEST(Aad, EqualWeights) {
    const double r = 1 / std::sqrt(2.0);
    AadReport rep = aad_analysis(r, r);
    EXPECT_NEAR(rep.partial_x, 1.0, kTol);
    EXPECT_NEAR(rep.partial_q, 1.0, kTol);
    EXPECT_NEAR(rep.complete_x, 1.0, kTol);

    // Independent evaluation from explicit vectors.
    const std::array<Complex, 3> a{r, r, 0}, b{0, r, r};
    const std::array<std::array<Complex, 3>, 3> qb{{{r, 0, r}, {0, 1, 0}, {r, 0, -r}}};
    const double oracle = direct_complete(qb, a, b, 1);
    EXPECT_NEAR(oracle, 2.0 / 3, 1e-12);
    EXPECT_NEAR(rep.complete_q, oracle, kTol);
}

TEST(Aad, DegenerateAndRandomWeights) {
    AadReport aligned = aad_analysis(1.0, 0.0);
    EXPECT_NEAR(aligned.partial_q, 1.0, kTol);
    EXPECT_NEAR(aligned.complete_q, 1.0, kTol);

    std::mt19937_64 rng(37);
    int tested = 0;
    while (tested < 100) {
        QState ab = random_state(2, rng);
        Complex alpha = ab.amplitudes()(0), beta = ab.amplitudes()(1);
        if (std::abs(alpha * beta) <= 0.05) continue;
        ++tested;
        AadReport rep = aad_analysis(alpha, beta);
        EXPECT_NEAR(rep.partial_q, 1.0, kTol);
        EXPECT_LT(rep.complete_q, 1.0);

        const std::array<Complex, 3> a{1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0}, b{0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
        const std::array<std::array<Complex, 3>, 3> qb{
            {{alpha, 0, beta}, {0, 1, 0}, {std::conj(beta), 0, -std::conj(alpha)}}};
        EXPECT_NEAR(rep.complete_q, direct_complete(qb, a, b, 1), kTol);
    }
    EXPECT_EQ(code_of([] { aad_analysis(1.0, 1.0); }), ErrorCode::NotNormalized);
}

TEST(Parse, ComplexLiterals) {
    EXPECT_EQ(parse_complex("0.5-0.25i"), Complex(0.5, -0.25));
    EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
    EXPECT_EQ(parse_complex("2i"), Complex(0, 2));
    EXPECT_NEAR(parse_complex("1/3").real(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(parse_complex("sqrt(1/2)").real(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(parse_complex("1e-5"), Complex(1e-5, 0));
    EXPECT_EQ(code_of([] { parse_complex("abc"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_complex(""); }), ErrorCode::ParseError);

    QState s = parse_state("1, 1, -1", true);
    EXPECT_NEAR(born_probability(s, three_box_final()), 1.0, kTol);
    EXPECT_EQ(code_of([] { parse_state("1,1", false); }), ErrorCode::NotNormalized);
}
