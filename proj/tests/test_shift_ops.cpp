#include <cmath>
#include <random>

#include "doctest.h"
#include "fhsim/shift_ops.hpp"

using namespace fhsim;

namespace {

// independent oracle: n-fold single-shift application on a dense array
std::vector<Scalar> naive_shift_power(const WeightFamily& f, std::uint64_t n,
                                      std::vector<Scalar> dense) {
    for (std::uint64_t step = 0; step < n; ++step) {
        std::vector<Scalar> next(dense.size(), Scalar{0.0, 0.0});
        for (std::size_t j = 1; j < dense.size(); ++j)
            next[j - 1] = dense[j] * log_weight(f, j).to_scalar();
        dense = std::move(next);
    }
    return dense;
}

std::vector<Scalar> to_dense(const SparseVec& v, std::size_t len) {
    std::vector<Scalar> out(len, Scalar{0.0, 0.0});
    for (const auto& e : v.entries())
        if (e.index < len) out[e.index] = e.value;
    return out;
}

}  // namespace

TEST_CASE("apply_shift_power worked examples") {
    SpaceConfig l2(2.0);
    // w == 2: B_w e_1 = w_1 e_0 = 2 e_0
    ShiftOperator op2{WeightFamily::constant(2.0)};
    auto r = apply_shift_power(op2, 1, SparseVec::unit(1), l2);
    CHECK(r.at(0) == Scalar{2.0, 0.0});
    CHECK(r.support_size() == 1);

    // w_n = n: B^2 e_5 = w_4 w_5 e_3 = 20 e_3
    auto wn = WeightFamily::custom([](std::uint64_t n) {
        return LogMag{std::lgamma(static_cast<double>(n) + 1.0), 0.0};  // W_n = n!
    });
    auto r2 = apply_shift_power(ShiftOperator{wn}, 2, SparseVec::unit(5), l2);
    CHECK(r2.at(3).real() == doctest::Approx(20.0).epsilon(1e-13));

    // n = 0 identity
    auto v = SparseVec::from_entries({{2, {1.0, 2.0}}, {7, {-0.5, 0.0}}});
    CHECK(apply_shift_power(op2, 0, v, l2) == v);
}

TEST_CASE("2B fixed-point family") {
    SpaceConfig l2(2.0);
    ShiftOperator op{WeightFamily::constant(2.0)};
    const std::uint64_t K = 40;
    std::vector<SparseVec::Entry> entries;
    for (std::uint64_t k = 0; k <= K; ++k)
        entries.push_back({k, {std::pow(2.0, -static_cast<double>(k)), 0.0}});
    auto v = SparseVec::from_entries(entries);
    for (std::uint64_t n : {1ull, 5ull, 20ull}) {
        auto r = apply_shift_power(op, n, v, l2);
        // result equals v restricted to indices <= K - n (up to log/exp rounding)
        CHECK(r.degree() == K - n);
        double dist = 0.0;
        for (const auto& e : r.entries()) dist += std::abs(e.value - v.at(e.index));
        CHECK(dist <= 1e-12);
    }
}

TEST_CASE("one-pass equals naive repeated application (oracle equivalence)") {
    SpaceConfig l2(2.0);
    std::mt19937_64 rng(99);
    std::vector<WeightFamily> fams = {
        WeightFamily::constant(2.0), WeightFamily::constant(0.5), WeightFamily::power(2.0),
        WeightFamily::power(0.5), WeightFamily::ratio_power(1.0, SpaceConfig(1.0)),
        WeightFamily::exp_log_power(1.0)};
    std::normal_distribution<double> g(0.0, 1.0);
    for (const auto& f : fams) {
        std::vector<Scalar> dense(200);
        for (auto& c : dense) c = Scalar{g(rng), g(rng)};
        std::vector<SparseVec::Entry> entries;
        for (std::size_t j = 0; j < dense.size(); ++j) entries.push_back({j, dense[j]});
        auto v = SparseVec::from_entries(entries);
        for (std::uint64_t n : {1ull, 3ull, 17ull, 50ull}) {
            auto fast = to_dense(apply_shift_power(ShiftOperator{f}, n, v, l2), 200);
            auto slow = naive_shift_power(f, n, dense);
            double worst = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < 200; ++j) {
                worst = std::max(worst, std::abs(fast[j] - slow[j]));
                scale = std::max(scale, std::abs(slow[j]));
            }
            CHECK(worst <= 1e-12 * std::max(scale, 1e-300));
        }
    }
}

TEST_CASE("semigroup property B^{a+b} = B^a B^b under fuzz") {
    SpaceConfig l2(2.0);
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> g(0.0, 1.0);
    ShiftOperator op{WeightFamily::power(1.3)};
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<SparseVec::Entry> entries;
        std::uniform_int_distribution<std::uint64_t> idx(0, 120);
        for (int i = 0; i < 15; ++i) entries.push_back({idx(rng), {g(rng), g(rng)}});
        auto v = SparseVec::from_entries(entries);
        std::uniform_int_distribution<std::uint64_t> nn(0, 30);
        std::uint64_t a = nn(rng), b = nn(rng);
        auto lhs = apply_shift_power(op, a + b, v, l2);
        auto rhs = apply_shift_power(op, a, apply_shift_power(op, b, v, l2), l2);
        double scale = std::max({lp_norm(lhs, l2), lp_norm(rhs, l2), 1e-300});
        CHECK(lp_distance(lhs, rhs, l2) <= 1e-11 * scale);
    }
}

TEST_CASE("apply_polynomial worked examples") {
    SpaceConfig l2(2.0);
    ShiftOperator op1{WeightFamily::constant(1.0)};
    // P(z) = z reduces to a single shift
    PolynomialSpec id(std::vector<Scalar>{{1.0, 0.0}});
    auto v = SparseVec::from_entries({{3, {2.0, 1.0}}, {5, {1.0, 0.0}}});
    CHECK(apply_polynomial(id, op1, v, l2) == apply_shift_power(op1, 1, v, l2));

    // P(z) = 2z - (24/25) z^2 on e_2 over w == 1
    PolynomialSpec P({{2.0, 0.0}, {-24.0 / 25.0, 0.0}});
    auto r = apply_polynomial(P, op1, SparseVec::unit(2), l2);
    CHECK(r.at(1) == Scalar{2.0, 0.0});
    CHECK(r.at(0).real() == doctest::Approx(-24.0 / 25.0));

    // P(z) = z^3 annihilates e_1 (shift past index 0)
    PolynomialSpec cube({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    CHECK(apply_polynomial(cube, op1, SparseVec::unit(1), l2).empty());
}

TEST_CASE("apply_polynomial linearity under fuzz") {
    SpaceConfig l2(2.0);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    ShiftOperator op{WeightFamily::constant(2.0)};
    PolynomialSpec P({{2.0, 0.0}, {0.0, 0.5}, {-0.3, 0.1}});
    for (int iter = 0; iter < 50; ++iter) {
        std::uniform_int_distribution<std::uint64_t> idx(0, 50);
        std::vector<SparseVec::Entry> ex, ey;
        for (int i = 0; i < 8; ++i) {
            ex.push_back({idx(rng), {g(rng), g(rng)}});
            ey.push_back({idx(rng), {g(rng), g(rng)}});
        }
        auto x = SparseVec::from_entries(ex), y = SparseVec::from_entries(ey);
        Scalar a{g(rng), g(rng)};
        auto lhs = apply_polynomial(P, op, vec_axpy(a, x, y), l2);
        auto rhs = vec_axpy(a, apply_polynomial(P, op, x, l2), apply_polynomial(P, op, y, l2));
        double scale = std::max({lp_norm(lhs, l2), lp_norm(rhs, l2), 1e-300});
        CHECK(lp_distance(lhs, rhs, l2) <= 1e-12 * scale);
    }
}

TEST_CASE("admissibility worked examples") {
    auto a1 = admissibility(PolynomialSpec({{2.0, 0.0}, {-24.0 / 25.0, 0.0}}));
    CHECK(a1.margin == doctest::Approx(26.0 / 25.0).epsilon(1e-15));
    CHECK(a1.admissible);
    auto a2 = admissibility(
        PolynomialSpec({{4.0 / 3.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-16.0 / 81.0, 0.0}}));
    CHECK(a2.margin == doctest::Approx(4.0 / 3.0 - 16.0 / 81.0).epsilon(1e-15));
    CHECK(a2.margin > 1.1);  // 92/81
    CHECK(a2.admissible);
    // boundary case: margin exactly 0
    auto a3 = admissibility(PolynomialSpec({{1.0, 0.0}, {1.0, 0.0}}));
    CHECK(a3.margin == doctest::Approx(0.0));
    CHECK(!a3.admissible);
}

TEST_CASE("truncated_apply over the weight basis") {
    // X = (1,1,1,...), n = 0, u_0 = e_0
    auto f1 = WeightFamily::constant(1.0);
    std::vector<Scalar> ones(16, Scalar{1.0, 0.0});
    auto t0 = truncated_apply_weight_basis(ones, 0, f1);
    CHECK(t0 == SparseVec::unit(0));

    // weight basis u_k = e_k / W_k, w == 2, X == 1, n = 2 -> {0:1, 1:1/2, 2:1/4}
    auto f2 = WeightFamily::constant(2.0);
    auto t2 = truncated_apply_weight_basis(ones, 2, f2);
    CHECK(t2.at(0) == Scalar{1.0, 0.0});
    CHECK(t2.at(1).real() == doctest::Approx(0.5));
    CHECK(t2.at(2).real() == doctest::Approx(0.25));

    // all-zero coefficients
    std::vector<Scalar> zeros(16, Scalar{0.0, 0.0});
    CHECK(truncated_apply_weight_basis(zeros, 3, f2).empty());

    // insufficient coefficients
    CHECK_THROWS_AS(truncated_apply_weight_basis(ones, 8, f2), std::out_of_range);
}
