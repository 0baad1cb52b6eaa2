#include "doctest.h"

#include <random>

#include "laplace/diffop.hpp"
#include "laplace/errors.hpp"
#include "laplace/render.hpp"
#include "oracle.hpp"

using namespace laplace;

namespace {

CoeffPoly a(IndexSet j, MultiIndex d = {}) { return CoeffPoly::symbol(CoeffSymbol::a(std::move(j), std::move(d))); }

DiffOp random_op(std::mt19937& rng, unsigned vars) {
    std::vector<IndexSet> sets;
    for (const auto& s : subsets(IndexSet::range(vars)))
        if (!s.empty()) sets.push_back(s);
    std::uniform_int_distribution<std::size_t> pick(0, sets.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3), len(0, 2);
    DiffOp op;
    for (int t = 0; t < 3; ++t) {
        CoeffPoly f(coeff(rng));
        int k = len(rng);
        for (int i = 0; i < k; ++i) f = f * a(sets[pick(rng)]);
        std::vector<Label> d;
        int dl = len(rng);
        for (int i = 0; i < dl; ++i) d.push_back(static_cast<Label>(1 + rng() % vars));
        op.add_term(MultiIndex::from_labels(d), f);
    }
    return op;
}

} // namespace

TEST_CASE("build_L") {
    DiffOp expect = DiffOp(a({1, 2}));
    expect.add_term(MultiIndex{2}, a({1}));
    expect.add_term(MultiIndex{1}, a({2}));
    expect.add_term(MultiIndex{1, 2}, 1);
    CHECK(build_L({1, 2}) == expect);
    CHECK_THROWS_AS(build_L(IndexSet{}), DomainError);
    CHECK(to_text(build_L({1})) == "d[1] + a[1]");
}

TEST_CASE("composition moves derivatives right") {
    // ∂_1 ∘ f = f ∂_1 + f_{,1}
    DiffOp expect = DiffOp::term(a({2}), MultiIndex{1});
    expect += DiffOp(a({2}, {1}));
    CHECK(compose(DiffOp::partial({1}), DiffOp(a({2}))) == expect);
    // repeated labels: ∂_1 ∂_1 ∘ f = f ∂_11 + 2 f_{,1} ∂_1 + f_{,11}
    DiffOp e2 = DiffOp::term(a({2}), MultiIndex{1, 1});
    e2 += DiffOp::term(a({2}, {1}) * Scalar(2), MultiIndex{1});
    e2 += DiffOp(a({2}, {1, 1}));
    CHECK(compose(DiffOp::partial({1, 1}), DiffOp(a({2}))) == e2);
}

TEST_CASE("oracle: composition is operator product on concrete functions") {
    std::mt19937 rng(31);
    for (int t = 0; t < 30; ++t) {
        const auto model = oracle::Model::random(rng, 3);
        const DiffOp x = random_op(rng, 3), y = random_op(rng, 3);
        const auto u = oracle::random_poly(rng, 3, 4);
        CHECK(model.apply(compose(x, y), u) == model.apply(x, model.apply(y, u)));
    }
}

TEST_CASE("composition is associative") {
    std::mt19937 rng(32);
    for (int t = 0; t < 20; ++t) {
        const DiffOp x = random_op(rng, 3), y = random_op(rng, 3), z = random_op(rng, 3);
        CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
    }
}

TEST_CASE("second-order commutator") {
    CHECK(commutator(build_L({1}), build_L({2})) == DiffOp(a({2}, {1}) - a({1}, {2})));
}

TEST_CASE("differential degree") {
    CHECK_FALSE(differential_degree(DiffOp()).is_finite());
    CHECK(differential_degree(DiffOp()) < Degree::finite(0));
    CHECK_THROWS_AS(differential_degree(DiffOp()).value(), DomainError);
    CHECK(differential_degree(DiffOp(a({1}))) == Degree::finite(0));
    CHECK(differential_degree(build_L({1, 2, 3})).value() == 3);
    CHECK(Degree::neg_infinity().at_most(0));
}

TEST_CASE("leading coefficient") {
    CHECK(leading_coefficient(build_L({1, 2})) == CoeffPoly(1));
    CHECK_THROWS_AS(leading_coefficient(DiffOp()), DomainError);
    DiffOp tie = DiffOp::partial({1}) + DiffOp::partial({2});
    CHECK_THROWS_AS(leading_coefficient(tie), DomainError);
}

TEST_CASE("commutator degree drops by two") {
    for (const auto& j : subsets(IndexSet::range(4))) {
        if (j.empty()) continue;
        for (const auto& k : subsets(IndexSet::range(4).minus(j))) {
            if (k.empty() || j.size() + k.size() > 5) continue;
            CHECK(differential_degree(commutator(build_L(j), build_L(k))) == Degree::finite(j.size() + k.size() - 2));
        }
    }
}

TEST_CASE("theta map") {
    for (unsigned n = 1; n <= 4; ++n) CHECK(theta_map(build_L(IndexSet::range(n))) == theta_formula(IndexSet::range(n)));
    CHECK(theta_map(DiffOp(a({1}))).is_zero());
    CHECK_THROWS_AS(theta_map(DiffOp(CoeffPoly::symbol(CoeffSymbol::theta()))), DomainError);
    CHECK_THROWS_AS(theta_monomial_terms({{1, 2}, {2}}), DomainError);
    CHECK_THROWS_AS(theta_monomial_terms({{1}, {}}), DomainError);
    const std::vector<IndexSet> blocks{{1, 2}, {3}};
    CHECK(theta_map(product_of_L(blocks)) == theta_monomial_formula(blocks));
}

TEST_CASE("theta of the L_ij L_klm product has 31 summands") {
    CHECK(theta_monomial_terms({{1, 2}, {3, 4, 5}}).size() == 31);
}

TEST_CASE("a from L") {
    for (unsigned n = 1; n <= 4; ++n) CHECK(a_from_L(IndexSet::range(n)) == DiffOp(a(IndexSet::range(n))));
    CHECK(a_from_L({2, 5}) == DiffOp(a({2, 5})));
}

TEST_CASE("oracle: conjugation matches exp(-h) A exp(h) on concrete functions") {
    std::mt19937 rng(41);
    for (int t = 0; t < 20; ++t) {
        const auto model = oracle::Model::random(rng, 3);
        const DiffOp x = random_op(rng, 3);
        const auto u = oracle::random_poly(rng, 3, 3);
        CHECK(model.apply(conjugate(x), u) == model.apply_conjugated(x, u));
    }
}

TEST_CASE("conjugating L_J transforms its coefficients by the gauge law") {
    for (unsigned n = 1; n <= 4; ++n) {
        const DiffOp l = build_L(IndexSet::range(n));
        CHECK(conjugate(l) == gauge_transform_coefficients(l));
    }
}

TEST_CASE("apply agrees with the order-zero part of composition") {
    std::mt19937 rng(43);
    for (int t = 0; t < 20; ++t) {
        const DiffOp x = random_op(rng, 3);
        const CoeffPoly f = random_op(rng, 3).order_zero_part() + a({1, 2});
        CHECK(apply(x, f) == compose(x, DiffOp(f)).order_zero_part());
    }
}

TEST_CASE("relabel") {
    const DiffOp l = build_L({1, 2});
    CHECK(relabel(l, {{1, 3}, {2, 4}}) == build_L({3, 4}));
}
