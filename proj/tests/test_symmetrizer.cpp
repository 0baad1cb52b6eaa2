#include "doctest.h"

#include <random>

#include "laplace/errors.hpp"
#include "laplace/render.hpp"
#include "laplace/symmetrizer.hpp"

using namespace laplace;

namespace {

DiagramPoly dp(const char* t) { return parse_diagram(t); }
LPoly lp(const char* t) { return parse_lpoly(t); }
CoeffPoly cp(const char* t) { return parse_coeff(t); }

DiagramPoly random_pattern(std::mt19937& rng, unsigned degree) {
    auto comps = compositions(degree);
    std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
    std::uniform_int_distribution<int> coeff(-5, 5);
    DiagramPoly d;
    for (int i = 0; i < 3; ++i) {
        Scalar c(coeff(rng), 1 + rng() % 3);
        c.canonicalize();
        d.add_term(comps[pick(rng)], c);
    }
    return d;
}

} // namespace

TEST_CASE("sigma") {
    CHECK(sigma(dp("[1,1]"), {1, 2}) == lp("L[1]L[2] + L[2]L[1]"));
    CHECK(sigma(dp("[2]"), {1, 2, 3}) == lp("2*L[12] + 2*L[23] + 2*L[13]"));
    for (unsigned n = 1; n <= 5; ++n)
        CHECK(sigma(dp(("[" + std::to_string(n) + "]").c_str()), IndexSet::range(n)) ==
              LPoly(LMonomial({IndexSet::range(n)}), Scalar(factorial(n))));
    CHECK_THROWS_AS(sigma(dp("[3]"), {1, 2}), DomainError);
    CHECK(sigma(dp("[]"), {1, 2}) == LPoly(LMonomial{}));
}

TEST_CASE("overbar") {
    CHECK(overbar(fundamental(2), {1, 2}) == lp("L[12] - 1/2*L[1]L[2] - 1/2*L[2]L[1]"));
    CHECK(overbar(dp("[3]"), {4, 5, 6}) == lp("L[456]"));
    CHECK_THROWS_AS(overbar(dp("[2]"), {1, 2, 3}), DomainError);
    // one sixth of the Σ_{ijk} display
    const LPoly six = lp("6*L[123] - 6*L[12]L[3] - 6*L[13]L[2] - 6*L[23]L[1]"
                         " + 2*L[1]L[2]L[3] + 2*L[1]L[3]L[2] + 2*L[2]L[1]L[3] + 2*L[2]L[3]L[1]"
                         " + 2*L[3]L[1]L[2] + 2*L[3]L[2]L[1]");
    CHECK(overbar(fundamental(3), {1, 2, 3}) == six * (Scalar(1) / 6));
}

TEST_CASE("expand") {
    CHECK(expand(lp("L[12] - 1/2*L[1]L[2] - 1/2*L[2]L[1]")) == DiffOp(cp("a[12] - a[1]a[2] - 1/2*a[1,2] - 1/2*a[2,1]")));
    CHECK(expand(lp("L[1]L[2] - L[2]L[1]")) == DiffOp(cp("a[2,1] - a[1,2]")));
    CHECK(expand(LPoly()).is_zero());
    CHECK(expand(LPoly(LMonomial{})) == DiffOp(1));
}

TEST_CASE("subset expansion agrees with the injection sum") {
    std::mt19937 rng(3);
    for (unsigned n = 1; n <= 4; ++n) {
        const IndexSet j = IndexSet::range(n);
        for (int t = 0; t < 4; ++t) {
            const DiagramPoly d = random_pattern(rng, n);
            const DiffOp full = expand(sigma(d, j));
            CHECK(expand_sigma(d, j) == full);
            CHECK(expand_sigma(d, j, Execution::Parallel) == full);
            CHECK(expand_overbar(d, j) == expand(overbar(d, j)));
            CHECK(order_zero_overbar(d, j) == full.order_zero_part() * (Scalar(1) / Scalar(factorial(n))));
            CHECK(order_zero_overbar(d, j, Execution::Parallel) == order_zero_part(overbar(d, j)));
        }
    }
    // patterns shorter than J
    const DiagramPoly d = dp("[2] - [1,1]");
    CHECK(expand_sigma(d, {1, 2, 3}) == expand(sigma(d, {1, 2, 3})));
}

TEST_CASE("expand: serial and parallel agree") {
    const LPoly p = sigma(fundamental(4), IndexSet::range(4));
    CHECK(expand(p, Execution::Serial) == expand(p, Execution::Parallel));
}

TEST_CASE("order_zero_part applies products to one") {
    const LPoly p = overbar(fundamental(3), {1, 2, 3});
    CHECK(order_zero_part(p) == expand(p).order_zero_part());
}

TEST_CASE("sigma is linear") {
    std::mt19937 rng(4);
    const IndexSet j{1, 2, 3};
    for (int t = 0; t < 5; ++t) {
        const DiagramPoly x = random_pattern(rng, 3), y = random_pattern(rng, 3);
        const Scalar alpha(2, 3), beta(-5);
        CHECK(sigma(x * alpha + y * beta, j) == sigma(x, j) * alpha + sigma(y, j) * beta);
    }
}

TEST_CASE("sigma commutes with relabeling") {
    std::mt19937 rng(6);
    const IndexSet j{1, 2, 3, 4};
    const std::map<Label, Label> perm{{1, 3}, {2, 1}, {3, 4}, {4, 2}};
    std::map<Label, Label> inverse;
    for (auto [x, y] : perm) inverse[y] = x;
    for (int t = 0; t < 5; ++t) {
        const DiagramPoly d = random_pattern(rng, 4);
        const LPoly s = sigma(d, j);
        CHECK(relabel(s, perm) == s);
        CHECK(relabel(relabel(s, perm), inverse) == s);
        for (const auto& [m, c] : s.terms())
            for (const auto& f : m.factors()) CHECK(std::is_sorted(f.begin(), f.end()));
    }
}

TEST_CASE("kernel elements expand to order-zero operators") {
    for (unsigned n = 2; n <= 5; ++n) {
        const IndexSet j = IndexSet::range(n);
        for (const auto& d : kernel_basis(n)) CHECK(differential_degree(expand_overbar(d, j)).at_most(0));
    }
    CHECK(differential_degree(expand_overbar(dp("[2]"), {1, 2})) >= Degree::finite(1));
    CHECK(differential_degree(expand_overbar(dp("[2,1]"), {1, 2, 3})) >= Degree::finite(1));
}

TEST_CASE("kernel elements of degree 6 expand to order-zero operators" * doctest::timeout(300)) {
    const IndexSet j = IndexSet::range(6);
    for (const auto& d : kernel_basis(6)) CHECK(differential_degree(expand_overbar(d, j, Execution::Parallel)).at_most(0));
}

TEST_CASE("L monomials") {
    CHECK_THROWS_AS(LMonomial({IndexSet{}}), DomainError);
    const LMonomial m({{1, 2}, {3}});
    CHECK(m.degree() == 3);
    CHECK(m.shape() == Composition{2, 1});
    CHECK((m * LMonomial(std::vector<IndexSet>{IndexSet{4}})).length() == 3);
    CHECK(lp("L[1]") * lp("L[2] + L[3]") == lp("L[1]L[2] + L[1]L[3]"));
}
