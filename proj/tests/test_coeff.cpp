#include "doctest.h"

#include <random>

#include "laplace/coeff.hpp"
#include "laplace/errors.hpp"
#include "laplace/render.hpp"
#include "oracle.hpp"

using namespace laplace;

namespace {

CoeffPoly sym(const CoeffSymbol& s) { return CoeffPoly::symbol(s); }
CoeffPoly a(IndexSet j, MultiIndex d = {}) { return sym(CoeffSymbol::a(std::move(j), std::move(d))); }
CoeffPoly b(MultiIndex k) { return sym(CoeffSymbol::b(std::move(k))); }

// Random polynomial over the symbols a_J (J ⊆ {1..vars}), optionally with b and θ.
CoeffPoly random_coeff(std::mt19937& rng, unsigned vars, bool extra) {
    std::uniform_int_distribution<int> small(1, 3), coeff(-4, 4);
    std::uniform_int_distribution<unsigned> label(1, vars);
    auto random_multi = [&](unsigned max_len) {
        std::vector<Label> l;
        unsigned len = std::uniform_int_distribution<unsigned>(0, max_len)(rng);
        for (unsigned i = 0; i < len; ++i) l.push_back(label(rng));
        return MultiIndex::from_labels(l);
    };
    auto random_symbol = [&]() {
        int kind = extra ? std::uniform_int_distribution<int>(0, 2)(rng) : 0;
        if (kind == 1) {
            MultiIndex k = random_multi(2);
            return CoeffSymbol::b(k.empty() ? MultiIndex{label(rng)} : k);
        }
        if (kind == 2) return CoeffSymbol::theta(random_multi(2));
        std::vector<Label> base;
        for (Label l = 1; l <= vars; ++l)
            if (rng() % 2) base.push_back(l);
        if (base.empty()) base.push_back(label(rng));
        return CoeffSymbol::a(IndexSet::from_labels(base), random_multi(2));
    };
    CoeffPoly p;
    int terms = small(rng) + 1;
    for (int t = 0; t < terms; ++t) {
        CoeffPoly m(coeff(rng));
        int f = small(rng);
        for (int i = 0; i < f; ++i) m = m * CoeffPoly::symbol(random_symbol());
        p += m;
    }
    return p;
}

} // namespace

TEST_CASE("symbol constructors validate") {
    CHECK_THROWS_AS(CoeffSymbol::a(IndexSet{}), DomainError);
    CHECK_THROWS_AS(CoeffSymbol::b(MultiIndex{}), DomainError);
    CHECK_NOTHROW(CoeffSymbol::theta());
}

TEST_CASE("derivation rules") {
    CHECK(derive(a({1, 2}), 3) == a({1, 2}, {3}));
    CHECK(derive(a({1}, {2}), 2) == a({1}, {2, 2}));
    CHECK(derive(b({1}), 2) == b({1, 2}) - b({1}) * b({2}));
    CHECK(derive(b({1}), 1) == b({1, 1}) - b({1}) * b({1}));
    CHECK(derive(CoeffPoly(5), 1).is_zero());
    // Leibniz
    const CoeffPoly p = a({1}) * a({2});
    CHECK(derive(p, 3) == a({1}, {3}) * a({2}) + a({1}) * a({2}, {3}));
    CHECK(derive(a({1}) * a({1}), 2) == a({1}, {2}) * a({1}) * Scalar(2));
}

TEST_CASE("derive_multi does not depend on label order") {
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        CoeffPoly p = random_coeff(rng, 3, true);
        CHECK(derive(derive(p, 1), 3) == derive(derive(p, 3), 1));
        CHECK(derive_multi(p, MultiIndex{1, 3}) == derive(derive(p, 1), 3));
    }
}

TEST_CASE("gauge image of single symbols") {
    CHECK(gauge_image(CoeffSymbol::a({1})) == a({1}) + b({1}));
    CHECK(gauge_image(CoeffSymbol::a({1, 2})) == a({1, 2}) + a({1}) * b({2}) + a({2}) * b({1}) + b({1, 2}));
    CHECK(gauge_image(CoeffSymbol::a({1}, {2})) == a({1}, {2}) + b({1, 2}) - b({1}) * b({2}));
}

TEST_CASE("gauge transform rejects gauge symbols") {
    CHECK_THROWS_AS(gauge_transform(b({1})), DomainError);
    CHECK_THROWS_AS(gauge_transform(sym(CoeffSymbol::theta({1}))), DomainError);
}

TEST_CASE("drop_gauge undoes the transform at constant gauge") {
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        CoeffPoly p = random_coeff(rng, 3, false);
        CHECK(drop_gauge(gauge_transform(p)) == p);
    }
}

TEST_CASE("oracle: derivation rules agree with concrete polynomials, b from g = exp(h)") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 25; ++t) {
        const auto model = oracle::Model::random(rng, 3);
        CoeffPoly p = random_coeff(rng, 3, true);
        for (Label i = 1; i <= 3; ++i) CHECK(model.value(derive(p, i)) == model.value(p).derive(i));
    }
}

TEST_CASE("oracle: gauge transform equals evaluation at the gauged coefficients") {
    std::mt19937 rng(99);
    for (int t = 0; t < 25; ++t) {
        const auto model = oracle::Model::random(rng, 3);
        const auto gauged = model.gauged();
        CoeffPoly p = random_coeff(rng, 3, false);
        CHECK(model.value(gauge_transform(p)) == gauged.value(p));
    }
}

TEST_CASE("serial and parallel gauge transforms agree") {
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        CoeffPoly p = random_coeff(rng, 4, false);
        CHECK(gauge_transform(p, Execution::Serial) == gauge_transform(p, Execution::Parallel));
    }
}

TEST_CASE("polynomial arithmetic") {
    const CoeffPoly x = a({1}), y = a({2});
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK((x - x).is_zero());
    CHECK(-(x) + x == CoeffPoly());
    CHECK((x * Scalar(0)).is_zero());
    CHECK(x.contains(SymbolKind::A));
    CHECK_FALSE(x.contains(SymbolKind::B));
    CHECK(max_label(a({3, 7}, {9})) == 9);
}

TEST_CASE("monomial order: derivative weight, then factor count, then lexicographic") {
    const CoeffPoly p = a({1, 2}) + a({1}) * a({2}) + a({1}, {2});
    auto it = p.terms().begin();
    CHECK(to_text(CoeffPoly::monomial(it->first)) == "a[12]");
    ++it;
    CHECK(to_text(CoeffPoly::monomial(it->first)) == "a[1]a[2]");
    ++it;
    CHECK(to_text(CoeffPoly::monomial(it->first)) == "a[1,2]");
}

TEST_CASE("relabel") {
    const std::map<Label, Label> m{{1, 2}, {2, 1}};
    CHECK(relabel(a({1, 3}, {2}), m) == a({2, 3}, {1}));
    CHECK(relabel(relabel(a({1}) * b({1, 2}), m), m) == a({1}) * b({1, 2}));
    CHECK_THROWS_AS(relabel(a({1, 2}), {{1, 2}}), DomainError);
}
