#include "doctest.h"

#include <random>

#include "laplace/errors.hpp"
#include "laplace/render.hpp"
#include "random_exprs.hpp"

using namespace laplace;

namespace {

std::size_t error_offset(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.offset();
    }
    return std::string::npos;
}

} // namespace

TEST_CASE("diagram parsing") {
    CHECK(parse_diagram("[2] - [1,1]") == fundamental(2));
    CHECK(parse_diagram("1*[3] - 3*[2,1] + 2*[1,1,1]") == fundamental(3));
    CHECK(parse_diagram("  [ 2 ,1 ]\n+ 1/2 * [1] ") == DiagramPoly(Composition{2, 1}) + DiagramPoly(Composition{1}, Scalar(1, 2)));
    CHECK(parse_diagram("0").is_zero());
    CHECK(parse_diagram("[]") == DiagramPoly(Composition{}));
    CHECK_THROWS_AS(parse_diagram("[0,1]"), ParseError);
    CHECK(error_offset([] { parse_diagram("[0,1]"); }) == 1);
    CHECK_THROWS_AS(parse_diagram("[1,]"), ParseError);
    CHECK_THROWS_AS(parse_diagram("2[1]"), ParseError);
    CHECK_THROWS_AS(parse_diagram("[1] +"), ParseError);
    CHECK_THROWS_AS(parse_diagram("1/0*[1]"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_coeff("a[1]\n + a[0]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
        CHECK(e.offset() == 10);
    }
}

TEST_CASE("coefficient parsing") {
    const CoeffPoly i2 = parse_coeff("a[12] - a[1]a[2] - 1/2*a[1,2] - 1/2*a[2,1]");
    CHECK(i2.size() == 4);
    CHECK(to_text(i2) == "a[12] - a[1]a[2] - 1/2*a[1,2] - 1/2*a[2,1]");
    CHECK(parse_coeff("2 a[1] * a[2]") == parse_coeff("2*a[1]a[2]"));
    CHECK(parse_coeff("(a[1] - a[2])^2") == parse_coeff("a[1]^2 - 2*a[1]a[2] + a[2]^2"));
    CHECK(parse_coeff("-(a[1] + 1)") == parse_coeff("-a[1] - 1"));
    CHECK(parse_coeff("th[] + th[12] + b[1]") .size() == 3);
    CHECK(parse_coeff("a[1,1]") == CoeffPoly::symbol(CoeffSymbol::a({1}, {1})));
    CHECK_THROWS_AS(parse_coeff("a[11]"), ParseError);
    CHECK(error_offset([] { parse_coeff("a[11]"); }) == 3);
    CHECK_THROWS_AS(parse_coeff("a[]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("b[]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("a[1,]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("a[1]^0"), ParseError);
    CHECK_THROWS_AS(parse_coeff("a[1] d[2]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("c[1]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("a[1]*"), ParseError);
    CHECK_THROWS_AS(parse_coeff("(a[1]"), ParseError);
}

TEST_CASE("explicit label regime") {
    const CoeffPoly p = parse_coeff("# labels: explicit\na[10,11|12] + a[1|1]");
    CHECK(p == CoeffPoly::symbol(CoeffSymbol::a({10, 11}, {12})) + CoeffPoly::symbol(CoeffSymbol::a({1}, {1})));
    CHECK(parse_coeff("a[10,11|12]", LabelMode::Explicit) == CoeffPoly::symbol(CoeffSymbol::a({10, 11}, {12})));
    CHECK(to_text(p) == "# labels: explicit\na[1|1] + a[10,11|12]");
    CHECK_THROWS_AS(parse_coeff("# labels: fancy\na[1]"), ParseError);
    CHECK_THROWS_AS(parse_coeff("a[10,10]", LabelMode::Explicit), ParseError);
    CHECK(parse_lpoly("# labels: explicit\n# a comment\nL[12]L[3]") == parse_lpoly("L[12]", LabelMode::Explicit) * parse_lpoly("L[3]"));
}

TEST_CASE("L-polynomial parsing") {
    const LPoly c = parse_lpoly("L[1]L[2] - L[2]L[1]");
    CHECK(c.size() == 2);
    CHECK(to_text(c) == "1*L[1]L[2] - 1*L[2]L[1]");
    CHECK(parse_lpoly("1*L[12]L[3] - 1*L[1]L[2]L[3]").size() == 2);
    CHECK(parse_lpoly("3") == LPoly(LMonomial{}, 3));
    CHECK_THROWS_AS(parse_lpoly("L[11]"), ParseError);
    CHECK_THROWS_AS(parse_lpoly("L[]"), ParseError);
}

TEST_CASE("operator text") {
    const DiffOp l = build_L({1, 2});
    CHECK(to_text(l) == "d[12] + a[2]*d[1] + a[1]*d[2] + a[12]");
    CHECK(parse_diffop(to_text(l)) == l);
    CHECK(parse_diffop("(a[1] - a[2])*d[3] - 2*d[1]") ==
          DiffOp::term(parse_coeff("a[1] - a[2]"), MultiIndex{3}) - DiffOp::term(2, MultiIndex{1}));
}

TEST_CASE("LaTeX") {
    CHECK(to_latex(fundamental(2)) == "L_{\\square\\square}-L_{\\square}L_{\\square}");
    CHECK(to_latex(parse_coeff("a[12] - a[1]a[2] - 1/2*a[1,2] - 1/2*a[2,1]")) == "a_{12}-a_{1}a_{2}-\\frac{1}{2}(a_{1,2}+a_{2,1})");
    CHECK(to_latex(CoeffPoly()) == "0");
    CHECK(to_latex(DiagramPoly()) == "0");
    CHECK(to_latex(LPoly()) == "0");
    CHECK(to_latex(DiffOp()) == "0");
    CHECK(to_latex(parse_coeff("th[] + 3/10*th[1]^2")) == "\\theta+\\frac{3}{10}\\theta_{,1}^{2}");
    CHECK(to_latex(build_L({1})) == "\\partial_{1}+a_{1}");
    CHECK(to_latex(parse_lpoly("2*L[12]L[3]")) == "2L_{12}L_{3}");
}

TEST_CASE("records") {
    Invariant inv = generate(2, {1, 2});
    inv.verified = true;
    inv.kernel_checked = true;
    CHECK(record_line(inv) ==
          R"({"order":2,"indices":[1,2],"diagram":"1*[2] - 1*[1,1]","l_form":"1*L[12] - 1/2*L[1]L[2] - 1/2*L[2]L[1]",)"
          R"("a_form":"a[12] - a[1]a[2] - 1/2*a[1,2] - 1/2*a[2,1]","verified":true,"kernel_checked":true})");
    inv.verified.reset();
    CHECK(invariant_record(inv)["verified"].is_null());
}

TEST_CASE("round trips") {
    std::mt19937 rng(77);
    for (int t = 0; t < 300; ++t) {
        const bool wide = t % 2;
        auto d = randexpr::diagram(rng);
        CHECK(parse_diagram(to_text(d)) == d);
        auto c = randexpr::coeff(rng, wide);
        CHECK(parse_coeff(to_text(c)) == c);
        auto l = randexpr::lpoly(rng, wide);
        CHECK(parse_lpoly(to_text(l)) == l);
        auto a = randexpr::diffop(rng, wide);
        CHECK(parse_diffop(to_text(a)) == a);
    }
}

TEST_CASE("rendering is deterministic") {
    std::mt19937 r1(5), r2(5);
    for (int t = 0; t < 50; ++t) {
        auto x = randexpr::coeff(r1, false), y = randexpr::coeff(r2, false);
        CHECK(to_text(x) == to_text(y));
        CHECK(to_latex(x) == to_latex(y));
    }
}

TEST_CASE("a broken string is rejected at or after the break") {
    std::mt19937 rng(8);
    const std::string alphabet = "0123456789[],|*/+-()^ adLbth#";
    int rejected = 0;
    for (int t = 0; t < 400; ++t) {
        std::string text = to_text(randexpr::coeff(rng, false));
        if (text.empty()) continue;
        const std::size_t at = rng() % text.size();
        switch (rng() % 3) {
        case 0:
            text.erase(at, 1);
            break;
        case 1:
            text.insert(at, 1, alphabet[rng() % alphabet.size()]);
            break;
        default:
            text[at] = alphabet[rng() % alphabet.size()];
        }
        try {
            parse_coeff(text);
        } catch (const ParseError& e) {
            ++rejected;
            CHECK_MESSAGE(e.offset() >= at, text);
        }
    }
    CHECK(rejected > 100);
}
