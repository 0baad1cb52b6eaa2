#include "laplace/render.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "laplace/errors.hpp"

namespace laplace {

// ---------------------------------------------------------------- parsing

namespace {

constexpr std::size_t kMaxLabelDigits = 9;
constexpr unsigned kMaxExponent = 64;

class Parser {
public:
    Parser(std::string_view src, LabelMode mode) : s_(src), mode_(mode) { read_header(); }

    DiagramPoly diagram() {
        DiagramPoly out;
        sum([&](int sign) { diagram_term(sign, out); });
        finish();
        return out;
    }

    CoeffPoly coeff() {
        CoeffPoly out = coeff_sum();
        finish();
        return out;
    }

    LPoly lpoly() {
        LPoly out;
        sum([&](int sign) { lpoly_term(sign, out); });
        finish();
        return out;
    }

    DiffOp diffop() {
        DiffOp out;
        sum([&](int sign) { diffop_term(sign, out); });
        finish();
        return out;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    LabelMode mode_;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        at = std::min(at, s_.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at; ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col, at);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    bool digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
    bool starts(std::string_view kw) const { return s_.substr(pos_, kw.size()) == kw; }

    bool eat(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'", pos_);
    }

    // A letter where a factor may start but no head matches: blame the first
    // character that no accepted head can continue.
    void check_head(std::initializer_list<std::string_view> heads) {
        skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) return;
        std::size_t best = 0;
        for (std::string_view h : heads) {
            std::size_t k = 0;
            while (k < h.size() && pos_ + k < s_.size() && s_[pos_ + k] == h[k]) ++k;
            best = std::max(best, k);
        }
        fail("expected a symbol", pos_ + best);
    }

    void finish() {
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'", pos_);
    }

    void read_header() {
        for (;;) {
            skip_ws();
            if (peek() != '#') return;
            const std::size_t start = pos_;
            std::size_t end = s_.find('\n', pos_);
            if (end == std::string_view::npos) end = s_.size();
            std::string line(s_.substr(start + 1, end - start - 1));
            pos_ = end;
            auto trim = [](std::string t) {
                auto b = t.find_first_not_of(" \t\r");
                auto e = t.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.rfind("labels:", 0) == 0) {
                const std::string value = trim(line.substr(7));
                if (value == "compact")
                    mode_ = LabelMode::Compact;
                else if (value == "explicit")
                    mode_ = LabelMode::Explicit;
                else
                    fail("unknown label regime '" + value + "'", start);
            }
        }
    }

    // Unsigned integer; returns its value and leaves `last` at its final digit.
    Integer integer(std::size_t& last) {
        skip_ws();
        if (!digit()) fail("expected a number", pos_);
        const std::size_t start = pos_;
        while (digit()) ++pos_;
        last = pos_ - 1;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    unsigned small_int(std::size_t& last, const char* what) {
        skip_ws();
        if (!digit()) fail(std::string("expected ") + what, pos_);
        const std::size_t start = pos_;
        while (digit()) {
            if (pos_ - start >= kMaxLabelDigits) fail(std::string(what) + " too large", pos_);
            ++pos_;
        }
        last = pos_ - 1;
        return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }

    Scalar rational() {
        std::size_t last = 0;
        Integer num = integer(last);
        skip_ws();
        if (peek() != '/') return Scalar(num);
        ++pos_;
        Integer den = integer(last);
        if (den == 0) fail("zero denominator", last);
        Scalar r(num, den);
        r.canonicalize();
        return r;
    }

    template <class Term>
    void sum(Term term) {
        skip_ws();
        int sign = eat('-') ? -1 : 1;
        term(sign);
        for (;;) {
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else
                return;
            term(sign);
        }
    }

    // ---- labels

    struct Labels {
        std::vector<Label> labels;
        std::vector<std::size_t> positions;
    };

    Labels compact_labels() {
        Labels out;
        skip_ws();
        while (digit()) {
            if (peek() == '0') fail("label must be >= 1", pos_);
            out.labels.push_back(static_cast<Label>(peek() - '0'));
            out.positions.push_back(pos_);
            ++pos_;
            skip_ws();
        }
        return out;
    }

    Labels explicit_labels() {
        Labels out;
        skip_ws();
        if (!digit()) return out;
        for (;;) {
            std::size_t last = 0;
            unsigned v = small_int(last, "label");
            if (v == 0) fail("label must be >= 1", last);
            out.labels.push_back(v);
            out.positions.push_back(last);
            skip_ws();
            if (peek() != ',') return out;
            ++pos_;
        }
    }

    Labels label_list() { return mode_ == LabelMode::Compact ? compact_labels() : explicit_labels(); }

    IndexSet index_set(const Labels& l) {
        std::vector<Label> seen;
        for (std::size_t i = 0; i < l.labels.size(); ++i) {
            if (std::find(seen.begin(), seen.end(), l.labels[i]) != seen.end())
                fail("duplicate label " + std::to_string(l.labels[i]), l.positions[i]);
            seen.push_back(l.labels[i]);
        }
        return IndexSet::from_labels(seen);
    }

    static MultiIndex multi_index(const Labels& l) { return MultiIndex::from_labels(l.labels); }

    void require_nonempty(const Labels& l, const char* what) {
        if (l.labels.empty()) fail(std::string(what) + " needs at least one label", pos_);
    }

    // ---- symbols

    CoeffSymbol symbol() {
        skip_ws();
        if (starts("th[")) {
            pos_ += 3;
            Labels d = label_list();
            expect(']');
            return CoeffSymbol::theta(multi_index(d));
        }
        if (starts("b[")) {
            pos_ += 2;
            Labels d = label_list();
            require_nonempty(d, "b");
            expect(']');
            return CoeffSymbol::b(multi_index(d));
        }
        if (starts("a[")) {
            pos_ += 2;
            Labels base = label_list();
            require_nonempty(base, "a");
            IndexSet j = index_set(base);
            MultiIndex d;
            const char sep = mode_ == LabelMode::Compact ? ',' : '|';
            if (eat(sep)) {
                Labels deriv = label_list();
                require_nonempty(deriv, "derivative");
                d = multi_index(deriv);
            }
            expect(']');
            return CoeffSymbol::a(std::move(j), std::move(d));
        }
        fail("expected a coefficient symbol", pos_);
    }

    bool at_cfactor() {
        skip_ws();
        return starts("a[") || starts("b[") || starts("th[") || peek() == '(';
    }

    CoeffPoly power(CoeffPoly base) {
        if (!eat('^')) return base;
        std::size_t last = 0;
        unsigned e = small_int(last, "exponent");
        if (e == 0 || e > kMaxExponent) fail("exponent out of range", last);
        CoeffPoly r = base;
        for (unsigned i = 1; i < e; ++i) r = r * base;
        return r;
    }

    CoeffPoly cfactor() {
        skip_ws();
        if (eat('(')) {
            CoeffPoly inner = coeff_sum();
            expect(')');
            return power(std::move(inner));
        }
        return power(CoeffPoly::symbol(symbol()));
    }

    CoeffPoly coeff_sum() {
        CoeffPoly out;
        sum([&](int sign) {
            MultiIndex unused;
            out += coeff_term(sign, false, unused);
        });
        return out;
    }

    // cterm, optionally followed by d[...] when allow_d; the derivative is
    // stored in `deriv` (empty if absent).
    CoeffPoly coeff_term(int sign, bool allow_d, MultiIndex& deriv) {
        skip_ws();
        const std::size_t start = pos_;
        CoeffPoly prod{Scalar(sign)};
        bool any = false;
        bool pending_star = false;
        if (digit()) {
            prod = CoeffPoly(rational() * sign);
            any = true;
            pending_star = eat('*');
        }
        for (;;) {
            if (at_cfactor()) {
                prod = prod * cfactor();
                any = true;
                pending_star = eat('*');
                continue;
            }
            if (allow_d && starts("d[")) {
                pos_ += 2;
                deriv = multi_index(label_list());
                expect(']');
                any = true;
                pending_star = false;
                break;
            }
            if (allow_d)
                check_head({"a[", "b[", "th[", "d["});
            else
                check_head({"a[", "b[", "th["});
            break;
        }
        if (pending_star) fail("expected a factor after '*'", pos_);
        if (!any) fail("expected a term", start);
        return prod;
    }

    void diffop_term(int sign, DiffOp& out) {
        MultiIndex deriv;
        CoeffPoly c = coeff_term(sign, true, deriv);
        out.add_term(deriv, c);
    }

    void lpoly_term(int sign, LPoly& out) {
        skip_ws();
        const std::size_t start = pos_;
        Scalar c(sign);
        bool any = false;
        bool pending_star = false;
        if (digit()) {
            c *= rational();
            any = true;
            pending_star = eat('*');
        }
        std::vector<IndexSet> factors;
        for (;;) {
            skip_ws();
            if (!starts("L[")) {
                check_head({"L["});
                break;
            }
            pos_ += 2;
            Labels l = label_list();
            require_nonempty(l, "L");
            factors.push_back(index_set(l));
            expect(']');
            any = true;
            pending_star = eat('*');
        }
        if (pending_star) fail("expected a factor after '*'", pos_);
        if (!any) fail("expected a term", start);
        out.add_term(LMonomial(std::move(factors)), c);
    }

    void diagram_term(int sign, DiagramPoly& out) {
        skip_ws();
        const std::size_t start = pos_;
        Scalar c(sign);
        if (digit()) {
            c *= rational();
            if (!eat('*')) {
                if (c == 0) return;
                fail("expected '*' before a diagram", pos_);
            }
        }
        expect('[');
        std::vector<unsigned> parts;
        skip_ws();
        if (peek() != ']') {
            for (;;) {
                std::size_t last = 0;
                unsigned v = small_int(last, "part");
                if (v == 0) fail("part must be >= 1", last);
                parts.push_back(v);
                if (!eat(',')) break;
            }
        }
        expect(']');
        (void)start;
        out.add_term(Composition(std::move(parts)), c);
    }
};

} // namespace

DiagramPoly parse_diagram(std::string_view src) { return Parser(src, LabelMode::Compact).diagram(); }
CoeffPoly parse_coeff(std::string_view src, LabelMode mode) { return Parser(src, mode).coeff(); }
LPoly parse_lpoly(std::string_view src, LabelMode mode) { return Parser(src, mode).lpoly(); }
DiffOp parse_diffop(std::string_view src, LabelMode mode) { return Parser(src, mode).diffop(); }

// ---------------------------------------------------------------- text

LabelMode label_mode_for(Label max) { return max >= 10 ? LabelMode::Explicit : LabelMode::Compact; }

Label max_label(const LPoly& p) {
    Label m = 0;
    for (const auto& [mono, c] : p.terms())
        for (const auto& f : mono.factors()) m = std::max(m, f.max_label());
    return m;
}

Label max_label(const DiffOp& a) {
    Label m = 0;
    for (const auto& [d, f] : a.terms()) {
        for (auto l : d) m = std::max(m, l);
        m = std::max(m, max_label(f));
    }
    return m;
}

namespace {

const char* const kExplicitHeader = "# labels: explicit\n";

template <class Range>
std::string join_labels(const Range& r, LabelMode mode) {
    std::string s;
    bool first = true;
    for (auto l : r) {
        if (!first && mode == LabelMode::Explicit) s += ',';
        s += std::to_string(l);
        first = false;
    }
    return s;
}

std::string symbol_text(const CoeffSymbol& s, LabelMode mode) {
    switch (s.kind()) {
    case SymbolKind::A: {
        std::string t = "a[" + join_labels(s.base(), mode);
        if (!s.deriv().empty()) t += (mode == LabelMode::Compact ? "," : "|") + join_labels(s.deriv(), mode);
        return t + "]";
    }
    case SymbolKind::B:
        return "b[" + join_labels(s.deriv(), mode) + "]";
    case SymbolKind::Theta:
        return "th[" + join_labels(s.deriv(), mode) + "]";
    }
    return {};
}

template <class Render>
std::string monomial_body(const CoeffMonomial& m, Render render) {
    std::string s;
    const auto& f = m.factors();
    for (std::size_t i = 0; i < f.size();) {
        std::size_t k = i;
        while (k < f.size() && f[k] == f[i]) ++k;
        s += render(f[i], k - i);
        i = k;
    }
    return s;
}

std::string monomial_text(const CoeffMonomial& m, LabelMode mode) {
    return monomial_body(m, [&](const CoeffSymbol& s, std::size_t k) {
        return symbol_text(s, mode) + (k > 1 ? "^" + std::to_string(k) : "");
    });
}

struct TextTerm {
    Scalar coeff;
    std::string body;
};

std::string text_sum(const std::vector<TextTerm>& terms, bool always_coeff) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [c, body] = terms[i];
        if (i == 0)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        const Scalar a = abs(c);
        if (body.empty())
            s += to_string(a);
        else if (always_coeff || a != 1)
            s += to_string(a) + "*" + body;
        else
            s += body;
    }
    return s;
}

std::vector<TextTerm> coeff_terms(const CoeffPoly& p, LabelMode mode) {
    std::vector<TextTerm> t;
    for (const auto& [m, c] : p.terms()) t.push_back({c, monomial_text(m, mode)});
    return t;
}

std::string with_header(std::string body, LabelMode mode) {
    return mode == LabelMode::Explicit ? kExplicitHeader + body : body;
}

} // namespace

std::string to_text(const DiagramPoly& d) {
    std::vector<TextTerm> t;
    for (const auto& [c, v] : d.terms()) t.push_back({v, to_string(c)});
    // the unit diagram needs its brackets even when printed with coefficient
    return text_sum(t, true);
}

std::string to_text(const CoeffPoly& p, LabelMode mode) { return text_sum(coeff_terms(p, mode), false); }

std::string to_text(const CoeffPoly& p) {
    const LabelMode mode = label_mode_for(max_label(p));
    return with_header(to_text(p, mode), mode);
}

std::string to_text(const LPoly& p, LabelMode mode) {
    std::vector<TextTerm> t;
    for (const auto& [m, c] : p.terms()) {
        std::string body;
        for (const auto& f : m.factors()) body += "L[" + join_labels(f, mode) + "]";
        t.push_back({c, body});
    }
    return text_sum(t, true);
}

std::string to_text(const LPoly& p) {
    const LabelMode mode = label_mode_for(max_label(p));
    return with_header(to_text(p, mode), mode);
}

std::string to_text(const DiffOp& a, LabelMode mode) {
    std::vector<TextTerm> t;
    for (const auto& [d, f] : a.terms()) {
        if (d.empty()) {
            auto zero = coeff_terms(f, mode);
            t.insert(t.end(), zero.begin(), zero.end());
            continue;
        }
        const std::string partial = "d[" + join_labels(d, mode) + "]";
        if (f.size() == 1) {
            const auto& [m, c] = *f.terms().begin();
            t.push_back({c, m.is_one() ? partial : monomial_text(m, mode) + "*" + partial});
        } else {
            t.push_back({1, "(" + to_text(f, mode) + ")*" + partial});
        }
    }
    return text_sum(t, false);
}

std::string to_text(const DiffOp& a) {
    const LabelMode mode = label_mode_for(max_label(a));
    return with_header(to_text(a, mode), mode);
}

// ---------------------------------------------------------------- LaTeX

namespace {

template <class Range>
std::string latex_labels(const Range& r, bool wide) {
    std::string s;
    bool first = true;
    for (auto l : r) {
        if (!first && wide) s += "\\,";
        s += std::to_string(l);
        first = false;
    }
    return s;
}

std::string latex_number(const Scalar& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    const std::string p = a.get_num().get_str(), q = a.get_den().get_str();
    return "\\frac{" + p + "}{" + q + "}";
}

std::string symbol_latex(const CoeffSymbol& s, bool wide) {
    switch (s.kind()) {
    case SymbolKind::A: {
        std::string t = "a_{" + latex_labels(s.base(), wide);
        if (!s.deriv().empty()) t += "," + latex_labels(s.deriv(), wide);
        return t + "}";
    }
    case SymbolKind::B:
        return "b_{" + latex_labels(s.deriv(), wide) + "}";
    case SymbolKind::Theta:
        return s.deriv().empty() ? "\\theta" : "\\theta_{," + latex_labels(s.deriv(), wide) + "}";
    }
    return {};
}

std::string monomial_latex(const CoeffMonomial& m, bool wide) {
    return monomial_body(m, [&](const CoeffSymbol& s, std::size_t k) {
        return symbol_latex(s, wide) + (k > 1 ? "^{" + std::to_string(k) + "}" : "");
    });
}

// Consecutive terms sharing a coefficient other than ±1 are factored:
// -\frac{1}{2}(a_{1,2}+a_{2,1}).
std::string latex_sum(const std::vector<TextTerm>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size();) {
        const Scalar c = terms[i].coeff;
        const Scalar a = abs(c);
        std::size_t k = i + 1;
        if (a != 1 && !terms[i].body.empty())
            while (k < terms.size() && terms[k].coeff == c && !terms[k].body.empty()) ++k;
        if (c < 0)
            s += "-";
        else if (i > 0)
            s += "+";
        if (k - i > 1) {
            s += latex_number(a) + "(";
            for (std::size_t j = i; j < k; ++j) s += (j > i ? "+" : "") + terms[j].body;
            s += ")";
        } else if (terms[i].body.empty()) {
            s += latex_number(a);
        } else {
            s += (a == 1 ? "" : latex_number(a)) + terms[i].body;
        }
        i = k;
    }
    return s;
}

bool wide_labels(Label max) { return max >= 10; }

std::vector<TextTerm> coeff_latex_terms(const CoeffPoly& p, bool wide) {
    std::vector<TextTerm> t;
    for (const auto& [m, c] : p.terms()) t.push_back({c, monomial_latex(m, wide)});
    return t;
}

} // namespace

std::string to_latex(const DiagramPoly& d) {
    std::vector<TextTerm> t;
    for (const auto& [c, v] : d.terms()) {
        std::string body;
        for (unsigned part : c.parts()) {
            body += "L_{";
            for (unsigned i = 0; i < part; ++i) body += "\\square";
            body += "}";
        }
        t.push_back({v, body});
    }
    return latex_sum(t);
}

std::string to_latex(const CoeffPoly& p) { return latex_sum(coeff_latex_terms(p, wide_labels(max_label(p)))); }

std::string to_latex(const LPoly& p) {
    const bool wide = wide_labels(max_label(p));
    std::vector<TextTerm> t;
    for (const auto& [m, c] : p.terms()) {
        std::string body;
        for (const auto& f : m.factors()) body += "L_{" + latex_labels(f, wide) + "}";
        t.push_back({c, body});
    }
    return latex_sum(t);
}

std::string to_latex(const DiffOp& a) {
    const bool wide = wide_labels(max_label(a));
    std::vector<TextTerm> t;
    for (const auto& [d, f] : a.terms()) {
        if (d.empty()) {
            auto zero = coeff_latex_terms(f, wide);
            t.insert(t.end(), zero.begin(), zero.end());
            continue;
        }
        const std::string partial = "\\partial_{" + latex_labels(d, wide) + "}";
        if (f.size() == 1) {
            const auto& [m, c] = *f.terms().begin();
            t.push_back({c, (m.is_one() ? "" : monomial_latex(m, wide)) + partial});
        } else {
            t.push_back({1, "\\left(" + to_latex(f) + "\\right)" + partial});
        }
    }
    return latex_sum(t);
}

// ---------------------------------------------------------------- invariants

namespace {

std::string verdict(const std::optional<bool>& v) {
    if (!v) return "skipped";
    return *v ? "yes" : "no";
}

} // namespace

std::string invariant_text(const Invariant& inv) {
    const LabelMode mode = label_mode_for(inv.indices.max_label());
    std::ostringstream out;
    if (mode == LabelMode::Explicit) out << kExplicitHeader;
    out << "I_" << inv.order << " on " << to_string(inv.indices) << "\n";
    out << "diagram: " << to_text(inv.diagram) << "\n";
    out << "L-form:  " << to_text(inv.l_form, mode) << "\n";
    out << "a-form:  " << to_text(inv.a_form, mode) << "\n";
    out << "gauge invariant: " << verdict(inv.verified) << "\n";
    out << "delta kernel: " << (inv.kernel_checked ? "yes" : "no") << "\n";
    return out.str();
}

std::string invariant_latex(const Invariant& inv) {
    std::ostringstream out;
    out << "&&" << to_latex(inv.diagram) << "\\\\\n";
    out << "I_{" << inv.order << "}&=&" << to_latex(inv.l_form) << "\\\\\n";
    out << "&=&" << to_latex(inv.a_form) << "\n";
    return out.str();
}

nlohmann::ordered_json invariant_record(const Invariant& inv) {
    nlohmann::ordered_json r;
    r["order"] = inv.order;
    r["indices"] = std::vector<Label>(inv.indices.begin(), inv.indices.end());
    r["diagram"] = to_text(inv.diagram);
    r["l_form"] = to_text(inv.l_form);
    r["a_form"] = to_text(inv.a_form);
    r["verified"] = inv.verified ? nlohmann::ordered_json(*inv.verified) : nlohmann::ordered_json(nullptr);
    r["kernel_checked"] = inv.kernel_checked;
    return r;
}

std::string record_line(const Invariant& inv) { return invariant_record(inv).dump(); }

} // namespace laplace
