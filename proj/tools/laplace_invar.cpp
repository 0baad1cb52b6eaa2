// laplace-invar: command-line front end.
// Exit codes: 0 success, 1 a requested check failed, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "laplace/boxdiag.hpp"
#include "laplace/errors.hpp"
#include "laplace/invariants.hpp"
#include "laplace/render.hpp"

using namespace laplace;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    unsigned n = 0;
    std::string indices;
    std::string format = "text";
    std::string out;
    std::optional<unsigned> cap;
    std::string expr;
    std::string file;
    unsigned full_check = 4;
};

unsigned default_cap() {
    if (const char* env = std::getenv("LAPLACE_INVAR_CAP")) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(env, &used);
            if (used == std::string(env).size()) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("LAPLACE_INVAR_CAP is not a number: ") + env);
    }
    return kDefaultDegreeCap;
}

void check_order(const Options& o, unsigned min) {
    const unsigned cap = o.cap.value_or(default_cap());
    if (cap > kMaxDegree) throw UsageError("cap " + std::to_string(cap) + " exceeds the hard limit " + std::to_string(kMaxDegree));
    if (o.n < min) throw UsageError("order must be at least " + std::to_string(min));
    if (o.n > cap) throw UsageError("order " + std::to_string(o.n) + " exceeds the cap " + std::to_string(cap) + " (use --cap)");
}

IndexSet parse_indices(const std::string& text, unsigned n) {
    if (text.empty()) return IndexSet::range(n);
    std::vector<Label> labels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v == 0) throw UsageError("bad index '" + item + "' in --indices");
        labels.push_back(static_cast<Label>(v));
    }
    IndexSet j;
    try {
        j = IndexSet::from_labels(labels);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--indices: ") + e.what());
    }
    if (j.size() != n) throw UsageError("--indices must list exactly " + std::to_string(n) + " labels");
    return j;
}

std::string input_text(const Options& o) {
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw UsageError("cannot read " + o.file);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (o.expr.empty()) throw UsageError("an expression or --file is required");
    return o.expr;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void check_format(const Options& o) {
    if (o.format != "text" && o.format != "latex" && o.format != "records")
        throw UsageError("--format must be text, latex or records");
}

// Diagrams start with '[' or "c*[" and never contain symbol letters.
// Comment and header lines are ignored; a diagram has brackets and no letters.
std::string strip_comments(const std::string& text) {
    std::istringstream in(text);
    std::string line, body;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line[first] == '#') continue;
        body += line + '\n';
    }
    return body;
}

bool looks_like_diagram(const std::string& text) {
    const std::string body = strip_comments(text);
    for (char c : body)
        if (std::isalpha(static_cast<unsigned char>(c))) return false;
    return body.find('[') != std::string::npos || body.find_first_not_of(" \t\r\n0") == std::string::npos;
}

bool looks_like_lpoly(const std::string& text) { return text.find("L[") != std::string::npos; }
bool looks_like_diffop(const std::string& text) { return text.find("d[") != std::string::npos; }

int cmd_gen(const Options& o) {
    check_order(o, 2);
    check_format(o);
    const IndexSet j = parse_indices(o.indices, o.n);
    Invariant inv = generate(o.n, j, Execution::Parallel);
    inv.kernel_checked = delta(inv.diagram).is_zero();
    inv.verified = verify_invariance(inv, Execution::Parallel);
    Output out(o.out);
    if (o.format == "records")
        out.stream() << record_line(inv) << "\n";
    else if (o.format == "latex")
        out.stream() << invariant_latex(inv);
    else
        out.stream() << invariant_text(inv);
    return *inv.verified && inv.kernel_checked ? kOk : kCheckFailed;
}

int cmd_catalog(const Options& o) {
    check_order(o, 2);
    check_format(o);
    auto entries = catalog(o.n, o.full_check, Execution::Parallel);
    Output out(o.out);
    bool ok = true;
    for (const auto& inv : entries) {
        ok = ok && inv.kernel_checked && inv.verified.value_or(true);
        if (o.format == "text")
            out.stream() << invariant_text(inv) << "\n";
        else if (o.format == "latex")
            out.stream() << invariant_latex(inv) << "\n";
        else
            out.stream() << record_line(inv) << "\n";
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_kernel(const Options& o) {
    check_order(o, 2);
    check_format(o);
    auto basis = kernel_basis(o.n, Execution::Parallel);
    Output out(o.out);
    for (const auto& d : basis) {
        if (o.format == "latex")
            out.stream() << to_latex(d) << "\n";
        else if (o.format == "records")
            out.stream() << nlohmann::ordered_json{{"degree", o.n}, {"vector", to_text(d)}}.dump() << "\n";
        else
            out.stream() << to_text(d) << "\n";
    }
    return kOk;
}

int cmd_delta(const Options& o) {
    check_format(o);
    const DiagramPoly d = parse_diagram(input_text(o));
    if (auto deg = d.homogeneous_degree(); deg && *deg > kMaxDegree) throw UsageError("diagram degree exceeds the hard limit");
    const DiagramPoly r = delta(d);
    Output out(o.out);
    out.stream() << (o.format == "latex" ? to_latex(r) : to_text(r)) << "\n";
    return kOk;
}

int cmd_verify(const Options& o) {
    const std::string text = input_text(o);
    Output out(o.out);
    if (looks_like_diagram(text)) {
        const DiagramPoly r = delta(parse_diagram(text));
        if (r.is_zero()) {
            out.stream() << "in kernel of delta\n";
            return kOk;
        }
        out.stream() << "not in kernel of delta; delta = " << to_text(r) << "\n";
        return kCheckFailed;
    }
    const CoeffPoly p = parse_coeff(text);
    if (p.contains(SymbolKind::B) || p.contains(SymbolKind::Theta))
        throw UsageError("verify expects a polynomial in the a-symbols only");
    const CoeffPoly r = gauge_residual(p, Execution::Parallel);
    if (r.is_zero()) {
        out.stream() << "gauge invariant\n";
        return kOk;
    }
    out.stream() << "not gauge invariant; residual = " << to_text(r) << "\n";
    return kCheckFailed;
}

int cmd_count(const Options& o) {
    check_order(o, 2);
    Output out(o.out);
    out.stream() << "size count\n";
    for (unsigned s = 2; s <= o.n; ++s) out.stream() << s << " " << binomial(o.n, s) << "\n";
    out.stream() << "total " << catalog_size(o.n) << "\n";
    return kOk;
}

int cmd_expand(const Options& o) {
    check_format(o);
    const DiffOp a = expand(parse_lpoly(input_text(o)), Execution::Parallel);
    Output out(o.out);
    out.stream() << (o.format == "latex" ? to_latex(a) : to_text(a)) << "\n";
    return kOk;
}

int cmd_render(const Options& o) {
    check_format(o);
    const std::string text = input_text(o);
    const bool latex = o.format != "text";
    std::string s;
    if (looks_like_diagram(text)) {
        auto d = parse_diagram(text);
        s = latex ? to_latex(d) : to_text(d);
    } else if (looks_like_lpoly(text)) {
        auto p = parse_lpoly(text);
        s = latex ? to_latex(p) : to_text(p);
    } else if (looks_like_diffop(text)) {
        auto a = parse_diffop(text);
        s = latex ? to_latex(a) : to_text(a);
    } else {
        auto p = parse_coeff(text);
        s = latex ? to_latex(p) : to_text(p);
    }
    Output out(o.out);
    out.stream() << s << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace invariants of multidimensional hyperbolic operators"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "text, latex or records");
        sub->add_option("--out", o.out, "write to this file instead of stdout");
    };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--cap", o.cap, "degree cap (default 12, or LAPLACE_INVAR_CAP)");
    };

    auto* gen = app.add_subcommand("gen", "fundamental invariant of order n");
    gen->add_option("n", o.n, "order")->required();
    gen->add_option("--indices", o.indices, "comma-separated index labels (default 1..n)");
    add_common(gen);
    add_cap(gen);

    auto* cat = app.add_subcommand("catalog", "all fundamental invariants of an order-n operator");
    cat->add_option("n", o.n, "order")->required();
    cat->add_option("--full-check", o.full_check, "run the gauge check up to this order (default 4)");
    add_common(cat);
    add_cap(cat);

    auto* ker = app.add_subcommand("kernel", "basis of the kernel of delta in degree n");
    ker->add_option("n", o.n, "degree")->required();
    add_common(ker);
    add_cap(ker);

    auto* del = app.add_subcommand("delta", "apply delta to a diagram polynomial");
    del->add_option("expr", o.expr, "diagram polynomial");
    del->add_option("--file", o.file, "read the expression from a file");
    add_common(del);

    auto* ver = app.add_subcommand("verify", "check a diagram (delta kernel) or a-polynomial (gauge invariance)");
    ver->add_option("expr", o.expr, "expression");
    ver->add_option("--file", o.file, "read the expression from a file");
    ver->add_option("--out", o.out, "write to this file instead of stdout");

    auto* cnt = app.add_subcommand("count", "number of fundamental invariants by size");
    cnt->add_option("n", o.n, "order")->required();
    cnt->add_option("--out", o.out, "write to this file instead of stdout");
    add_cap(cnt);

    auto* exp = app.add_subcommand("expand", "expand an L-polynomial into a differential operator");
    exp->add_option("expr", o.expr, "L-polynomial");
    exp->add_option("--file", o.file, "read the expression from a file");
    add_common(exp);

    auto* ren = app.add_subcommand("render", "re-render an expression (default LaTeX)");
    ren->add_option("expr", o.expr, "expression");
    ren->add_option("--file", o.file, "read the expression from a file");
    add_common(ren);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (ren->parsed() && o.format == "text" && ren->count("--format") == 0) o.format = "latex";

    try {
        if (gen->parsed()) return cmd_gen(o);
        if (cat->parsed()) return cmd_catalog(o);
        if (ker->parsed()) return cmd_kernel(o);
        if (del->parsed()) return cmd_delta(o);
        if (ver->parsed()) return cmd_verify(o);
        if (cnt->parsed()) return cmd_count(o);
        if (exp->parsed()) return cmd_expand(o);
        if (ren->parsed()) return cmd_render(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
