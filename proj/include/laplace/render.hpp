#pragma once

// Text grammar, LaTeX output and JSON records.
//
// Grammar (whitespace and newlines are insignificant):
//   diagram  := '0' | dterm (('+'|'-') dterm)*
//   dterm    := [rational '*'] '[' [int (',' int)*] ']'
//   coeff    := '0' | cterm (('+'|'-') cterm)*
//   cterm    := rational | [rational ['*']] cfactor (['*'] cfactor)*
//   cfactor  := (symbol | '(' coeff ')') ['^' int]
//   symbol   := 'a[' J [',' D] ']' | 'b[' D ']' | 'th[' [D] ']'
//   lpoly    := '0' | lterm (('+'|'-') lterm)*
//   lterm    := rational | [rational ['*']] ('L[' J ']')+
//   diffop   := like coeff, with an optional trailing ['*'] 'd[' D ']' per term
// In the compact label regime every digit 1-9 is one label (a[12,3]); in the
// explicit regime labels are comma separated and '|' starts the derivative
// part of an a-symbol (a[10,11|12]). Leading lines "# labels: compact" or
// "# labels: explicit" select the regime; other leading '#' lines are comments.

#include <string>
#include <string_view>

#include "json.hpp"

#include "laplace/boxdiag.hpp"
#include "laplace/coeff.hpp"
#include "laplace/diffop.hpp"
#include "laplace/invariants.hpp"
#include "laplace/symmetrizer.hpp"

namespace laplace {

enum class LabelMode { Compact, Explicit };

DiagramPoly parse_diagram(std::string_view src);
CoeffPoly parse_coeff(std::string_view src, LabelMode mode = LabelMode::Compact);
LPoly parse_lpoly(std::string_view src, LabelMode mode = LabelMode::Compact);
DiffOp parse_diffop(std::string_view src, LabelMode mode = LabelMode::Compact);

/// Compact when every label is below 10, explicit otherwise.
LabelMode label_mode_for(Label max_label);

// Plain text. The single-argument forms pick the label regime from the
// largest label and prepend "# labels: explicit\n" when needed, so that
// parse(to_text(x)) == x always holds.
std::string to_text(const DiagramPoly& d);
std::string to_text(const CoeffPoly& p);
std::string to_text(const CoeffPoly& p, LabelMode mode);
std::string to_text(const LPoly& p);
std::string to_text(const LPoly& p, LabelMode mode);
std::string to_text(const DiffOp& a);
std::string to_text(const DiffOp& a, LabelMode mode);

std::string to_latex(const DiagramPoly& d);
std::string to_latex(const CoeffPoly& p);
std::string to_latex(const LPoly& p);
std::string to_latex(const DiffOp& a);

/// Multi-line human-readable report.
std::string invariant_text(const Invariant& inv);
std::string invariant_latex(const Invariant& inv);
/// {order, indices, diagram, l_form, a_form, verified, kernel_checked}
nlohmann::ordered_json invariant_record(const Invariant& inv);
/// Single-line JSON.
std::string record_line(const Invariant& inv);

Label max_label(const LPoly& p);
Label max_label(const DiffOp& a);

} // namespace laplace
