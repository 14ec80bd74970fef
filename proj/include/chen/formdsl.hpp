#pragma once

#include "chen/errors.hpp"
#include "chen/forms.hpp"

#include <string>
#include <string_view>

namespace chen {

/// Parses a homogeneous form such as "x1*x2 dx1^dx3 - 2 dx2^dx3" in dimension n.
///
///   form   := term (('+'|'-') term)*
///   term   := coef basis? | basis
///   coef   := factor ('*' factor)*
///   factor := RATIONAL | VAR ('^' UINT)?
///   basis  := 'dx' UINT ('^' 'dx' UINT)*
///
/// Whitespace between tokens is ignored. All terms must share one degree.
Form parse_form(std::string_view text, int n);

/// Canonical text of w; parse_form(format_form(w), w.dim()) == w.
std::string format_form(const Form& w);

}  // namespace chen
