#ifndef MUSTAFIN_TEXT_FORMAT_HPP
#define MUSTAFIN_TEXT_FORMAT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "mustafin/polynomial.hpp"

namespace mustafin {

/// Parses the polynomial text grammar: variables of `ring`, integer or a/b
/// coefficients, `+ - * ^` and parentheses. Whitespace is ignored.
/// Throws ParseError with the offending position.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Same as Polynomial::to_string.
std::string format_polynomial(const Polynomial& p);

std::vector<std::string> format_polynomials(const std::vector<Polynomial>& ps);

/// True for names accepted by the grammar: t, x<i>_<j>, x<k>, u<k>, y<k>,
/// e<k>, w<k>.
bool is_grammar_variable(std::string_view name);

}  // namespace mustafin

#endif  // MUSTAFIN_TEXT_FORMAT_HPP
