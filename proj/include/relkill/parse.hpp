#ifndef RELKILL_PARSE_HPP
#define RELKILL_PARSE_HPP

#include <string>
#include <string_view>

#include "relkill/ratfn.hpp"

namespace relkill {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Human-written expression plus the symbols it may mention. `allowed`
// restricts identifiers to a subset of the universe (empty = all of it);
// the result always lives over the full table.
struct ExprSource {
    std::string text;
    VarTablePtr vars;
    std::vector<std::size_t> allowed;
};

// Grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' nonneg-integer)?
//   atom  := rational-literal | identifier | '(' expr ')'
// No implicit multiplication. Decimal literals are converted exactly.
RatFn parse_ratfn(const ExprSource& src);
RatFn parse_ratfn(std::string_view text, const VarTablePtr& vars);

std::string format_poly(const Poly& p);
std::string format_ratfn(const RatFn& f);
std::string format_rat(const Rat& r);

// Single rational constant, e.g. "-3/4" or "0.25".
Rat parse_rat(std::string_view text);

}  // namespace relkill

#endif
