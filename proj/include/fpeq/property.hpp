#ifndef FPEQ_PROPERTY_HPP
#define FPEQ_PROPERTY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpeq/format.hpp"
#include "fpeq/trace.hpp"

namespace fpeq {

/**
 * Assertion language over signal traces.
 *
 * Concrete syntax (a combinational assertion subset):
 *
 *   file       = { prop_decl | directive } ;
 *   prop_decl  = "property" IDENT ";" expr "|->" expr ";" "endproperty" ;
 *   directive  = ("assert"|"assume"|"cover") "property" "(" IDENT ")" ";" ;
 *   expr       = term { "&&" term } ;
 *   term       = "(" expr ")" | atom "==" atom | "1" ;
 *   atom       = ("impl"|"spec") "." IDENT | INT_LITERAL ;
 *
 * Line comments run from "//" to end of line. Integer literals are decimal
 * or 0x-prefixed hex. Identifiers are [A-Za-z_][A-Za-z0-9_]*.
 */

/** 1-based source position of a token. */
struct SrcPos
{
  uint32_t line = 1;
  uint32_t col = 1;
};

enum class AtomKind : uint32_t
{
  signal_ref,
  literal,
};

/** Leaf of an equality: namespace-qualified signal or integer literal. */
struct Atom
{
  AtomKind kind = AtomKind::literal;
  Ns ns = Ns::impl;
  Sig sig = Sig::s1;
  uint64_t value = 0;
  SrcPos pos;
};

struct Expr;

enum class TermKind : uint32_t
{
  group,
  equality,
  const_true,
};

struct Term
{
  TermKind kind = TermKind::const_true;
  std::shared_ptr<const Expr> group;  // TermKind::group
  Atom lhs;                           // TermKind::equality
  Atom rhs;
  SrcPos pos;
};

/** Conjunction of terms. */
struct Expr
{
  std::vector<Term> terms;
  SrcPos pos;
};

/** Named single-implication property. */
struct Property
{
  std::string name;
  Expr antecedent;
  Expr consequent;
  SrcPos pos;
};

enum class DirectiveRole : uint32_t
{
  assert_prop,
  assume_prop,
  cover_prop,
};

const char* directive_role_name(DirectiveRole role);

/** Role attached to a declared property. */
struct Directive
{
  DirectiveRole role = DirectiveRole::assert_prop;
  std::string target;
  uint32_t target_index = 0;  ///< index into PropertyFile::properties
  SrcPos pos;
};

struct PropertyFile
{
  std::vector<Property> properties;
  std::vector<Directive> directives;

  const Property& target_of(const Directive& d) const
  {
    return properties[d.target_index];
  }
};

/**
 * Parse a property file. Checks signal names against the dictionary,
 * rejects duplicate property names, dangling directives and multiple
 * directives on one property. Throws ParseError with position on failure.
 */
PropertyFile parse_properties(std::string_view text);

/** Parse a single bare expression (e.g. a coverage watch). */
Expr parse_expression(std::string_view text);

/**
 * Width-check a parsed file against a format: an integer literal compared
 * with a signal must fit the signal's declared width. With `allow_spec`
 * false (implementation-only runs), any spec.* reference is rejected.
 * Throws ParseError on violation.
 */
void elaborate(const PropertyFile& file, const FloatFormat& fmt,
               bool allow_spec);
void elaborate_expr(const Expr& e, const FloatFormat& fmt, bool allow_spec);

/** Canonical pretty-printer; parse(print_file(f)) is structurally equal
 *  to f. */
std::string print_expr(const Expr& e);
std::string print_file(const PropertyFile& f);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const PropertyFile& a, const PropertyFile& b);

/** Single-trace implication outcome. */
enum class EvalResult : uint32_t
{
  pass,
  fail,
  vacuous,
};

const char* eval_result_name(EvalResult r);

/** Evaluate an expression; throws Error if it needs an absent namespace. */
bool eval_expr(const Expr& e, const SignalTrace& t);

/**
 * Implication trichotomy: vacuous iff the antecedent is false; pass iff
 * both sides hold; fail iff the antecedent holds and the consequent fails.
 */
EvalResult eval_property(const Property& p, const SignalTrace& t);

/** Collect every (namespace, signal) referenced by an expression. */
void expr_support(const Expr& e, std::vector<std::pair<Ns, Sig>>& out);

}  // namespace fpeq

#endif
