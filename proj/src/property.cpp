#include "fpeq/property.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fpeq/error.hpp"

namespace fpeq {

namespace {

enum class TokKind
{
  ident,
  number,
  lparen,
  rparen,
  semi,
  dot,
  eq_eq,
  and_and,
  implies,  // |->
  end,
};

struct Token
{
  TokKind kind = TokKind::end;
  std::string text;
  uint64_t value = 0;
  SrcPos pos;
};

class Lexer
{
 public:
  explicit Lexer(std::string_view text) : d_text(text) {}

  Token next()
  {
    skip_ws_and_comments();
    Token t;
    t.pos = pos();
    if (d_at >= d_text.size())
    {
      t.kind = TokKind::end;
      return t;
    }
    char c = d_text[d_at];
    if (std::isalpha(uint8_t(c)) || c == '_')
    {
      size_t start = d_at;
      while (d_at < d_text.size()
             && (std::isalnum(uint8_t(d_text[d_at])) || d_text[d_at] == '_'))
      {
        advance();
      }
      t.kind = TokKind::ident;
      t.text = std::string(d_text.substr(start, d_at - start));
      return t;
    }
    if (std::isdigit(uint8_t(c)))
    {
      return lex_number(t);
    }
    switch (c)
    {
      case '(': advance(); t.kind = TokKind::lparen; return t;
      case ')': advance(); t.kind = TokKind::rparen; return t;
      case ';': advance(); t.kind = TokKind::semi; return t;
      case '.': advance(); t.kind = TokKind::dot; return t;
      case '=':
        advance();
        if (d_at >= d_text.size() || d_text[d_at] != '=')
        {
          throw ParseError(t.pos.line, t.pos.col, "expected '==' ('=' alone)");
        }
        advance();
        t.kind = TokKind::eq_eq;
        return t;
      case '&':
        advance();
        if (d_at >= d_text.size() || d_text[d_at] != '&')
        {
          throw ParseError(t.pos.line, t.pos.col, "expected '&&' ('&' alone)");
        }
        advance();
        t.kind = TokKind::and_and;
        return t;
      case '|':
        advance();
        if (d_at + 1 >= d_text.size() || d_text[d_at] != '-'
            || d_text[d_at + 1] != '>')
        {
          throw ParseError(t.pos.line, t.pos.col, "expected '|->'");
        }
        advance();
        advance();
        t.kind = TokKind::implies;
        return t;
      default:
        throw ParseError(t.pos.line, t.pos.col,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  SrcPos pos() const { return {d_line, d_col}; }

  void advance()
  {
    if (d_text[d_at] == '\n')
    {
      ++d_line;
      d_col = 1;
    }
    else
    {
      ++d_col;
    }
    ++d_at;
  }

  void skip_ws_and_comments()
  {
    while (d_at < d_text.size())
    {
      char c = d_text[d_at];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
      {
        advance();
      }
      else if (c == '/' && d_at + 1 < d_text.size() && d_text[d_at + 1] == '/')
      {
        while (d_at < d_text.size() && d_text[d_at] != '\n')
        {
          advance();
        }
      }
      else
      {
        break;
      }
    }
  }

  Token lex_number(Token t)
  {
    size_t start = d_at;
    uint32_t base = 10;
    if (d_text[d_at] == '0' && d_at + 1 < d_text.size()
        && (d_text[d_at + 1] == 'x' || d_text[d_at + 1] == 'X'))
    {
      advance();
      advance();
      base = 16;
      if (d_at >= d_text.size() || !std::isxdigit(uint8_t(d_text[d_at])))
      {
        throw ParseError(t.pos.line, t.pos.col, "hex literal needs digits");
      }
    }
    uint64_t v = 0;
    while (d_at < d_text.size())
    {
      char c = d_text[d_at];
      uint32_t digit;
      if (c >= '0' && c <= '9')
      {
        digit = uint32_t(c - '0');
      }
      else if (base == 16 && c >= 'a' && c <= 'f')
      {
        digit = uint32_t(c - 'a') + 10;
      }
      else if (base == 16 && c >= 'A' && c <= 'F')
      {
        digit = uint32_t(c - 'A') + 10;
      }
      else
      {
        break;
      }
      if (v > (UINT64_MAX - digit) / base)
      {
        throw ParseError(t.pos.line, t.pos.col, "integer literal too large");
      }
      v = v * base + digit;
      advance();
    }
    if (d_at < d_text.size()
        && (std::isalnum(uint8_t(d_text[d_at])) || d_text[d_at] == '_'))
    {
      throw ParseError(t.pos.line, t.pos.col, "malformed integer literal");
    }
    t.kind = TokKind::number;
    t.text = std::string(d_text.substr(start, d_at - start));
    t.value = v;
    return t;
  }

  std::string_view d_text;
  size_t d_at = 0;
  uint32_t d_line = 1;
  uint32_t d_col = 1;
};

bool is_keyword(const std::string& s)
{
  return s == "property" || s == "endproperty" || s == "assert"
         || s == "assume" || s == "cover";
}

class Parser
{
 public:
  explicit Parser(std::string_view text) : d_lex(text) { shift(); }

  PropertyFile parse_file()
  {
    PropertyFile f;
    while (d_tok.kind != TokKind::end)
    {
      if (d_tok.kind == TokKind::ident && d_tok.text == "property")
      {
        f.properties.push_back(parse_property(f));
      }
      else if (d_tok.kind == TokKind::ident
               && (d_tok.text == "assert" || d_tok.text == "assume"
                   || d_tok.text == "cover"))
      {
        f.directives.push_back(parse_directive());
      }
      else
      {
        fail("expected 'property', 'assert', 'assume' or 'cover'");
      }
    }
    resolve(f);
    return f;
  }

  Expr parse_bare_expr()
  {
    Expr e = parse_expr();
    if (d_tok.kind != TokKind::end)
    {
      fail("trailing input after expression");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const
  {
    throw ParseError(d_tok.pos.line, d_tok.pos.col, msg);
  }

  void shift() { d_tok = d_lex.next(); }

  void expect(TokKind kind, const char* what)
  {
    if (d_tok.kind != kind)
    {
      fail(std::string("expected ") + what);
    }
    shift();
  }

  std::string expect_ident(const char* what)
  {
    if (d_tok.kind != TokKind::ident || is_keyword(d_tok.text))
    {
      fail(std::string("expected ") + what);
    }
    std::string name = d_tok.text;
    shift();
    return name;
  }

  Property parse_property(const PropertyFile& f)
  {
    Property p;
    p.pos = d_tok.pos;
    shift();  // property
    SrcPos name_pos = d_tok.pos;
    p.name = expect_ident("property name");
    for (const Property& prev : f.properties)
    {
      if (prev.name == p.name)
      {
        throw ParseError(name_pos.line, name_pos.col,
                         "duplicate property name '" + p.name + "'");
      }
    }
    expect(TokKind::semi, "';'");
    p.antecedent = parse_expr();
    expect(TokKind::implies, "'|->'");
    p.consequent = parse_expr();
    expect(TokKind::semi, "';'");
    if (d_tok.kind != TokKind::ident || d_tok.text != "endproperty")
    {
      fail("expected 'endproperty'");
    }
    shift();
    return p;
  }

  Directive parse_directive()
  {
    Directive d;
    d.pos = d_tok.pos;
    d.role = d_tok.text == "assert"   ? DirectiveRole::assert_prop
             : d_tok.text == "assume" ? DirectiveRole::assume_prop
                                      : DirectiveRole::cover_prop;
    shift();
    if (d_tok.kind != TokKind::ident || d_tok.text != "property")
    {
      fail("expected 'property'");
    }
    shift();
    expect(TokKind::lparen, "'('");
    d.target = expect_ident("property name");
    expect(TokKind::rparen, "')'");
    expect(TokKind::semi, "';'");
    return d;
  }

  Expr parse_expr()
  {
    Expr e;
    e.pos = d_tok.pos;
    e.terms.push_back(parse_term());
    while (d_tok.kind == TokKind::and_and)
    {
      shift();
      e.terms.push_back(parse_term());
    }
    return e;
  }

  Term parse_term()
  {
    Term t;
    t.pos = d_tok.pos;
    if (d_tok.kind == TokKind::lparen)
    {
      shift();
      t.kind = TermKind::group;
      t.group = std::make_shared<Expr>(parse_expr());
      expect(TokKind::rparen, "')'");
      return t;
    }
    if (d_tok.kind == TokKind::number)
    {
      Atom lhs = parse_atom();
      if (d_tok.kind == TokKind::eq_eq)
      {
        shift();
        t.kind = TermKind::equality;
        t.lhs = lhs;
        t.rhs = parse_atom();
        return t;
      }
      if (lhs.value == 1)
      {
        t.kind = TermKind::const_true;
        return t;
      }
      fail("expected '==' (only the constant '1' stands alone)");
    }
    if (d_tok.kind == TokKind::ident)
    {
      t.kind = TermKind::equality;
      t.lhs = parse_atom();
      expect(TokKind::eq_eq, "'=='");
      t.rhs = parse_atom();
      return t;
    }
    fail("expected '(', signal reference or integer literal");
  }

  Atom parse_atom()
  {
    Atom a;
    a.pos = d_tok.pos;
    if (d_tok.kind == TokKind::number)
    {
      a.kind = AtomKind::literal;
      a.value = d_tok.value;
      shift();
      return a;
    }
    if (d_tok.kind != TokKind::ident
        || (d_tok.text != "impl" && d_tok.text != "spec"))
    {
      fail("expected 'impl' or 'spec' qualified signal, or integer literal");
    }
    a.kind = AtomKind::signal_ref;
    a.ns = d_tok.text == "impl" ? Ns::impl : Ns::spec;
    shift();
    expect(TokKind::dot, "'.'");
    if (d_tok.kind != TokKind::ident)
    {
      fail("expected signal name");
    }
    std::optional<Sig> sig = sig_by_name(d_tok.text);
    if (!sig)
    {
      fail("unknown signal '" + d_tok.text + "'");
    }
    a.sig = *sig;
    shift();
    return a;
  }

  void resolve(PropertyFile& f)
  {
    std::vector<bool> targeted(f.properties.size(), false);
    for (Directive& d : f.directives)
    {
      auto it = std::find_if(
          f.properties.begin(), f.properties.end(),
          [&d](const Property& p) { return p.name == d.target; });
      if (it == f.properties.end())
      {
        throw ParseError(d.pos.line, d.pos.col,
                         "directive targets undeclared property '" + d.target
                             + "'");
      }
      d.target_index = uint32_t(it - f.properties.begin());
      if (targeted[d.target_index])
      {
        throw ParseError(d.pos.line, d.pos.col,
                         "property '" + d.target
                             + "' already has a directive");
      }
      targeted[d.target_index] = true;
    }
  }

  Lexer d_lex;
  Token d_tok;
};

void support_of(const Expr& e, std::vector<std::pair<Ns, Sig>>& out);

void support_of_atom(const Atom& a, std::vector<std::pair<Ns, Sig>>& out)
{
  if (a.kind != AtomKind::signal_ref)
  {
    return;
  }
  std::pair<Ns, Sig> key{a.ns, a.sig};
  if (std::find(out.begin(), out.end(), key) == out.end())
  {
    out.push_back(key);
  }
}

void support_of(const Expr& e, std::vector<std::pair<Ns, Sig>>& out)
{
  for (const Term& t : e.terms)
  {
    switch (t.kind)
    {
      case TermKind::group: support_of(*t.group, out); break;
      case TermKind::equality:
        support_of_atom(t.lhs, out);
        support_of_atom(t.rhs, out);
        break;
      case TermKind::const_true: break;
    }
  }
}

void check_atom(const Atom& a, const Atom& other, const FloatFormat& fmt,
                bool allow_spec)
{
  if (a.kind == AtomKind::signal_ref)
  {
    if (!allow_spec && a.ns == Ns::spec)
    {
      throw ParseError(a.pos.line, a.pos.col,
                       std::string("signal 'spec.") + sig_name(a.sig)
                           + "' is unavailable without a reference model");
    }
    return;
  }
  if (other.kind != AtomKind::signal_ref)
  {
    return;  // literal == literal: nothing to width-check
  }
  uint32_t width = sig_width(other.sig, fmt);
  if (width < 64 && (a.value >> width) != 0)
  {
    throw ParseError(a.pos.line, a.pos.col,
                     "literal " + std::to_string(a.value) + " exceeds the "
                         + std::to_string(width) + "-bit width of '"
                         + ns_name(other.ns) + "." + sig_name(other.sig)
                         + "'");
  }
}

uint64_t atom_value(const Atom& a, const SignalTrace& t)
{
  if (a.kind == AtomKind::literal)
  {
    return a.value;
  }
  if (a.ns == Ns::spec && !t.has_spec)
  {
    throw Error(std::string("trace has no value for 'spec.")
                + sig_name(a.sig) + "'");
  }
  return t.get(a.ns, a.sig);
}

void print_atom(std::ostringstream& os, const Atom& a)
{
  if (a.kind == AtomKind::literal)
  {
    os << a.value;
  }
  else
  {
    os << ns_name(a.ns) << "." << sig_name(a.sig);
  }
}

void print_expr_to(std::ostringstream& os, const Expr& e)
{
  bool first = true;
  for (const Term& t : e.terms)
  {
    if (!first)
    {
      os << " && ";
    }
    first = false;
    switch (t.kind)
    {
      case TermKind::group:
        os << "(";
        print_expr_to(os, *t.group);
        os << ")";
        break;
      case TermKind::equality:
        print_atom(os, t.lhs);
        os << " == ";
        print_atom(os, t.rhs);
        break;
      case TermKind::const_true: os << "1"; break;
    }
  }
}

bool atoms_equal(const Atom& a, const Atom& b)
{
  if (a.kind != b.kind)
  {
    return false;
  }
  if (a.kind == AtomKind::literal)
  {
    return a.value == b.value;
  }
  return a.ns == b.ns && a.sig == b.sig;
}

}  // namespace

const char* directive_role_name(DirectiveRole role)
{
  switch (role)
  {
    case DirectiveRole::assert_prop: return "assert";
    case DirectiveRole::assume_prop: return "assume";
    case DirectiveRole::cover_prop: return "cover";
  }
  return "?";
}

PropertyFile parse_properties(std::string_view text)
{
  return Parser(text).parse_file();
}

Expr parse_expression(std::string_view text)
{
  return Parser(text).parse_bare_expr();
}

void elaborate_expr(const Expr& e, const FloatFormat& fmt, bool allow_spec)
{
  for (const Term& t : e.terms)
  {
    switch (t.kind)
    {
      case TermKind::group: elaborate_expr(*t.group, fmt, allow_spec); break;
      case TermKind::equality:
        check_atom(t.lhs, t.rhs, fmt, allow_spec);
        check_atom(t.rhs, t.lhs, fmt, allow_spec);
        break;
      case TermKind::const_true: break;
    }
  }
}

void elaborate(const PropertyFile& file, const FloatFormat& fmt,
               bool allow_spec)
{
  for (const Property& p : file.properties)
  {
    elaborate_expr(p.antecedent, fmt, allow_spec);
    elaborate_expr(p.consequent, fmt, allow_spec);
  }
}

std::string print_expr(const Expr& e)
{
  std::ostringstream os;
  print_expr_to(os, e);
  return os.str();
}

std::string print_file(const PropertyFile& f)
{
  std::ostringstream os;
  for (const Property& p : f.properties)
  {
    os << "property " << p.name << ";\n";
    os << "  " << print_expr(p.antecedent) << "\n";
    os << "  |-> " << print_expr(p.consequent) << ";\n";
    os << "endproperty\n\n";
  }
  for (const Directive& d : f.directives)
  {
    os << directive_role_name(d.role) << " property(" << d.target << ");\n";
  }
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b)
{
  if (a.terms.size() != b.terms.size())
  {
    return false;
  }
  for (size_t i = 0; i < a.terms.size(); ++i)
  {
    const Term& x = a.terms[i];
    const Term& y = b.terms[i];
    if (x.kind != y.kind)
    {
      return false;
    }
    switch (x.kind)
    {
      case TermKind::group:
        if (!structurally_equal(*x.group, *y.group))
        {
          return false;
        }
        break;
      case TermKind::equality:
        if (!atoms_equal(x.lhs, y.lhs) || !atoms_equal(x.rhs, y.rhs))
        {
          return false;
        }
        break;
      case TermKind::const_true: break;
    }
  }
  return true;
}

bool structurally_equal(const PropertyFile& a, const PropertyFile& b)
{
  if (a.properties.size() != b.properties.size()
      || a.directives.size() != b.directives.size())
  {
    return false;
  }
  for (size_t i = 0; i < a.properties.size(); ++i)
  {
    const Property& x = a.properties[i];
    const Property& y = b.properties[i];
    if (x.name != y.name || !structurally_equal(x.antecedent, y.antecedent)
        || !structurally_equal(x.consequent, y.consequent))
    {
      return false;
    }
  }
  for (size_t i = 0; i < a.directives.size(); ++i)
  {
    if (a.directives[i].role != b.directives[i].role
        || a.directives[i].target != b.directives[i].target)
    {
      return false;
    }
  }
  return true;
}

const char* eval_result_name(EvalResult r)
{
  switch (r)
  {
    case EvalResult::pass: return "pass";
    case EvalResult::fail: return "fail";
    case EvalResult::vacuous: return "vacuous";
  }
  return "?";
}

bool eval_expr(const Expr& e, const SignalTrace& t)
{
  for (const Term& term : e.terms)
  {
    switch (term.kind)
    {
      case TermKind::group:
        if (!eval_expr(*term.group, t))
        {
          return false;
        }
        break;
      case TermKind::equality:
        if (atom_value(term.lhs, t) != atom_value(term.rhs, t))
        {
          return false;
        }
        break;
      case TermKind::const_true: break;
    }
  }
  return true;
}

EvalResult eval_property(const Property& p, const SignalTrace& t)
{
  if (!eval_expr(p.antecedent, t))
  {
    return EvalResult::vacuous;
  }
  return eval_expr(p.consequent, t) ? EvalResult::pass : EvalResult::fail;
}

void expr_support(const Expr& e, std::vector<std::pair<Ns, Sig>>& out)
{
  support_of(e, out);
}

}  // namespace fpeq
