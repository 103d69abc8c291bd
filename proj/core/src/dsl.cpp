#include "frobcount/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "frobcount/error.hpp"

namespace frobcount {

namespace {

constexpr unsigned kMaxPowerExponent = 256;

enum class Tok { Int, Name, Plus, Minus, Star, Caret, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of line";
    case Tok::Int:
    case Tok::Name: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// "s" or "s<digits>" names σ-application.
std::optional<unsigned> sigma_depth_of(const std::string& name) {
  if (name.empty() || name[0] != 's') return std::nullopt;
  if (name.size() == 1) return 1;
  if (!std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  if (name.size() > 4) return kMaxSigmaDegree + 1;
  return static_cast<unsigned>(std::stoul(name.substr(1)));
}

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      if (i >= text_.size()) break;
      const char c = text_[i];
      const std::size_t col = offset_ + i + 1;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        out.push_back({Tok::Int, std::string(text_.substr(i, j - i)), col});
        i = j;
        continue;
      }
      if (is_name_start(c)) {
        std::size_t j = i;
        while (j < text_.size() && is_name_char(text_[j])) ++j;
        out.push_back({Tok::Name, std::string(text_.substr(i, j - i)), col});
        i = j;
        continue;
      }
      Tok kind;
      switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Equals; break;
        default:
          throw ParseError(ErrorKind::Syntax, line_, col,
                           std::string("unexpected character '") + c + "'");
      }
      out.push_back({kind, std::string(1, c), col});
      ++i;
    }
    out.push_back({Tok::End, "", offset_ + text_.size() + 1});
    return out;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
};

// Recursive-descent parser over one line's tokens.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' INT]
//   primary := INT | NAME | '(' expr ')' | SIGMA '(' expr ')'
//   SIGMA   := 's' | 's' DIGITS
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t line, const std::vector<std::string>& symbols,
         bool allow_sigma)
      : tokens_(std::move(tokens)), line_(line), symbols_(symbols), allow_sigma_(allow_sigma) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& what, std::vector<std::string> expected) const {
    throw ParseError(ErrorKind::Syntax, line_, t.column, what + ", found " + describe(t),
                     std::move(expected));
  }

  const Token& expect(Tok k, const std::string& label) {
    if (!at(k)) fail(peek(), "unexpected token", {label});
    return next();
  }

  std::uint64_t expect_uint(const std::string& label) {
    const Token& t = expect(Tok::Int, label);
    if (t.text.size() > 18) {
      throw ParseError(ErrorKind::Syntax, line_, t.column, "integer literal too large");
    }
    return std::stoull(t.text);
  }

  DiffPoly expr() {
    bool negate = false;
    if (at(Tok::Plus) || at(Tok::Minus)) negate = next().kind == Tok::Minus;
    DiffPoly acc = term();
    if (negate) acc = -acc;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = next().kind == Tok::Minus;
      DiffPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (at(Tok::Star)) {
      next();
      acc = acc * factor();
    }
    return acc;
  }

  DiffPoly factor() {
    DiffPoly base = primary();
    if (at(Tok::Caret)) {
      next();
      const Token& t = peek();
      const std::uint64_t e = expect_uint("positive integer exponent");
      if (e == 0 || e > kMaxPowerExponent) {
        throw ParseError(ErrorKind::Syntax, line_, t.column,
                         "exponent must lie in [1, " + std::to_string(kMaxPowerExponent) + "]");
      }
      base = base.pow(static_cast<unsigned>(e));
      check_depth(base, t);
    }
    return base;
  }

  DiffPoly primary() {
    const Token& t = peek();
    const Domain q = Domain::rationals();
    const std::size_t arity = symbols_.size();
    if (t.kind == Tok::Int) {
      next();
      return DiffPoly::from_int(q, arity, BigInt(t.text));
    }
    if (t.kind == Tok::LParen) {
      next();
      DiffPoly inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Name) {
      const Token name = next();
      if (auto depth = sigma_depth_of(name.text); depth && allow_sigma_) {
        if (!at(Tok::LParen)) fail(peek(), "'" + name.text + "' applies the difference operator", {"'('"});
        if (*depth == 0 || *depth > kMaxSigmaDegree) {
          throw ParseError(ErrorKind::SigmaDepthExceeded, line_, name.column,
                           "sigma power must lie in [1, " + std::to_string(kMaxSigmaDegree) + "]");
        }
        next();
        DiffPoly inner = expr();
        expect(Tok::RParen, "')'");
        DiffPoly shifted = inner.sigma_shift(*depth);
        check_depth(shifted, name);
        return shifted;
      }
      const auto it = std::find(symbols_.begin(), symbols_.end(), name.text);
      if (it == symbols_.end()) {
        throw ParseError(ErrorKind::UndeclaredSymbol, line_, name.column,
                         "undeclared symbol '" + name.text + "'");
      }
      return DiffPoly::variable(q, arity, static_cast<std::size_t>(it - symbols_.begin()));
    }
    std::vector<std::string> expected{"integer", "name", "'('"};
    if (allow_sigma_) expected.push_back("s(...)");
    fail(t, "expected an operand", std::move(expected));
  }

  void check_depth(const DiffPoly& p, const Token& at_token) const {
    if (p.sigma_order() > kMaxSigmaDegree) {
      throw ParseError(ErrorKind::SigmaDepthExceeded, line_, at_token.column,
                       "sigma depth exceeds " + std::to_string(kMaxSigmaDegree));
    }
  }

  DiffPoly whole_expression() {
    DiffPoly p = expr();
    if (!at(Tok::End)) fail(peek(), "unexpected token after expression", {"'+'", "'-'", "'*'", "end of line"});
    return p;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> tokens_;
  std::size_t line_;
  const std::vector<std::string>& symbols_;
  bool allow_sigma_;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> kNames{"vars", "params", "field", "schedule", "dim", "system"};
  return kNames;
}

struct SectionHeader {
  std::string name;
  std::size_t name_column = 0;
  std::size_t body_offset = 0;  // index in the line where the body starts
};

// A header is `word:` at the start of the line.
std::optional<SectionHeader> header_of(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  const std::size_t start = i;
  if (i >= line.size() || !is_name_start(line[i])) return std::nullopt;
  while (i < line.size() && is_name_char(line[i])) ++i;
  std::size_t j = i;
  while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  return SectionHeader{std::string(line.substr(start, i - start)), start + 1, j + 1};
}

bool is_reserved(const std::string& name) { return sigma_depth_of(name).has_value(); }

class FileParser {
 public:
  explicit FileParser(std::string_view text) : text_(text) {}

  SystemFile run() {
    std::vector<std::pair<std::size_t, std::string_view>> system_lines;
    std::set<std::string> seen;
    bool in_system = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(start, end - start);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++line_no;
      start = end + 1;
      const std::string_view line = strip_comment(raw);
      if (is_blank(line)) {
        if (end == text_.size()) break;
        continue;
      }
      if (auto h = header_of(line)) {
        const auto& names = section_names();
        if (std::find(names.begin(), names.end(), h->name) == names.end()) {
          std::vector<std::string> expected;
          for (const auto& n : names) expected.push_back("'" + n + ":'");
          throw ParseError(ErrorKind::Syntax, line_no, h->name_column,
                           "unknown section '" + h->name + "'", expected);
        }
        if (!seen.insert(h->name).second) {
          throw ParseError(ErrorKind::Syntax, line_no, h->name_column,
                           "duplicate section '" + h->name + "'");
        }
        const std::string_view body = line.substr(h->body_offset);
        in_system = h->name == "system";
        if (in_system) {
          if (!is_blank(body)) system_lines.emplace_back(line_no, line);
          pending_system_offset_[line_no] = h->body_offset;
        } else {
          section(h->name, body, line_no, h->body_offset);
        }
      } else if (in_system) {
        system_lines.emplace_back(line_no, line);
      } else {
        std::size_t col = 1;
        while (col - 1 < line.size() && std::isspace(static_cast<unsigned char>(line[col - 1]))) ++col;
        std::vector<std::string> expected;
        for (const auto& n : section_names()) expected.push_back("'" + n + ":'");
        throw ParseError(ErrorKind::Syntax, line_no, col, "expected a section header", expected);
      }
      if (end == text_.size()) break;
    }

    const std::vector<std::string> symbols = file_.symbol_names();
    for (const auto& [ln, line] : system_lines) {
      std::size_t offset = 0;
      if (auto it = pending_system_offset_.find(ln); it != pending_system_offset_.end()) {
        offset = it->second;
      }
      Parser parser(Lexer(line.substr(offset), ln, offset).run(), ln, symbols, true);
      file_.system.push_back(parser.whole_expression());
    }
    return std::move(file_);
  }

 private:
  void section(const std::string& name, std::string_view body, std::size_t line, std::size_t offset) {
    std::vector<Token> tokens = Lexer(body, line, offset).run();
    if (name == "vars") {
      vars(tokens, line);
    } else if (name == "params") {
      params(tokens, line);
    } else if (name == "field") {
      field(tokens, line);
    } else if (name == "schedule") {
      schedule(tokens, line);
    } else if (name == "dim") {
      Parser p(std::move(tokens), line, no_symbols_, false);
      file_.dim = static_cast<unsigned>(p.expect_uint("integer dimension"));
      p.expect(Tok::End, "end of line");
    }
  }

  void declare(const Token& t, std::size_t line) {
    if (is_reserved(t.text)) {
      throw ParseError(ErrorKind::Syntax, line, t.column,
                       "'" + t.text + "' is reserved for the difference operator");
    }
    if (!declared_.insert(t.text).second) {
      throw ParseError(ErrorKind::Syntax, line, t.column, "symbol '" + t.text + "' declared twice");
    }
  }

  void vars(std::vector<Token> tokens, std::size_t line) {
    Parser p(std::move(tokens), line, no_symbols_, false);
    if (p.at(Tok::End)) return;
    while (true) {
      const Token& t = p.expect(Tok::Name, "variable name");
      declare(t, line);
      file_.vars.push_back(t.text);
      if (p.at(Tok::End)) return;
      p.expect(Tok::Comma, "','");
    }
  }

  void params(std::vector<Token> tokens, std::size_t line) {
    static const std::vector<std::string> kGenerator{"g"};
    Parser p(std::move(tokens), line, kGenerator, false);
    if (p.at(Tok::End)) return;
    while (true) {
      const Token& t = p.expect(Tok::Name, "parameter name");
      declare(t, line);
      Parameter param{t.text, std::nullopt};
      if (p.at(Tok::Equals)) {
        p.next();
        const DiffPoly value = p.expr();
        ParamValue v;
        for (const auto& [m, c] : value.terms()) {
          const std::uint64_t deg = m.exp(0).constant_part();
          if (v.g_coeffs.size() <= deg) v.g_coeffs.resize(deg + 1, 0);
          v.g_coeffs[deg] = boost::multiprecision::numerator(std::get<Rational>(c));
        }
        param.value = std::move(v);
      }
      file_.params.push_back(std::move(param));
      if (p.at(Tok::End)) return;
      if (!p.at(Tok::Comma)) p.fail(p.peek(), "unexpected token", {"','", "'='", "end of line"});
      p.next();
    }
  }

  void field(std::vector<Token> tokens, std::size_t line) {
    Parser p(std::move(tokens), line, no_symbols_, false);
    FieldSpec spec;
    bool has_p = false;
    bool has_t = false;
    std::set<std::string> keys;
    while (true) {
      const Token& key = p.expect(Tok::Name, "'p', 't', 'm' or 'seed'");
      if (key.text != "p" && key.text != "t" && key.text != "m" && key.text != "seed") {
        throw ParseError(ErrorKind::Syntax, line, key.column, "unknown field key '" + key.text + "'",
                         {"'p'", "'t'", "'m'", "'seed'"});
      }
      if (!keys.insert(key.text).second) {
        throw ParseError(ErrorKind::Syntax, line, key.column, "duplicate key '" + key.text + "'");
      }
      p.expect(Tok::Equals, "'='");
      const std::uint64_t v = p.expect_uint("integer");
      if (key.text == "p") {
        spec.p = v;
        has_p = true;
      } else if (key.text == "t") {
        spec.t = static_cast<unsigned>(v);
        has_t = true;
      } else if (key.text == "m") {
        spec.m = v;
      } else {
        spec.seed = v;
      }
      if (p.at(Tok::End)) break;
      p.expect(Tok::Comma, "','");
    }
    if (!has_p || !has_t) {
      throw ParseError(ErrorKind::Syntax, line, p.peek().column, "field needs both p and t",
                       {has_p ? "'t'" : "'p'"});
    }
    file_.field = spec;
  }

  void schedule(std::vector<Token> tokens, std::size_t line) {
    Parser p(std::move(tokens), line, no_symbols_, false);
    ScheduleSpec spec;
    const Token& key = p.expect(Tok::Name, "'p'");
    if (key.text != "p") throw ParseError(ErrorKind::Syntax, line, key.column, "schedule must start with p=", {"'p'"});
    p.expect(Tok::Equals, "'='");
    spec.p = p.expect_uint("integer");
    while (!p.at(Tok::End)) {
      p.expect(Tok::Comma, "','");
      p.expect(Tok::LParen, "'('");
      const Token& n_tok = p.peek();
      const auto n = static_cast<unsigned>(p.expect_uint("integer n"));
      p.expect(Tok::Comma, "','");
      const auto m = static_cast<unsigned>(p.expect_uint("integer m"));
      p.expect(Tok::RParen, "')'");
      if (n < 1 || m >= n) {
        throw ParseError(ErrorKind::Syntax, line, n_tok.column, "schedule pairs need 0 <= m < n");
      }
      spec.pairs.emplace_back(n, m);
    }
    file_.schedule = std::move(spec);
  }

  std::string_view text_;
  SystemFile file_;
  std::set<std::string> declared_;
  std::map<std::size_t, std::size_t> pending_system_offset_;
  const std::vector<std::string> no_symbols_;
};

}  // namespace

std::vector<std::string> SystemFile::symbol_names() const {
  std::vector<std::string> names = vars;
  for (const auto& p : params) names.push_back(p.name);
  return names;
}

DiffSystem SystemFile::to_system() const {
  DiffSystem sys;
  sys.arity = vars.size();
  sys.polys = system;
  sys.declared_trf_dim = dim;
  sys.params = params;
  return sys;
}

SystemFile parse_system(std::string_view text) { return FileParser(text).run(); }

DiffPoly parse_expression(std::string_view text, const std::vector<std::string>& symbols) {
  Parser parser(Lexer(text, 1, 0).run(), 1, symbols, true);
  return parser.whole_expression();
}

std::string render_system(const SystemFile& file) {
  std::ostringstream out;
  out << "vars:";
  for (std::size_t i = 0; i < file.vars.size(); ++i) out << (i == 0 ? " " : ", ") << file.vars[i];
  out << '\n';
  if (!file.params.empty()) {
    out << "params:";
    for (std::size_t i = 0; i < file.params.size(); ++i) {
      out << (i == 0 ? " " : ", ") << file.params[i].name;
      if (file.params[i].value) out << '=' << file.params[i].value->to_string();
    }
    out << '\n';
  }
  if (file.field) {
    out << "field: p=" << file.field->p << ",t=" << file.field->t << ",m=" << file.field->m;
    if (file.field->seed) out << ",seed=" << *file.field->seed;
    out << '\n';
  }
  if (file.schedule) {
    out << "schedule: p=" << file.schedule->p;
    for (const auto& [n, m] : file.schedule->pairs) out << ", (" << n << ',' << m << ')';
    out << '\n';
  }
  if (file.dim) out << "dim: " << *file.dim << '\n';
  out << "system:\n";
  const std::vector<std::string> names = file.symbol_names();
  for (const auto& poly : file.system) out << "  " << poly.to_string(names) << '\n';
  return out.str();
}

}  // namespace frobcount
