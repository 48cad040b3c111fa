#include "ontoquery/turtle.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ontoquery/error.hpp"

namespace ontoquery {

namespace {

enum class Tok {
  End,
  IriRef,      // <...>
  PrefixedName,
  BlankLabel,  // _:x
  String,
  Integer,
  Decimal,
  Double,
  True,
  False,
  A,
  PrefixDirective,  // @prefix or PREFIX
  Dot,
  Semicolon,
  Comma,
  LBracket,
  RBracket,
  DoubleCaret,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // IRI body, name, string value, number lexical
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_name_char(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '%' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = col_;
    if (pos_ >= src_.size()) return tok;

    const char c = src_[pos_];
    switch (c) {
      case '.':
        if (pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
          return number(tok);
        advance();
        tok.kind = Tok::Dot;
        return tok;
      case ';': advance(); tok.kind = Tok::Semicolon; return tok;
      case ',': advance(); tok.kind = Tok::Comma; return tok;
      case '[': advance(); tok.kind = Tok::LBracket; return tok;
      case ']': advance(); tok.kind = Tok::RBracket; return tok;
      case '(':
      case ')':
        fail(tok, "collections are not supported");
      case '^':
        if (peek(1) == '^') {
          advance();
          advance();
          tok.kind = Tok::DoubleCaret;
          return tok;
        }
        fail(tok, "unexpected '^'");
      case '<': return iri_ref(tok);
      case '"':
      case '\'': return string_literal(tok);
      case '@': return at_keyword(tok);
      case '_':
        if (peek(1) == ':') return blank_label(tok);
        break;
      case '+':
      case '-':
        return number(tok);
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(tok);
    return name(tok);
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(ErrorCode::SyntaxError, msg, at.line, at.column);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token iri_ref(Token tok) {
    advance();  // '<'
    std::string body;
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n') fail(tok, "unterminated IRI");
      const char c = peek();
      if (c == '>') break;
      body += c;
      advance();
    }
    advance();
    tok.kind = Tok::IriRef;
    tok.text = std::move(body);
    return tok;
  }

  Token string_literal(Token tok) {
    const char quote = peek();
    if (peek(1) == quote && peek(2) == quote) fail(tok, "long string literals are not supported");
    advance();
    std::string value;
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n') fail(tok, "unterminated string literal");
      char c = peek();
      if (c == quote) break;
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail(tok, "unterminated escape");
        c = peek();
        switch (c) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case 'b': value += '\b'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          default: fail(tok, std::string("unsupported escape '\\") + c + "'");
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    advance();
    tok.kind = Tok::String;
    tok.text = std::move(value);
    if (peek() == '@') fail(tok, "language tags are not supported");
    return tok;
  }

  Token at_keyword(Token tok) {
    advance();
    std::string word;
    while (std::isalpha(static_cast<unsigned char>(peek()))) {
      word += peek();
      advance();
    }
    if (word == "prefix") {
      tok.kind = Tok::PrefixDirective;
      return tok;
    }
    if (word == "base") fail(tok, "@base is not supported");
    fail(tok, "unknown directive '@" + word + "'");
  }

  Token blank_label(Token tok) {
    advance();
    advance();
    std::string label;
    while (pos_ < src_.size() && is_name_char(peek())) {
      label += peek();
      advance();
    }
    while (!label.empty() && label.back() == '.') {
      // Trailing dots terminate the statement, not the label.
      label.pop_back();
      --pos_;
      --col_;
    }
    if (label.empty()) fail(tok, "empty blank node label");
    tok.kind = Tok::BlankLabel;
    tok.text = std::move(label);
    return tok;
  }

  Token number(Token tok) {
    std::string lex;
    if (peek() == '+' || peek() == '-') {
      lex += peek();
      advance();
    }
    bool digits = false, dot = false, exp = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      lex += peek();
      advance();
      digits = true;
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      dot = true;
      lex += peek();
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        lex += peek();
        advance();
      }
      digits = true;
    }
    if (digits && (peek() == 'e' || peek() == 'E')) {
      exp = true;
      lex += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        lex += peek();
        advance();
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(tok, "malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        lex += peek();
        advance();
      }
    }
    if (!digits) fail(tok, "malformed number");
    tok.kind = exp ? Tok::Double : (dot ? Tok::Decimal : Tok::Integer);
    tok.text = std::move(lex);
    return tok;
  }

  Token name(Token tok) {
    std::string word;
    while (pos_ < src_.size() && (is_name_char(peek()) || peek() == ':')) {
      word += peek();
      advance();
    }
    while (!word.empty() && word.back() == '.') {
      word.pop_back();
      --pos_;
      --col_;
    }
    if (word.empty()) fail(tok, std::string("unexpected character '") + src_[pos_] + "'");
    if (word == "a") {
      tok.kind = Tok::A;
    } else if (word == "true") {
      tok.kind = Tok::True;
    } else if (word == "false") {
      tok.kind = Tok::False;
    } else if (word == "PREFIX" || word == "prefix") {
      tok.kind = Tok::PrefixDirective;
    } else if (word == "BASE" || word == "base") {
      fail(tok, "BASE is not supported");
    } else if (word.find(':') != std::string::npos) {
      tok.kind = Tok::PrefixedName;
      tok.text = std::move(word);
    } else {
      fail(tok, "unexpected token '" + word + "'");
    }
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, std::string source_name, Diagnostics* diags)
      : lex_(src), source_(std::move(source_name)), diags_(diags) {
    cur_ = lex_.next();
  }

  std::vector<Triple> parse() {
    while (cur_.kind != Tok::End) statement();
    return std::move(triples_);
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { lex_.fail(cur_, msg); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  void statement() {
    if (cur_.kind == Tok::PrefixDirective) {
      prefix_directive();
      return;
    }
    if (cur_.kind == Tok::LBracket) {
      Term subject = blank_property_list();
      if (cur_.kind != Tok::Dot) predicate_object_list(subject);
    } else {
      Term subject = subject_term();
      predicate_object_list(subject);
    }
    expect(Tok::Dot, "'.' at end of statement");
  }

  void prefix_directive() {
    shift();
    if (cur_.kind != Tok::PrefixedName || cur_.text.back() != ':' ||
        cur_.text.find(':') != cur_.text.size() - 1)
      fail("expected prefix name ending in ':'");
    std::string prefix = cur_.text.substr(0, cur_.text.size() - 1);
    shift();
    if (cur_.kind != Tok::IriRef) fail("expected IRI after prefix name");
    if (!is_valid_iri(cur_.text))
      throw ParseError(ErrorCode::MalformedIri, "malformed IRI <" + cur_.text + ">",
                       cur_.line, cur_.column);
    prefixes_[prefix] = cur_.text;
    shift();
    // "@prefix" requires the trailing dot; SPARQL-style PREFIX forbids it,
    // but accepting it optionally keeps hand-written files forgiving.
    if (cur_.kind == Tok::Dot) shift();
  }

  Iri resolve(const Token& tok) {
    if (tok.kind == Tok::IriRef) {
      if (!is_valid_iri(tok.text))
        throw ParseError(ErrorCode::MalformedIri, "malformed IRI <" + tok.text + ">", tok.line,
                         tok.column);
      return Iri(tok.text);
    }
    const auto colon = tok.text.find(':');
    const std::string prefix = tok.text.substr(0, colon);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end())
      throw ParseError(ErrorCode::UnresolvedPrefix, "unresolved prefix '" + prefix + ":'",
                       tok.line, tok.column);
    std::string full = it->second + tok.text.substr(colon + 1);
    if (!is_valid_iri(full))
      throw ParseError(ErrorCode::MalformedIri, "malformed IRI <" + full + ">", tok.line,
                       tok.column);
    return Iri(std::move(full));
  }

  BlankNode named_blank(const std::string& label) {
    auto it = blank_labels_.find(label);
    if (it != blank_labels_.end()) return it->second;
    BlankNode b = fresh_blank();
    blank_labels_.emplace(label, b);
    return b;
  }

  BlankNode fresh_blank() { return BlankNode{"b" + std::to_string(next_blank_++)}; }

  Term subject_term() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PrefixedName: {
        Term t = resolve(cur_);
        shift();
        return t;
      }
      case Tok::BlankLabel: {
        Term t = named_blank(cur_.text);
        shift();
        return t;
      }
      default:
        fail("expected subject");
    }
  }

  Iri verb() {
    if (cur_.kind == Tok::A) {
      shift();
      return vocab::rdf_type();
    }
    if (cur_.kind == Tok::IriRef || cur_.kind == Tok::PrefixedName) {
      Iri p = resolve(cur_);
      shift();
      return p;
    }
    fail("expected predicate");
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      Iri predicate = verb();
      object_list(subject, predicate);
      if (cur_.kind != Tok::Semicolon) return;
      while (cur_.kind == Tok::Semicolon) shift();
      if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBracket) return;
    }
  }

  void object_list(const Term& subject, const Iri& predicate) {
    while (true) {
      Term obj = object();
      triples_.push_back(Triple{subject, predicate, std::move(obj)});
      if (cur_.kind != Tok::Comma) return;
      shift();
    }
  }

  Term blank_property_list() {
    shift();  // '['
    BlankNode b = fresh_blank();
    if (cur_.kind != Tok::RBracket) predicate_object_list(b);
    expect(Tok::RBracket, "']'");
    return b;
  }

  Term object() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PrefixedName: {
        Term t = resolve(cur_);
        shift();
        return t;
      }
      case Tok::BlankLabel: {
        Term t = named_blank(cur_.text);
        shift();
        return t;
      }
      case Tok::LBracket:
        return blank_property_list();
      case Tok::String:
        return string_object();
      case Tok::Integer: {
        Term t = Literal(cur_.text, Datatype::Integer);
        shift();
        return t;
      }
      case Tok::Decimal: {
        Term t = Literal(cur_.text, Datatype::Decimal);
        shift();
        return t;
      }
      case Tok::Double: {
        warn("unsupported-datatype", "double literal " + cur_.text + " mapped to string");
        Term t = Literal::string(cur_.text);
        shift();
        return t;
      }
      case Tok::True:
      case Tok::False: {
        Term t = Literal(cur_.kind == Tok::True ? "true" : "false", Datatype::Boolean);
        shift();
        return t;
      }
      default:
        fail("expected object");
    }
  }

  Term string_object() {
    const Token lit = cur_;
    shift();
    if (cur_.kind != Tok::DoubleCaret) return Literal::string(lit.text);
    shift();
    if (cur_.kind != Tok::IriRef && cur_.kind != Tok::PrefixedName) fail("expected datatype IRI");
    const Token dt_tok = cur_;
    Iri dt_iri = resolve(cur_);
    shift();
    auto dt = datatype_from_iri(dt_iri);
    if (!dt) {
      warn("unsupported-datatype",
           "datatype <" + dt_iri.str() + "> mapped to string for \"" + lit.text + "\"");
      return Literal::string(lit.text);
    }
    try {
      return Literal(lit.text, *dt);
    } catch (const Error& e) {
      throw ParseError(ErrorCode::SyntaxError, e.what(), dt_tok.line, dt_tok.column);
    }
  }

  void warn(std::string code, std::string message) {
    if (diags_ == nullptr) return;
    diags_->push_back(Diagnostic{Severity::Warning, "turtle:" + source_, std::move(code),
                                 message + " (line " + std::to_string(cur_.line) + ")"});
  }

  Lexer lex_;
  Token cur_;
  std::string source_;
  Diagnostics* diags_;
  std::map<std::string, std::string> prefixes_;
  std::unordered_map<std::string, BlankNode> blank_labels_;
  std::size_t next_blank_ = 0;
  std::vector<Triple> triples_;
};

}  // namespace

Graph load_turtle(std::string_view document, std::string graph_id, Diagnostics* diagnostics) {
  Parser parser(document, graph_id, diagnostics);
  return Graph(std::move(graph_id), parser.parse());
}

Graph load_turtle_file(const std::filesystem::path& path, std::string graph_id,
                       Diagnostics* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_turtle(buf.str(), std::move(graph_id), diagnostics);
}

std::string to_turtle(const Graph& graph) {
  std::string out;
  for (const auto& t : graph.triples()) {
    out += t.subject.to_string();
    out += ' ';
    out += Term(t.predicate).to_string();
    out += ' ';
    out += t.object.to_string();
    out += " .\n";
  }
  return out;
}

}  // namespace ontoquery
