#include "maghom/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace maghom {

namespace {

enum class Tok { name, number, lparen, rparen, lbracket, rbracket, comma,
                 semicolon, plus, star, minus, equals, caret, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t j = 0; j < n; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(c)) {
      size_t j = i;
      long long v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        v = v * 10 + (text[j] - '0');
        if (v > 1'000'000'000)
          throw ParseError("number too large", line, col);
        ++j;
      }
      t.type = Tok::number;
      t.value = v;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.type = Tok::name;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '(': t.type = Tok::lparen; break;
      case ')': t.type = Tok::rparen; break;
      case '[': t.type = Tok::lbracket; break;
      case ']': t.type = Tok::rbracket; break;
      case ',': t.type = Tok::comma; break;
      case ';': t.type = Tok::semicolon; break;
      case '+': t.type = Tok::plus; break;
      case '*': t.type = Tok::star; break;
      case '-': t.type = Tok::minus; break;
      case '=': t.type = Tok::equals; break;
      case '^': t.type = Tok::caret; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, text[i]) + "'",
                         line, col);
    }
    t.text = std::string(1, text[i]);
    bump(1);
    out.push_back(std::move(t));
  }
  Token fin;
  fin.type = Tok::end;
  fin.line = line;
  fin.col = col;
  out.push_back(fin);
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Canonical spelling per family; parsing normalizes aliases to these so a
// printed expression reparses to an equal tree.
const std::pair<const char*, const char*> kFamilies[] = {
    {"k", "K"},          {"complete", "K"},
    {"e", "E"},          {"discrete", "E"},      {"empty", "E"},
    {"c", "C"},          {"cycle", "C"},
    {"p", "P"},          {"path", "P"},
    {"star", "star"},
    {"petersen", "petersen"},
    {"heawood", "heawood"},
    {"pappus", "pappus"},
    {"moebius_kantor", "moebius_kantor"},
    {"tutte_coxeter", "tutte_coxeter"},
    {"icosahedral", "icosahedral"},
    {"dodecahedral", "dodecahedral"},
};

const char* canonical_family(const std::string& name) {
  std::string l = lower(name);
  for (const auto& [alias, canon] : kFamilies)
    if (l == alias) return canon;
  return nullptr;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek(size_t ahead = 0) const {
    return toks[std::min(pos + ahead, toks.size() - 1)];
  }
  Token take() { return toks[pos == toks.size() - 1 ? pos : pos++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }

  Token expect(Tok type, const std::string& what) {
    if (peek().type != type) fail("expected " + what, peek());
    return take();
  }

  int expect_int(const std::string& what, bool allow_negative = false) {
    bool neg = false;
    Token first = peek();
    if (allow_negative && first.type == Tok::minus) {
      take();
      neg = true;
    }
    Token t = expect(Tok::number, what);
    long long v = neg ? -t.value : t.value;
    return static_cast<int>(v);
  }

  GraphExpr parse_expr_top() {
    GraphExpr e = parse_sum();
    if (peek().type != Tok::end) fail("unexpected trailing input", peek());
    return e;
  }

  GraphExpr parse_sum() {
    GraphExpr e = parse_box();
    while (peek().type == Tok::plus) {
      take();
      GraphExpr rhs = parse_box();
      GraphExpr node;
      node.kind = GraphExpr::Kind::disjoint_union;
      node.lhs = std::make_unique<GraphExpr>(std::move(e));
      node.rhs = std::make_unique<GraphExpr>(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  bool at_box_keyword() const {
    return peek().type == Tok::name && lower(peek().text) == "box";
  }

  GraphExpr parse_box() {
    GraphExpr e = parse_join();
    while (at_box_keyword()) {
      take();
      GraphExpr rhs = parse_join();
      GraphExpr node;
      node.kind = GraphExpr::Kind::box;
      node.lhs = std::make_unique<GraphExpr>(std::move(e));
      node.rhs = std::make_unique<GraphExpr>(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  GraphExpr parse_join() {
    GraphExpr e = parse_atom();
    while (peek().type == Tok::star) {
      take();
      GraphExpr rhs = parse_atom();
      GraphExpr node;
      node.kind = GraphExpr::Kind::join;
      node.lhs = std::make_unique<GraphExpr>(std::move(e));
      node.rhs = std::make_unique<GraphExpr>(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  GraphExpr parse_atom() {
    const Token& t = peek();
    if (t.type == Tok::lparen) {
      take();
      GraphExpr e = parse_sum();
      expect(Tok::rparen, "')'");
      return e;
    }
    if (t.type == Tok::lbracket) return parse_edge_list_literal();
    if (t.type == Tok::name) {
      std::string l = lower(t.text);
      if (l == "wedge") return parse_wedge();
      if (l == "lcf") return parse_lcf_literal();
      return parse_family();
    }
    fail("expected a graph expression", t);
  }

  GraphExpr parse_family() {
    Token name = take();
    const char* canon = canonical_family(name.text);
    if (!canon) fail("unknown graph family '" + name.text + "'", name);
    GraphExpr e;
    e.kind = GraphExpr::Kind::family;
    e.family = canon;
    if (peek().type == Tok::lparen) {
      take();
      if (peek().type != Tok::rparen) {
        e.params.push_back(expect_int("a family parameter"));
        while (peek().type == Tok::comma) {
          take();
          e.params.push_back(expect_int("a family parameter"));
        }
      }
      expect(Tok::rparen, "')'");
    }
    try {
      build_named(e.family, e.params);
    } catch (const std::invalid_argument& err) {
      fail(err.what(), name);
    }
    return e;
  }

  GraphExpr parse_wedge() {
    Token kw = take();
    expect(Tok::lparen, "'(' after wedge");
    GraphExpr e;
    e.kind = GraphExpr::Kind::wedge_op;
    e.lhs = std::make_unique<GraphExpr>(parse_sum());
    expect(Tok::comma, "',' in wedge");
    e.base_l = expect_int("a basepoint");
    expect(Tok::comma, "',' in wedge");
    e.rhs = std::make_unique<GraphExpr>(parse_sum());
    expect(Tok::comma, "',' in wedge");
    e.base_r = expect_int("a basepoint");
    expect(Tok::rparen, "')'");
    (void)kw;
    return e;
  }

  GraphExpr parse_lcf_literal() {
    Token kw = take();  // 'lcf'
    expect(Tok::lparen, "'(' after lcf");
    GraphExpr e;
    e.kind = GraphExpr::Kind::lcf;
    expect(Tok::lbracket, "'['");
    e.lcf_offsets.push_back(expect_int("an LCF offset", true));
    while (peek().type == Tok::comma) {
      take();
      e.lcf_offsets.push_back(expect_int("an LCF offset", true));
    }
    expect(Tok::rbracket, "']'");
    expect(Tok::caret, "'^'");
    e.lcf_repeat = expect_int("a repeat count");
    expect(Tok::rparen, "')'");
    try {
      lcf_graph(e.lcf_offsets, e.lcf_repeat);
    } catch (const std::invalid_argument& err) {
      fail(err.what(), kw);
    }
    return e;
  }

  GraphExpr parse_edge_list_literal() {
    Token open = take();  // '['
    GraphExpr e;
    e.kind = GraphExpr::Kind::edge_list;
    // Optional header n=<count>.
    if (peek().type == Tok::name && lower(peek().text) == "n" &&
        peek(1).type == Tok::equals) {
      take();
      take();
      e.explicit_n = expect_int("a vertex count");
      if (peek().type == Tok::semicolon || peek().type == Tok::comma) take();
    }
    while (peek().type != Tok::rbracket) {
      int u = expect_int("an edge endpoint");
      if (peek().type == Tok::minus) take();
      int v = expect_int("an edge endpoint");
      e.edges.emplace_back(u, v);
      if (peek().type == Tok::comma || peek().type == Tok::semicolon) take();
    }
    expect(Tok::rbracket, "']'");
    try {
      evaluate_edge_list(e);
    } catch (const std::invalid_argument& err) {
      fail(err.what(), open);
    }
    return e;
  }

  static Graph evaluate_edge_list(const GraphExpr& e) {
    int n = e.explicit_n;
    if (n < 0) {
      n = 0;
      for (auto [u, v] : e.edges) n = std::max({n, u + 1, v + 1});
    }
    return Graph(n, e.edges);
  }
};

}  // namespace

bool expr_equal(const GraphExpr& a, const GraphExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GraphExpr::Kind::family:
      return a.family == b.family && a.params == b.params;
    case GraphExpr::Kind::edge_list:
      return a.explicit_n == b.explicit_n && a.edges == b.edges;
    case GraphExpr::Kind::lcf:
      return a.lcf_offsets == b.lcf_offsets && a.lcf_repeat == b.lcf_repeat;
    case GraphExpr::Kind::wedge_op:
      return a.base_l == b.base_l && a.base_r == b.base_r &&
             expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    default:
      return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
  }
}

GraphExpr parse_expr(const std::string& text) {
  Parser p{lex(text)};
  return p.parse_expr_top();
}

Graph parse_lcf(const std::string& text) {
  Parser p{lex(text)};
  std::vector<int> offsets;
  p.expect(Tok::lbracket, "'['");
  offsets.push_back(p.expect_int("an LCF offset", true));
  while (p.peek().type == Tok::comma) {
    p.take();
    offsets.push_back(p.expect_int("an LCF offset", true));
  }
  p.expect(Tok::rbracket, "']'");
  p.expect(Tok::caret, "'^'");
  int rep = p.expect_int("a repeat count");
  if (p.peek().type != Tok::end) p.fail("unexpected trailing input", p.peek());
  try {
    return lcf_graph(offsets, rep);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), 1, 1);
  }
}

Graph parse_edge_list(const std::string& text) {
  Parser p{lex(text)};
  GraphExpr e;
  e.kind = GraphExpr::Kind::edge_list;
  if (p.peek().type == Tok::name && lower(p.peek().text) == "n" &&
      p.peek(1).type == Tok::equals) {
    p.take();
    p.take();
    e.explicit_n = p.expect_int("a vertex count");
    if (p.peek().type == Tok::semicolon || p.peek().type == Tok::comma) p.take();
  }
  while (p.peek().type != Tok::end) {
    int u = p.expect_int("an edge endpoint");
    if (p.peek().type == Tok::minus) p.take();
    int v = p.expect_int("an edge endpoint");
    e.edges.emplace_back(u, v);
    if (p.peek().type == Tok::comma || p.peek().type == Tok::semicolon) p.take();
  }
  try {
    return Parser::evaluate_edge_list(e);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), 1, 1);
  }
}

Graph evaluate(const GraphExpr& e) {
  switch (e.kind) {
    case GraphExpr::Kind::family:
      return build_named(e.family, e.params);
    case GraphExpr::Kind::edge_list:
      return Parser::evaluate_edge_list(e);
    case GraphExpr::Kind::lcf:
      return lcf_graph(e.lcf_offsets, e.lcf_repeat);
    case GraphExpr::Kind::disjoint_union:
      return disjoint_union(evaluate(*e.lhs), evaluate(*e.rhs));
    case GraphExpr::Kind::box:
      return box_product(evaluate(*e.lhs), evaluate(*e.rhs));
    case GraphExpr::Kind::join:
      return join_graphs(evaluate(*e.lhs), evaluate(*e.rhs));
    case GraphExpr::Kind::wedge_op:
      return wedge(evaluate(*e.lhs), e.base_l, evaluate(*e.rhs), e.base_r);
  }
  throw std::logic_error("evaluate: bad expression kind");
}

namespace {

int precedence(GraphExpr::Kind k) {
  switch (k) {
    case GraphExpr::Kind::disjoint_union: return 1;
    case GraphExpr::Kind::box: return 2;
    case GraphExpr::Kind::join: return 3;
    default: return 4;
  }
}

void print(const GraphExpr& e, std::ostream& os) {
  auto child = [&](const GraphExpr& c, bool right) {
    int pe = precedence(e.kind), pc = precedence(c.kind);
    bool parens = pc < pe || (right && pc == pe);
    if (parens) os << '(';
    print(c, os);
    if (parens) os << ')';
  };
  switch (e.kind) {
    case GraphExpr::Kind::family:
      os << e.family;
      if (!e.params.empty()) {
        os << '(';
        for (size_t i = 0; i < e.params.size(); ++i)
          os << (i ? "," : "") << e.params[i];
        os << ')';
      }
      return;
    case GraphExpr::Kind::edge_list:
      os << '[';
      if (e.explicit_n >= 0) {
        os << "n=" << e.explicit_n;
        if (!e.edges.empty()) os << "; ";
      }
      for (size_t i = 0; i < e.edges.size(); ++i)
        os << (i ? ", " : "") << e.edges[i].first << '-' << e.edges[i].second;
      os << ']';
      return;
    case GraphExpr::Kind::lcf:
      os << "lcf([";
      for (size_t i = 0; i < e.lcf_offsets.size(); ++i)
        os << (i ? "," : "") << e.lcf_offsets[i];
      os << "]^" << e.lcf_repeat << ')';
      return;
    case GraphExpr::Kind::wedge_op:
      os << "wedge(";
      print(*e.lhs, os);
      os << ", " << e.base_l << ", ";
      print(*e.rhs, os);
      os << ", " << e.base_r << ')';
      return;
    case GraphExpr::Kind::disjoint_union:
      child(*e.lhs, false);
      os << " + ";
      child(*e.rhs, true);
      return;
    case GraphExpr::Kind::box:
      child(*e.lhs, false);
      os << " box ";
      child(*e.rhs, true);
      return;
    case GraphExpr::Kind::join:
      child(*e.lhs, false);
      os << " * ";
      child(*e.rhs, true);
      return;
  }
}

}  // namespace

std::string to_string(const GraphExpr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

Graph resolve_graph_spec(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot read graph file: " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
  }
  std::string trimmed = spec;
  auto first = trimmed.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty graph spec", 1, 1);
  if (trimmed[first] == '[' && trimmed.find("]^") != std::string::npos)
    return parse_lcf(trimmed);
  return parse_graph(trimmed);
}

}  // namespace maghom
