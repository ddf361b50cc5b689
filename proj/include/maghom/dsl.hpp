#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "maghom/graph.hpp"

namespace maghom {

// Expression tree of the graph DSL. Operators by loosening precedence:
// '*' (join), 'box' (cartesian product), '+' (disjoint union), all
// left-associative; atoms are families like K(5) or petersen, bracketed
// edge lists, lcf(...) literals, wedge(g, i, h, j) and parenthesized
// subexpressions.
struct GraphExpr {
  enum class Kind { family, edge_list, lcf, disjoint_union, box, join, wedge_op };

  Kind kind = Kind::family;

  // family
  std::string family;
  std::vector<int> params;

  // edge_list ([n=5; 0-1, 1-2]); explicit_n is -1 when the header is absent
  int explicit_n = -1;
  std::vector<std::pair<int, int>> edges;

  // lcf
  std::vector<int> lcf_offsets;
  int lcf_repeat = 0;

  // binary operators
  std::unique_ptr<GraphExpr> lhs, rhs;

  // wedge basepoints
  int base_l = 0, base_r = 0;
};

bool expr_equal(const GraphExpr& a, const GraphExpr& b);

// Parser entry points. All throw ParseError with a 1-based position.
// Family names (and their aliases, e.g. complete/cycle/discrete/path) are
// normalized and validated during parsing, as are LCF and edge-list
// literals, so a parsed expression only fails to evaluate for semantic
// reasons (currently: wedge basepoints out of range).
GraphExpr parse_expr(const std::string& text);

// "[j_1,...,j_m]^r" -> cubic LCF graph.
Graph parse_lcf(const std::string& text);

// Edge-list format: optional "n=<count>" header, then pairs "u v" or "u-v"
// separated by commas, semicolons or newlines. Without a header the vertex
// count is max endpoint + 1.
Graph parse_edge_list(const std::string& text);

Graph evaluate(const GraphExpr& expr);

// Canonical form: reparsing it yields an equal tree.
std::string to_string(const GraphExpr& expr);

inline Graph parse_graph(const std::string& text) { return evaluate(parse_expr(text)); }

// CLI-style resolution: an existing file path is read as an edge list, a
// top-level "[...]^r" literal as LCF notation, anything else as a DSL
// expression.
Graph resolve_graph_spec(const std::string& spec);

}  // namespace maghom
