#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "maghom/dsl.hpp"

using namespace maghom;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edges() == b.edges();
}

}  // namespace

TEST_CASE("families and aliases parse to the same graph") {
  CHECK(same_graph(parse_graph("C(5)"), build_named("C", {5})));
  CHECK(same_graph(parse_graph("cycle(5)"), parse_graph("C(5)")));
  CHECK(same_graph(parse_graph("Complete(4)"), parse_graph("K(4)")));
  CHECK(same_graph(parse_graph("discrete(3)"), parse_graph("E(3)")));
  CHECK(same_graph(parse_graph("empty(3)"), parse_graph("E(3)")));
  CHECK(same_graph(parse_graph("path(4)"), parse_graph("P(4)")));
  CHECK(same_graph(parse_graph("petersen"), build_named("petersen", {})));
  CHECK(same_graph(parse_graph(" K( 3 ) "), parse_graph("K(3)")));
}

TEST_CASE("operator precedence: join over box over union") {
  // box binds tighter than +
  CHECK(parse_graph("K(2) + K(2) box K(2)").vertex_count() == 2 + 4);
  CHECK(parse_graph("(K(2) + K(2)) box K(2)").vertex_count() == 8);
  // * binds tighter than box
  Graph g = parse_graph("E(2) * E(2) box K(2)");
  CHECK(g.vertex_count() == 8);             // (E2 * E2) box K2
  CHECK(parse_graph("E(2) * (E(2) box K(2))").vertex_count() == 6);
  // left associativity
  auto e = parse_expr("K(1) + K(2) + K(3)");
  CHECK(e.kind == GraphExpr::Kind::disjoint_union);
  CHECK(e.lhs->kind == GraphExpr::Kind::disjoint_union);
  CHECK(e.rhs->kind == GraphExpr::Kind::family);
}

TEST_CASE("edge lists") {
  Graph g = parse_edge_list("0-1, 1-2; 2 3");
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  Graph h = parse_edge_list("n=6; 0-1");
  CHECK(h.vertex_count() == 6);
  CHECK(h.edge_count() == 1);
  // Inside expressions, with operators around them.
  Graph x = parse_graph("[0-1] + [n=2;]");
  CHECK(x.vertex_count() == 4);
  CHECK(x.edge_count() == 1);

  CHECK_THROWS_AS(parse_edge_list("0-0"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("0-1, 0-1"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("n=2; 0-5"), ParseError);
}

TEST_CASE("lcf literals") {
  CHECK(same_graph(parse_lcf("[5,-5]^7"), build_named("heawood", {})));
  CHECK(same_graph(parse_graph("lcf([5,-5]^7)"), build_named("heawood", {})));
  CHECK_THROWS_AS(parse_lcf("[2,3]^3"), ParseError);
  CHECK_THROWS_AS(parse_lcf("[5,-5]"), ParseError);  // missing repeat
}

TEST_CASE("wedge expressions") {
  Graph w = parse_graph("wedge(C(5), 0, C(5), 0)");
  CHECK(w.vertex_count() == 9);
  CHECK(w.degree(0) == 4);
  CHECK_THROWS_AS(parse_graph("wedge(C(5), 9, C(5), 0)"),
                  std::invalid_argument);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_graph("C(2)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 1);
    CHECK(std::string(e.what()).find("C") != std::string::npos);
  }
  try {
    parse_graph("K(3) box box K(2)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col > 5);
  }
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("K(3"), ParseError);
  CHECK_THROWS_AS(parse_graph("K(3) K(2)"), ParseError);
  CHECK_THROWS_AS(parse_graph("Q(3)"), ParseError);
  CHECK_THROWS_AS(parse_graph("K(99999999999)"), ParseError);
}

TEST_CASE("to_string canonicalizes and round-trips") {
  const char* cases[] = {
      "C(5)",
      "cycle(5)",
      "K(2) + K(2) box K(2)",
      "(K(1) + K(2)) box petersen",
      "E(2) * E(2) * E(2)",
      "wedge(C(5), 0, [0-1, 1-2], 2)",
      "lcf([5,-5]^7)",
      "[n=6; 0-1, 2-3]",
      "K(2) box (K(2) + K(1))",
  };
  for (const char* s : cases) {
    CAPTURE(s);
    GraphExpr e = parse_expr(s);
    std::string printed = to_string(e);
    GraphExpr again = parse_expr(printed);
    CHECK(expr_equal(e, again));
    CHECK(to_string(again) == printed);
    CHECK(same_graph(evaluate(e), evaluate(again)));
  }
  CHECK(to_string(parse_expr("cycle(5)")) == "C(5)");
  CHECK(to_string(parse_expr("K(2)+K(2) box K(2)")) ==
        "K(2) + K(2) box K(2)");
}

TEST_CASE("parser survives fuzzing") {
  const std::string alphabet = "KECP()[]^*+-,;0123456789 boxwedgelcfstar=n";
  std::mt19937_64 rng(0xf00dull);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> pick(0,
                                          static_cast<int>(alphabet.size()) - 1);
  for (int iter = 0; iter < 3000; ++iter) {
    std::string s;
    int m = len(rng);
    for (int i = 0; i < m; ++i) s += alphabet[pick(rng)];
    try {
      Graph g = parse_graph(s);
      CHECK(g.vertex_count() >= 0);
    } catch (const ParseError& e) {
      CHECK(e.line >= 1);
      CHECK(e.col >= 1);
    } catch (const std::invalid_argument&) {
      // semantic failure (e.g. wedge basepoint); fine
    }
  }
}

TEST_CASE("graph spec resolution") {
  CHECK(resolve_graph_spec("K(4)").edge_count() == 6);
  CHECK(resolve_graph_spec("[5,-5]^7").vertex_count() == 14);

  std::string path = "dsl_spec_test_edges.txt";
  {
    std::ofstream out(path);
    out << "n=5\n0-1, 1-2\n3 4\n";
  }
  Graph g = resolve_graph_spec(path);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 3);
  std::remove(path.c_str());

  CHECK_THROWS_AS(resolve_graph_spec(""), ParseError);
}
