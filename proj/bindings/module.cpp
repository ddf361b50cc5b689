// Python face of the library: graphs, tables, series, and the structural
// checks, with boost integers widened to Python ints so nothing truncates.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "maghom/dsl.hpp"
#include "maghom/graph.hpp"
#include "maghom/homology.hpp"
#include "maghom/magchain.hpp"
#include "maghom/verify.hpp"

namespace py = pybind11;
using namespace maghom;

namespace {

py::int_ big_int(const Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

RankMethod method_from(const std::string& s) {
  if (s == "auto" || s == "automatic") return RankMethod::automatic;
  if (s == "exact") return RankMethod::exact;
  if (s == "modular") return RankMethod::modular;
  throw std::invalid_argument("method must be 'auto', 'exact', or 'modular'");
}

HomologyOptions make_options(int lmax, bool torsion, const std::string& method,
                             long max_trails, long torsion_limit, int jobs,
                             std::uint64_t seed) {
  HomologyOptions o;
  o.lmax = lmax;
  o.torsion = torsion;
  o.method = method_from(method);
  o.max_trails = max_trails;
  o.torsion_limit = torsion_limit;
  o.jobs = jobs;
  o.seed = seed;
  return o;
}

HomologyOptions make_base(bool torsion, const std::string& method) {
  HomologyOptions o;
  o.torsion = torsion;
  o.method = method_from(method);
  return o;
}

py::dict homology_dict(const BigradedGroup& h) {
  py::dict out;
  for (int l = 0; l <= h.lmax(); ++l)
    for (int k = 0; k <= l; ++k) {
      const CellGroup& c = h.cell(k, l);
      py::dict cell;
      cell["rank"] = c.rank ? py::object(py::int_(*c.rank)) : py::none();
      if (c.torsion) {
        py::list t;
        for (const Int& d : *c.torsion) t.append(big_int(d));
        cell["torsion"] = std::move(t);
      } else {
        cell["torsion"] = py::none();
      }
      cell["method"] = c.method;
      out[py::make_tuple(k, l)] = std::move(cell);
    }
  return out;
}

py::list series_list(const PowerSeries& s) {
  py::list out;
  for (const Int& c : s.coeffs) out.append(big_int(c));
  return out;
}

py::dict report_dict(const CheckReport& rep) {
  py::dict out;
  out["check"] = rep.check;
  out["graphs"] = rep.graphs;
  out["lmax"] = rep.lmax;
  out["verdict"] = to_string(rep.verdict);
  out["passed"] = rep.passed();
  out["ranks_only"] = rep.ranks_only;
  out["hypothesis"] = rep.hypothesis;
  out["note"] = rep.note;
  out["cells_compared"] = static_cast<long>(rep.cells.size());
  out["cells_failed"] = rep.failed_cells();
  py::list failures;
  for (const CellComparison& c : rep.cells) {
    if (c.equal) continue;
    py::dict f;
    f["k"] = c.k;
    f["l"] = c.l;
    f["lhs"] = c.lhs;
    f["rhs"] = c.rhs;
    failures.append(std::move(f));
  }
  out["failures"] = std::move(failures);
  out["seconds"] = rep.seconds;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "magnitude homology of finite graphs";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError",
                                             PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<std::pair<int, int>>,
                    std::vector<std::string>>(),
           py::arg("n"), py::arg("edges"),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("m", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("neighbors", &Graph::neighbors, py::arg("v"))
      .def("degree", &Graph::degree, py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("structural_hash", &Graph::structural_hash)
      .def("__eq__",
           [](const Graph& a, const Graph& b) {
             return a.vertex_count() == b.vertex_count() &&
                    a.edges() == b.edges();
           })
      .def("__hash__", &Graph::structural_hash)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.vertex_count()) +
               ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("parse", &parse_graph, py::arg("spec"),
        "build a graph from a DSL expression, edge list, or LCF string");
  m.def("named", &build_named, py::arg("family"),
        py::arg("params") = std::vector<int>{},
        "named families: K, E, C, P, star, petersen, heawood, ...");
  m.def("from_lcf", &lcf_graph, py::arg("offsets"), py::arg("repeats"));
  m.def("disjoint_union", &disjoint_union, py::arg("g"), py::arg("h"));
  m.def("box_product", &box_product, py::arg("g"), py::arg("h"));
  m.def("join", &join_graphs, py::arg("g"), py::arg("h"));
  m.def("wedge", &wedge, py::arg("g"), py::arg("g0"), py::arg("h"),
        py::arg("h0"));

  m.def("distance_matrix", [](const Graph& g) {
    DistMatrix d(g);
    py::list rows;
    for (int i = 0; i < d.size(); ++i) {
      py::list row;
      for (int j = 0; j < d.size(); ++j)
        row.append(d(i, j).is_inf() ? py::object(py::none())
                                    : py::object(py::int_(d(i, j).value())));
      rows.append(std::move(row));
    }
    return rows;
  },
  py::arg("g"), "all-pairs shortest paths; None marks unreachable pairs");

  m.def("is_projecting_decomposition", &is_projecting_decomposition,
        py::arg("x"), py::arg("gset"), py::arg("hset"));

  m.def("chain_counts", [](const Graph& g, int lmax) {
    DistMatrix d(g);
    auto table = chain_count_table(g, d, lmax);
    py::list rows;
    for (const auto& row : table) {
      py::list r;
      for (const Int& v : row) r.append(big_int(v));
      rows.append(std::move(r));
    }
    return rows;
  },
  py::arg("g"), py::arg("lmax"),
  "counts[l][k] = |MC_{k,l}|, exact integers of any size");

  m.def("homology", [](const Graph& g, int lmax, bool torsion,
                       const std::string& method, long max_trails,
                       long torsion_limit, int jobs, std::uint64_t seed) {
    HomologyOptions o = make_options(lmax, torsion, method, max_trails,
                                     torsion_limit, jobs, seed);
    BigradedGroup h;
    {
      py::gil_scoped_release release;
      h = compute_homology(g, o);
    }
    return homology_dict(h);
  },
  py::arg("g"), py::arg("lmax"), py::arg("torsion") = false,
  py::arg("method") = "auto", py::arg("max_trails") = 10'000'000L,
  py::arg("torsion_limit") = 5000L, py::arg("jobs") = 0,
  py::arg("seed") = HomologyOptions{}.seed,
  "bigraded table as {(k, l): {'rank', 'torsion', 'method'}}");

  m.def("magnitude", [](const Graph& g, int lmax, const std::string& by) {
    PowerSeries s;
    {
      py::gil_scoped_release release;
      if (by == "counting") {
        s = magnitude_by_counting(g, lmax);
      } else if (by == "inverse") {
        s = magnitude_by_inverse_series(g, lmax);
      } else if (by == "euler") {
        HomologyOptions o;
        o.lmax = lmax;
        s = magnitude_by_euler(compute_homology(g, o));
      } else {
        throw std::invalid_argument("by must be 'counting', 'inverse', or 'euler'");
      }
    }
    return series_list(s);
  },
  py::arg("g"), py::arg("lmax"), py::arg("by") = "counting",
  "magnitude series coefficients through q^lmax");

  // Structural checks; each returns the full report as a dict.
  m.def("check_diagonal", [](const Graph& g, int lmax, bool torsion,
                             const std::string& method) {
    return report_dict(check_diagonal(g, lmax, make_base(torsion, method)));
  },
  py::arg("g"), py::arg("lmax"), py::arg("torsion") = false,
  py::arg("method") = "auto");

  m.def("check_disjoint_additivity", [](const Graph& g, const Graph& h,
                                        int lmax) {
    return report_dict(check_disjoint_additivity(g, h, lmax));
  },
  py::arg("g"), py::arg("h"), py::arg("lmax"));

  m.def("check_kunneth", [](const Graph& g, const Graph& h, int lmax) {
    return report_dict(check_kunneth(g, h, lmax));
  },
  py::arg("g"), py::arg("h"), py::arg("lmax"));

  m.def("check_mayer_vietoris", [](const Graph& x, const std::vector<int>& gset,
                                   const std::vector<int>& hset, int lmax) {
    return report_dict(check_mayer_vietoris(x, gset, hset, lmax));
  },
  py::arg("x"), py::arg("gset"), py::arg("hset"), py::arg("lmax"));

  m.def("check_tree_formula", [](const Graph& g, int lmax) {
    return report_dict(check_tree_formula(g, lmax));
  },
  py::arg("g"), py::arg("lmax"));

  m.def("check_join_diagonal", [](const Graph& g, const Graph& h, int lmax) {
    return report_dict(check_join_diagonal(g, h, lmax));
  },
  py::arg("g"), py::arg("h"), py::arg("lmax"));

  m.def("check_cyclic_patterns", [](int n, int lmax) {
    return report_dict(check_cyclic_patterns(n, lmax));
  },
  py::arg("n"), py::arg("lmax"));

  m.def("check_support_bounds", [](const Graph& g, int lmax) {
    return report_dict(check_support_bounds(g, lmax));
  },
  py::arg("g"), py::arg("lmax"));

  m.def("builtin_corpus", []() {
    py::list out;
    for (const auto& [name, g] : builtin_corpus())
      out.append(py::make_tuple(name, g));
    return out;
  },
  "the named graphs the property suites sweep");
}
