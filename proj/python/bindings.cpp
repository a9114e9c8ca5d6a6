#include "bilgrow/depgraph.hpp"
#include "bilgrow/frontier.hpp"
#include "bilgrow/rate.hpp"
#include "bilgrow/system_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bilgrow;

namespace {

py::object fraction(const Scalar& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(q));
}

py::list fractions(const Vector& v) {
  py::list out;
  for (const auto& x : v) out.append(fraction(x));
  return out;
}

/// Accepts int, str ("p/q", decimals) or fractions.Fraction.
Scalar scalar(const py::handle& h) { return parse_scalar(py::str(h).cast<std::string>()); }

FrontierTable make_table(const System& sys, int depth, const std::string& strategy, std::size_t budget,
                         unsigned threads, bool count_shapes) {
  EnumerateOptions o;
  o.strategy = parse_strategy(strategy);
  o.budget = budget;
  o.threads = threads;
  o.count_shapes = count_shapes;
  FrontierTable t(sys, o);
  py::gil_scoped_release release;
  t.extend_to(depth);
  return t;
}

}  // namespace

PYBIND11_MODULE(bilgrow, m) {
  m.doc() = "Growth of nonnegative bilinear systems: enumeration, patterns and certified rate bounds";

  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<System>(m, "System")
      .def_property_readonly("dim", &System::dim)
      .def_property_readonly("seed", [](const System& s) { return fractions(s.seed); })
      .def_property_readonly("name", [](const System& s) { return s.name; })
      .def_property_readonly("terms",
                             [](const System& s) {
                               py::list out;
                               for (const auto& t : s.map.terms())
                                 out.append(py::make_tuple(t.k + 1, t.i + 1, t.j + 1, fraction(t.value)));
                               return out;
                             })
      .def("star", [](const System& s, const py::sequence& u, const py::sequence& v) {
        Vector a, b;
        for (auto x : u) a.push_back(scalar(x));
        for (auto x : v) b.push_back(scalar(x));
        if (a.size() != s.dim() || b.size() != s.dim()) throw InputError("star: vector length differs from dimension");
        return fractions(star(s.map, a, b));
      })
      .def("to_text", &serialize_system)
      .def("__repr__", [](const System& s) { return "<bilgrow.System " + s.name + " dim=" + std::to_string(s.dim()) + ">"; });

  m.def("example", [](const std::string& name) { return example(name); }, py::arg("name"));
  m.def("example_names", &example_names);
  m.def("parse_system", [](const std::string& text) { return parse_system(text); }, py::arg("text"));
  m.def("load_system", &load_system, py::arg("path"));

  py::class_<FrontierTable>(m, "FrontierTable")
      .def_property_readonly("depth", &FrontierTable::depth)
      .def("g", [](const FrontierTable& t, int n) { return fraction(t.g(n)); }, py::arg("n"))
      .def("g_k", [](const FrontierTable& t, int n, std::size_t k) { return fraction(t.g_k(n, k - 1)); },
           py::arg("n"), py::arg("k"), "k is 1-based")
      .def("level",
           [](const FrontierTable& t, int n) {
             py::list out;
             for (const auto& v : t.level(n).vectors) out.append(py::tuple(fractions(v)));
             return out;
           },
           py::arg("n"))
      .def("shape_count", [](const FrontierTable& t, int n) { return py::int_(py::str(t.level(n).shape_count.get_str())); },
           py::arg("n"))
      .def("hull_vertices", [](const FrontierTable& t, int n) { return hull_vertex_count(t, n).vertices; }, py::arg("n"))
      .def("tree", &FrontierTable::tree_text, py::arg("n"), py::arg("index"));

  m.def("enumerate", &make_table, py::arg("system"), py::arg("depth"), py::arg("strategy") = "dominance",
        py::arg("budget") = 100000, py::arg("threads") = 1, py::arg("count_shapes") = false);

  m.def("components",
        [](const System& s) {
          auto poset = components(build_depgraph(s));
          auto cls = classify(s, poset);
          py::list out;
          for (std::size_t c = 0; c < poset.size(); ++c) {
            py::list verts;
            for (auto v : poset.components[c]) verts.append(v + 1);
            py::dict d;
            d["vertices"] = verts;
            d["internal_triple"] = cls[c].internal_triple;
            d["half_self_dependent"] = cls[c].half_self_dependent;
            d["sink_trivial"] = cls[c].sink_trivial;
            out.append(d);
          }
          return out;
        },
        py::arg("system"));

  m.def("crude_upper", [](const System& s) { return fraction(crude_upper(s)); }, py::arg("system"));

  m.def("certify_upper",
        [](const System& s, const py::handle& lambda0, int max_level, std::size_t budget) {
          CertifyOptions o;
          o.max_level = max_level;
          o.budget = budget;
          const Scalar l0 = scalar(lambda0);
          CertifyOutcome r;
          {
            py::gil_scoped_release release;
            r = certify_upper(s, l0, o);
          }
          py::dict d;
          d["certified"] = r.ok();
          d["levels_used"] = r.levels_used;
          if (r.ok()) d["certificate"] = write_certificate(*r.certificate);
          if (r.failure) {
            d["escaping"] = fractions(r.failure->escaping);
            d["reason"] = r.failure->reason;
          }
          return d;
        },
        py::arg("system"), py::arg("lambda0"), py::arg("max_level") = 160, py::arg("budget") = 5000);

  m.def("check_certificate",
        [](const std::string& text, const System& s) -> py::object {
          auto err = certificate_error(read_certificate(text), s);
          if (err) return py::str(*err);
          return py::none();
        },
        py::arg("certificate"), py::arg("system"), "None when valid, otherwise the reason");

  m.def("sandwich",
        [](const System& s, int depth, int pattern_budget, const py::handle& width, unsigned threads) {
          SandwichOptions o;
          o.depth = depth;
          o.pattern_budget = pattern_budget;
          o.width = scalar(width);
          o.threads = threads;
          LambdaBounds b;
          {
            py::gil_scoped_release release;
            b = sandwich(s, o);
          }
          py::dict d;
          d["lower"] = fraction(b.lower);
          d["upper"] = fraction(b.upper);
          d["lower_decimal"] = b.lower_decimal;
          d["upper_decimal"] = b.upper_decimal;
          d["lower_kind"] = std::string(to_string(b.lower_kind));
          d["upper_kind"] = std::string(to_string(b.upper_kind));
          d["width_met"] = b.width_met;
          if (b.certificate) d["certificate"] = write_certificate(*b.certificate);
          return d;
        },
        py::arg("system"), py::arg("depth") = 24, py::arg("pattern_budget") = 16, py::arg("width") = "1/100",
        py::arg("threads") = 1);
}
