#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/limit.hpp"
#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"
#include "rtshuffle/perm_stats.hpp"
#include "rtshuffle/verify.hpp"
#include "rtshuffle/walk.hpp"

namespace py = pybind11;
using namespace rtshuffle;

namespace {

py::int_ to_py(const Integer& value) {
  const std::string digits = value.get_str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::object to_py(const Rational& value) {
  static py::object fraction_type = py::module_::import("fractions").attr("Fraction");
  return fraction_type(to_py(value.get_num()), to_py(value.get_den()));
}

py::tuple to_py(const Partition& p) { return py::tuple(py::cast(p.parts())); }

Partition to_partition(const std::vector<int>& parts) { return Partition(parts); }

Integer to_integer(const py::handle& value) {
  return Integer(py::str(py::int_(py::reinterpret_borrow<py::object>(value))).cast<std::string>());
}

// int, fractions.Fraction, or anything exposing numerator/denominator
Rational to_rational(const py::object& value) {
  if (py::isinstance<py::int_>(value)) {
    return Rational(to_integer(value));
  }
  if (!py::hasattr(value, "numerator") || !py::hasattr(value, "denominator")) {
    throw ArgumentError("expected an int or a fractions.Fraction");
  }
  return fraction(to_integer(value.attr("numerator")), to_integer(value.attr("denominator")));
}

py::dict tv_to_py(const TvValue& tv) {
  py::dict d;
  d["value"] = tv.value;
  d["exact"] = tv.exact ? to_py(*tv.exact) : py::none();
  d["rounding_error"] = tv.rounding_error;
  return d;
}

py::dict classes_to_py(const ClassDistribution& classes) {
  py::dict d;
  for (const auto& [mu, mass] : classes) {
    d[to_py(mu)] = to_py(mass);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of rtshuffle";
  m.attr("__version__") = RTSHUFFLE_VERSION;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);

  // partitions and characters
  m.def("enumerate_partitions", [](int size) {
    py::list out;
    for (const auto& p : enumerate_partitions(size)) {
      out.append(to_py(p));
    }
    return out;
  }, py::arg("m"), "All partitions of m in reverse lexicographic order.");
  m.def("partition_count", [](int size) { return to_py(partition_count(size)); }, py::arg("m"));
  m.def("conjugate", [](const std::vector<int>& p) { return to_py(conjugate(to_partition(p))); },
        py::arg("partition"));
  m.def("hook_lengths", [](const std::vector<int>& p) { return hook_lengths(to_partition(p)); },
        py::arg("partition"));
  m.def("dimension", [](const std::vector<int>& p) { return to_py(dimension(to_partition(p))); },
        py::arg("partition"));
  m.def("extend_weights", [](const py::dict& weights, int j) {
    WeightRow row;
    for (const auto& [key, value] : weights) {
      row[to_partition(key.cast<std::vector<int>>())] =
          to_rational(py::reinterpret_borrow<py::object>(value));
    }
    py::dict out;
    for (const auto& [p, w] : extend_weights(row, j)) {
      out[to_py(p)] = to_py(w);
    }
    return out;
  }, py::arg("weights"), py::arg("j"),
     "Young-graph transfer: weight of each partition of j+1 is the sum over those it covers.");
  m.def("mn_character", [](const std::vector<int>& lambda, const std::vector<int>& mu) {
    Integer value;
    {
      py::gil_scoped_release release;
      value = mn_character(to_partition(lambda), to_partition(mu));
    }
    return to_py(value);
  }, py::arg("lam"), py::arg("mu"), "Irreducible character of S_m at cycle type mu.");
  m.def("class_size", [](const std::vector<int>& mu) { return to_py(class_size(to_partition(mu))); },
        py::arg("mu"));
  m.def("character_ratio",
        [](const std::vector<int>& p) { return to_py(character_ratio(to_partition(p))); },
        py::arg("partition"));
  m.def("eigenvalue", [](const std::vector<int>& p) { return to_py(eigenvalue(to_partition(p)).value); },
        py::arg("partition"), "s = 1/n + (n-1)/n r(partition).");

  // spectral side
  m.def("mixing_time_steps", &mixing_time_steps, py::arg("n"), py::arg("c"));
  m.def("exact_tv_fourier", [](int n, long t, const std::string& mode) {
    TvValue tv;
    {
      py::gil_scoped_release release;
      tv = exact_tv_fourier(WalkParams::at_steps(n, t), parse_mode(mode));
    }
    return tv_to_py(tv);
  }, py::arg("n"), py::arg("t"), py::arg("mode") = "exact");
  m.def("truncated_tv", [](int n, long t, int truncation, const std::string& mode) {
    TruncatedTv cut;
    {
      py::gil_scoped_release release;
      cut = truncated_tv(WalkParams::at_steps(n, t), truncation, parse_mode(mode));
    }
    py::dict d;
    d["truncation"] = cut.truncation;
    d["main"] = tv_to_py(cut.main);
    d["error_bound"] = cut.error_bound;
    d["error_bound_exact"] = to_py(cut.error_bound_exact);
    return d;
  }, py::arg("n"), py::arg("t"), py::arg("truncation"), py::arg("mode") = "exact");
  m.def("remainder_bound", [](int n, long t, int truncation) {
    py::gil_scoped_release release;
    return remainder_bound(WalkParams::at_steps(n, t), truncation);
  }, py::arg("n"), py::arg("t"), py::arg("truncation"));
  m.def("smallest_truncation", [](int n, long t, double target) {
    py::gil_scoped_release release;
    return smallest_truncation(WalkParams::at_steps(n, t), target);
  }, py::arg("n"), py::arg("t"), py::arg("target"));
  m.def("convolution_oracle", [](int n, long t) {
    OracleResult r;
    {
      py::gil_scoped_release release;
      r = convolution_oracle(n, t);
    }
    return py::make_tuple(classes_to_py(r.classes), to_py(r.tv));
  }, py::arg("n"), py::arg("t"), "Brute-force (class masses, TV) after t steps.");
  m.def("profile_curve", [](int n, const std::vector<double>& cs, int truncation,
                            const std::string& mode) {
    std::vector<ProfilePoint> points;
    {
      py::gil_scoped_release release;
      points = profile_curve(n, cs, truncation, parse_mode(mode));
    }
    py::list out;
    for (const auto& p : points) {
      py::dict d;
      d["n"] = p.n;
      d["c"] = p.c;
      d["t"] = p.t;
      d["tv_main"] = p.tv_main;
      d["error_bound"] = p.error_bound;
      d["tv_limit"] = p.tv_limit;
      d["mode"] = to_string(p.mode);
      out.append(d);
    }
    return out;
  }, py::arg("n"), py::arg("c_values"), py::arg("truncation"), py::arg("mode") = "exact");

  // limit profile
  m.def("tj_eval", [](int j, const py::object& z) { return to_py(tj_eval(j, to_rational(z))); },
        py::arg("j"), py::arg("z"));
  m.def("fc_eval", &fc_eval, py::arg("c"), py::arg("x"));
  m.def("series_vs_closed_form", [](double c, int n, int terms) {
    const SeriesCheck s = series_vs_closed_form(c, n, terms);
    py::dict d;
    d["residual"] = s.residual;
    d["partial_sum"] = s.partial_sum;
    d["closed_form"] = s.closed_form;
    d["converged"] = s.converged;
    return d;
  }, py::arg("c"), py::arg("N"), py::arg("J"));
  m.def("poisson_tv", &poisson_tv, py::arg("a"), py::arg("b"));
  m.def("poisson_overlap", &poisson_overlap, py::arg("a"), py::arg("b"));
  m.def("limit_profile", &limit_profile, py::arg("c"));
  m.def("lemma43_check", [](int n, int j, const std::vector<int>& mu) {
    const Lemma43Result r = lemma43_check(n, j, to_partition(mu));
    py::dict d;
    d["applicable"] = r.applicable;
    d["reason"] = r.reason;
    d["lhs"] = r.applicable ? to_py(r.lhs) : py::none();
    d["rhs"] = r.applicable ? to_py(r.rhs) : py::none();
    d["equal"] = r.equal;
    return d;
  }, py::arg("n"), py::arg("j"), py::arg("mu"));
  m.def("mixed_expectation", &mixed_expectation, py::arg("n"), py::arg("c"),
        py::arg("tv_units") = false);

  // permutation statistics
  m.def("fixed_point_law", [](int n, int k) { return to_py(fixed_point_law(n, k)); }, py::arg("n"),
        py::arg("m"));
  m.def("qcycle_probability", [](int n, int q, int k) { return to_py(qcycle_probability(n, q, k)); },
        py::arg("n"), py::arg("q"), py::arg("m"));
  m.def("count_small_cycle_perms", [](int n, int j) { return to_py(count_small_cycle_perms(n, j)); },
        py::arg("n"), py::arg("j"));
  m.def("prop37_margin", &prop37_margin, py::arg("n"), py::arg("j"));
  m.def("simulate_walk", [](int n, long t, std::uint64_t seed, long index) {
    const PermState s = simulate_walk({n, t, 1, seed}, index);
    return std::vector<int>(s.mapping().begin(), s.mapping().end());
  }, py::arg("n"), py::arg("t"), py::arg("seed") = 0, py::arg("index") = 0,
     "Final one-line permutation of trajectory `index`.");
  m.def("empirical_fixed_point_hist", [](int n, long t, long samples, std::uint64_t seed,
                                         double reference_rate) {
    FixedPointHistogram h;
    {
      py::gil_scoped_release release;
      h = empirical_fixed_point_hist({n, t, samples, seed}, reference_rate);
    }
    py::dict d;
    d["counts"] = h.counts;
    d["empirical"] = h.empirical;
    d["reference"] = h.reference;
    d["reference_tail"] = h.reference_tail;
    d["tv"] = h.tv;
    d["mean"] = h.mean;
    return d;
  }, py::arg("n"), py::arg("t"), py::arg("samples"), py::arg("seed") = 0,
     py::arg("reference_rate") = 1.0);

  m.def("verify", [](const std::vector<std::string>& only, std::optional<int> n,
                     std::optional<int> j, bool inject_cache_fault) {
    VerifyOptions options;
    options.only = only;
    options.n = n;
    options.j = j;
    options.inject_cache_fault = inject_cache_fault;
    std::vector<CheckRecord> records;
    {
      py::gil_scoped_release release;
      records = run_verification(options);
    }
    py::list out;
    for (const auto& r : records) {
      py::dict d;
      d["family"] = r.family;
      d["name"] = r.name;
      py::dict inputs;
      for (const auto& [key, value] : r.inputs) {
        inputs[py::str(key)] = value;
      }
      d["inputs"] = inputs;
      d["cases"] = r.cases;
      d["residual"] = r.residual;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("only") = std::vector<std::string>{}, py::arg("n") = py::none(),
     py::arg("j") = py::none(), py::arg("inject_cache_fault") = false,
     "Run the invariant suite; one dict per check.");
}
