#include "tfid/error.hpp"
#include "tfid/experiments.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tfid;

namespace {

using Gen4 = Eigen::Matrix<double, 4, 2>;

Lambda4 to_lambda(const std::array<std::int64_t, 4>& p) { return {p[0], p[1], p[2], p[3]}; }

py::dict report_dict(const IdentificationReport& r) {
  py::dict d;
  d["spreading_lower"] = r.spreading.lower;
  d["spreading_upper"] = r.spreading.upper;
  d["response_lower"] = r.response.lower;
  d["response_upper"] = r.response.upper;
  d["condition"] = r.condition;
  d["recovery_error"] = r.recovery_error;
  d["identifiable"] = r.identifiable;
  d["density_2"] = r.density_2 ? py::cast(*r.density_2) : py::none();
  d["density_tilde"] = r.density_tilde ? py::cast(*r.density_tilde) : py::none();
  d["num_points"] = r.num_points;
  d["seconds"] = r.seconds;
  return d;
}

py::dict record_dict(const SweepRecord& r) {
  py::dict d;
  d["generator"] = Gen4(r.generator.gen);
  d["discrete"] = Eigen::Matrix<std::int64_t, 4, 2>(r.discrete);
  d["L"] = r.L;
  d["density_2"] = r.density_2;
  d["density_tilde"] = r.density_tilde;
  d["spreading_lower"] = r.spreading_lower;
  d["response_lower"] = r.response_lower;
  d["identifier"] = r.identifier;
  d["identifiable"] = r.identifiable;
  d["num_points"] = r.num_points;
  d["truncated"] = r.truncated;
  py::list per;
  for (const auto& p : r.per_identifier) {
    py::dict e;
    e["name"] = p.name;
    e["response_lower"] = p.response_lower;
    e["response_lower_doubled"] = p.response_lower_doubled;
    e["well_conditioned"] = p.well_conditioned;
    per.append(e);
  }
  d["per_identifier"] = per;
  return d;
}

ExperimentConfig make_config(std::size_t L, int trunc_n, double tol, std::uint64_t seed) {
  ExperimentConfig c;
  c.L = L;
  c.trunc_n = trunc_n;
  c.tol = tol;
  c.seed = seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_tfid, m) {
  m.doc() = "Finite time-frequency operator identification";

  auto base = py::register_exception<Error>(m, "TfidError", PyExc_ValueError);
  py::register_exception<DegenerateLattice>(m, "DegenerateLattice", base);
  py::register_exception<LengthMismatch>(m, "LengthMismatch", base);
  py::register_exception<NotADivisor>(m, "NotADivisor", base);
  py::register_exception<UnknownKind>(m, "UnknownKind", base);
  py::register_exception<InvalidParams>(m, "InvalidParams", base);
  py::register_exception<EmptyFamily>(m, "EmptyFamily", base);
  py::register_exception<ShapeMismatch>(m, "ShapeMismatch", base);
  py::register_exception<NotIdentifiable>(m, "NotIdentifiable", base);
  py::register_exception<DegenerateDiscretization>(m, "DegenerateDiscretization", base);

  // Lattices: generators are 4x2 arrays, column j = (a_j, b_j, c_j, d_j).
  m.def("two_beurling_density", [](const Gen4& g) { return two_beurling_density(Lattice4(g)); },
        py::arg("gen"));
  m.def("necessary_condition_holds",
        [](const Gen4& g) { return necessary_condition_holds(Lattice4(g)); }, py::arg("gen"));
  m.def("tilde_lattice", [](const Gen4& g) { return Eigen::Matrix2d(tilde_lattice(Lattice4(g)).gen); },
        py::arg("gen"));
  m.def("count_points_in_ball",
        [](const Gen4& g, double radius, const Eigen::Vector4d& center) {
          return count_points_in_ball(Lattice4(g), radius, center);
        },
        py::arg("gen"), py::arg("radius"), py::arg("center") = Eigen::Vector4d(Eigen::Vector4d::Zero()));

  // Signals.
  m.def("dft", [](const CVector& f) { return CVector(dft(Signal(f)).data()); }, py::arg("f"));
  m.def("idft", [](const CVector& f) { return CVector(idft(Signal(f)).data()); }, py::arg("f"));
  m.def("tf_shift",
        [](const CVector& f, std::int64_t k, std::int64_t l) {
          return CVector(tf_shift(Signal(f), {k, l}).data());
        },
        py::arg("f"), py::arg("k"), py::arg("l"));
  m.def("stft", [](const CVector& f, const CVector& g) { return Table(stft(Signal(f), Signal(g))); },
        py::arg("f"), py::arg("window"));
  m.def("zak", [](const CVector& f, std::int64_t a) { return Table(zak(Signal(f), a)); },
        py::arg("f"), py::arg("a"));
  m.def("make_window",
        [](const std::string& kind, std::size_t L, std::int64_t a, double chirp_rate,
           std::uint64_t seed) {
          return CVector(make_window(parse_window_kind(kind), L, {a, chirp_rate, seed}).data());
        },
        py::arg("kind"), py::arg("L"), py::arg("a") = 1, py::arg("chirp_rate") = 1.0,
        py::arg("seed") = 0);

  // Operators, given by their L x L kernel.
  m.def("convert",
        [](const Table& kernel, const std::string& rep) {
          return convert(HSOperator(kernel), parse_representation(rep));
        },
        py::arg("kernel"), py::arg("representation"));
  m.def("to_kernel",
        [](const Table& table, const std::string& rep) {
          return to_kernel(table, parse_representation(rep));
        },
        py::arg("table"), py::arg("representation"));
  m.def("apply",
        [](const Table& kernel, const CVector& f) {
          return CVector(apply(HSOperator(kernel), Signal(f)).data());
        },
        py::arg("kernel"), py::arg("f"));
  m.def("family_member",
        [](const Table& kernel, const std::array<std::int64_t, 4>& lam) {
          return Table(family_member(HSOperator(kernel), to_lambda(lam)).kernel());
        },
        py::arg("kernel"), py::arg("lam"));
  m.def("family_member_factored",
        [](const Table& kernel, const std::array<std::int64_t, 4>& lam) {
          return Table(family_member_factored(HSOperator(kernel), to_lambda(lam)).kernel());
        },
        py::arg("kernel"), py::arg("lam"));
  m.def("make_h0",
        [](const std::string& kind, std::size_t L, std::int64_t box_time,
           std::int64_t box_freq) {
          H0Params p;
          p.box_time = box_time;
          p.box_freq = box_freq;
          return Table(make_h0(parse_h0_kind(kind), L, p).kernel());
        },
        py::arg("kind"), py::arg("L"), py::arg("box_time") = 1, py::arg("box_freq") = 1);

  // Identification.
  m.def("riesz_bounds",
        [](const Eigen::MatrixXcd& columns) {
          const RieszBounds b = riesz_bounds(columns);
          return std::make_pair(b.lower, b.upper);
        },
        py::arg("columns"), "(sigma_min^2, sigma_max^2) of the synthesis matrix.");
  m.def("recover_coefficients",
        [](const Eigen::MatrixXcd& A, const CVector& v, double tol) {
          return recover_coefficients(A, v, tol).coefficients;
        },
        py::arg("A"), py::arg("v"), py::arg("tol") = 1e-6);

  // Experiments.
  m.def("run_thm51",
        [](std::size_t L, std::int64_t a) {
          const Thm51Outcome o = run_thm51(L, a);
          py::dict d = report_dict(o.report);
          d["matrix"] = o.matrix;
          d["identity_deviation"] = o.identity_deviation;
          return d;
        },
        py::arg("L") = 64, py::arg("a") = 8);
  m.def("run_gaussian_example",
        [](int variant, double alpha, double beta, std::size_t L, int trunc_n, double tol) {
          const GaussianOutcome o =
              run_gaussian_example(variant, alpha, beta, make_config(L, trunc_n, tol, 7));
          py::dict d = record_dict(o.record);
          d["sufficient_region"] = o.sufficient_region;
          d["caption_region"] = o.caption_region;
          d["outside_riesz_regime"] = o.outside_riesz_regime;
          return d;
        },
        py::arg("variant"), py::arg("alpha"), py::arg("beta"), py::arg("L") = 64,
        py::arg("trunc_n") = 4, py::arg("tol") = 1e-6);
  m.def("run_notident",
        [](double alpha, double beta, std::size_t L, int trunc_n, double tol) {
          const NotIdentOutcome o = run_notident(alpha, beta, make_config(L, trunc_n, tol, 7));
          py::dict d = record_dict(o.record);
          d["density_formula"] = o.density_formula;
          d["all_below_tol"] = o.all_below_tol;
          d["decreasing"] = o.decreasing;
          d["spreading_riesz"] = o.spreading_riesz;
          return d;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("L") = 128, py::arg("trunc_n") = 4,
        py::arg("tol") = 1e-6);
  m.def("run_density_sweep",
        [](std::size_t samples, std::size_t L, std::uint64_t seed, const std::string& out,
           const std::string& format) {
          ExperimentConfig c = make_config(L, 4, 1e-6, seed);
          c.samples = samples;
          c.out_path = out;
          c.format = format;
          SweepResult r;
          {
            py::gil_scoped_release release;
            r = run_density_sweep(c);
          }
          py::dict d;
          py::list records;
          for (const auto& rec : r.records) records.append(record_dict(rec));
          d["records"] = records;
          d["rejected"] = r.rejected;
          d["violations"] = r.violations;
          d["arithmetic_failures"] = r.arithmetic_failures;
          return d;
        },
        py::arg("samples") = 200, py::arg("L") = 64, py::arg("seed") = 7, py::arg("out") = "",
        py::arg("format") = "csv");
  m.attr("CSV_HEADER") = kCsvHeader;
}
