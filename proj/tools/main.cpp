// Command-line front end: loads device files (observables, channels,
// instruments), runs the order/compatibility/bound/degrade queries and
// prints a JSON report. Exit codes: 0 ok or feasible, 1 infeasible,
// 2 undecided, 3 input or usage error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qord/bounds.hpp"
#include "qord/degrading.hpp"
#include "qord/dilation.hpp"
#include "qord/errors.hpp"
#include "qord/io.hpp"
#include "qord/ordering.hpp"
#include "qord/qubit.hpp"

namespace {

struct Global {
  double tol = 0.0;  // 0 keeps the per-solver defaults
  std::uint64_t seed = 1234;
  long max_iters = 20000;
  bool verbose = false;
};

qord::SolveOptions solve_options(const Global& g) {
  qord::SolveOptions s;
  if (g.tol > 0.0) {
    s.lp_tol = g.tol;
    s.psd_tol = g.tol;
  }
  s.seed = g.seed;
  s.max_iters = g.max_iters;
  s.collect_trace = g.verbose;
  return s;
}

int status_code(qord::Feasibility f) {
  switch (f) {
    case qord::Feasibility::feasible:
      return 0;
    case qord::Feasibility::infeasible:
      return 1;
    default:
      return 2;
  }
}

qord::Json real_matrix_json(const qord::RMatrix& m) {
  qord::Json rows = qord::Json::array();
  for (qord::Index i = 0; i < m.rows(); ++i) {
    qord::Json row = qord::Json::array();
    for (qord::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

qord::Json downsampled(const std::vector<double>& trace) {
  qord::Json out = qord::Json::array();
  const size_t stride = trace.size() > 200 ? trace.size() / 200 : 1;
  for (size_t i = 0; i < trace.size(); i += stride) out.push_back(trace[i]);
  return out;
}

class Timer {
 public:
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void emit(qord::Json report, const Timer& timer) {
  report["timing_ms"] = timer.ms();
  std::cout << report.dump(2) << std::endl;
}

int run_validate(const std::string& path) {
  Timer timer;
  const qord::LoadedDevice dev = qord::load_device(path);
  qord::Json report{{"command", "validate"}, {"kind", dev.kind}};
  std::vector<std::string> violations;

  if (dev.kind == "observable") {
    const qord::Observable a = qord::observable_from_json(dev.payload);
    const qord::ObservableReport rep = qord::validate_observable(a);
    report["psd_defect"] = rep.psd_defect;
    report["completeness_defect"] = rep.completeness_defect;
    if (rep.psd_defect > rep.psd_tol)
      violations.push_back("an effect has a negative eigenvalue");
    if (rep.completeness_defect > rep.sum_tol)
      violations.push_back("effects do not sum to the identity");
  } else if (dev.kind == "channel") {
    const qord::Channel c = qord::channel_from_json(dev.payload);
    const qord::ChannelReport rep = qord::validate_channel(c);
    report["tp_defect"] = rep.tp_defect;
    report["cp_defect"] = rep.cp_defect;
    if (rep.tp_defect > rep.tp_tol)
      violations.push_back("Kraus operators are not trace preserving");
    if (rep.cp_defect > rep.cp_tol)
      violations.push_back("Choi matrix has a negative eigenvalue");
  } else if (dev.kind == "instrument") {
    const qord::Instrument instr = qord::instrument_from_json(dev.payload);
    const qord::ChannelReport rep =
        qord::validate_channel(qord::total_channel(instr));
    report["tp_defect"] = rep.tp_defect;
    report["cp_defect"] = rep.cp_defect;
    if (!rep.ok())
      violations.push_back("branches do not sum to a channel");
  } else {
    throw qord::ParseError("unknown device kind \"" + dev.kind + "\"");
  }

  report["status"] = violations.empty() ? "ok" : "invalid";
  report["violations"] = violations;
  emit(std::move(report), timer);
  return violations.empty() ? 0 : 1;
}

int run_order_obs(const Global& g, const std::string& pa,
                  const std::string& pb) {
  Timer timer;
  const qord::Observable a = qord::load_observable(pa);
  const qord::Observable b = qord::load_observable(pb);
  const qord::ObsOrder r = qord::obs_leq(a, b, solve_options(g));
  qord::Json report{{"command", "order obs"},
                    {"status", qord::to_string(r.status)},
                    {"residual", r.residual},
                    {"iterations", r.iterations}};
  if (r.witness) report["witness"] = real_matrix_json(*r.witness);
  emit(std::move(report), timer);
  return status_code(r.status);
}

int run_order_chan(const Global& g, const std::string& p1,
                   const std::string& p2) {
  Timer timer;
  const qord::Channel l1 = qord::load_channel(p1);
  const qord::Channel l2 = qord::load_channel(p2);
  const qord::ChanOrder r = qord::chan_leq(l1, l2, solve_options(g));
  qord::Json report{{"command", "order chan"},
                    {"status", qord::to_string(r.status)},
                    {"residual", r.residual},
                    {"iterations", r.iterations}};
  if (r.witness) report["witness"] = qord::to_json(*r.witness);
  if (g.verbose) report["gap_trace"] = downsampled(r.trace);
  emit(std::move(report), timer);
  return status_code(r.status);
}

int run_compatible(const Global& g, const std::string& pc,
                   const std::string& po) {
  Timer timer;
  const qord::Channel lambda = qord::load_channel(pc);
  const qord::Observable a = qord::load_observable(po);
  const qord::AChannelResult r = qord::is_A_channel(lambda, a,
                                                    solve_options(g));
  qord::Json report{{"command", "compatible"},
                    {"status", qord::to_string(r.status)},
                    {"residual", r.residual},
                    {"iterations", r.iterations},
                    {"env_dim", r.dilation.env_dim}};
  if (r.witness) report["witness"] = qord::to_json(*r.witness);
  if (g.verbose) report["gap_trace"] = downsampled(r.trace);
  emit(std::move(report), timer);
  return status_code(r.status);
}

int run_least_disturbing(const std::string& po, const std::string& out,
                         const std::string& dilation_out) {
  Timer timer;
  const qord::Observable a = qord::load_observable(po);
  const qord::Channel lambda_a = qord::least_disturbing_channel(a);
  qord::write_text(out,
                   qord::device_file("channel", qord::to_json(lambda_a))
                       .dump(2) + "\n");
  qord::Json report{{"command", "least-disturbing"},
                    {"status", "ok"},
                    {"output", out},
                    {"dim_in", lambda_a.dim_in},
                    {"dim_out", lambda_a.dim_out}};
  if (!dilation_out.empty()) {
    qord::write_text(dilation_out,
                     qord::to_json(qord::naimark(a)).dump(2) + "\n");
    report["dilation_output"] = dilation_out;
  }
  emit(std::move(report), timer);
  return 0;
}

int run_degrade(const std::string& pi, const std::string& out) {
  Timer timer;
  const qord::Instrument instr = qord::load_instrument(pi);
  const qord::DegradingCertificate cert = qord::degrade(instr);
  qord::write_text(out,
                   qord::device_file("channel", qord::to_json(cert.epsilon))
                       .dump(2) + "\n");
  qord::Json report{{"command", "degrade"},
                    {"status", "ok"},
                    {"residual", cert.residual},
                    {"output", out},
                    {"dilation_dim", cert.dilation.dilation_dim},
                    {"kraus_count", cert.epsilon.kraus.size()},
                    {"remainder_defect",
                     qord::remainder_projector_defect(cert)}};
  emit(std::move(report), timer);
  return 0;
}

int run_bound(const std::string& po) {
  Timer timer;
  const qord::Observable a = qord::load_observable(po);
  const qord::DisturbanceBound b = qord::dksw_lower_bound(a);
  emit(qord::Json{{"command", "bound"},
                  {"status", "ok"},
                  {"per_effect_width", b.per_effect_width},
                  {"bound", b.bound},
                  {"argmax_outcome", b.argmax_outcome}},
       timer);
  return 0;
}

qord::Vector3 to_vector3(const std::vector<double>& v) {
  return qord::Vector3(v.at(0), v.at(1), v.at(2));
}

int run_qubit_observable(const std::vector<double>& v,
                         const std::string& out) {
  Timer timer;
  const qord::Observable a = qord::qubit_observable(to_vector3(v));
  qord::write_text(out, qord::device_file("observable", qord::to_json(a))
                            .dump(2) + "\n");
  emit(qord::Json{{"command", "qubit observable"},
                  {"status", "ok"},
                  {"output", out}},
       timer);
  return 0;
}

int run_qubit_decompose(const std::vector<double>& v) {
  Timer timer;
  const qord::WeightedUnitaryMix mix =
      qord::lueders_decomposition(to_vector3(v));
  emit(qord::Json{{"command", "qubit decompose"},
                  {"status", "ok"},
                  {"lambda", mix.lambda},
                  {"axis", {mix.axis(0), mix.axis(1), mix.axis(2)}},
                  {"identity", mix.identity}},
       timer);
  return 0;
}

int run_qubit_weight(double lambda, double mu) {
  Timer timer;
  const std::optional<double> lp =
      qord::solve_intermediate_weight(lambda, mu);
  qord::Json report{{"command", "qubit weight"}};
  if (lp) {
    report["status"] = "ok";
    report["lambda_prime"] = *lp;
    report["recomposed_mu"] = qord::compose_weights(lambda, *lp);
  } else {
    report["status"] = "no_solution";
  }
  emit(std::move(report), timer);
  return lp ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional measurement devices: validation, "
               "post-processing and concatenation order, disturbance "
               "bounds, degrading certificates"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--tol", g.tol, "override solver feasibility tolerances");
  app.add_option("--seed", g.seed, "seed for randomized solver restarts");
  app.add_option("--max-iters", g.max_iters,
                 "projection iteration budget per start");
  app.add_flag("--verbose", g.verbose, "attach solver traces to reports");

  std::string path1, path2, out_path = "-", dilation_out;
  std::vector<double> bloch;
  double lambda = 1.0, mu = 1.0;
  int rc = 0;

  CLI::App* validate = app.add_subcommand("validate", "check a device file");
  validate->add_option("path", path1)->required();
  validate->callback([&] { rc = run_validate(path1); });

  CLI::App* order = app.add_subcommand("order", "decide a preorder");
  order->require_subcommand(1);
  CLI::App* order_obs =
      order->add_subcommand("obs", "is A a post-processing of B?");
  order_obs->add_option("A", path1)->required();
  order_obs->add_option("B", path2)->required();
  order_obs->callback([&] { rc = run_order_obs(g, path1, path2); });
  CLI::App* order_chan =
      order->add_subcommand("chan", "does L1 factor through L2?");
  order_chan->add_option("L1", path1)->required();
  order_chan->add_option("L2", path2)->required();
  order_chan->callback([&] { rc = run_order_chan(g, path1, path2); });

  CLI::App* compatible = app.add_subcommand(
      "compatible", "can the channel arise while measuring the observable?");
  compatible->add_option("channel", path1)->required();
  compatible->add_option("observable", path2)->required();
  compatible->callback([&] { rc = run_compatible(g, path1, path2); });

  CLI::App* least = app.add_subcommand(
      "least-disturbing", "emit the least disturbing channel of A");
  least->add_option("observable", path1)->required();
  least->add_option("-o,--output", out_path);
  least->add_option("--dilation", dilation_out,
                    "also write the dilation data");
  least->callback(
      [&] { rc = run_least_disturbing(path1, out_path, dilation_out); });

  CLI::App* degrade = app.add_subcommand(
      "degrade", "factor an instrument's state change through the least "
                 "disturbing channel");
  degrade->add_option("instrument", path1)->required();
  degrade->add_option("-o,--output", out_path);
  degrade->callback([&] { rc = run_degrade(path1, out_path); });

  CLI::App* bound =
      app.add_subcommand("bound", "disturbance floor of an observable");
  bound->add_option("observable", path1)->required();
  bound->callback([&] { rc = run_bound(path1); });

  CLI::App* qubit = app.add_subcommand("qubit", "Bloch-vector family");
  qubit->require_subcommand(1);
  CLI::App* qobs = qubit->add_subcommand(
      "observable", "write the binary observable of a Bloch vector");
  qobs->add_option("--v", bloch, "Bloch vector")->expected(3)->required();
  qobs->add_option("-o,--output", out_path);
  qobs->callback([&] { rc = run_qubit_observable(bloch, out_path); });
  CLI::App* qdec = qubit->add_subcommand(
      "decompose", "identity weight and axis of the square-root channel");
  qdec->add_option("--v", bloch, "Bloch vector")->expected(3)->required();
  qdec->callback([&] { rc = run_qubit_decompose(bloch); });
  CLI::App* qw = qubit->add_subcommand(
      "weight", "solve for the intermediate mixing weight");
  qw->add_option("--lambda", lambda)->required();
  qw->add_option("--mu", mu)->required();
  qw->callback([&] { rc = run_qubit_weight(lambda, mu); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const qord::Error& e) {
    std::cout << qord::Json{{"status", "error"}, {"error", e.what()}}.dump(2)
              << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cout << qord::Json{{"status", "error"}, {"error", e.what()}}.dump(2)
              << std::endl;
    return 3;
  }
  return rc;
}
