// Copyright 2026 The SSPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sspc: command-line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sspc/io.hpp"
#include "sspc/sspc.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kPass = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 20240607;
  std::string out;
  std::string format = "json";
  bool timestamp = false;
};

/// Collects input digests and writes the final report.
class Report {
 public:
  Report(std::string command, const Globals& g) : g_(g) {
    doc_["tool"] = "sspc";
    doc_["tool_version"] = SSPC_VERSION;
    doc_["command"] = std::move(command);
    doc_["inputs"] = json::array();
    doc_["parameters"] = json::object();
  }

  void input(const fs::path& path) {
    doc_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_hex(sspc::io::read_text(path))}});
  }

  json& parameters() { return doc_["parameters"]; }
  json& result() { return doc_["result"]; }

  /// csv: plot data replaces the JSON document when the command provides it.
  int emit(int code, const std::string& csv = {}) {
    doc_["status"] = code == kPass ? "pass" : (code == kVerificationFailure ? "fail" : "error");
    if (g_.timestamp) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      doc_["metadata"] = {{"generated_at", buf}};
    }
    std::string text;
    if (g_.format == "csv") {
      if (csv.empty()) throw sspc::InvalidArgument("this command has no CSV output; use --format json");
      text = csv;
    } else {
      text = doc_.dump(2) + "\n";
    }
    if (g_.out.empty()) {
      std::cout << text;
    } else {
      sspc::io::write_text(g_.out, text);
    }
    return code;
  }

 private:
  json doc_ = json::object();
  const Globals& g_;
};

json channel_probs_json(const sspc::PauliErrorChannel& ch) { return sspc::io::pauli_channel_to_json(ch); }

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string ideal, experimental;
};

int cmd_analyze(const AnalyzeArgs& a, const Globals& g) {
  Report rep("analyze", g);
  rep.input(a.ideal);
  rep.input(a.experimental);
  const auto ideal = sspc::io::read_channel(a.ideal);
  const auto exp = sspc::io::read_channel(a.experimental);
  if (ideal.kind() != sspc::ChannelKind::kPtm || exp.kind() != sspc::ChannelKind::kPtm) {
    throw sspc::FormatError("analyze expects two files of kind ptm");
  }
  std::optional<sspc::ErrorAnalysis> analysis;
  try {
    analysis = sspc::analyze_gate(ideal, exp);
  } catch (const sspc::NotCompletelyPositive& e) {
    std::cerr << "sspc: " << e.what()
              << "\nThe experimental matrix is not completely positive; it is recommended to check the output "
                 "of the experimental method.\n";
    rep.result() = {{"completely_positive", false}, {"min_choi_eigenvalue", e.min_eigenvalue()}};
    rep.emit(kInputError);
    return kInputError;
  }
  const auto& an = *analysis;
  auto& r = rep.result();
  r["full_gst"] = sspc::io::real_matrix_to_json(an.full_gst.real_matrix());
  r["completely_positive"] = true;
  r["min_choi_eigenvalue"] = an.min_choi_eigenvalue;
  r["trace_preserving"] = an.completeness.trace_preserving;
  r["completeness_residual"] = an.completeness.residual;
  r["kraus_count"] = an.kraus.operators().size();
  r["pauli_channel"] = channel_probs_json(an.channel);
  r["perfection_rate"] = an.channel.perfection_rate();
  r["offdiagonal_mass"] = an.offdiagonal_mass;
  r["warnings"] = an.warnings;
  return rep.emit(kPass);
}

// ---- accumulate ---------------------------------------------------------------

struct AccumulateArgs {
  std::string circuit;
  std::string method = "auto";
};

int cmd_accumulate(const AccumulateArgs& a, const Globals& g) {
  Report rep("accumulate", g);
  rep.input(a.circuit);
  const auto circuit = sspc::io::read_circuit(a.circuit);
  sspc::ConvolutionMethod m = sspc::ConvolutionMethod::kAuto;
  if (a.method == "direct") m = sspc::ConvolutionMethod::kDirect;
  else if (a.method == "transform") m = sspc::ConvolutionMethod::kTransform;
  else if (a.method != "auto") throw sspc::InvalidArgument("--method must be auto, direct or transform");
  rep.parameters()["method"] = a.method;
  const auto trace = sspc::per_step_trace(circuit, m);
  const auto final_channel = sspc::accumulate(circuit, m);
  rep.result() = {{"n_qubits", circuit.n_qubits()},
                  {"depth", circuit.depth()},
                  {"trace", sspc::io::trace_to_json(trace)},
                  {"perfection_rate", final_channel.perfection_rate()},
                  {"final_channel", channel_probs_json(final_channel)}};
  return rep.emit(kPass, sspc::io::trace_to_csv(trace));
}

// ---- sspc-verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string basis = "zz";
  std::string matrix;
  std::size_t trials = 1000;
};

int cmd_sspc_verify(const VerifyArgs& a, const Globals& g) {
  Report rep("sspc-verify", g);
  const sspc::ParityCheckSpec spec{sspc::parse_parity_basis(a.basis)};
  sspc::ComplexMatrix u = sspc::sspc_unitary(spec.basis);
  std::string source = "built-in";
  if (!a.matrix.empty()) {
    rep.input(a.matrix);
    const auto rep_u = sspc::io::read_channel(a.matrix);
    if (rep_u.kind() != sspc::ChannelKind::kUnitary || rep_u.n_qubits() != 3) {
      throw sspc::FormatError("--matrix must be a 3-qubit unitary file");
    }
    u = rep_u.matrix();
    source = a.matrix;
  }
  rep.parameters() = {{"basis", sspc::basis_name(spec.basis)}, {"trials", a.trials}, {"seed", g.seed}, {"tol", g.tol}};
  const auto steps = sspc::decomposed_parity_circuit(spec);
  const double decomposed = sspc::max_abs(u - sspc::sequence_product(steps));
  const double involution = sspc::max_abs(u * u - sspc::ComplexMatrix::Identity(8, 8));
  const double unitarity = sspc::unitarity_residual(u);
  const bool clifford = sspc::is_clifford(u, g.tol);
  const auto pv = sspc::verify_parity_semantics(u, spec, a.trials, g.seed, g.tol);
  json checks = json::array();
  const auto add = [&](const char* name, double dev, bool ok) {
    checks.push_back({{"check", name}, {"max_deviation", dev}, {"pass", ok}});
    return ok;
  };
  bool ok = true;
  ok &= add("unitary", unitarity, unitarity <= 1e-12);
  ok &= add("decomposed_product", decomposed, decomposed <= 1e-12);
  ok &= add("involution", involution, involution <= 1e-12);
  ok &= add("clifford", 0.0, clifford);
  ok &= add("parity_eigenstate", pv.max_eigen_deviation, pv.max_eigen_deviation <= g.tol);
  ok &= add("outcome_probability", pv.max_probability_deviation, pv.max_probability_deviation <= g.tol);
  ok &= add("post_measurement_state", pv.max_state_deviation, pv.max_state_deviation <= g.tol);
  ok &= add("normalization", pv.max_normalization_deviation, pv.max_normalization_deviation <= g.tol);
  rep.result() = {{"matrix", source}, {"checks", checks}, {"max_deviation", pv.max_deviation()}};
  if (!ok) rep.result()["witness_state"] = sspc::io::matrix_to_json(pv.worst_state);
  return rep.emit(ok ? kPass : kVerificationFailure);
}

// ---- compare -------------------------------------------------------------------

struct CompareArgs {
  double decomposed_p = 0.00375;
  double sspc_p = 0.00375;
  std::string model = "phase_flip";
  std::optional<double> measurement_p;
};

int cmd_compare(const CompareArgs& a, const Globals& g) {
  Report rep("compare", g);
  const auto model = sspc::parse_model(a.model);
  std::optional<sspc::NoiseSpec> meas;
  if (a.measurement_p) meas = sspc::NoiseSpec{model, *a.measurement_p, true};
  const auto r = sspc::compare_decomposed_vs_sspc({model, a.decomposed_p, true}, {model, a.sspc_p, true}, meas);
  rep.parameters() = {{"decomposed", sspc::io::noise_to_json(r.decomposed_noise)},
                      {"sspc", sspc::io::noise_to_json(r.sspc_noise)},
                      {"measurement", meas ? sspc::io::noise_to_json(*meas) : json(nullptr)}};
  rep.result() = {
      {"decomposed",
       {{"layers", r.decomposed.depth()},
        {"gate_fidelity", sspc::noise_fidelity(r.decomposed_noise, 3)},
        {"trace", sspc::io::trace_to_json(r.decomposed_trace)},
        {"perfection_rate", r.decomposed_perfection()},
        {"channel", channel_probs_json(r.decomposed_channel)}}},
      {"sspc",
       {{"layers", r.sspc.depth()},
        {"gate_fidelity", sspc::noise_fidelity(r.sspc_noise, 3)},
        {"trace", sspc::io::trace_to_json(r.sspc_trace)},
        {"perfection_rate", r.sspc_perfection()},
        {"channel", channel_probs_json(r.sspc_channel)}}},
      {"ratio", r.ratio()},
      {"measurement_layer_included", meas.has_value()}};
  std::string csv = "circuit,step,layer,perfection_rate\n";
  char buf[160];
  for (std::size_t i = 0; i < r.decomposed_trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "decomposed,%zu,%s,%.17g\n", i + 1, r.decomposed_trace[i].layer.c_str(),
                  r.decomposed_trace[i].perfection_rate);
    csv += buf;
  }
  for (std::size_t i = 0; i < r.sspc_trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "sspc,%zu,%s,%.17g\n", i + 1, r.sspc_trace[i].layer.c_str(), r.sspc_trace[i].perfection_rate);
    csv += buf;
  }
  return rep.emit(kPass, csv);
}

// ---- clock ---------------------------------------------------------------------

struct ClockArgs {
  double ta = 0.0, tb = 0.0, err = 0.01;
  bool a_odd = false, b_odd = false;
  std::int64_t bound = 100000;
  std::optional<std::int64_t> reported_a;
  std::optional<double> reported_total;
};

int cmd_clock(const ClockArgs& a, const Globals& g) {
  Report rep("clock", g);
  rep.parameters() = {{"t_a_ns", a.ta}, {"t_b_ns", a.tb}, {"a_odd", a.a_odd}, {"b_odd", a.b_odd},
                      {"error", a.err}, {"search_bound", a.bound}};
  try {
    const auto s = sspc::clock_solve(a.ta, a.tb, {a.a_odd, a.b_odd}, a.err, a.bound);
    rep.result() = {{"a", s.a}, {"b", s.b}, {"total_time_us", s.total_time}, {"residual", s.residual}};
    if (a.reported_a || a.reported_total) {
      const auto d = sspc::compare_with_reported(s, a.ta, a.reported_a, a.reported_total);
      rep.result()["reported"] = {{"a", a.reported_a ? json(*a.reported_a) : json(nullptr)},
                                  {"total_time_us", a.reported_total ? json(*a.reported_total) : json(nullptr)},
                                  {"consistent", d.matches},
                                  {"note", d.message}};
    }
    return rep.emit(kPass);
  } catch (const sspc::NoSolution& e) {
    rep.result() = {{"error", e.what()}};
    return rep.emit(kVerificationFailure);
  }
}

// ---- grape ---------------------------------------------------------------------

struct GrapeArgs {
  std::string spec;
  std::string target = "zz";
  std::string schedule_out;
  std::size_t slots = 1000;
  double dt = 10.0;
  std::size_t max_iter = 500;
  double target_fidelity = 0.999;
  bool modulated = false;
  std::string init = "resonant";
  double init_scale = 0.0;
  std::size_t segment = 1;
  std::optional<double> b1_max;
};

int cmd_grape(const GrapeArgs& a, const Globals& g) {
  Report rep("grape", g);
  rep.input(a.spec);
  const auto spec = sspc::io::spin_spec_from_json(sspc::io::read_json(a.spec));
  sspc::GrapeOptions o;
  o.n_slots = a.slots;
  o.dt = a.dt;
  o.max_iter = a.max_iter;
  o.target_fidelity = a.target_fidelity;
  o.modulated = a.modulated;
  o.seed = g.seed;
  o.init_scale = a.init_scale;
  o.segment_slots = a.segment;
  o.b1_max = a.b1_max;
  if (a.init == "resonant") o.init = sspc::GrapeInit::kResonant;
  else if (a.init == "random") o.init = sspc::GrapeInit::kRandom;
  else throw sspc::InvalidArgument("--init must be resonant or random");
  const auto target = sspc::sspc_unitary(sspc::parse_parity_basis(a.target));
  rep.parameters() = {{"spec", sspc::io::spin_spec_to_json(spec)}, {"target", a.target}, {"n_slots", o.n_slots},
                      {"dt_ns", o.dt}, {"max_iter", o.max_iter}, {"target_fidelity", o.target_fidelity},
                      {"modulated", o.modulated}, {"init", a.init}, {"init_scale", o.init_scale},
                      {"segment_slots", o.segment_slots}, {"seed", o.seed}};
  const auto res = sspc::grape_optimize(target, spec, o);
  std::cerr << "fidelity " << res.fidelity << " after " << res.iterations << " iterations\n";
  const auto csv = sspc::io::schedule_to_csv(res.schedule);
  if (!a.schedule_out.empty()) sspc::io::write_text(a.schedule_out, csv);
  rep.result() = {{"fidelity", res.fidelity},
                  {"iterations", res.iterations},
                  {"converged", res.converged},
                  {"total_time_ns", res.schedule.total_time()},
                  {"history", res.history}};
  return rep.emit(res.converged ? kPass : kVerificationFailure, csv);
}

// ---- spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  std::string schedule;
  std::string spec;
};

int cmd_spectrum(const SpectrumArgs& a, const Globals& g) {
  Report rep("spectrum", g);
  rep.input(a.schedule);
  const auto sched = sspc::io::schedule_from_csv(sspc::io::read_text(a.schedule));
  const auto ps = sspc::pulse_spectrum(sched);
  json peaks = json::array();
  bool all_explained = true;
  if (!a.spec.empty()) {
    rep.input(a.spec);
    const auto spec = sspc::io::spin_spec_from_json(sspc::io::read_json(a.spec));
    for (const auto& p : sspc::assign_peaks(ps, sspc::reference_lines(sspc::drift_hamiltonian(spec), spec))) {
      all_explained &= p.explained;
      peaks.push_back({{"group", p.group}, {"frequency_mhz", p.peak.frequency}, {"magnitude", p.peak.magnitude},
                       {"nearest_line_mhz", p.nearest_line}, {"distance_mhz", p.distance}, {"explained", p.explained}});
    }
  } else {
    for (const auto& ch : ps.channels) {
      for (const auto& p : ch.peaks) {
        peaks.push_back({{"group", ch.group}, {"frequency_mhz", p.frequency}, {"magnitude", p.magnitude}});
      }
    }
  }
  rep.result() = {{"resolution_mhz", ps.resolution}, {"peaks", peaks}};
  if (!a.spec.empty()) rep.result()["all_peaks_explained"] = all_explained;
  return rep.emit(all_explained ? kPass : kVerificationFailure, sspc::io::spectrum_to_csv(ps));
}

// ---- convert -------------------------------------------------------------------

struct ConvertArgs {
  std::string in;
  std::string to;
};

int cmd_convert(const ConvertArgs& a, const Globals& g) {
  Report rep("convert", g);
  rep.input(a.in);
  const auto src = sspc::io::read_channel(a.in);
  sspc::Diagnostics diag;
  const auto dst = sspc::convert(src, sspc::parse_kind(a.to), &diag);
  rep.result() = {{"channel", sspc::io::channel_to_json(dst)}, {"warnings", diag.warnings}};
  return rep.emit(kPass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli error analysis, parity-check gates and spin-control pulse tools"};
  app.set_version_flag("--version", std::string(SSPC_VERSION));
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Verification tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--timestamp", g.timestamp, "Add a generation timestamp under \"metadata\"");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Error analysis of an experimental gate PTM");
  c_an->add_option("--ideal", an.ideal, "Ideal PTM file")->required()->check(CLI::ExistingFile);
  c_an->add_option("--experimental", an.experimental, "Experimental PTM file")->required()->check(CLI::ExistingFile);

  AccumulateArgs ac;
  auto* c_ac = app.add_subcommand("accumulate", "Accumulate Pauli channels through a layered circuit");
  c_ac->add_option("--circuit", ac.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  c_ac->add_option("--method", ac.method, "auto, direct or transform")->capture_default_str();

  VerifyArgs ve;
  auto* c_ve = app.add_subcommand("sspc-verify", "Verify a single-step parity-check unitary");
  c_ve->add_option("--basis", ve.basis, "xx or zz")->capture_default_str();
  c_ve->add_option("--matrix", ve.matrix, "Unitary file to check instead of the built-in matrix")
      ->check(CLI::ExistingFile);
  c_ve->add_option("--trials", ve.trials, "Random states")->capture_default_str();

  CompareArgs co;
  auto* c_co = app.add_subcommand("compare", "Decomposed versus single-step parity check");
  c_co->add_option("--decomposed-p", co.decomposed_p, "Per-qubit error rate of each decomposed gate")->capture_default_str();
  c_co->add_option("--sspc-p", co.sspc_p, "Per-qubit error rate of the single-step gate")->capture_default_str();
  c_co->add_option("--model", co.model, "phase_flip, bit_flip or depolarizing")->capture_default_str();
  c_co->add_option("--measurement-p", co.measurement_p, "Append a measurement layer with this rate");

  ClockArgs cl;
  auto* c_cl = app.add_subcommand("clock", "Solve the drift-clock timing constraint");
  c_cl->add_option("--ta", cl.ta, "Period t_a (ns)")->required();
  c_cl->add_option("--tb", cl.tb, "Period t_b (ns)")->required();
  c_cl->add_flag("--a-odd", cl.a_odd, "Require odd a");
  c_cl->add_flag("--b-odd", cl.b_odd, "Require odd b");
  c_cl->add_option("--err", cl.err, "Allowed timing mismatch (ns)")->capture_default_str();
  c_cl->add_option("--bound", cl.bound, "Largest a searched")->capture_default_str();
  c_cl->add_option("--reported-a", cl.reported_a, "Published a to check against");
  c_cl->add_option("--reported-total", cl.reported_total, "Published total time (us) to check against");

  GrapeArgs gr;
  auto* c_gr = app.add_subcommand("grape", "Optimize a control pulse for a parity-check unitary");
  c_gr->add_option("--spec", gr.spec, "Spin system spec file")->required()->check(CLI::ExistingFile);
  c_gr->add_option("--target", gr.target, "xx or zz")->capture_default_str();
  c_gr->add_option("--slots", gr.slots, "Number of slots")->capture_default_str();
  c_gr->add_option("--dt", gr.dt, "Slot duration (ns)")->capture_default_str();
  c_gr->add_option("--max-iter", gr.max_iter, "Iteration limit")->capture_default_str();
  c_gr->add_option("--target-fidelity", gr.target_fidelity, "Stop once reached")->capture_default_str();
  c_gr->add_flag("--modulated", gr.modulated, "Carrier-modulated controls");
  c_gr->add_option("--init", gr.init, "resonant or random")->capture_default_str();
  c_gr->add_option("--init-scale", gr.init_scale, "Random initial term, fraction of b1_max")->capture_default_str();
  c_gr->add_option("--segment", gr.segment, "Slots per amplitude parameter")->capture_default_str();
  c_gr->add_option("--b1-max", gr.b1_max, "Override the spin file's control bound (T)");
  c_gr->add_option("--schedule-out", gr.schedule_out, "Write the schedule CSV here");

  SpectrumArgs sp;
  auto* c_sp = app.add_subcommand("spectrum", "Spectrum and peaks of a pulse schedule");
  c_sp->add_option("--schedule", sp.schedule, "Schedule CSV")->required()->check(CLI::ExistingFile);
  c_sp->add_option("--spec", sp.spec, "Spin spec; assigns peaks to transition lines")->check(CLI::ExistingFile);

  ConvertArgs cv;
  auto* c_cv = app.add_subcommand("convert", "Convert a channel file to another representation");
  c_cv->add_option("--in", cv.in, "Channel file")->required()->check(CLI::ExistingFile);
  c_cv->add_option("--to", cv.to, "Target kind")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*c_an) return cmd_analyze(an, g);
    if (*c_ac) return cmd_accumulate(ac, g);
    if (*c_ve) return cmd_sspc_verify(ve, g);
    if (*c_co) return cmd_compare(co, g);
    if (*c_cl) return cmd_clock(cl, g);
    if (*c_gr) return cmd_grape(gr, g);
    if (*c_sp) return cmd_spectrum(sp, g);
    if (*c_cv) return cmd_convert(cv, g);
  } catch (const sspc::VerificationFailure& e) {
    std::cerr << "sspc: verification failed: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "sspc: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
