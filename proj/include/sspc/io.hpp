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

// File formats: JSON channels, Pauli channels, circuits and spin specs;
// CSV schedules, spectra and traces.

#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sspc/circuit.hpp"
#include "sspc/noise.hpp"
#include "sspc/spectrum.hpp"
#include "sspc/spin.hpp"

namespace sspc::io {

using nlohmann::json;

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

inline json read_json(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

// ---- matrices -------------------------------------------------------------

inline Complex parse_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw FormatError("matrix entry must be a number or a [re, im] pair");
}

/// Row-major data: a flat list of rows·cols entries or a list of rows.
inline ComplexMatrix parse_matrix(const json& data, Eigen::Index rows, Eigen::Index cols) {
  if (!data.is_array()) throw FormatError("matrix data must be an array");
  ComplexMatrix m(rows, cols);
  // rows·cols entries means flat; otherwise rows arrays of cols entries.
  const bool nested = static_cast<Eigen::Index>(data.size()) != rows * cols &&
                      static_cast<Eigen::Index>(data.size()) == rows && !data.empty() && data[0].is_array();
  if (nested) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = data[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw FormatError("matrix row " + std::to_string(r) + " has the wrong length");
      }
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_entry(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw FormatError("matrix data has " + std::to_string(data.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_entry(data[static_cast<std::size_t>(r * cols + c)]);
  }
  return m;
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return data;
}

inline json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Validates the declared kind before accepting the payload.
inline ChannelRep channel_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("channel file must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw FormatError("channel file lacks a \"kind\" tag");
  if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer()) throw FormatError("channel file lacks \"n_qubits\"");
  if (!j.contains("data")) throw FormatError("channel file lacks \"data\"");
  const ChannelKind kind = parse_kind(j["kind"].get<std::string>());
  const int n = j["n_qubits"].get<int>();
  if (n < 1 || n > 6) throw FormatError("n_qubits must lie in 1..6");
  const auto d = static_cast<Eigen::Index>(pow2(n));
  const auto d2 = d * d;
  try {
    switch (kind) {
      case ChannelKind::kUnitary: return ChannelRep::unitary(parse_matrix(j["data"], d, d));
      case ChannelKind::kKraus: {
        if (!j["data"].is_array() || j["data"].empty()) throw FormatError("kraus data must be a non-empty list");
        std::vector<ComplexMatrix> ops;
        for (const auto& op : j["data"]) ops.push_back(parse_matrix(op, d, d));
        return ChannelRep::kraus(std::move(ops));
      }
      case ChannelKind::kChi:
      case ChannelKind::kChoi: {
        ComplexMatrix m = parse_matrix(j["data"], d2, d2);
        if (!is_hermitian(m, tol::kPhysicality)) {
          throw FormatError(std::string(kind_name(kind)) + " matrix is not Hermitian");
        }
        return ChannelRep::dense(kind, std::move(m));
      }
      case ChannelKind::kPtm:
      case ChannelKind::kSuperop: return ChannelRep::dense(kind, parse_matrix(j["data"], d2, d2));
    }
  } catch (const PhysicalityViolation& e) {
    throw FormatError(std::string("declared kind '") + std::string(kind_name(kind)) + "' rejected: " + e.what());
  }
  throw FormatError("unsupported kind");
}

inline json channel_to_json(const ChannelRep& rep) {
  json j{{"kind", kind_name(rep.kind())}, {"n_qubits", rep.n_qubits()}};
  if (rep.kind() == ChannelKind::kKraus) {
    json ops = json::array();
    for (const auto& a : rep.operators()) ops.push_back(matrix_to_json(a));
    j["data"] = std::move(ops);
  } else {
    j["data"] = matrix_to_json(rep.matrix());
  }
  return j;
}

inline ChannelRep read_channel(const std::filesystem::path& path) {
  try {
    return channel_from_json(read_json(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

// ---- Pauli channels -------------------------------------------------------

inline PauliErrorChannel pauli_channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("probs") || !j["probs"].is_object()) {
    throw FormatError("Pauli channel needs \"n_qubits\" and a \"probs\" object");
  }
  const int n = j["n_qubits"].get<int>();
  if (n < 1 || n > 8) throw FormatError("Pauli channel n_qubits must lie in 1..8");
  RealVector p = RealVector::Zero(static_cast<Eigen::Index>(pow4(n)));
  for (const auto& [label, value] : j["probs"].items()) {
    const PauliString s = PauliString::parse(label);
    if (s.n_qubits() != n) throw FormatError("label '" + label + "' does not have n_qubits letters");
    if (!value.is_number()) throw FormatError("probability for '" + label + "' is not a number");
    p(static_cast<Eigen::Index>(s.index())) = value.get<double>();
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-6) {
    throw FormatError("Pauli probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  return {n, std::move(p)};
}

inline json pauli_channel_to_json(const PauliErrorChannel& ch) {
  json probs = json::object();
  for (std::size_t s = 0; s < ch.size(); ++s) {
    if (std::abs(ch[s]) < 1e-15) continue;
    probs[pauli_label(s, ch.n_qubits())] = ch[s];
  }
  return {{"n_qubits", ch.n_qubits()}, {"probs", std::move(probs)}};
}

// ---- noise specs ----------------------------------------------------------

inline NoiseSpec noise_from_json(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j.contains("p")) throw FormatError("noise spec needs \"model\" and \"p\"");
  NoiseSpec s{parse_model(j["model"].get<std::string>()), j["p"].get<double>(), j.value("per_qubit", true)};
  s.validate();
  return s;
}

inline json noise_to_json(const NoiseSpec& s) {
  return {{"model", model_name(s.model)}, {"p", s.p}, {"per_qubit", s.per_qubit}};
}

// ---- circuits -------------------------------------------------------------

/// A part is a path string, {"ref": path}, an inline Pauli channel, or
/// {"noise": NoiseSpec, "n_qubits": n}. Paths resolve against base_dir.
inline PauliErrorChannel circuit_part(const json& part, const std::filesystem::path& base_dir) {
  if (part.is_string() || (part.is_object() && part.contains("ref"))) {
    const std::filesystem::path ref = part.is_string() ? part.get<std::string>() : part["ref"].get<std::string>();
    const auto path = ref.is_absolute() ? ref : base_dir / ref;
    return pauli_channel_from_json(read_json(path));
  }
  if (part.is_object() && part.contains("noise")) {
    if (!part.contains("n_qubits")) throw FormatError("inline noise part needs \"n_qubits\"");
    return make_channel(noise_from_json(part["noise"]), part["n_qubits"].get<int>());
  }
  return pauli_channel_from_json(part);
}

inline LayeredCircuit circuit_from_json(const json& j, const std::filesystem::path& base_dir = ".") {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("layers") || !j["layers"].is_array()) {
    throw FormatError("circuit needs \"n_qubits\" and a \"layers\" array");
  }
  const int n = j["n_qubits"].get<int>();
  std::vector<CircuitLayer> layers;
  for (const auto& l : j["layers"]) {
    if (!l.contains("parts") || !l["parts"].is_array() || l["parts"].empty()) {
      throw FormatError("every layer needs a non-empty \"parts\" array");
    }
    std::vector<PauliErrorChannel> parts;
    for (const auto& p : l["parts"]) parts.push_back(circuit_part(p, base_dir));
    layers.push_back({l.value("name", "L" + std::to_string(layers.size() + 1)), tensor_layer(parts)});
  }
  return {n, std::move(layers)};
}

inline LayeredCircuit read_circuit(const std::filesystem::path& path) {
  return circuit_from_json(read_json(path), path.parent_path());
}

inline json trace_to_json(const std::vector<TraceEntry>& trace) {
  json out = json::array();
  for (const auto& t : trace) out.push_back({{"layer", t.layer}, {"perfection_rate", t.perfection_rate}});
  return out;
}

inline std::string trace_to_csv(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  os << std::setprecision(17) << "step,layer,perfection_rate\n";
  for (std::size_t i = 0; i < trace.size(); ++i) os << i + 1 << ',' << trace[i].layer << ',' << trace[i].perfection_rate << '\n';
  return os.str();
}

// ---- spin specs and schedules ---------------------------------------------

inline SpinSystemSpec spin_spec_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("spin spec must be a JSON object");
  SpinSystemSpec s;
  for (const char* key : {"gamma_e", "gamma_n", "b0", "a1", "a2", "b1_max"}) {
    if (!j.contains(key) || !j[key].is_number()) throw FormatError(std::string("spin spec lacks numeric \"") + key + "\"");
  }
  s.gamma_e = j["gamma_e"].get<double>();
  s.gamma_n = j["gamma_n"].get<double>();
  s.b0 = j["b0"].get<double>();
  s.a1 = j["a1"].get<double>();
  s.a2 = j["a2"].get<double>();
  s.b1_max = j["b1_max"].get<double>();
  s.validate();
  return s;
}

inline json spin_spec_to_json(const SpinSystemSpec& s) {
  return {{"gamma_e", s.gamma_e}, {"gamma_n", s.gamma_n}, {"b0", s.b0},
          {"a1", s.a1},           {"a2", s.a2},           {"b1_max", s.b1_max}};
}

/// Header lines start with '#': dt_ns, then one "control" line per row
/// (name, carrier MHz or "none", phase, group); the table is
/// slot,time_ns,<amplitude per control>.
inline std::string schedule_to_csv(const PulseSchedule& s) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# dt_ns=" << s.dt << '\n';
  for (std::size_t k = 0; k < s.n_controls(); ++k) {
    os << "# control=" << s.names[k] << ';';
    if (s.carriers_mhz[k]) os << *s.carriers_mhz[k]; else os << "none";
    os << ';' << s.phases[k] << ';' << s.groups[k] << '\n';
  }
  os << "slot,time_ns";
  for (const auto& n : s.names) os << ',' << n;
  os << '\n';
  for (std::size_t j = 0; j < s.n_slots(); ++j) {
    os << j << ',' << static_cast<double>(j) * s.dt;
    for (std::size_t k = 0; k < s.n_controls(); ++k) os << ',' << s.amplitudes(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    os << '\n';
  }
  return os.str();
}

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("cannot parse " + what + " '" + s + "'");
  }
}
}  // namespace detail

inline PulseSchedule schedule_from_csv(const std::string& text) {
  PulseSchedule s;
  s.dt = -1.0;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# dt_ns=", 0) == 0) {
      s.dt = detail::to_double(line.substr(8), "dt_ns");
    } else if (line.rfind("# control=", 0) == 0) {
      const auto f = detail::split(line.substr(10), ';');
      if (f.size() != 4) throw FormatError("control header needs name;carrier;phase;group");
      s.names.push_back(f[0]);
      s.carriers_mhz.push_back(f[1] == "none" ? std::nullopt : std::optional<double>(detail::to_double(f[1], "carrier")));
      s.phases.push_back(detail::to_double(f[2], "phase"));
      s.groups.push_back(static_cast<int>(detail::to_double(f[3], "group")));
    } else if (line[0] == '#') {
      continue;
    } else if (!header_seen) {
      header_seen = true;
    } else {
      const auto f = detail::split(line, ',');
      if (f.size() != s.names.size() + 2) throw FormatError("schedule row has the wrong number of columns");
      std::vector<double> r;
      for (std::size_t k = 2; k < f.size(); ++k) r.push_back(detail::to_double(f[k], "amplitude"));
      rows.push_back(std::move(r));
    }
  }
  if (s.dt <= 0.0) throw FormatError("schedule lacks a '# dt_ns=' header");
  if (s.names.empty()) throw FormatError("schedule lacks control headers");
  s.amplitudes.resize(static_cast<Eigen::Index>(s.names.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t k = 0; k < s.names.size(); ++k) s.amplitudes(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[j][k];
  }
  s.validate();
  return s;
}

inline std::string spectrum_to_csv(const PulseSpectrum& ps) {
  std::ostringstream os;
  os << std::setprecision(17) << "group,frequency_mhz,magnitude\n";
  for (const auto& ch : ps.channels) {
    for (std::size_t m = 0; m < ch.frequency.size(); ++m) os << ch.group << ',' << ch.frequency[m] << ',' << ch.magnitude[m] << '\n';
  }
  return os.str();
}

}  // namespace sspc::io
