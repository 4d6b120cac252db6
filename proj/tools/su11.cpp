// Copyright 2026 The su11 Authors
// SPDX-License-Identifier: Apache-2.0

// su11 — command-line front end: single QFI/QFIM computations, parameter
// sweeps, parity scans, the closed-form catalog, and the verification suite.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 convergence error.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <su11/analytic.hpp>
#include <su11/config.hpp>
#include <su11/metrology.hpp>
#include <su11/verify.hpp>

using json = nlohmann::json;
using namespace su11;

namespace {

// ---------------------------------------------------------------------------
// formatting
// ---------------------------------------------------------------------------

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Deviation {
  double value = 0.0;
  bool relative = true;
};

// Relative where the reference is >= 1e-6, absolute otherwise.
Deviation deviation(double value, double reference) {
  if (std::abs(reference) >= 1e-6)
    return {std::abs(value - reference) / std::abs(reference), true};
  return {std::abs(value - reference), false};
}

std::string deviation_str(const Deviation& d) {
  return fmt12(d.value) + (d.relative ? " (relative)" : " (absolute)");
}

// ---------------------------------------------------------------------------
// mode-spec grammar
// ---------------------------------------------------------------------------

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument(where + ": cannot parse number '" + text + "'");
  }
  if (used != text.size())
    throw InvalidArgument(where + ": trailing characters in number '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// vacuum | fock:N | coherent:RE[,IM] | sqvac:R[,PHI] | mix:P0,P1,...
ModeSpec parse_mode_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "vacuum" && rest.empty()) return ModeSpec::vacuum();
  if (head == "fock") {
    const double n = parse_number(rest, "fock");
    if (n < 0 || n != std::floor(n))
      throw InvalidArgument("fock: photon number must be a nonnegative integer");
    return ModeSpec::fock(static_cast<int>(n));
  }
  if (head == "coherent") {
    const auto parts = split(rest, ',');
    if (parts.empty() || parts.size() > 2)
      throw InvalidArgument("coherent: expected RE[,IM]");
    const double re = parse_number(parts[0], "coherent");
    const double im = parts.size() == 2 ? parse_number(parts[1], "coherent") : 0.0;
    return ModeSpec::coherent({re, im});
  }
  if (head == "sqvac") {
    const auto parts = split(rest, ',');
    if (parts.empty() || parts.size() > 2) throw InvalidArgument("sqvac: expected R[,PHI]");
    const double r = parse_number(parts[0], "sqvac");
    const double phi = parts.size() == 2 ? parse_number(parts[1], "sqvac") : 0.0;
    return ModeSpec::squeezed_vacuum(r, phi);
  }
  if (head == "mix") {
    std::vector<double> probs;
    for (const auto& p : split(rest, ',')) probs.push_back(parse_number(p, "mix"));
    auto spec = ModeSpec::number_mixture(std::move(probs));
    spec.validate();
    return spec;
  }
  throw InvalidArgument("unknown mode spec '" + text +
                        "' (expected vacuum|fock:N|coherent:RE[,IM]|sqvac:R[,PHI]|mix:P0,...)");
}

// ---------------------------------------------------------------------------
// config files: flat key=value or JSON
// ---------------------------------------------------------------------------

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::map<std::string, std::string> kv;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool looks_json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  if (looks_json || (first != std::string::npos && text[first] == '{')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InvalidArgument("config '" + path + "': " + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_string())
        kv[key] = value.get<std::string>();
      else if (value.is_boolean())
        kv[key] = value.get<bool>() ? "true" : "false";
      else if (value.is_number())
        kv[key] = fmt12(value.get<double>());
      else
        throw InvalidArgument("config '" + path + "': key '" + key +
                              "' has an unsupported value type");
    }
    return kv;
  }

  int line_no = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config '" + path + "' line " + std::to_string(line_no) +
                            ", column " + std::to_string(line.size() + 1) +
                            ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [](std::string& s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(value);
    if (key.empty())
      throw InvalidArgument("config '" + path + "' line " + std::to_string(line_no) +
                            ", column 1: empty key");
    kv[key] = value;
  }
  return kv;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw InvalidArgument(where + ": cannot parse boolean '" + text + "'");
}

/// Applies config-file values to options the command line left unset.
struct ConfigMerger {
  std::map<std::string, std::string> kv;

  void merge(const CLI::Option* opt, const char* key,
             const std::function<void(const std::string&)>& set) const {
    if (opt != nullptr && opt->count() > 0) return;  // flags override the file
    const auto it = kv.find(key);
    if (it != kv.end()) set(it->second);
  }
};

// ---------------------------------------------------------------------------
// shared interferometer options
// ---------------------------------------------------------------------------

struct CommonCli {
  std::string a = "vacuum";
  std::string b = "vacuum";
  double g = 0.0;
  double theta = 0.0;
  bool average = false;
  int cutoff = 0;
  int guard = 12;
  double tail_tol = 1e-10;
  std::string config_path;

  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_b = nullptr;
  CLI::Option* opt_g = nullptr;
  CLI::Option* opt_theta = nullptr;
  CLI::Option* opt_average = nullptr;
  CLI::Option* opt_cutoff = nullptr;
  CLI::Option* opt_guard = nullptr;
  CLI::Option* opt_tail = nullptr;
};

void add_common_options(CLI::App& sub, CommonCli& c, bool with_average = true) {
  c.opt_a = sub.add_option("--a", c.a,
                           "mode A input: vacuum|fock:N|coherent:RE[,IM]|sqvac:R[,PHI]|mix:P0,...");
  c.opt_b = sub.add_option("--b", c.b, "mode B input (same grammar)");
  c.opt_g = sub.add_option("--g", c.g, "OPA gain");
  c.opt_theta = sub.add_option("--theta", c.theta, "OPA pump phase (radians)");
  if (with_average)
    c.opt_average = sub.add_flag("--average", c.average, "phase-average the input");
  c.opt_cutoff = sub.add_option("--cutoff", c.cutoff, "pin max total photon number (0 = auto)");
  c.opt_guard = sub.add_option("--guard", c.guard, "guard levels for unitary construction");
  c.opt_tail = sub.add_option("--tail-tol", c.tail_tol, "admissible truncation weight");
  sub.add_option("--config", c.config_path, "key=value or JSON config file");
}

void merge_common(CommonCli& c) {
  if (c.config_path.empty()) return;
  ConfigMerger m{load_config_file(c.config_path)};
  m.merge(c.opt_a, "a", [&](const std::string& v) { c.a = v; });
  m.merge(c.opt_b, "b", [&](const std::string& v) { c.b = v; });
  m.merge(c.opt_g, "g", [&](const std::string& v) { c.g = parse_number(v, "config g"); });
  m.merge(c.opt_theta, "theta",
          [&](const std::string& v) { c.theta = parse_number(v, "config theta"); });
  m.merge(c.opt_average, "average",
          [&](const std::string& v) { c.average = parse_bool(v, "config average"); });
  m.merge(c.opt_cutoff, "cutoff", [&](const std::string& v) {
    c.cutoff = static_cast<int>(parse_number(v, "config cutoff"));
  });
  m.merge(c.opt_guard, "guard", [&](const std::string& v) {
    c.guard = static_cast<int>(parse_number(v, "config guard"));
  });
  m.merge(c.opt_tail, "tail_tol",
          [&](const std::string& v) { c.tail_tol = parse_number(v, "config tail_tol"); });
}

InterferometerConfig to_config(const CommonCli& c) {
  InterferometerConfig cfg;
  cfg.mode_a = parse_mode_spec(c.a);
  cfg.mode_b = parse_mode_spec(c.b);
  cfg.g = c.g;
  cfg.theta = c.theta;
  cfg.averaging = c.average;
  if (c.cutoff > 0) cfg.max_total = c.cutoff;
  if (c.opt_guard && c.opt_guard->count() > 0) cfg.guard = c.guard;
  if (c.opt_tail && c.opt_tail->count() > 0) cfg.tail_tol = c.tail_tol;
  return cfg;
}

GeneratorKind parse_model(const std::string& m) {
  if (m == "u") return GeneratorKind::upper;
  if (m == "l") return GeneratorKind::lower;
  if (m == "s") return GeneratorKind::half_sum;
  if (m == "d") return GeneratorKind::half_diff;
  throw InvalidArgument("unknown phase model '" + m + "' (expected u|l|s|d)");
}

std::optional<QfiMethod> parse_method(const std::string& m) {
  if (m.empty() || m == "auto") return std::nullopt;
  if (m == "variance") return QfiMethod::variance;
  if (m == "convexity") return QfiMethod::convexity;
  if (m == "sld") return QfiMethod::sld;
  if (m == "fd" || m == "fidelity_fd") return QfiMethod::fidelity_fd;
  throw InvalidArgument("unknown method '" + m + "' (expected auto|variance|convexity|sld|fd)");
}

// ---------------------------------------------------------------------------
// analytic references for reports
// ---------------------------------------------------------------------------

struct AnalyticRef {
  double value = 0.0;
  std::string label;
};

/// The catalog value matching a QFI run, when one exists.
std::optional<AnalyticRef> analytic_for_qfi(const InterferometerConfig& cfg,
                                            GeneratorKind model) {
  const bool a_vac = cfg.mode_a.is_vacuum();
  const bool b_vac = cfg.mode_b.is_vacuum();
  if (a_vac && b_vac) return AnalyticRef{analytic::f_vacuum(cfg.g), "vacuum closed form"};
  if (cfg.averaging && b_vac)
    return AnalyticRef{analytic::f_averaged(cfg.g, cfg.mode_a.mean_photon()),
                       "phase-averaged closed form"};
  const auto gong = [&](analytic::PhaseShiftModel m, double n_beta) {
    return AnalyticRef{analytic::f_gong(cfg.g, n_beta, m), "per-model closed form"};
  };
  if (!cfg.averaging && a_vac && cfg.mode_b.kind == ModeSpec::Kind::coherent) {
    const double nb = cfg.mode_b.mean_photon();
    switch (model) {
      case GeneratorKind::upper: return gong(analytic::PhaseShiftModel::upper, nb);
      case GeneratorKind::lower: return gong(analytic::PhaseShiftModel::lower, nb);
      case GeneratorKind::half_sum: return gong(analytic::PhaseShiftModel::split, nb);
      default: return std::nullopt;
    }
  }
  if (!cfg.averaging && b_vac && cfg.mode_a.kind == ModeSpec::Kind::coherent) {
    // swapped input modes swap the u and l roles
    const double nb = cfg.mode_a.mean_photon();
    switch (model) {
      case GeneratorKind::upper: return gong(analytic::PhaseShiftModel::lower, nb);
      case GeneratorKind::lower: return gong(analytic::PhaseShiftModel::upper, nb);
      case GeneratorKind::half_sum: return gong(analytic::PhaseShiftModel::split, nb);
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

/// The catalog value matching a QFIM phi_s bound, when one exists.
std::optional<AnalyticRef> analytic_for_qfim(const InterferometerConfig& cfg) {
  const auto& a = cfg.mode_a;
  const auto& b = cfg.mode_b;
  if (b.is_vacuum() && !a.is_mixture())
    return AnalyticRef{analytic::f_averaged(cfg.g, a.mean_photon()),
                       "one-vacuum two-parameter bound"};
  if (a.kind == ModeSpec::Kind::coherent && b.kind == ModeSpec::Kind::coherent &&
      cfg.theta == 0.0)
    return AnalyticRef{analytic::f_two_coherent(cfg.g, a.alpha, b.alpha),
                       "two-coherent closed form"};
  if (a.kind == ModeSpec::Kind::coherent && a.alpha.imag() == 0.0 &&
      b.kind == ModeSpec::Kind::squeezed_vacuum && b.squeeze_phase == 0.0 &&
      cfg.theta == 0.0)
    return AnalyticRef{analytic::f_coh_sq(cfg.g, std::norm(a.alpha), b.squeeze_r),
                       "coherent-squeezed closed form"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// qfi
// ---------------------------------------------------------------------------

int cmd_qfi(const CommonCli& common, const std::string& model_str,
            const std::string& method_str, bool as_json) {
  const InterferometerConfig cfg = to_config(common);
  const GeneratorKind model = parse_model(model_str);
  const QfiResult r = qfi_of_config(cfg, model, parse_method(method_str));
  const auto ref = analytic_for_qfi(cfg, model);

  if (as_json) {
    json out{{"value", r.value},
             {"method", to_string(r.method)},
             {"model", to_string(model)},
             {"cutoff", r.cutoff_used.max_total},
             {"norm_deficit", r.norm_deficit},
             {"residual", r.residual},
             {"converged", r.converged()}};
    if (ref) {
      const Deviation d = deviation(r.value, ref->value);
      out["analytic"] = ref->value;
      out["analytic_label"] = ref->label;
      out["deviation"] = d.value;
      out["deviation_relative"] = d.relative;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "qfi           " << fmt12(r.value) << "\n"
            << "model         " << to_string(model) << "\n"
            << "method        " << to_string(r.method) << "\n"
            << "cutoff        " << r.cutoff_used.max_total << "\n"
            << "norm_deficit  " << fmt12(r.norm_deficit) << "\n"
            << "residual      " << fmt12(r.residual) << "\n";
  if (ref) {
    std::cout << "analytic      " << fmt12(ref->value) << "  (" << ref->label << ")\n"
              << "deviation     " << deviation_str(deviation(r.value, ref->value)) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// qfim
// ---------------------------------------------------------------------------

int cmd_qfim(const CommonCli& common, bool as_json) {
  const InterferometerConfig cfg = to_config(common);
  FockCutoff used{};
  double deficit = 0.0;
  const QFIMatrix m = with_cutoff_escalation(cfg, [&](const FockCutoff& cutoff) {
    const TwoModePureState st = post_opa_state(cfg, cutoff);
    used = cutoff;
    deficit = st.norm_deficit();
    return qfim(st);
  });
  const auto ref = analytic_for_qfim(cfg);

  if (as_json) {
    json out{{"f_dd", m.f_dd},
             {"f_ds", m.f_ds},
             {"f_sd", m.f_sd},
             {"f_ss", m.f_ss},
             {"determinant", m.determinant()},
             {"singular", m.singular},
             {"bound_phi_s", m.bound_phi_s},
             {"bound_phi_d", m.bound_phi_d},
             {"cutoff", used.max_total},
             {"norm_deficit", deficit}};
    if (ref && std::isfinite(m.bound_phi_s)) {
      const Deviation d = deviation(1.0 / m.bound_phi_s, ref->value);
      out["analytic_inv_bound_phi_s"] = ref->value;
      out["analytic_label"] = ref->label;
      out["deviation"] = d.value;
      out["deviation_relative"] = d.relative;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "F_dd          " << fmt12(m.f_dd) << "\n"
            << "F_ds          " << fmt12(m.f_ds) << "\n"
            << "F_sd          " << fmt12(m.f_sd) << "\n"
            << "F_ss          " << fmt12(m.f_ss) << "\n"
            << "determinant   " << fmt12(m.determinant()) << "\n"
            << "singular      " << (m.singular ? "true" : "false") << "\n"
            << "bound_phi_s   " << fmt12(m.bound_phi_s) << "\n"
            << "bound_phi_d   " << fmt12(m.bound_phi_d) << "\n"
            << "cutoff        " << used.max_total << "\n"
            << "norm_deficit  " << fmt12(deficit) << "\n";
  if (ref && std::isfinite(m.bound_phi_s)) {
    std::cout << "analytic      1/bound_phi_s = " << fmt12(ref->value) << "  (" << ref->label
              << ")\n"
              << "deviation     " << deviation_str(deviation(1.0 / m.bound_phi_s, ref->value))
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  std::vector<std::string> cells;
};

struct OutputColumn {
  std::string name;
  bool numeric = false;  // numeric engines (carry cutoff / deficit provenance)
};

/// Per-point evaluation context for a sweep.
struct SweepPoint {
  InterferometerConfig cfg;
  double swept_value = 0.0;
};

double analytic_output(const std::string& name, const InterferometerConfig& cfg) {
  const double g = cfg.g;
  const auto& a = cfg.mode_a;
  const auto& b = cfg.mode_b;
  const auto need_coherent_b = [&]() {
    if (b.kind != ModeSpec::Kind::coherent)
      throw InvalidArgument("output needs a coherent mode B");
    return b.mean_photon();
  };
  if (name == "f_vacuum") return analytic::f_vacuum(g);
  if (name == "f_gong_u")
    return analytic::f_gong(g, need_coherent_b(), analytic::PhaseShiftModel::upper);
  if (name == "f_gong_l")
    return analytic::f_gong(g, need_coherent_b(), analytic::PhaseShiftModel::lower);
  if (name == "f_gong_s")
    return analytic::f_gong(g, need_coherent_b(), analytic::PhaseShiftModel::split);
  if (name == "f_averaged") return analytic::f_averaged(g, a.mean_photon());
  if (name == "bound_phi_s_one_vacuum")
    return analytic::bound_phi_s_one_vacuum(g, a.mean_photon());
  if (name == "f_two_coherent") {
    if (a.kind != ModeSpec::Kind::coherent || b.kind != ModeSpec::Kind::coherent)
      throw InvalidArgument("f_two_coherent needs coherent inputs");
    return analytic::f_two_coherent(g, a.alpha, b.alpha);
  }
  if (name == "f_two_coherent_max")
    return analytic::f_two_coherent_max(g, a.mean_photon() + b.mean_photon());
  const auto coh_sq = [&]() -> std::pair<double, double> {
    if (a.kind != ModeSpec::Kind::coherent || b.kind != ModeSpec::Kind::squeezed_vacuum)
      throw InvalidArgument("output needs coherent mode A and squeezed-vacuum mode B");
    return {std::norm(a.alpha), b.squeeze_r};
  };
  if (name == "f_coh_sq") {
    const auto [a2, r] = coh_sq();
    return analytic::f_coh_sq(g, a2, r);
  }
  if (name == "f_li") {
    const auto [a2, r] = coh_sq();
    return analytic::f_li(g, a2, r);
  }
  if (name == "f_diff") {
    const auto [a2, r] = coh_sq();
    return analytic::f_diff(g, a2, r);
  }
  if (name == "f_parity_cl") {
    const auto [a2, r] = coh_sq();
    return analytic::f_parity_cl(g, a2, r);
  }
  if (name == "n_kappa") return analytic::n_kappa(g);
  throw InvalidArgument("unknown output '" + name + "'");
}

bool is_numeric_output(const std::string& name) {
  return name == "qfi_u" || name == "qfi_l" || name == "qfi_s" || name == "inv_bound_phi_s" ||
         name == "qfim_fdd" || name == "qfim_fds" || name == "qfim_fss";
}

/// Preferred analytic partner of each numeric column, first requested wins.
std::vector<std::string> analytic_partners(const std::string& numeric) {
  if (numeric == "qfi_u") return {"f_averaged", "f_gong_u", "f_vacuum"};
  if (numeric == "qfi_l") return {"f_averaged", "f_gong_l", "f_vacuum"};
  if (numeric == "qfi_s") return {"f_averaged", "f_gong_s", "f_vacuum"};
  if (numeric == "inv_bound_phi_s")
    return {"f_two_coherent", "f_coh_sq", "f_averaged", "f_vacuum"};
  return {};
}

int cmd_sweep(const CommonCli& common, const std::string& param, double start, double stop,
              int count, const std::string& outputs_csv, const std::string& out_path,
              int threads, double total_resource) {
  if (count < 2) throw InvalidArgument("sweep: count must be >= 2");
  if (!(start < stop)) throw InvalidArgument("sweep: start must be < stop");
  std::vector<std::string> outputs;
  for (const auto& name : split(outputs_csv, ','))
    if (!name.empty()) outputs.push_back(name);
  if (outputs.empty()) throw InvalidArgument("sweep: no outputs requested");
  for (const auto& name : outputs)
    if (!is_numeric_output(name)) analytic_output(name, to_config(common));  // validate early

  const InterferometerConfig base = to_config(common);

  // resolve the per-point configuration
  const auto point_config = [&](double v) {
    InterferometerConfig cfg = base;
    if (param == "g") {
      cfg.g = v;
    } else if (param == "theta") {
      cfg.theta = v;
    } else if (param == "alpha") {
      if (cfg.mode_a.kind != ModeSpec::Kind::coherent)
        throw InvalidArgument("sweep alpha: mode A must be coherent");
      cfg.mode_a.alpha = v;
    } else if (param == "beta") {
      if (cfg.mode_b.kind != ModeSpec::Kind::coherent)
        throw InvalidArgument("sweep beta: mode B must be coherent");
      cfg.mode_b.alpha = v;
    } else if (param == "r") {
      if (cfg.mode_b.kind != ModeSpec::Kind::squeezed_vacuum)
        throw InvalidArgument("sweep r: mode B must be squeezed vacuum");
      cfg.mode_b.squeeze_r = v;
    } else if (param == "n_kappa") {
      cfg.g = std::asinh(std::sqrt(v / 2.0));
      if (total_resource > 0.0) {
        // split of n_tot = n_kappa + n_in at fixed total, equal coherent inputs
        const double n_in = total_resource - v;
        if (n_in < -1e-12)
          throw InvalidArgument("sweep n_kappa: swept value exceeds the total resource");
        const double amp = std::sqrt(std::max(0.0, n_in) / 2.0);
        cfg.mode_a = ModeSpec::coherent(amp);
        cfg.mode_b = ModeSpec::coherent(amp);
      }
    } else {
      throw InvalidArgument("sweep: unknown parameter '" + param +
                            "' (expected g|theta|alpha|beta|r|n_kappa)");
    }
    return cfg;
  };

  // header
  std::vector<std::string> header{param};
  for (const auto& name : outputs) header.push_back(name);
  header.push_back("cutoff");
  header.push_back("norm_deficit");
  std::vector<std::pair<std::string, std::string>> dev_pairs;
  for (const auto& name : outputs) {
    if (!is_numeric_output(name)) continue;
    for (const auto& partner : analytic_partners(name)) {
      if (std::find(outputs.begin(), outputs.end(), partner) != outputs.end()) {
        dev_pairs.emplace_back(name, partner);
        header.push_back("dev_" + name + "_vs_" + partner);
        break;
      }
    }
  }

  std::vector<SweepRow> rows(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  const auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        const double v = start + (stop - start) * double(i) / double(count - 1);
        const InterferometerConfig cfg = point_config(v);

        std::map<std::string, double> values;
        int cutoff_used = 0;
        double deficit = 0.0;
        for (const auto& name : outputs) {
          if (is_numeric_output(name)) {
            if (name == "qfi_u" || name == "qfi_l" || name == "qfi_s") {
              const GeneratorKind kind = name == "qfi_u" ? GeneratorKind::upper
                                         : name == "qfi_l" ? GeneratorKind::lower
                                                           : GeneratorKind::half_sum;
              const QfiResult r = qfi_of_config(cfg, kind);
              values[name] = r.value;
              cutoff_used = r.cutoff_used.max_total;
              deficit = std::max(deficit, r.norm_deficit);
            } else {
              double d = 0.0;
              FockCutoff used{};
              const QFIMatrix m = with_cutoff_escalation(cfg, [&](const FockCutoff& cut) {
                const auto st = post_opa_state(cfg, cut);
                used = cut;
                d = st.norm_deficit();
                return qfim(st);
              });
              if (name == "inv_bound_phi_s")
                values[name] = 1.0 / m.bound_phi_s;
              else if (name == "qfim_fdd")
                values[name] = m.f_dd;
              else if (name == "qfim_fds")
                values[name] = m.f_ds;
              else
                values[name] = m.f_ss;
              cutoff_used = used.max_total;
              deficit = std::max(deficit, d);
            }
          } else {
            values[name] = analytic_output(name, cfg);
          }
        }

        SweepRow row;
        row.cells.push_back(fmt12(v));
        for (const auto& name : outputs) row.cells.push_back(fmt12(values[name]));
        row.cells.push_back(std::to_string(cutoff_used));
        row.cells.push_back(fmt12(deficit));
        for (const auto& [num, ana] : dev_pairs)
          row.cells.push_back(fmt12(deviation(values[num], values[ana]).value));
        rows[static_cast<std::size_t>(i)] = std::move(row);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw InvalidArgument("sweep failed: " + first_error);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);  // LF line endings on every platform
    if (!file) throw InvalidArgument("cannot write to '" + out_path + "'");
    os = &file;
  }
  for (std::size_t i = 0; i < header.size(); ++i)
    *os << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.cells.size(); ++i)
      *os << row.cells[i] << (i + 1 < row.cells.size() ? "," : "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// parity
// ---------------------------------------------------------------------------

int cmd_parity(const CommonCli& common, double phi_start, double phi_stop, int count,
               double dphi, const std::string& out_path) {
  if (count < 2) throw InvalidArgument("parity: count must be >= 2");
  if (!(phi_start < phi_stop)) throw InvalidArgument("parity: start must be < stop");
  const InterferometerConfig cfg = to_config(common);
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        phi_start + (phi_stop - phi_start) * double(i) / double(count - 1);
  ParityProvenance provenance;
  const auto points = parity_cfi(cfg, grid, dphi, &provenance);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write to '" + out_path + "'");
    os = &file;
  }
  *os << "phi_s,parity,dparity_dphi,cfi,indeterminate\n";
  double best = 0.0, best_phi = 0.0;
  bool any = false;
  for (const auto& p : points) {
    *os << fmt12(p.phi_s) << "," << fmt12(p.parity) << "," << fmt12(p.dparity) << ","
        << (p.indeterminate ? "" : fmt12(p.cfi)) << "," << (p.indeterminate ? "1" : "0")
        << "\n";
    if (!p.indeterminate && (!any || p.cfi > best)) {
      best = p.cfi;
      best_phi = p.phi_s;
      any = true;
    }
  }
  if (any) {
    std::cerr << "max CFI " << fmt12(best) << " at phi_s = " << fmt12(best_phi)
              << "  (cutoff " << provenance.cutoff_used.max_total << ", norm_deficit "
              << fmt12(provenance.norm_deficit) << ")\n";
    const auto& a = cfg.mode_a;
    const auto& b = cfg.mode_b;
    if (a.is_vacuum() && b.is_vacuum()) {
      std::cerr << "vacuum closed form " << fmt12(analytic::f_vacuum(cfg.g)) << "\n";
    } else if (a.kind == ModeSpec::Kind::coherent && a.alpha.imag() == 0.0 &&
               b.kind == ModeSpec::Kind::squeezed_vacuum && b.squeeze_phase == 0.0) {
      std::cerr << "parity CFI closed form "
                << fmt12(analytic::f_parity_cl(cfg.g, std::norm(a.alpha), b.squeeze_r))
                << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analytic
// ---------------------------------------------------------------------------

int cmd_analytic(const std::string& name, const std::map<std::string, double>& args,
                 bool list_only) {
  struct Entry {
    const char* name;
    const char* params;
    std::function<double(const std::map<std::string, double>&)> eval;
  };
  const auto get = [](const std::map<std::string, double>& m, const char* key) {
    const auto it = m.find(key);
    if (it == m.end())
      throw InvalidArgument(std::string("analytic: missing required parameter --") + key);
    return it->second;
  };
  const auto get_or = [](const std::map<std::string, double>& m, const char* key, double dflt) {
    const auto it = m.find(key);
    return it == m.end() ? dflt : it->second;
  };
  const std::vector<Entry> catalog = {
      {"n_kappa", "g", [&](const auto& m) { return analytic::n_kappa(get(m, "g")); }},
      {"f_vacuum", "g", [&](const auto& m) { return analytic::f_vacuum(get(m, "g")); }},
      {"f_gong_u", "g, n-beta",
       [&](const auto& m) {
         return analytic::f_gong(get(m, "g"), get(m, "n-beta"),
                                 analytic::PhaseShiftModel::upper);
       }},
      {"f_gong_l", "g, n-beta",
       [&](const auto& m) {
         return analytic::f_gong(get(m, "g"), get(m, "n-beta"),
                                 analytic::PhaseShiftModel::lower);
       }},
      {"f_gong_s", "g, n-beta",
       [&](const auto& m) {
         return analytic::f_gong(get(m, "g"), get(m, "n-beta"),
                                 analytic::PhaseShiftModel::split);
       }},
      {"f_averaged", "g, n-chi",
       [&](const auto& m) { return analytic::f_averaged(get(m, "g"), get(m, "n-chi")); }},
      {"bound_phi_s_one_vacuum", "g, n-chi [, v-chi]",
       [&](const auto& m) {
         return analytic::bound_phi_s_one_vacuum(get(m, "g"), get(m, "n-chi"),
                                                 get_or(m, "v-chi", 0.0));
       }},
      {"f_two_coherent", "g, alpha-re [, alpha-im], beta-re [, beta-im]",
       [&](const auto& m) {
         return analytic::f_two_coherent(
             get(m, "g"), {get(m, "alpha-re"), get_or(m, "alpha-im", 0.0)},
             {get(m, "beta-re"), get_or(m, "beta-im", 0.0)});
       }},
      {"f_two_coherent_max", "g, n-in",
       [&](const auto& m) { return analytic::f_two_coherent_max(get(m, "g"), get(m, "n-in")); }},
      {"f_coh_sq", "g, alpha-sq, r",
       [&](const auto& m) {
         return analytic::f_coh_sq(get(m, "g"), get(m, "alpha-sq"), get(m, "r"));
       }},
      {"f_li", "g, alpha-sq, r",
       [&](const auto& m) {
         return analytic::f_li(get(m, "g"), get(m, "alpha-sq"), get(m, "r"));
       }},
      {"f_diff", "g, alpha-sq, r",
       [&](const auto& m) {
         return analytic::f_diff(get(m, "g"), get(m, "alpha-sq"), get(m, "r"));
       }},
      {"f_parity_cl", "g, alpha-sq, r",
       [&](const auto& m) {
         return analytic::f_parity_cl(get(m, "g"), get(m, "alpha-sq"), get(m, "r"));
       }},
      {"bound_mzi_phi_d", "f-dd, f-ss, f-ds",
       [&](const auto& m) {
         return analytic::bound_mzi_phi_d(get(m, "f-dd"), get(m, "f-ss"), get(m, "f-ds"));
       }},
  };
  if (list_only) {
    for (const auto& e : catalog)
      std::cout << e.name << "  (" << e.params << ")\n";
    return 0;
  }
  for (const auto& e : catalog) {
    if (name == e.name) {
      std::cout << fmt12(e.eval(args)) << "\n";
      return 0;
    }
  }
  throw InvalidArgument("unknown formula '" + name + "' (see: su11 analytic --list)");
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(double tol_scale, double tail_tol, int guard, bool list_only,
               const std::vector<std::string>& only, bool as_json) {
  if (list_only) {
    for (const auto& name : verify::check_names()) std::cout << name << "\n";
    return 0;
  }
  verify::VerifyOptions options;
  options.tol_scale = tol_scale;
  if (tail_tol > 0.0) options.tail_tol = tail_tol;
  options.guard = guard;

  json report = json::array();
  int failures = 0;
  const auto progress = [&](const verify::CheckResult& r) {
    if (!r.passed) ++failures;
    if (as_json) {
      report.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"max_deviation", r.max_deviation},
                        {"tolerance", r.tolerance},
                        {"binding", r.note}});
    } else {
      std::printf("%-4s %-32s max_dev=%10.3e  tol=%8.1e  %s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.max_deviation, r.tolerance, r.note.c_str());
      std::fflush(stdout);
    }
  };
  verify::run_checks(options, progress, only);
  if (as_json) std::cout << report.dump(2) << "\n";
  if (failures > 0) {
    if (!as_json) std::printf("%d check(s) failed\n", failures);
    return 1;
  }
  if (!as_json) std::printf("all checks passed\n");
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"SU(1,1) interferometer quantum-Fisher-information toolkit"};
  app.require_subcommand(1);

  // qfi
  auto* qfi = app.add_subcommand("qfi", "QFI of one configuration");
  CommonCli qfi_common;
  add_common_options(*qfi, qfi_common);
  std::string qfi_model = "s";
  std::string qfi_method = "auto";
  bool qfi_json = false;
  auto* qfi_model_opt = qfi->add_option("--model", qfi_model, "phase model: u|l|s|d");
  auto* qfi_method_opt =
      qfi->add_option("--method", qfi_method, "auto|variance|convexity|sld|fd");
  qfi->add_flag("--json", qfi_json, "emit JSON");

  // qfim
  auto* qfim_cmd = app.add_subcommand("qfim", "QFI matrix over (phi_d, phi_s)");
  CommonCli qfim_common;
  add_common_options(*qfim_cmd, qfim_common, /*with_average=*/false);
  bool qfim_json = false;
  qfim_cmd->add_flag("--json", qfim_json, "emit JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  CommonCli sweep_common;
  add_common_options(*sweep, sweep_common);
  std::string sweep_param = "g";
  double sweep_start = 0.0, sweep_stop = 1.0;
  int sweep_count = 0;
  std::string sweep_outputs;
  std::string sweep_out;
  int sweep_threads = 0;
  double sweep_total = 0.0;
  sweep->add_option("--param", sweep_param, "swept parameter: g|theta|alpha|beta|r|n_kappa");
  sweep->add_option("--start", sweep_start, "grid start")->required();
  sweep->add_option("--stop", sweep_stop, "grid stop")->required();
  sweep->add_option("--count", sweep_count, "grid size (>= 2)")->required();
  sweep->add_option("--outputs", sweep_outputs, "comma-separated output columns")->required();
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");
  sweep->add_option("--threads", sweep_threads, "worker threads (default: hardware)");
  sweep->add_option("--total-resource", sweep_total,
                    "fixed n_tot = n_kappa + n_in for the n_kappa sweep");

  // parity
  auto* parity = app.add_subcommand("parity", "parity-detection CFI scan");
  CommonCli parity_common;
  add_common_options(*parity, parity_common, /*with_average=*/false);
  double parity_start = 1e-3, parity_stop = 3.0, parity_dphi = 1e-4;
  int parity_count = 30;
  std::string parity_out;
  parity->add_option("--phi-start", parity_start, "phi_s grid start");
  parity->add_option("--phi-stop", parity_stop, "phi_s grid stop");
  parity->add_option("--count", parity_count, "grid size");
  parity->add_option("--dphi", parity_dphi, "finite-difference step");
  parity->add_option("--out", parity_out, "CSV path (default: stdout)");

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "evaluate a closed-form expression");
  std::string analytic_name;
  bool analytic_list = false;
  std::map<std::string, double> analytic_args;
  analytic_cmd->add_option("name", analytic_name, "formula name (see --list)");
  analytic_cmd->add_flag("--list", analytic_list, "list available formulas");
  for (const char* key : {"g", "n-beta", "n-chi", "v-chi", "n-in", "alpha-re", "alpha-im",
                          "beta-re", "beta-im", "alpha-sq", "r", "f-dd", "f-ss", "f-ds"}) {
    analytic_cmd->add_option_function<double>(
        std::string("--") + key,
        [&analytic_args, key](double v) { analytic_args[key] = v; });
  }

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  double verify_tol_scale = 1.0;
  double verify_tail = 0.0;
  int verify_guard = 12;
  bool verify_list = false, verify_json = false;
  std::vector<std::string> verify_only;
  verify_cmd->add_option("--tol-scale", verify_tol_scale, "multiply every tolerance");
  verify_cmd->add_option("--tail-tol", verify_tail,
                         "truncation budget for the cutoff policy (default 1e-12)");
  verify_cmd->add_option("--guard", verify_guard, "guard levels");
  verify_cmd->add_flag("--list", verify_list, "list check names without running");
  verify_cmd->add_option("--only", verify_only, "run only the named checks");
  verify_cmd->add_flag("--json", verify_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (qfi->parsed()) {
      merge_common(qfi_common);
      if (!qfi_common.config_path.empty()) {
        ConfigMerger m{load_config_file(qfi_common.config_path)};
        m.merge(qfi_model_opt, "model", [&](const std::string& v) { qfi_model = v; });
        m.merge(qfi_method_opt, "method", [&](const std::string& v) { qfi_method = v; });
      }
      return cmd_qfi(qfi_common, qfi_model, qfi_method, qfi_json);
    }
    if (qfim_cmd->parsed()) {
      merge_common(qfim_common);
      return cmd_qfim(qfim_common, qfim_json);
    }
    if (sweep->parsed()) {
      merge_common(sweep_common);
      return cmd_sweep(sweep_common, sweep_param, sweep_start, sweep_stop, sweep_count,
                       sweep_outputs, sweep_out, sweep_threads, sweep_total);
    }
    if (parity->parsed()) {
      merge_common(parity_common);
      return cmd_parity(parity_common, parity_start, parity_stop, parity_count, parity_dphi,
                        parity_out);
    }
    if (analytic_cmd->parsed()) {
      if (!analytic_list && analytic_name.empty())
        throw InvalidArgument("analytic: formula name required (or --list)");
      return cmd_analytic(analytic_name, analytic_args, analytic_list);
    }
    if (verify_cmd->parsed())
      return cmd_verify(verify_tol_scale, verify_tail, verify_guard, verify_list, verify_only,
                        verify_json);
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
