#include "lightcone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lightcone/curve.hpp"
#include "lightcone/error.hpp"
#include "lightcone/flows.hpp"
#include "lightcone/progression.hpp"
#include "lightcone/soliton.hpp"

namespace lightcone {

namespace {

using json = nlohmann::ordered_json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += num(v);
  }
  line += '\n';
  return line;
}

struct Common {
  std::string format;  // empty: the command's default
  std::string out;
  double tol = 1e-6;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "output path (default stdout)");
  cmd->add_option("--tol", c.tol, "closure tolerance for find-closed");
  cmd->add_option("--seed", c.seed, "seed for the random flow preset");
}

bool want_json(const Common& c, bool json_default) {
  return c.format.empty() ? json_default : c.format == "json";
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoFailure("write to " + path + " failed");
}

json params_json(const SolitonParams& p) {
  return {{"lambda", p.lambda()}, {"mu", p.mu()},           {"x1", p.x1()},        {"x2", p.x2()},
          {"x3", p.x3()},         {"modulus", p.modulus()}, {"period", p.period()}};
}

std::string curve_csv(const CurveTrace& tr) {
  std::string s = "s,theta,psi,x,y,z\n";
  for (const auto& c : tr.samples) s += csv_row({c.s, c.theta, c.psi, c.r.t(), c.r.y(), c.r.z()});
  return s;
}

json curve_json(const CurveTrace& tr) {
  json meta = tr.params ? params_json(*tr.params) : json::object();
  meta["axis_class"] = to_string(tr.monodromy.axis_class);
  meta["axis_case"] = to_string(tr.axis_case);
  meta["omega"] = tr.monodromy.omega;
  meta["periods"] = tr.periods;
  meta["samples_per_period"] = tr.samples_per_period;
  json ends = json::array();
  for (int k = 0; k <= tr.periods; ++k) {
    ends.push_back(tr.samples[static_cast<std::size_t>(k) * tr.samples_per_period].theta);
  }
  meta["theta_at_period_ends"] = ends;
  json samples = json::array();
  for (const auto& c : tr.samples) {
    samples.push_back({{"s", c.s},
                       {"theta", c.theta},
                       {"psi", c.psi},
                       {"x", c.r.t()},
                       {"y", c.r.y()},
                       {"z", c.r.z()}});
  }
  return {{"meta", meta}, {"samples", samples}};
}

// --config FILE: each key=value line becomes --key value, placed before the
// explicit flags so that those win (options keep the last value given).
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream f(path);
    if (!f) throw IoFailure("cannot read config file " + path);
    std::string line;
    while (std::getline(f, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw CLI::ArgumentMismatch("config line without '=': " + line);
      from_file.push_back("--" + trim(line.substr(0, eq)));
      from_file.push_back(trim(line.substr(eq + 1)));
    }
  }
  if (from_file.empty() || rest.empty()) return rest;
  // after the command word (and flow kind, which is positional anyway)
  std::vector<std::string> merged(rest.begin(), rest.begin() + 1);
  merged.insert(merged.end(), from_file.begin(), from_file.end());
  merged.insert(merged.end(), rest.begin() + 1, rest.end());
  return merged;
}

std::string flow_snapshots_csv(const std::vector<FlowState>& snaps) {
  std::string s = "t,s,value\n";
  for (const auto& st : snaps) {
    for (int j = 0; j < st.grid_n; ++j) s += csv_row({st.time, j * st.ds(), st.values[j]});
  }
  return s;
}

json snapshots_json(const std::vector<FlowState>& snaps) {
  json arr = json::array();
  for (const auto& st : snaps) arr.push_back({{"t", st.time}, {"values", st.values}});
  return arr;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Soliton curves on the light-cone: roots, angles, curves and curvature flows",
               "lightcone"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_help;
  app.add_option("--config", config_help, "file of key=value lines overriding option defaults");

  Common common;
  double lambda = 0.0, mu = 0.0;

  auto* roots = app.add_subcommand("roots", "roots of x^3 - lambda x - mu and the period");
  roots->add_option("--lambda", lambda)->required();
  roots->add_option("--mu", mu)->required();
  add_common(roots, common);

  int profile_n = 1024;
  auto* curvature = app.add_subcommand("curvature", "one period of the curvature profile");
  curvature->add_option("--lambda", lambda)->required();
  curvature->add_option("--mu", mu)->required();
  curvature->add_option("--samples", profile_n, "grid size, a power of two");
  add_common(curvature, common);

  std::string method = "all";
  auto* angle = app.add_subcommand("angle", "progression angle over one period (mu > 0)");
  angle->add_option("--lambda", lambda)->required();
  angle->add_option("--mu", mu)->required();
  angle->add_option("--method", method)->check(CLI::IsMember({"quad", "closed", "series", "all"}));
  add_common(angle, common);

  int p = 0, q = 0, spp = 256;
  std::string trace_out;
  auto* closed = app.add_subcommand("find-closed", "lambda for a closed soliton with index p over q periods");
  closed->add_option("--p", p)->required();
  closed->add_option("--q", q)->required();
  closed->add_option("--samples-per-period", spp);
  closed->add_option("--trace", trace_out, "also write the q-period curve as CSV");
  add_common(closed, common);

  int periods = 1;
  std::string curve_method = "rotate";
  auto* curve = app.add_subcommand("curve", "curve samples on the light-cone");
  curve->add_option("--lambda", lambda)->required();
  curve->add_option("--mu", mu)->required();
  curve->add_option("--periods", periods)->check(CLI::PositiveNumber);
  curve->add_option("--samples-per-period", spp);
  curve->add_option("--method", curve_method, "rotate: monodromy powers; integrate: continued integration")
      ->check(CLI::IsMember({"rotate", "integrate"}));
  add_common(curve, common);

  std::string kind, init = "sine", snapshot_out, scheme = "spectral";
  int grid_n = 256, every = 10, snapshots = 0;
  double dt = 0.0, t_end = 0.1;
  auto* flow = app.add_subcommand("flow", "heat or KdV curvature flow");
  flow->add_option("kind", kind)->required()->check(CLI::IsMember({"heat", "kdv"}));
  flow->add_option("--init", init, "uniform:<k0> | sine | soliton:<lambda>,<mu> | random | file:<path>");
  flow->add_option("--grid-n", grid_n);
  flow->add_option("--dt", dt, "time step (default: the stability gate)");
  flow->add_option("--t-end", t_end);
  flow->add_option("--every", every, "record every n steps")->check(CLI::PositiveNumber);
  flow->add_option("--snapshots", snapshots, "keep the state every n steps (0: none)");
  flow->add_option("--snapshot-out", snapshot_out, "CSV file for snapshots (t,s,value)");
  flow->add_option("--scheme", scheme)->check(CLI::IsMember({"spectral", "fd6"}));
  add_common(flow, common);

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (*roots) {
      const auto prm = solve_cubic(lambda, mu);
      if (want_json(common, true)) {
        write_text(common.out, params_json(prm).dump(2) + "\n", out);
      } else {
        write_text(common.out,
                   "lambda,mu,x1,x2,x3,modulus,period\n" +
                       csv_row({prm.lambda(), prm.mu(), prm.x1(), prm.x2(), prm.x3(), prm.modulus(),
                                prm.period()}),
                   out);
      }
    } else if (*curvature) {
      const auto prof = sample_profile(solve_cubic(lambda, mu), profile_n);
      if (want_json(common, false)) {
        json j = params_json(prof.params);
        json rows = json::array();
        for (const auto& s : prof.samples) {
          rows.push_back({{"s", s.s}, {"kg", s.kg}, {"kg_s", s.kg_s}, {"kg_ss", s.kg_ss}});
        }
        j["samples"] = rows;
        write_text(common.out, j.dump(2) + "\n", out);
      } else {
        std::string s = "s,kg,kg_s,kg_ss\n";
        for (const auto& r : prof.samples) s += csv_row({r.s, r.kg, r.kg_s, r.kg_ss});
        write_text(common.out, s, out);
      }
    } else if (*angle) {
      const auto prm = solve_cubic(lambda, mu);
      if (!(mu > 0.0)) throw Error(ErrorCode::NonPositiveMu, "the progression angle needs mu > 0");
      // the angle is invariant under the mu -> 2 rescaling, which the series assumes
      const double lambda_bar = normalize_mu2(lambda, mu).lambda_bar;
      json j = {{"lambda", lambda}, {"mu", mu}, {"lambda_bar", lambda_bar}};
      std::string csv;
      if (method == "all") {
        const double qv = progression_angle_quad(prm);
        const double cv = progression_angle_closed(prm);
        // evaluated even below its validity gate so the comparison is always complete
        const double sv = progression_angle_series(lambda_bar, 0.0);
        const bool in_range = lambda_bar >= 30.0;
        j.update({{"quad", qv},
                  {"closed", cv},
                  {"series", sv},
                  {"series_in_range", in_range},
                  {"delta_quad_closed", qv - cv},
                  {"delta_quad_series", qv - sv},
                  {"delta_closed_series", cv - sv}});
        csv = "lambda,mu,quad,closed,series,delta_quad_closed,delta_quad_series,delta_closed_series\n" +
              csv_row({lambda, mu, qv, cv, sv, qv - cv, qv - sv, cv - sv});
      } else {
        double v = 0.0;
        if (method == "quad") v = progression_angle_quad(prm);
        if (method == "closed") v = progression_angle_closed(prm);
        if (method == "series") v = progression_angle_series(lambda_bar);
        j["method"] = method;
        j["angle"] = v;
        csv = "lambda,mu,method,angle\n" + num(lambda) + "," + num(mu) + "," + method + "," + num(v) + "\n";
      }
      write_text(common.out, want_json(common, true) ? j.dump(2) + "\n" : csv, out);
    } else if (*closed) {
      const auto spec = find_closed_lambda(p, q);
      const auto tr = build_trace(solve_cubic(spec.lambda_star, spec.mu), q, spp);
      const auto rep = closure_report(tr);
      const double dtheta_err = std::abs(rep.delta_theta - 2.0 * std::numbers::pi * p);
      if (!trace_out.empty()) write_text(trace_out, curve_csv(tr), out);
      const bool ok = rep.gap <= common.tol * rep.max_psi && dtheta_err <= common.tol;
      if (want_json(common, true)) {
        json j = {{"p", p},
                  {"q", q},
                  {"lambda_star", spec.lambda_star},
                  {"mu", spec.mu},
                  {"progression", spec.progression},
                  {"residual", spec.residual},
                  {"gap", rep.gap},
                  {"delta_theta", rep.delta_theta},
                  {"max_psi", rep.max_psi},
                  {"closed", ok}};
        write_text(common.out, j.dump(2) + "\n", out);
      } else {
        write_text(common.out,
                   "p,q,lambda_star,mu,progression,residual,gap,delta_theta,max_psi\n" +
                       fmt::format("{},{},", p, q) +
                       csv_row({spec.lambda_star, spec.mu, spec.progression, spec.residual, rep.gap,
                                rep.delta_theta, rep.max_psi}),
                   out);
      }
      if (!ok) {
        throw Error(ErrorCode::NotClosed,
                    fmt::format("gap {:.3g} (max psi {:.3g}), delta theta off by {:.3g}", rep.gap,
                                rep.max_psi, dtheta_err));
      }
    } else if (*curve) {
      const auto prm = solve_cubic(lambda, mu);
      const auto tr = curve_method == "rotate" ? extend_periods(build_trace(prm, 1, spp), periods)
                                               : build_trace(prm, periods, spp);
      write_text(common.out, want_json(common, false) ? curve_json(tr).dump(2) + "\n" : curve_csv(tr),
                 out);
    } else if (*flow) {
      const FlowKind fk = kind == "heat" ? FlowKind::Heat : FlowKind::Kdv;
      if (init.rfind("file:", 0) == 0 && !std::ifstream(init.substr(5))) {
        throw IoFailure("cannot read initial data " + init.substr(5));
      }
      auto state = make_preset(init, fk, grid_n, common.seed);
      state.scheme = scheme == "fd6" ? DerivativeScheme::FiniteDifference6 : DerivativeScheme::Spectral;
      const bool as_json = want_json(common, false);
      std::optional<double> blowup;
      if (fk == FlowKind::Heat) {
        const double step = dt > 0.0 ? dt : heat_dt_limit(state);
        const double t_stop = state.time + t_end;
        const auto run = run_heat(state, step, t_stop, every, snapshots);
        blowup = run.blowup_time;
        if (as_json) {
          json recs = json::array();
          for (const auto& r : run.records) {
            recs.push_back({{"t", r.t}, {"k_min", r.k_min}, {"k_max", r.k_max}, {"harnack_min", r.harnack_min}});
          }
          json j = {{"kind", "heat"},         {"init", init},       {"grid_n", grid_n},
                    {"length", state.length}, {"dt", step},         {"records", recs},
                    {"worst_kmin_drop", run.worst_kmin_drop},
                    {"blowup_time", blowup ? json(*blowup) : json(nullptr)}};
          if (snapshots > 0) j["snapshots"] = snapshots_json(run.snapshots);
          write_text(common.out, j.dump(2) + "\n", out);
        } else {
          std::string s = "t,k_min,k_max,harnack_min\n";
          for (const auto& r : run.records) s += csv_row({r.t, r.k_min, r.k_max, r.harnack_min});
          write_text(common.out, s, out);
        }
        if (!snapshot_out.empty()) write_text(snapshot_out, flow_snapshots_csv(run.snapshots), out);
      } else {
        const double step = dt > 0.0 ? dt : kdv_dt_limit(state);
        const auto run = run_kdv(state, step, state.time + t_end, every, snapshots);
        if (as_json) {
          json recs = json::array();
          for (const auto& r : run.records) {
            recs.push_back({{"t", r.t},
                            {"length", r.length},
                            {"int_kg", r.int_kg},
                            {"int_kg2", r.int_kg2},
                            {"drift_length", r.drift_length},
                            {"drift_kg", r.drift_kg},
                            {"drift_kg2", r.drift_kg2}});
          }
          json j = {{"kind", "kdv"},          {"init", init}, {"grid_n", grid_n},
                    {"length", state.length}, {"dt", step},   {"records", recs},
                    {"max_drift", run.max_drift}};
          if (snapshots > 0) j["snapshots"] = snapshots_json(run.snapshots);
          write_text(common.out, j.dump(2) + "\n", out);
        } else {
          std::string s = "t,length,int_kg,int_kg2,drift_length,drift_kg,drift_kg2\n";
          for (const auto& r : run.records) {
            s += csv_row({r.t, r.length, r.int_kg, r.int_kg2, r.drift_length, r.drift_kg, r.drift_kg2});
          }
          write_text(common.out, s, out);
        }
        if (!snapshot_out.empty()) write_text(snapshot_out, flow_snapshots_csv(run.snapshots), out);
      }
      if (blowup) {
        err << "blowup at t=" << num(*blowup) << "\n";
        return kExitBlowup;
      }
    }
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace lightcone
