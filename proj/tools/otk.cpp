// Command-line front end for the orbit-surface invariant toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "otk/catalog.hpp"
#include "otk/equivalence.hpp"
#include "otk/error.hpp"
#include "otk/genericity.hpp"
#include "otk/identities.hpp"
#include "otk/json_io.hpp"
#include "otk/metric_file.hpp"
#include "otk/parallel.hpp"
#include "otk/vacuum.hpp"

using namespace otk;

namespace {

enum Exit { kOk = 0, kUsage = 3, kInput = 4, kNumeric = 5, kIo = 6 };

struct Failure : std::runtime_error {
  Failure(int code, const std::string& kind, const std::string& message)
      : std::runtime_error(message), code(code), kind(kind) {}
  int code;
  std::string kind;
};

std::vector<double> number_list(const std::string& text, size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure(kUsage, "usage", std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.size() != count) {
    throw Failure(kUsage, "usage",
                  std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers");
  }
  return out;
}

Box box_for(const MetricDefinition& def, const std::string& text) {
  if (text.empty()) {
    if (def.domain) return *def.domain;
    throw Failure(kUsage, "usage", "no --box given and the metric has no [domain]");
  }
  const auto v = number_list(text, 4, "--box");
  if (!(v[0] < v[1] && v[2] < v[3])) throw Failure(kUsage, "usage", "--box needs min < max");
  return {v[0], v[1], v[2], v[3]};
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Failure(kIo, "io", "cannot write '" + path + "'");
  f << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_record(const InvariantRecord& r) {
  std::cout << "point (" << fmt(r.point[0]) << ", " << fmt(r.point[1]) << ")\n";
  for (Invariant p : kBasicInvariants) {
    std::cout << "  " << invariant_name(p) << " = " << fmt(r.value(p)) << "\n";
  }
  std::cout << "  C_gamma = " << fmt(r.C_gamma) << "\n  C_nu = " << fmt(r.C_nu)
            << "\n  R2 = " << fmt(r.R2) << "\n  Rfull = " << fmt(r.Rfull)
            << "\n  RePsi2 = " << fmt(r.RePsi2) << "\n  ImPsi2 = " << fmt(r.ImPsi2) << "\n";
  if (r.frame_defined) {
    std::cout << "  X = (" << fmt(r.X[0]) << ", " << fmt(r.X[1]) << ")\n  Y = (" << fmt(r.Y[0])
              << ", " << fmt(r.Y[1]) << ")\n";
    for (Invariant p : kBasicInvariants) {
      std::cout << "  X" << invariant_name(p) << " = " << fmt(r.along_x(p)) << "  Y"
                << invariant_name(p) << " = " << fmt(r.along_y(p)) << "\n";
    }
  } else {
    std::cout << "  frame undefined (C_rho = 0)\n";
  }
  if (r.wlp) {
    std::cout << "  r = " << fmt(r.wlp->r) << "  s = " << fmt(r.wlp->s) << "  w = " << fmt(r.wlp->w)
              << "\n";
  }
}

Chart parse_chart(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Failure(kUsage, "usage", "--chart needs 'p,q'");
  const auto p = invariant_from_name(text.substr(0, comma));
  const auto q = invariant_from_name(text.substr(comma + 1));
  if (!p || !q) {
    throw Failure(kUsage, "usage", "--chart names must be among C_rho, C_chi, Q_chi, Q_gamma");
  }
  return {*p, *q};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential invariants of metrics with two commuting Killing vectors"};
  app.require_subcommand(1);
  int threads = 1;
  std::string json_path;
  app.add_option("--threads", threads, "worker threads for grid computations")
      ->check(CLI::PositiveNumber);

  auto add_json = [&](CLI::App* sub) {
    sub->add_option("--json", json_path, "write JSON to this path ('-' or no value for stdout)")
        ->expected(0, 1)
        ->default_str("-");
  };

  // invariants
  auto* inv = app.add_subcommand("invariants", "invariant record at a point or over a grid");
  std::string inv_metric, inv_at, inv_grid, inv_box;
  bool inv_wlp = false;
  inv->add_option("metric", inv_metric, "metric file or catalog name")->required();
  inv->add_option("--at", inv_at, "point t1,t2");
  inv->add_option("--grid", inv_grid, "grid n1,n2 over the box");
  inv->add_option("--box", inv_box, "t1min,t1max,t2min,t2max");
  inv->add_flag("--wlp", inv_wlp, "add Weyl-Lewis-Papapetrou variables r, s, w");
  add_json(inv);

  // genericity
  auto* gen = app.add_subcommand("genericity", "check the genericity assumptions on a box");
  std::string gen_metric, gen_box;
  int gen_grid = 12;
  bool gen_vacuum = false;
  gen->add_option("metric", gen_metric)->required();
  gen->add_option("--box", gen_box, "t1min,t1max,t2min,t2max");
  gen->add_option("--grid", gen_grid, "samples per side")->check(CLI::Range(2, 1000));
  gen->add_flag("--vacuum", gen_vacuum, "also require I4 != 0");
  add_json(gen);

  // vacuum-check
  auto* vac = app.add_subcommand("vacuum-check", "Einstein residual and vacuum relations");
  std::string vac_metric, vac_box;
  std::optional<double> vac_lambda;
  int vac_points = 10;
  vac->add_option("metric", vac_metric)->required();
  vac->add_option("--lambda", vac_lambda, "cosmological constant (default: from the metric)");
  vac->add_option("--box", vac_box, "t1min,t1max,t2min,t2max");
  vac->add_option("--points", vac_points, "random sample points")->check(CLI::Range(1, 100000));
  add_json(vac);

  // signature
  auto* sig = app.add_subcommand("signature", "tabulate invariants over a chart");
  std::string sig_metric, sig_box, sig_chart, sig_out;
  int sig_grid = 24;
  sig->add_option("metric", sig_metric)->required();
  sig->add_option("--box", sig_box, "t1min,t1max,t2min,t2max");
  sig->add_option("--chart", sig_chart, "p,q (default: best independent pair)");
  sig->add_option("--grid", sig_grid, "samples per side")->check(CLI::Range(2, 2000));
  sig->add_option("-o,--output", sig_out, "signature file")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "compare a signature with a metric");
  std::string cmp_sig, cmp_metric, cmp_box, cmp_metric_a;
  cmp->add_option("signature", cmp_sig)->required();
  cmp->add_option("metric", cmp_metric)->required();
  cmp->add_option("--box", cmp_box, "t1min,t1max,t2min,t2max for the metric");
  cmp->add_option("--metric-a", cmp_metric_a, "metric of the signature, to re-check a witness");
  add_json(cmp);

  // verify-paper
  auto* ver = app.add_subcommand("verify-paper", "run the identity suite on catalog entries");
  std::string ver_entry;
  int ver_points = 50;
  ver->add_option("--entry", ver_entry, "catalog entry (default: all)");
  ver->add_option("--points", ver_points)->check(CLI::Range(1, 100000));
  add_json(ver);

  // catalog
  auto* cat = app.add_subcommand("catalog", "list or export presets");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list presets");
  auto* cat_export = cat->add_subcommand("export", "print a preset as a metric file");
  std::string export_name, export_out = "-";
  cat_export->add_option("name", export_name)->required();
  cat_export->add_option("-o,--output", export_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const bool want_json = !json_path.empty();
  try {
    if (*inv) {
      const MetricDefinition def = load_metric(inv_metric);
      RecordOptions ro;
      ro.with_wlp = inv_wlp;
      std::vector<Vec2<double>> pts;
      if (!inv_at.empty()) {
        const auto v = number_list(inv_at, 2, "--at");
        pts.push_back({v[0], v[1]});
      } else if (!inv_grid.empty()) {
        const auto v = number_list(inv_grid, 2, "--grid");
        if (v[0] < 1 || v[1] < 1) throw Failure(kUsage, "usage", "--grid needs positive sizes");
        pts = grid_points(box_for(def, inv_box), static_cast<int>(v[0]), static_cast<int>(v[1]));
      } else {
        throw Failure(kUsage, "usage", "give --at or --grid");
      }
      std::vector<InvariantRecord> records(pts.size());
      parallel_for(pts.size(), threads, [&](size_t i) { records[i] = compute_record(def, pts[i], ro); });
      if (want_json) {
        Json j;
        if (!inv_at.empty()) {
          j = to_json(records[0]);
        } else {
          j = Json::array();
          for (const auto& r : records) j.push_back(to_json(r));
        }
        write_output(json_path, dump_json(j));
      } else {
        for (const auto& r : records) print_record(r);
      }
      return kOk;
    }

    if (*gen) {
      const MetricDefinition def = load_metric(gen_metric);
      const Box box = box_for(def, gen_box);
      const auto rep = genericity_report(def, grid_points(box, gen_grid, gen_grid), gen_vacuum);
      if (want_json) {
        write_output(json_path, dump_json(to_json(rep)));
      } else {
        auto yn = [](bool b) { return b ? "true" : "false"; };
        std::cout << "det_g_ok = " << yn(rep.det_g_ok) << "\ndet_h_ok = " << yn(rep.det_h_ok)
                  << "\nc_rho_nonzero = " << yn(rep.c_rho_nonzero)
                  << "\nindependence_ok = " << yn(rep.independence_ok) << "\n";
        if (rep.pair) {
          std::cout << "pair = (" << invariant_name(rep.pair->p) << ", "
                    << invariant_name(rep.pair->q) << ")\n";
        }
        std::cout << "killing_dim = " << rep.killing_dim << "\n";
        if (rep.i4_nonzero) std::cout << "i4_nonzero = " << yn(*rep.i4_nonzero) << "\n";
        for (const auto& s : rep.ranking) {
          std::cout << "  score(" << invariant_name(s.p) << ", " << invariant_name(s.q)
                    << ") = " << fmt(s.median_score) << (s.independent ? "  independent" : "")
                    << "\n";
        }
        for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
        std::cout << "passes = " << yn(rep.passes()) << "\n";
      }
      return kOk;
    }

    if (*vac) {
      const MetricDefinition def = load_metric(vac_metric);
      const Box box = box_for(def, vac_box);
      const double lambda = vac_lambda.value_or(def.lambda);
      const auto pts = random_points(box, vac_points, 1);
      double einstein = 0.0;
      std::array<double, 4> worst{};
      int generic = 0;
      Json points = Json::array();
      for (const auto& p : pts) {
        const double e = vacuum_residual(def, p, lambda);
        einstein = std::max(einstein, e);
        Json pj;
        pj["t1"] = p[0];
        pj["t2"] = p[1];
        pj["einstein_residual"] = e;
        try {
          const auto rel = vacuum_relations(compute_record(def, p), lambda);
          ++generic;
          for (int i = 0; i < 4; ++i) worst[i] = std::max(worst[i], rel.residual[i]);
          pj["relations"] = to_json(rel);
        } catch (const NotGeneric& ex) {
          pj["relations"] = nullptr;
          pj["note"] = ex.what();
        }
        points.push_back(pj);
      }
      const bool vacuum = einstein <= 1e-7;
      const bool relations_hold =
          generic > 0 && *std::max_element(worst.begin(), worst.end()) <= 1e-6;
      if (want_json) {
        Json j;
        j["lambda"] = lambda;
        j["max_einstein_residual"] = einstein;
        j["max_relation_residuals"] = worst;
        j["generic_points"] = generic;
        j["verdict"] = vacuum ? (relations_hold ? "vacuum" : "vacuum, relations not verified")
                              : "not vacuum";
        j["points"] = points;
        write_output(json_path, dump_json(j));
      } else {
        std::cout << "lambda = " << fmt(lambda) << "\nmax Einstein residual = " << fmt(einstein)
                  << "\n";
        for (int i = 0; i < 4; ++i) {
          std::cout << "max relation " << i + 1 << " residual = " << fmt(worst[i]) << "\n";
        }
        std::cout << "generic points = " << generic << " of " << pts.size() << "\n";
        std::cout << "verdict = "
                  << (vacuum ? (relations_hold ? "vacuum" : "vacuum, relations not verified")
                             : "not vacuum")
                  << "\n";
      }
      return kOk;
    }

    if (*sig) {
      const MetricDefinition def = load_metric(sig_metric);
      SignatureOptions so;
      so.grid = sig_grid;
      so.threads = threads;
      if (!sig_chart.empty()) so.chart = parse_chart(sig_chart);
      const Signature s = build_signature(def, box_for(def, sig_box), so);
      write_output(sig_out, dump_json(to_json(s)));
      std::cerr << "signature: " << s.samples.size() << " samples over chart ("
                << invariant_name(s.chart.p) << ", " << invariant_name(s.chart.q) << ")\n";
      return kOk;
    }

    if (*cmp) {
      std::ifstream f(cmp_sig);
      if (!f) throw Failure(kIo, "io", "cannot open signature '" + cmp_sig + "'");
      Json j;
      try {
        j = Json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw Failure(kInput, "input", std::string("signature is not valid JSON: ") + e.what());
      }
      const Signature a = signature_from_json(j);
      const MetricDefinition b = load_metric(cmp_metric);
      CompareOptions co;
      co.threads = threads;
      const Verdict v = compare(a, b, box_for(b, cmp_box), co);
      std::optional<double> recheck;
      if (v.witness && !cmp_metric_a.empty()) {
        recheck = witness_mismatch(a, load_metric(cmp_metric_a), b, box_for(b, cmp_box), *v.witness,
                                   v.y_sign);
      }
      if (want_json) {
        Json out = to_json(v);
        if (recheck) out["witness_recheck"] = *recheck;
        write_output(json_path, dump_json(out));
      } else {
        std::cout << "verdict = " << verdict_name(v.kind) << "\nreason = " << v.reason
                  << "\nsamples = " << v.samples << "\nlocatable = " << v.locatable
                  << "\nmatched = " << v.matched << "\ny_sign = " << v.y_sign
                  << "\nmax_mismatch = " << fmt(v.max_mismatch) << "\n";
        if (v.witness) {
          const Witness& w = *v.witness;
          std::cout << "witness at (p, q) = (" << fmt(w.pq[0]) << ", " << fmt(w.pq[1]) << "): "
                    << w.quantity << " = " << fmt(w.value_a) << " vs " << fmt(w.value_b)
                    << " (relative mismatch " << fmt(w.mismatch) << ")\n";
        }
        if (recheck) std::cout << "witness re-check mismatch = " << fmt(*recheck) << "\n";
      }
      return v.kind == VerdictKind::Equivalent ? 0 : v.kind == VerdictKind::Inequivalent ? 1 : 2;
    }

    if (*ver) {
      std::vector<CatalogEntry> entries;
      if (ver_entry.empty()) {
        entries = catalog();
      } else if (auto e = find_entry(ver_entry)) {
        entries.push_back(*e);
      } else {
        throw Failure(kUsage, "usage", "unknown catalog entry '" + ver_entry + "'");
      }
      bool all = true;
      Json out = Json::array();
      for (const auto& e : entries) {
        const auto results = verify_identities(e.metric, e.box(), ver_points);
        Json ej;
        ej["entry"] = e.name;
        Json rj = Json::array();
        if (!want_json) std::cout << "[" << e.name << "]\n";
        for (const auto& r : results) {
          const bool applicable = r.points > 0;
          if (applicable && !r.passed()) all = false;
          Json x;
          x["identity"] = r.name;
          x["status"] = !applicable ? "n/a" : r.passed() ? "pass" : "fail";
          x["max_residual"] = r.max_residual;
          x["tolerance"] = r.tolerance;
          x["points"] = r.points;
          x["note"] = r.note;
          rj.push_back(x);
          if (!want_json) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%-4s  max %.3e  tol %.0e  n=%-3d  ",
                          !applicable ? "n/a" : r.passed() ? "PASS" : "FAIL", r.max_residual,
                          r.tolerance, r.points);
            std::cout << "  " << buf << r.name << (r.note.empty() ? "" : "  (" + r.note + ")")
                      << "\n";
          }
        }
        ej["results"] = rj;
        out.push_back(ej);
      }
      if (want_json) write_output(json_path, dump_json(out));
      return all ? 0 : 1;
    }

    if (*cat_list) {
      for (const auto& e : catalog()) std::cout << e.name << "  " << e.description << "\n";
      return kOk;
    }
    if (*cat_export) {
      const auto e = find_entry(export_name);
      if (!e) throw Failure(kUsage, "usage", "unknown catalog entry '" + export_name + "'");
      write_output(export_out, write_metric_file(e->metric));
      return kOk;
    }
  } catch (const Failure& f) {
    if (want_json) {
      Json d;
      d["error"] = f.kind;
      d["message"] = f.what();
      std::cerr << dump_json(d);
    } else {
      std::cerr << "error: " << f.what() << "\n";
    }
    return f.code;
  } catch (const std::exception& e) {
    const bool input = dynamic_cast<const ParseError*>(&e) || dynamic_cast<const MetricFileError*>(&e) ||
                       dynamic_cast<const UnboundParameter*>(&e);
    if (want_json) {
      Json d;
      d["error"] = input ? "input" : "numeric";
      d["message"] = e.what();
      std::cerr << dump_json(d);
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return input ? kInput : kNumeric;
  }
  return kOk;
}
