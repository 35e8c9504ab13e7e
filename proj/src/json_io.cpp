#include "otk/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "otk/error.hpp"

namespace otk {
namespace {

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(indent * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(indent * depth, ' ') : "";
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    case Json::value_t::string:
      write_string(out, j.get_ref<const std::string&>());
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        write(out, e, indent, depth + 1);
      }
      out += close + ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += pad;
        write_string(out, key);
        out += indent > 0 ? ": " : ":";
        write(out, value, indent, depth + 1);
      }
      out += close + '}';
      break;
    }
    default:
      out += "null";
  }
}

Json vec(Vec2<double> v) { return Json::array({v[0], v[1]}); }

Json invariant_array(const std::array<double, 4>& a) {
  Json j = Json::object();
  for (Invariant p : kBasicInvariants) j[invariant_name(p)] = a[index_of(p)];
  return j;
}

std::array<double, 4> invariant_array_from(const Json& j) {
  std::array<double, 4> a{};
  for (Invariant p : kBasicInvariants) {
    const auto& v = j.at(invariant_name(p));
    a[index_of(p)] = v.is_null() ? std::nan("") : v.get<double>();
  }
  return a;
}

Vec2<double> vec_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Invariant invariant_from(const Json& j) {
  const auto p = invariant_from_name(j.get<std::string>());
  if (!p) throw Error("unknown invariant name '" + j.get<std::string>() + "'");
  return *p;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  out += '\n';
  return out;
}

Json to_json(const InvariantRecord& r) {
  Json j;
  j["t1"] = r.point[0];
  j["t2"] = r.point[1];
  for (Invariant p : kBasicInvariants) j[invariant_name(p)] = r.value(p);
  j["C_gamma"] = r.C_gamma;
  j["C_nu"] = r.C_nu;
  j["R2"] = r.R2;
  j["Rfull"] = r.Rfull;
  j["RePsi2"] = r.RePsi2;
  j["ImPsi2"] = r.ImPsi2;
  j["X"] = vec(r.X);
  j["Y"] = vec(r.Y);
  for (Invariant p : kBasicInvariants) {
    j[std::string("X") + invariant_name(p)] = r.along_x(p);
    j[std::string("Y") + invariant_name(p)] = r.along_y(p);
  }
  if (r.wlp) {
    j["r"] = r.wlp->r;
    j["s"] = r.wlp->s;
    j["w"] = r.wlp->w;
  }
  return j;
}

Json to_json(const PairScore& s) {
  Json j;
  j["pair"] = Json::array({invariant_name(s.p), invariant_name(s.q)});
  j["median_score"] = s.median_score;
  j["fraction_independent"] = s.fraction_independent;
  j["independent"] = s.independent;
  return j;
}

Json to_json(const GenericityReport& r) {
  Json j;
  j["det_g_ok"] = r.det_g_ok;
  j["det_h_ok"] = r.det_h_ok;
  j["c_rho_nonzero"] = r.c_rho_nonzero;
  j["independence_ok"] = r.independence_ok;
  j["pair"] = r.pair ? Json::array({invariant_name(r.pair->p), invariant_name(r.pair->q)})
                     : Json(nullptr);
  j["killing_dim"] = r.killing_dim;
  if (r.i4_nonzero) j["i4_nonzero"] = *r.i4_nonzero;
  j["max_abs_Q_chi"] = r.max_abs_q_chi;
  j["max_abs_Q_gamma"] = r.max_abs_q_gamma;
  j["samples"] = r.samples;
  j["failed_samples"] = r.failed_samples;
  Json ranking = Json::array();
  for (const auto& s : r.ranking) ranking.push_back(to_json(s));
  j["ranking"] = ranking;
  j["notes"] = r.notes;
  j["passes"] = r.passes();
  return j;
}

Json to_json(const VacuumRelations& v) {
  Json j;
  j["lambda"] = v.q.lambda;
  j["eps"] = v.q.eps;
  j["C_gamma"] = v.q.C_gamma;
  j["I1_squared"] = v.q.I1_squared;
  j["I1"] = v.I1;
  j["I2"] = v.q.I2;
  j["I3"] = v.q.I3;
  j["I4"] = v.q.I4;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["residuals"] = v.residual;
  j["relation1_squared"] = v.relation1_squared;
  j["relation4_opposite_eps_terms"] = v.relation4_opposite_eps_terms;
  if (v.relation2_with_nut) j["relation2_with_nut"] = *v.relation2_with_nut;
  return j;
}

Json to_json(const Box& b) {
  Json j;
  j["t1"] = Json::array({b.t1_min, b.t1_max});
  j["t2"] = Json::array({b.t2_min, b.t2_max});
  return j;
}

Box box_from_json(const Json& j) {
  const Vec2<double> a = vec_from(j.at("t1"));
  const Vec2<double> b = vec_from(j.at("t2"));
  return {a[0], a[1], b[0], b[1]};
}

Json to_json(const Signature& s) {
  Json j;
  j["sigfmt"] = s.format;
  j["metric"] = s.metric_name;
  j["fingerprint"] = s.fingerprint;
  j["chart"] = Json::array({invariant_name(s.chart.p), invariant_name(s.chart.q)});
  j["box"] = to_json(s.box);
  j["grid"] = s.grid;
  Json tol;
  tol["independence"] = s.tolerances.independence;
  tol["separation"] = s.tolerances.separation;
  tol["min_samples"] = s.tolerances.min_samples;
  tol["compare"] = s.tolerances.compare;
  j["tolerances"] = tol;
  Json samples = Json::array();
  for (const auto& smp : s.samples) {
    Json e;
    e["source"] = vec(smp.source);
    e["values"] = invariant_array(smp.values);
    e["X"] = invariant_array(smp.along_x);
    e["Y"] = invariant_array(smp.along_y);
    samples.push_back(e);
  }
  j["samples"] = samples;
  return j;
}

Signature signature_from_json(const Json& j) {
  try {
    Signature s;
    s.format = j.at("sigfmt").get<int>();
    if (s.format != 1) throw Error("unsupported signature format " + std::to_string(s.format));
    s.metric_name = j.at("metric").get<std::string>();
    s.fingerprint = j.at("fingerprint").get<std::string>();
    s.chart = {invariant_from(j.at("chart").at(0)), invariant_from(j.at("chart").at(1))};
    s.box = box_from_json(j.at("box"));
    s.grid = j.at("grid").get<int>();
    const auto& tol = j.at("tolerances");
    s.tolerances.independence = tol.at("independence").get<double>();
    s.tolerances.separation = tol.at("separation").get<double>();
    s.tolerances.min_samples = tol.at("min_samples").get<int>();
    s.tolerances.compare = tol.at("compare").get<double>();
    for (const auto& e : j.at("samples")) {
      SignatureSample smp;
      smp.source = vec_from(e.at("source"));
      smp.values = invariant_array_from(e.at("values"));
      smp.along_x = invariant_array_from(e.at("X"));
      smp.along_y = invariant_array_from(e.at("Y"));
      s.samples.push_back(smp);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed signature: ") + e.what());
  }
}

Json to_json(const Verdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  j["reason"] = v.reason;
  j["samples"] = v.samples;
  j["locatable"] = v.locatable;
  j["matched"] = v.matched;
  j["y_sign"] = v.y_sign;
  j["max_mismatch"] = v.max_mismatch;
  if (v.witness) {
    const Witness& w = *v.witness;
    Json wj;
    wj["pq"] = vec(w.pq);
    wj["quantity"] = w.quantity;
    wj["value_a"] = w.value_a;
    wj["value_b"] = w.value_b;
    wj["mismatch"] = w.mismatch;
    wj["source_a"] = vec(w.source_a);
    wj["source_b"] = vec(w.source_b);
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace otk
