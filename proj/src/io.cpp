#include "singshock/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "singshock/error.hpp"

namespace singshock {

using nlohmann::json;

namespace {

json pair_json(double a, double b) { return json::array({a, b}); }
json state_json(State s) { return pair_json(s.u, s.v); }

State state_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorKind::InvalidInput, "expected a [u, v] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Point point_from(const json& j) {
  const State s = state_from(j);
  return {s.u, s.v};
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(ErrorKind::InvalidInput, std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("unexpected JSON layout: ") + e.what());
  }
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  const json doc = parse_document(json_text);
  Scenario s = guarded([&] {
    Scenario out;
    if (!doc.is_object()) fail(ErrorKind::InvalidInput, "scenario must be a JSON object");
    if (!doc.contains("states") || !doc["states"].is_array()) fail(ErrorKind::InvalidInput, "missing 'states'");
    for (const json& st : doc["states"]) out.states.push_back(state_from(st));
    if (doc.contains("breakpoints")) out.breakpoints = doc["breakpoints"].get<std::vector<double>>();
    if (doc.contains("deltas")) out.deltas = doc["deltas"].get<std::vector<double>>();
    out.t_max = number(doc, "t_max");
    return out;
  });
  validate(s);
  return s;
}

std::string emit_scenario(const Scenario& s) {
  json doc;
  doc["states"] = json::array();
  for (const State& st : s.states) doc["states"].push_back(state_json(st));
  doc["breakpoints"] = s.breakpoints;
  if (!s.deltas.empty()) doc["deltas"] = s.deltas;
  doc["t_max"] = s.t_max;
  return doc.dump(2) + "\n";
}

std::string emit_timeline(const Timeline& tl) {
  json doc;
  doc["t_max"] = tl.t_max;
  doc["trajectories"] = json::array();
  for (const Trajectory& tr : tl.trajectories) {
    json j;
    j["id"] = tr.id;
    j["kind"] = std::string(trajectory_kind_name(tr.kind));
    j["family"] = tr.family;
    j["start_event"] = tr.start_event;
    j["end_event"] = tr.end_event;
    j["samples"] = json::array();
    for (const TrajectorySample& s : tr.samples) {
      j["samples"].push_back(
          {{"t", s.t}, {"x", s.x}, {"c", s.c}, {"beta", s.beta}, {"left", state_json(s.left)}, {"right", state_json(s.right)}});
    }
    doc["trajectories"].push_back(std::move(j));
  }
  doc["events"] = json::array();
  for (const Event& e : tl.events) {
    doc["events"].push_back({{"id", e.id},
                             {"kind", std::string(event_kind_name(e.kind))},
                             {"x", e.x},
                             {"t", e.t},
                             {"zeta", e.zeta},
                             {"incoming", e.incoming},
                             {"outgoing", e.outgoing},
                             {"regime", e.regime},
                             {"approximate", e.approximate},
                             {"note", e.note}});
  }
  doc["epochs"] = json::array();
  for (const Epoch& ep : tl.epochs) {
    json patches = json::array();
    for (const Patch& p : ep.patches) {
      patches.push_back({{"kind", std::string(patch_kind_name(p.kind))},
                         {"left_traj", p.left_traj},
                         {"right_traj", p.right_traj},
                         {"state", state_json(p.state)},
                         {"family", p.family},
                         {"center", pair_json(p.center.x, p.center.t)},
                         {"path_traj", p.path_traj},
                         {"path_on_right", p.path_on_right}});
    }
    doc["epochs"].push_back({{"t_begin", ep.t_begin}, {"t_end", ep.t_end}, {"patches", std::move(patches)}});
  }
  doc["regimes"] = tl.regime_sequence();
  return doc.dump(2) + "\n";
}

Timeline parse_timeline(std::string_view json_text) {
  const json doc = parse_document(json_text);
  Timeline tl = guarded([&] {
    Timeline out;
    out.t_max = number(doc, "t_max");
    for (const json& j : doc.at("trajectories")) {
      Trajectory tr;
      tr.id = j.at("id").get<int>();
      const auto kind = parse_trajectory_kind(j.at("kind").get<std::string>());
      if (!kind) fail(ErrorKind::InvalidInput, "unknown trajectory kind");
      tr.kind = *kind;
      tr.family = j.at("family").get<int>();
      tr.start_event = j.at("start_event").get<int>();
      tr.end_event = j.at("end_event").get<int>();
      for (const json& s : j.at("samples")) {
        tr.samples.push_back({number(s, "t"), number(s, "x"), number(s, "c"), number(s, "beta"),
                              state_from(s.at("left")), state_from(s.at("right"))});
      }
      if (tr.samples.empty()) fail(ErrorKind::InvalidInput, "trajectory without samples");
      out.trajectories.push_back(std::move(tr));
    }
    for (const json& j : doc.at("events")) {
      Event e;
      e.id = j.at("id").get<int>();
      const auto kind = parse_event_kind(j.at("kind").get<std::string>());
      if (!kind) fail(ErrorKind::InvalidInput, "unknown event kind");
      e.kind = *kind;
      e.x = number(j, "x");
      e.t = number(j, "t");
      e.zeta = number(j, "zeta");
      e.incoming = j.at("incoming").get<std::vector<int>>();
      e.outgoing = j.at("outgoing").get<std::vector<int>>();
      e.regime = j.at("regime").get<std::string>();
      e.approximate = j.at("approximate").get<bool>();
      e.note = j.at("note").get<std::string>();
      out.events.push_back(std::move(e));
    }
    for (const json& j : doc.at("epochs")) {
      Epoch ep;
      ep.t_begin = number(j, "t_begin");
      ep.t_end = number(j, "t_end");
      for (const json& pj : j.at("patches")) {
        Patch p;
        const auto kind = parse_patch_kind(pj.at("kind").get<std::string>());
        if (!kind) fail(ErrorKind::InvalidInput, "unknown patch kind");
        p.kind = *kind;
        p.left_traj = pj.at("left_traj").get<int>();
        p.right_traj = pj.at("right_traj").get<int>();
        p.state = state_from(pj.at("state"));
        p.family = pj.at("family").get<int>();
        p.center = point_from(pj.at("center"));
        p.path_traj = pj.at("path_traj").get<int>();
        p.path_on_right = pj.at("path_on_right").get<bool>();
        ep.patches.push_back(p);
      }
      out.epochs.push_back(std::move(ep));
    }
    return out;
  });

  const int n = static_cast<int>(tl.trajectories.size());
  for (int i = 0; i < n; ++i) {
    if (tl.trajectories[static_cast<std::size_t>(i)].id != i) {
      fail(ErrorKind::InvalidInput, "trajectory ids must equal their index");
    }
  }
  for (const Event& e : tl.events) {
    for (int id : e.incoming) {
      if (id < 0 || id >= n) fail(ErrorKind::InvalidInput, "event references an unknown trajectory");
    }
    for (int id : e.outgoing) {
      if (id < 0 || id >= n) fail(ErrorKind::InvalidInput, "event references an unknown trajectory");
    }
  }
  return tl;
}

std::string emit_wave_fan(const WaveFan& fan) {
  json doc;
  doc["left"] = state_json(fan.left);
  doc["right"] = state_json(fan.right);
  doc["origin"] = pair_json(fan.origin.x, fan.origin.t);
  doc["waves"] = json::array();
  for (const Wave& w : fan.waves) {
    json j;
    if (const auto* s = std::get_if<ShockWave>(&w)) {
      j = {{"type", "shock"}, {"family", family_index(s->family)}, {"speed", s->speed}};
    } else if (const auto* r = std::get_if<RarefactionWave>(&w)) {
      j = {{"type", "rarefaction"},
           {"family", family_index(r->family)},
           {"tail_speed", r->tail_speed()},
           {"head_speed", r->head_speed()}};
    } else {
      const auto& ss = std::get<SingularShock>(w);
      j = {{"type", "singular"},
           {"speed", ss.speed},
           {"k", ss.k},
           {"zeta0", ss.zeta0},
           {"alpha_split", pair_json(ss.split.a0, ss.split.a1)},
           {"overcompressive", ss.overcompressive}};
    }
    j["left"] = state_json(left_state(w));
    j["right"] = state_json(right_state(w));
    doc["waves"].push_back(std::move(j));
  }
  doc["states"] = json::array();
  for (const State& s : fan.states()) doc["states"].push_back(state_json(s));
  return doc.dump(2) + "\n";
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string trajectories_csv(const Timeline& tl) {
  std::string out = "trajectory_id,t,x,beta\n";
  for (const Trajectory& tr : tl.trajectories) {
    for (const TrajectorySample& s : tr.samples) {
      out += std::to_string(tr.id) + "," + fmt(s.t) + "," + fmt(s.x) + "," + fmt(s.beta) + "\n";
    }
  }
  return out;
}

std::string snapshot_csv(const FieldSnapshot& snap) {
  std::string out = "x,u,v\n";
  for (std::size_t j = 0; j < snap.u.size(); ++j) {
    out += fmt(snap.center(j)) + "," + fmt(snap.u[j]) + "," + fmt(snap.v[j]) + "\n";
  }
  return out;
}

std::string render_svg(const Timeline& tl, const SvgOptions& opts) {
  const double t_max = tl.t_max > 0.0 ? tl.t_max : 1.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  bool first = true;
  double beta_max = 0.0;
  for (const Trajectory& tr : tl.trajectories) {
    for (const TrajectorySample& s : tr.samples) {
      if (first || s.x < x_lo) x_lo = s.x;
      if (first || s.x > x_hi) x_hi = s.x;
      first = false;
      beta_max = std::max(beta_max, s.beta);
    }
  }
  if (!(x_hi > x_lo)) {
    x_lo -= 1.0;
    x_hi += 1.0;
  }
  const double pad = 0.05 * (x_hi - x_lo);
  x_lo -= pad;
  x_hi += pad;

  const double w = opts.width - 2.0 * opts.margin;
  const double h = opts.height - 2.0 * opts.margin;
  auto px = [&](double x) { return opts.margin + (x - x_lo) / (x_hi - x_lo) * w; };
  auto py = [&](double t) { return opts.margin + (1.0 - t / t_max) * h; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\" viewBox=\"0 0 " << opts.width << " " << opts.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  os << "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line x1=\"" << fmt3(px(x_lo)) << "\" y1=\"" << fmt3(py(0.0)) << "\" x2=\"" << fmt3(px(x_hi)) << "\" y2=\""
     << fmt3(py(0.0)) << "\"/>\n"
     << "<line x1=\"" << fmt3(px(x_lo)) << "\" y1=\"" << fmt3(py(0.0)) << "\" x2=\"" << fmt3(px(x_lo)) << "\" y2=\""
     << fmt3(py(t_max)) << "\"/>\n"
     << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n"
     << "<text x=\"" << fmt3(px(x_lo)) << "\" y=\"" << fmt3(py(0.0) + 18) << "\">" << fmt3(x_lo) << "</text>\n"
     << "<text x=\"" << fmt3(px(x_hi)) << "\" y=\"" << fmt3(py(0.0) + 18) << "\" text-anchor=\"end\">" << fmt3(x_hi)
     << "</text>\n"
     << "<text x=\"" << fmt3(px(x_lo) - 6) << "\" y=\"" << fmt3(py(t_max) + 4) << "\" text-anchor=\"end\">t="
     << fmt3(t_max) << "</text>\n"
     << "<text x=\"" << fmt3(0.5 * (px(x_lo) + px(x_hi))) << "\" y=\"" << fmt3(py(0.0) + 34)
     << "\" text-anchor=\"middle\">x</text>\n"
     << "</g>\n";

  for (const Trajectory& tr : tl.trajectories) {
    if (tr.kind == TrajectoryKind::Singular) {
      os << "<g stroke=\"#b00020\" stroke-linecap=\"round\" data-trajectory=\"" << tr.id << "\">\n";
      for (std::size_t i = 0; i + 1 < tr.samples.size(); ++i) {
        const TrajectorySample& a = tr.samples[i];
        const TrajectorySample& b = tr.samples[i + 1];
        const double beta = 0.5 * (a.beta + b.beta);
        const double width = 1.5 + (beta_max > 0.0 ? 4.5 * beta / beta_max : 0.0);
        os << "<line x1=\"" << fmt3(px(a.x)) << "\" y1=\"" << fmt3(py(a.t)) << "\" x2=\"" << fmt3(px(b.x))
           << "\" y2=\"" << fmt3(py(b.t)) << "\" stroke-width=\"" << fmt3(width) << "\"/>\n";
      }
      os << "</g>\n";
      continue;
    }
    os << "<polyline fill=\"none\" data-trajectory=\"" << tr.id << "\" ";
    if (tr.kind == TrajectoryKind::Shock) {
      os << "stroke=\"#1a4fa0\" stroke-width=\"1.5\"";
    } else {
      os << "stroke=\"#2a8a3a\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"";
    }
    os << " points=\"";
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
      if (i > 0) os << " ";
      os << fmt3(px(tr.samples[i].x)) << "," << fmt3(py(tr.samples[i].t));
    }
    os << "\"/>\n";
  }

  for (const Event& e : tl.events) {
    os << "<circle cx=\"" << fmt3(px(e.x)) << "\" cy=\"" << fmt3(py(e.t)) << "\" r=\"4\" fill=\""
       << (e.approximate ? "#ff9800" : "#000") << "\"><title>" << event_kind_name(e.kind) << " t=" << fmt3(e.t)
       << "</title></circle>\n";
    if (!e.regime.empty()) {
      os << "<text x=\"" << fmt3(px(e.x) + 6) << "\" y=\"" << fmt3(py(e.t) - 6)
         << "\" font-family=\"sans-serif\" font-size=\"12\">(" << e.regime << ")</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace singshock
