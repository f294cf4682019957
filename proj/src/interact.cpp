#include "singshock/interact.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <variant>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/rootfind.hpp"
#include "singshock/singular.hpp"

namespace singshock {

std::optional<Point> meet(const Line& w1, const Line& w2, double t_max) {
  const double dc = w1.speed - w2.speed;
  const double scale = std::max({1.0, std::abs(w1.speed), std::abs(w2.speed)});
  if (dc <= 1e-12 * scale) return std::nullopt;
  const double t0 = std::max(w1.origin.t, w2.origin.t);
  const double gap0 = w2.position(t0) - w1.position(t0);
  if (gap0 < 0.0) return std::nullopt;
  const double t = t0 + gap0 / dc;
  if (t > t_max) return std::nullopt;
  return Point{w2.position(t), t};
}

std::optional<Point> meet(const Trajectory& w1, const Trajectory& w2, double t_from, double t_max,
                          double resolution) {
  const double t0 = std::max({t_from, w1.t_begin(), w2.t_begin()});
  const double t1 = std::min({t_max, w1.t_end(), w2.t_end()});
  if (!(t1 > t0)) return std::nullopt;
  auto gap = [&](double t) { return w2.position(t) - w1.position(t); };
  if (gap(t0) < 0.0) return std::nullopt;
  const int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / resolution)));
  double prev = t0;
  for (int i = 1; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    if (gap(t) < 0.0) {
      const double tc = bisect_crossing([&](double s) { return -gap(s); }, prev, t, 1e-13);
      return Point{w1.position(tc), tc};
    }
    prev = t;
  }
  return std::nullopt;
}

std::pair<State, DeltaState> post_interaction_data(const IncomingFront& w1, const IncomingFront& w2) {
  return {w1.left, DeltaState{w2.right, w1.strength + w2.strength}};
}

namespace {

constexpr double kAttachTol = 1e-9;
constexpr double kCongestionTol = 1e-12;

// Full-resolution curved path shared between the elements that border it.
using PathData = std::shared_ptr<const Trajectory>;

struct Crossing {
  std::vector<PathData> stages;
  std::vector<PathEvent> terminals;
  CrossingOutcome outcome = CrossingOutcome::Completed;
  std::string regime;
  bool mirrored = false;
  FanDescriptor fan;  // true frame
  State far_state;    // constant state on the wave side of the path
};

struct FrontEl {
  Line line;
  State left;
  State right;
  std::optional<SingularShock> singular;
  int family = 0;
  int traj = -1;
};

struct FanEl {
  FanDescriptor fd;
  int tail_traj = -1;
  int head_traj = -1;
  PathData cut_left;
  PathData cut_right;
  int cut_left_traj = -1;
  int cut_right_traj = -1;
};

struct PathEl {
  std::shared_ptr<Crossing> crossing;
  std::size_t stage = 0;
  int traj = -1;
};

struct SimpleEl {
  PathData path;
  bool wave_on_left = true;
  Family family = Family::One;
  State far_state;
  Line tail;
  int tail_traj = -1;
  int path_traj = -1;
  int near_traj = -1;
};

using Body = std::variant<FrontEl, FanEl, PathEl, SimpleEl>;

struct Element {
  Body body;
  bool attached_next = false;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Trajectory& path_of(const PathEl& p) { return *p.crossing->stages[p.stage]; }

double path_end(const PathEl& p) { return path_of(p).t_end(); }

const TrajectorySample& sample_before(const Trajectory& tr, double t) {
  return tr.samples[std::min(tr.segment(t) + (t >= tr.samples.back().t ? 1 : 0), tr.samples.size() - 1)];
}

// One side of an element as a function of time.
struct Boundary {
  Line line;
  const Trajectory* path = nullptr;

  double position(double t) const {
    if (path != nullptr && t <= path->t_end()) return path->position(t);
    return line.position(t);
  }
  bool linear() const { return path == nullptr; }
};

Line ray(const FanDescriptor& fd, double xi) { return {fd.center, xi}; }

Boundary path_boundary(const Trajectory& p) {
  const TrajectorySample& e = p.samples.back();
  return {Line{{e.x, e.t}, e.c}, &p};
}

Boundary left_boundary(const Element& el) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return Boundary{f.line}; },
                        [](const FanEl& f) {
                          return f.cut_left ? path_boundary(*f.cut_left)
                                            : Boundary{ray(f.fd, f.fd.xi_tail())};
                        },
                        [](const PathEl& p) { return path_boundary(path_of(p)); },
                        [](const SimpleEl& s) {
                          return s.wave_on_left ? Boundary{s.tail} : path_boundary(*s.path);
                        },
                    },
                    el.body);
}

Boundary right_boundary(const Element& el) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return Boundary{f.line}; },
                        [](const FanEl& f) {
                          return f.cut_right ? path_boundary(*f.cut_right)
                                             : Boundary{ray(f.fd, f.fd.xi_head())};
                        },
                        [](const PathEl& p) { return path_boundary(path_of(p)); },
                        [](const SimpleEl& s) {
                          return s.wave_on_left ? path_boundary(*s.path) : Boundary{s.tail};
                        },
                    },
                    el.body);
}

int left_traj(const Element& el) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return f.traj; },
                        [](const FanEl& f) { return f.cut_left ? f.cut_left_traj : f.tail_traj; },
                        [](const PathEl& p) { return p.traj; },
                        [](const SimpleEl& s) { return s.wave_on_left ? s.tail_traj : s.near_traj; },
                    },
                    el.body);
}

int right_traj(const Element& el) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return f.traj; },
                        [](const FanEl& f) { return f.cut_right ? f.cut_right_traj : f.head_traj; },
                        [](const PathEl& p) { return p.traj; },
                        [](const SimpleEl& s) { return s.wave_on_left ? s.near_traj : s.tail_traj; },
                    },
                    el.body);
}

State outer_left(const Element& el, double t) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return f.left; },
                        [](const FanEl& f) { return f.fd.tail; },
                        [t](const PathEl& p) { return sample_before(path_of(p), t).left; },
                        [t](const SimpleEl& s) {
                          return s.wave_on_left ? s.far_state : sample_before(*s.path, t).right;
                        },
                    },
                    el.body);
}

State outer_right(const Element& el, double t) {
  return std::visit(overloaded{
                        [](const FrontEl& f) { return f.right; },
                        [](const FanEl& f) { return f.fd.head; },
                        [t](const PathEl& p) { return sample_before(path_of(p), t).right; },
                        [t](const SimpleEl& s) {
                          return s.wave_on_left ? sample_before(*s.path, t).left : s.far_state;
                        },
                    },
                    el.body);
}

double strength(const Element& el, double t) {
  if (const auto* f = std::get_if<FrontEl>(&el.body)) {
    if (!f->singular) return 0.0;
    return std::max(0.0, f->singular->zeta0 + f->singular->k * (t - f->singular->birth.t));
  }
  if (const auto* p = std::get_if<PathEl>(&el.body)) return std::max(0.0, path_of(*p).strength(t));
  return 0.0;
}

class Engine {
 public:
  Engine(const Scenario& s, const EngineOptions& opts) : scenario_(s), opts_(opts) {
    opts_.path.t_end = s.t_max;
  }

  Timeline run();

 private:
  struct Candidate {
    enum class Kind { Collision, Vanish, PathEnd } kind;
    std::size_t index = 0;
    Point at;
  };

  const Scenario& scenario_;
  EngineOptions opts_;
  Timeline tl_;
  std::vector<Element> els_;
  double now_ = 0.0;
  std::vector<State> bare_states_;

  int new_trajectory(TrajectoryKind kind, int family, const TrajectorySample& first, int start_event) {
    Trajectory tr;
    tr.id = static_cast<int>(tl_.trajectories.size());
    tr.kind = kind;
    tr.family = family;
    tr.samples.push_back(first);
    tr.start_event = start_event;
    tl_.trajectories.push_back(std::move(tr));
    return tl_.trajectories.back().id;
  }

  Trajectory& traj(int id) { return tl_.trajectories[static_cast<std::size_t>(id)]; }

  void close_line(int id, const Line& line, double t, int end_event) {
    if (id < 0) return;
    Trajectory& tr = traj(id);
    if (tr.end_event >= 0 || tr.samples.back().t >= t) {
      if (tr.end_event < 0) tr.end_event = end_event;
      return;
    }
    TrajectorySample s = tr.samples.front();
    s.t = t;
    s.x = line.position(t);
    tr.samples.push_back(s);
    tr.end_event = end_event;
  }

  void close_path(int id, const Trajectory& full, double t, int end_event) {
    if (id < 0) return;
    Trajectory& tr = traj(id);
    if (tr.end_event >= 0) return;
    std::vector<TrajectorySample> kept;
    for (const TrajectorySample& s : full.samples) {
      if (s.t <= t) kept.push_back(s);
    }
    if (kept.empty() || kept.back().t < t) {
      TrajectorySample s = sample_before(full, t);
      s.t = t;
      s.x = full.position(t);
      s.beta = full.strength(t);
      kept.push_back(s);
    }
    const std::size_t stride =
        std::max<std::size_t>(1, (kept.size() + opts_.max_path_samples - 1) / opts_.max_path_samples);
    tr.samples.clear();
    for (std::size_t i = 0; i < kept.size(); i += stride) tr.samples.push_back(kept[i]);
    if (tr.samples.back().t != kept.back().t) tr.samples.push_back(kept.back());
    tr.end_event = end_event;
  }

  void close_element(const Element& el, double t, int end_event);
  std::vector<Element> elements_from_fan(const WaveFan& fan, int start_event);
  std::vector<int> trajectories_of(const std::vector<Element>& els) const;

  std::optional<Candidate> collision(std::size_t i) const;
  std::vector<Candidate> candidates() const;
  void record_epoch(double t_begin);

  int push_event(EventKind kind, Point at, double zeta) {
    Event e;
    e.id = static_cast<int>(tl_.events.size());
    e.kind = kind;
    e.x = at.x;
    e.t = at.t;
    e.zeta = zeta;
    tl_.events.push_back(e);
    return e.id;
  }

  std::pair<std::size_t, std::size_t> attached_group(std::size_t first, std::size_t last) const {
    while (first > 0 && els_[first - 1].attached_next) --first;
    while (last + 1 < els_.size() && els_[last].attached_next) ++last;
    return {first, last};
  }

  void replace(std::size_t first, std::size_t last, std::vector<Element> fresh);
  void collapse(std::size_t first, std::size_t last, Point at, EventKind kind, const std::string& note,
                bool approximate, bool plain);
  void handle_collision(const Candidate& c);
  void handle_vanish(const Candidate& c);
  void handle_path_end(const Candidate& c);
  void start_crossing(std::size_t front_idx, std::size_t fan_idx, Point at, bool mirrored);
  std::vector<Element> crossing_stage_elements(const std::shared_ptr<Crossing>& cr, std::size_t stage,
                                               const FanEl& fan, int event, std::optional<SimpleEl> simple);
};

void Engine::close_element(const Element& el, double t, int end_event) {
  std::visit(overloaded{
                 [&](const FrontEl& f) {
                   if (f.traj < 0) return;
                   Trajectory& tr = traj(f.traj);
                   if (tr.end_event >= 0) return;
                   TrajectorySample s = tr.samples.front();
                   s.t = t;
                   s.x = f.line.position(t);
                   if (f.singular) s.beta = std::max(0.0, f.singular->zeta0 + f.singular->k * (t - f.singular->birth.t));
                   if (s.t > tr.samples.back().t) tr.samples.push_back(s);
                   tr.end_event = end_event;
                 },
                 [&](const FanEl& f) {
                   if (!f.cut_left) close_line(f.tail_traj, ray(f.fd, f.fd.xi_tail()), t, end_event);
                   if (!f.cut_right) close_line(f.head_traj, ray(f.fd, f.fd.xi_head()), t, end_event);
                 },
                 [&](const PathEl& p) { close_path(p.traj, path_of(p), t, end_event); },
                 [&](const SimpleEl& s) { close_line(s.tail_traj, s.tail, t, end_event); },
             },
             el.body);
}

std::vector<int> Engine::trajectories_of(const std::vector<Element>& els) const {
  std::vector<int> ids;
  auto add = [&](int id) {
    if (id >= 0 && std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  };
  for (const Element& el : els) {
    std::visit(overloaded{
                   [&](const FrontEl& f) { add(f.traj); },
                   [&](const FanEl& f) {
                     if (!f.cut_left) add(f.tail_traj);
                     if (!f.cut_right) add(f.head_traj);
                   },
                   [&](const PathEl& p) { add(p.traj); },
                   [&](const SimpleEl& s) { add(s.tail_traj); },
               },
               el.body);
  }
  return ids;
}

std::vector<Element> Engine::elements_from_fan(const WaveFan& fan, int start_event) {
  std::vector<Element> out;
  const double t = fan.origin.t;
  for (const Wave& w : fan.waves) {
    Element el;
    std::visit(overloaded{
                   [&](const ShockWave& s) {
                     FrontEl f{{fan.origin, s.speed}, s.left, s.right, std::nullopt, family_index(s.family)};
                     f.traj = new_trajectory(TrajectoryKind::Shock, f.family,
                                             {t, fan.origin.x, s.speed, 0.0, s.left, s.right}, start_event);
                     el.body = f;
                   },
                   [&](const RarefactionWave& r) {
                     FanEl f;
                     f.fd = FanDescriptor{r.family, fan.origin, r.left, r.right};
                     const int fam = family_index(r.family);
                     f.tail_traj = new_trajectory(TrajectoryKind::FanEdge, fam,
                                                  {t, fan.origin.x, r.tail_speed(), 0.0, r.left, r.left},
                                                  start_event);
                     f.head_traj = new_trajectory(TrajectoryKind::FanEdge, fam,
                                                  {t, fan.origin.x, r.head_speed(), 0.0, r.right, r.right},
                                                  start_event);
                     el.body = f;
                   },
                   [&](const SingularShock& s) {
                     FrontEl f{{fan.origin, s.speed}, s.left, s.right, s, 0};
                     f.traj = new_trajectory(TrajectoryKind::Singular, 0,
                                             {t, fan.origin.x, s.speed, s.zeta0, s.left, s.right}, start_event);
                     el.body = f;
                   },
               },
               w);
    out.push_back(std::move(el));
  }
  for (std::size_t i = 0; i + 1 < fan.waves.size(); ++i) {
    const double a = leading_speed(fan.waves[i]);
    const double b = trailing_speed(fan.waves[i + 1]);
    out[i].attached_next = std::abs(a - b) <= kAttachTol * std::max(1.0, std::abs(a));
  }
  return out;
}

std::optional<Engine::Candidate> Engine::collision(std::size_t i) const {
  if (els_[i].attached_next) return std::nullopt;
  const Boundary a = right_boundary(els_[i]);
  const Boundary b = left_boundary(els_[i + 1]);
  double t_limit = scenario_.t_max;
  for (std::size_t j : {i, i + 1}) {
    if (const auto* p = std::get_if<PathEl>(&els_[j].body)) t_limit = std::min(t_limit, path_end(*p));
  }
  if (!(t_limit > now_)) return std::nullopt;

  const double gap_now = b.position(now_) - a.position(now_);
  const double x_scale = std::max(1.0, std::abs(a.position(now_)));
  if (a.linear() && b.linear()) {
    const double dc = a.line.speed - b.line.speed;
    const double scale = std::max({1.0, std::abs(a.line.speed), std::abs(b.line.speed)});
    if (dc <= 1e-10 * scale) return std::nullopt;
    if (gap_now <= 1e-12 * x_scale) return Candidate{Candidate::Kind::Collision, i, {a.position(now_), now_}};
    const double t = now_ + gap_now / dc;
    if (t > t_limit) return std::nullopt;
    return Candidate{Candidate::Kind::Collision, i, {b.position(t), t}};
  }
  auto gap = [&](double t) { return b.position(t) - a.position(t); };
  if (gap_now < -1e-9 * x_scale) return Candidate{Candidate::Kind::Collision, i, {a.position(now_), now_}};
  const double res = 1e-3;
  const int n = std::max(1, static_cast<int>(std::ceil((t_limit - now_) / res)));
  double prev = now_;
  for (int k = 1; k <= n; ++k) {
    const double t = now_ + (t_limit - now_) * k / n;
    if (gap(t) < 0.0) {
      const double tc = bisect_crossing([&](double s) { return -gap(s); }, prev, t, 1e-13);
      return Candidate{Candidate::Kind::Collision, i, {a.position(tc), tc}};
    }
    prev = t;
  }
  return std::nullopt;
}

std::vector<Engine::Candidate> Engine::candidates() const {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i + 1 < els_.size(); ++i) {
    if (auto c = collision(i)) out.push_back(*c);
  }
  for (std::size_t i = 0; i < els_.size(); ++i) {
    if (const auto* f = std::get_if<FrontEl>(&els_[i].body)) {
      if (f->singular) {
        if (auto t1 = vanish_time(*f->singular); t1 && *t1 <= scenario_.t_max) {
          out.push_back({Candidate::Kind::Vanish, i, {f->line.position(*t1), std::max(*t1, now_)}});
        }
      }
    } else if (const auto* p = std::get_if<PathEl>(&els_[i].body)) {
      const Trajectory& tr = path_of(*p);
      const PathEvent term = p->crossing->terminals[p->stage];
      if (term != PathEvent::Completed && tr.t_end() <= scenario_.t_max) {
        out.push_back({Candidate::Kind::PathEnd, i, {tr.samples.back().x, tr.t_end()}});
      }
    }
  }
  return out;
}

void Engine::record_epoch(double t_begin) {
  if (!tl_.epochs.empty()) tl_.epochs.back().t_end = t_begin;
  Epoch ep;
  ep.t_begin = t_begin;
  ep.t_end = scenario_.t_max;
  if (els_.empty()) {
    Patch p;
    p.state = bare_states_.front();
    ep.patches.push_back(p);
  }
  for (std::size_t i = 0; i < els_.size(); ++i) {
    const Element& el = els_[i];
    if (i == 0) {
      Patch p;
      p.right_traj = left_traj(el);
      p.state = outer_left(el, t_begin);
      ep.patches.push_back(p);
    }
    if (const auto* f = std::get_if<FanEl>(&el.body)) {
      Patch p;
      p.kind = PatchKind::Fan;
      p.left_traj = left_traj(el);
      p.right_traj = right_traj(el);
      p.state = f->fd.tail;
      p.family = family_index(f->fd.family);
      p.center = f->fd.center;
      ep.patches.push_back(p);
    } else if (const auto* s = std::get_if<SimpleEl>(&el.body)) {
      Patch p;
      p.kind = PatchKind::SimpleWave;
      p.left_traj = left_traj(el);
      p.right_traj = right_traj(el);
      p.state = s->far_state;
      p.family = family_index(s->family);
      p.path_traj = s->path_traj;
      p.path_on_right = s->wave_on_left;
      ep.patches.push_back(p);
    }
    if (i + 1 < els_.size() && !el.attached_next) {
      Patch p;
      p.left_traj = right_traj(el);
      p.right_traj = left_traj(els_[i + 1]);
      p.state = outer_right(el, t_begin);
      ep.patches.push_back(p);
    }
    if (i + 1 == els_.size()) {
      Patch p;
      p.left_traj = right_traj(el);
      p.state = outer_right(el, t_begin);
      ep.patches.push_back(p);
    }
  }
  tl_.epochs.push_back(std::move(ep));
}

void Engine::replace(std::size_t first, std::size_t last, std::vector<Element> fresh) {
  // The new group takes over the old group's attachment to its right neighbour.
  if (fresh.empty()) {
    if (first > 0) els_[first - 1].attached_next = false;
  } else {
    fresh.back().attached_next = els_[last].attached_next;
  }
  els_.erase(els_.begin() + static_cast<std::ptrdiff_t>(first), els_.begin() + static_cast<std::ptrdiff_t>(last + 1));
  els_.insert(els_.begin() + static_cast<std::ptrdiff_t>(first), fresh.begin(), fresh.end());
}

void Engine::collapse(std::size_t first, std::size_t last, Point at, EventKind kind, const std::string& note,
                      bool approximate, bool plain) {
  std::tie(first, last) = attached_group(first, last);
  double zeta = 0.0;
  for (std::size_t i = first; i <= last; ++i) zeta += strength(els_[i], at.t);
  const State left = outer_left(els_[first], at.t);
  const State right = outer_right(els_[last], at.t);
  const int ev = push_event(kind, at, plain ? 0.0 : zeta);
  Event& e = tl_.events.back();
  e.approximate = approximate;
  e.note = note;
  std::vector<Element> old(els_.begin() + static_cast<std::ptrdiff_t>(first),
                           els_.begin() + static_cast<std::ptrdiff_t>(last + 1));
  e.incoming = trajectories_of(old);
  for (const Element& el : old) close_element(el, at.t, ev);
  const WaveFan fan = plain ? solve(left, right, at) : resolve(left, {right, zeta}, at);
  std::vector<Element> fresh = elements_from_fan(fan, ev);
  tl_.events[static_cast<std::size_t>(ev)].outgoing = trajectories_of(fresh);
  replace(first, last, std::move(fresh));
}

void Engine::handle_collision(const Candidate& c) {
  const std::size_t i = c.index;
  const Element& a = els_[i];
  const Element& b = els_[i + 1];
  const auto* fa = std::get_if<FrontEl>(&a.body);
  const auto* fb = std::get_if<FrontEl>(&b.body);
  const auto* na = std::get_if<FanEl>(&a.body);
  const auto* nb = std::get_if<FanEl>(&b.body);

  if (fa && fb && !a.attached_next) {
    auto [g0, g1] = attached_group(i, i + 1);
    if (g0 == i && g1 == i + 1) {
      const IncomingFront w1{fa->left, fa->right, strength(a, c.at.t)};
      const IncomingFront w2{fb->left, fb->right, strength(b, c.at.t)};
      const auto [left, right] = post_interaction_data(w1, w2);
      const int ev = push_event(EventKind::Interaction, c.at, right.zeta);
      tl_.events.back().incoming = {fa->traj, fb->traj};
      close_element(a, c.at.t, ev);
      close_element(b, c.at.t, ev);
      std::vector<Element> fresh = elements_from_fan(resolve(left, right, c.at), ev);
      tl_.events[static_cast<std::size_t>(ev)].outgoing = trajectories_of(fresh);
      replace(i, i + 1, std::move(fresh));
      return;
    }
  }
  if (fa && fa->singular && nb && !nb->cut_left && !nb->cut_right && !a.attached_next &&
      (i == 0 || !els_[i - 1].attached_next) && (i + 1 == els_.size() - 1 || !b.attached_next)) {
    start_crossing(i, i + 1, c.at, false);
    return;
  }
  if (fb && fb->singular && na && !na->cut_left && !na->cut_right && !a.attached_next &&
      (i + 1 == els_.size() - 1 || !b.attached_next) && (i == 0 || !els_[i - 1].attached_next)) {
    start_crossing(i + 1, i, c.at, true);
    return;
  }
  collapse(i, i + 1, c.at, EventKind::Collapse, "collision resolved by re-solving the outer states", true,
           false);
}

void Engine::handle_vanish(const Candidate& c) {
  const std::size_t i = c.index;
  const auto [g0, g1] = attached_group(i, i);
  if (g0 != i || g1 != i) {
    collapse(i, i, c.at, EventKind::Vanish, "vanishing shock merged with the attached wave", true, true);
    return;
  }
  const auto& f = std::get<FrontEl>(els_[i].body);
  const int ev = push_event(EventKind::Vanish, c.at, 0.0);
  tl_.events.back().incoming = {f.traj};
  close_element(els_[i], c.at.t, ev);
  WaveFan fan = decompose(*f.singular);
  fan.origin = c.at;
  std::vector<Element> fresh = elements_from_fan(fan, ev);
  tl_.events[static_cast<std::size_t>(ev)].outgoing = trajectories_of(fresh);
  replace(i, i, std::move(fresh));
}

std::vector<Element> Engine::crossing_stage_elements(const std::shared_ptr<Crossing>& cr, std::size_t stage,
                                                     const FanEl& fan, int event,
                                                     std::optional<SimpleEl> simple) {
  const Trajectory& path = *cr->stages[stage];
  PathEl p{cr, stage, -1};
  {
    TrajectorySample first = path.samples.front();
    p.traj = new_trajectory(TrajectoryKind::Singular, 0, first, event);
  }
  FanEl f = fan;
  if (cr->mirrored) {
    f.cut_right = cr->stages[stage];
    f.cut_right_traj = p.traj;
  } else {
    f.cut_left = cr->stages[stage];
    f.cut_left_traj = p.traj;
  }
  std::vector<Element> out;
  if (simple) {
    simple->path = cr->stages[stage];
    simple->path_traj = p.traj;
    simple->near_traj = p.traj;
  }
  if (cr->mirrored) {
    out.push_back({f, true});
    out.push_back({p, simple.has_value()});
    if (simple) out.push_back({*simple, false});
  } else {
    if (simple) out.push_back({*simple, true});
    out.push_back({p, true});
    out.push_back({f, false});
  }
  return out;
}

void Engine::start_crossing(std::size_t front_idx, std::size_t fan_idx, Point at, bool mirrored) {
  const auto front = std::get<FrontEl>(els_[front_idx].body);
  FanEl fan = std::get<FanEl>(els_[fan_idx].body);
  const double beta = strength(els_[front_idx], at.t);

  auto cr = std::make_shared<Crossing>();
  cr->mirrored = mirrored;
  cr->fan = fan.fd;
  FanCrossing fc;
  if (mirrored) {
    fc = cross_fan(reflect(front.right), reflect(fan.fd), {-at.x, at.t}, beta, opts_.path);
    cr->far_state = front.right;
  } else {
    fc = cross_fan(front.left, fan.fd, at, beta, opts_.path);
    cr->far_state = front.left;
  }
  for (const PathTrajectory& st : fc.stages) {
    const PathTrajectory p = mirrored ? reflect(st) : st;
    auto tr = std::make_shared<Trajectory>();
    tr->kind = TrajectoryKind::Singular;
    tr->samples = p.samples;
    cr->stages.push_back(tr);
    cr->terminals.push_back(p.terminal);
  }
  cr->outcome = fc.outcome;
  cr->regime = fc.regime;

  const int ev = push_event(EventKind::FanEntry, at, beta);
  Event& e = tl_.events.back();
  if (fc.outcome == CrossingOutcome::Completed) e.regime = fc.regime;
  e.note = std::string("crossing outcome: ") + std::string(crossing_outcome_name(fc.outcome));
  e.incoming = {front.traj, fan.tail_traj};
  if (mirrored) e.incoming = {fan.head_traj, front.traj};

  close_element(els_[front_idx], at.t, ev);
  if (mirrored) {
    close_line(fan.head_traj, ray(fan.fd, fan.fd.xi_head()), at.t, ev);
  } else {
    close_line(fan.tail_traj, ray(fan.fd, fan.fd.xi_tail()), at.t, ev);
  }

  const std::size_t first = std::min(front_idx, fan_idx);
  std::vector<Element> fresh = crossing_stage_elements(cr, 0, fan, ev, std::nullopt);
  tl_.events[static_cast<std::size_t>(ev)].outgoing = {std::get<PathEl>(fresh[mirrored ? 1 : 0].body).traj};
  replace(first, first + 1, std::move(fresh));
}

void Engine::handle_path_end(const Candidate& c) {
  const std::size_t i = c.index;
  const PathEl p = std::get<PathEl>(els_[i].body);
  const std::shared_ptr<Crossing> cr = p.crossing;
  const PathEvent term = cr->terminals[p.stage];
  const Trajectory& path = *cr->stages[p.stage];
  const TrajectorySample& end = path.samples.back();
  const Point at{end.x, end.t};
  const bool mirrored = cr->mirrored;
  const std::size_t fan_idx = mirrored ? i - 1 : i + 1;
  const FanEl fan = std::get<FanEl>(els_[fan_idx].body);
  const bool has_simple = mirrored ? (i + 1 < els_.size() && std::holds_alternative<SimpleEl>(els_[i + 1].body) &&
                                      els_[i].attached_next)
                                   : (i > 0 && std::holds_alternative<SimpleEl>(els_[i - 1].body) &&
                                      els_[i - 1].attached_next);

  if (term == PathEvent::ReachedD && p.stage + 1 < cr->stages.size()) {
    const int ev = push_event(EventKind::ReachedD, at, end.beta);
    tl_.events.back().incoming = {p.traj};
    close_path(p.traj, path, at.t, ev);
    SimpleEl s;
    s.wave_on_left = !mirrored;
    s.family = mirrored ? Family::Two : Family::One;
    s.far_state = cr->far_state;
    s.tail = Line{at, lambda(cr->far_state, s.family)};
    s.tail_traj = new_trajectory(TrajectoryKind::FanEdge, family_index(s.family),
                                 {at.t, at.x, s.tail.speed, 0.0, cr->far_state, cr->far_state}, ev);
    FanEl f = fan;
    f.cut_left.reset();
    f.cut_right.reset();
    std::vector<Element> fresh = crossing_stage_elements(cr, p.stage + 1, f, ev, s);
    tl_.events[static_cast<std::size_t>(ev)].outgoing = {std::get<PathEl>(fresh[1].body).traj, s.tail_traj};
    const std::size_t first = std::min(i, fan_idx);
    replace(first, first + 1, std::move(fresh));
    return;
  }

  const std::size_t lo = mirrored ? fan_idx : (has_simple ? i - 1 : i);
  const std::size_t hi = mirrored ? (has_simple ? i + 1 : i) : fan_idx;

  if (term == PathEvent::ExitedFan) {
    const int ev = push_event(EventKind::FanExit, at, end.beta);
    Event& e = tl_.events.back();
    e.regime = cr->regime;
    e.incoming = {p.traj, mirrored ? fan.tail_traj : fan.head_traj};
    close_path(p.traj, path, at.t, ev);
    if (mirrored) {
      close_line(fan.tail_traj, ray(fan.fd, fan.fd.xi_tail()), at.t, ev);
    } else {
      close_line(fan.head_traj, ray(fan.fd, fan.fd.xi_head()), at.t, ev);
    }
    const State left = mirrored ? fan.fd.tail : end.left;
    const State right = mirrored ? end.right : fan.fd.head;
    const SingularShock ss = make_singular_shock(left, right, end.beta, at);
    FrontEl f{{at, ss.speed}, left, right, ss, 0};
    f.traj = new_trajectory(TrajectoryKind::Singular, 0, {at.t, at.x, ss.speed, ss.zeta0, left, right}, ev);
    e.outgoing = {f.traj};
    const bool outer_attach = els_[hi].attached_next;
    if (has_simple) {
      const std::size_t si = mirrored ? i + 1 : i - 1;
      SimpleEl s = std::get<SimpleEl>(els_[si].body);
      s.near_traj = f.traj;
      std::vector<Element> fresh;
      if (mirrored) {
        fresh.push_back({f, true});
        fresh.push_back({s, outer_attach});
      } else {
        fresh.push_back({s, true});
        fresh.push_back({f, outer_attach});
      }
      replace(lo, hi, std::move(fresh));
    } else {
      replace(lo, hi, {Element{f, outer_attach}});
    }
    return;
  }

  const bool vanished = term == PathEvent::Vanished;
  std::string note = vanished ? "strength vanished inside the fan; remaining fan merged into the re-solve"
                              : std::string("path stopped at ") + std::string(path_event_name(term)) +
                                    "; outer states re-solved";
  collapse(lo, hi, at, vanished ? EventKind::Vanish : EventKind::Collapse, note, true, vanished);
  tl_.events.back().regime = vanished ? cr->regime : "";
}

Timeline Engine::run() {
  validate(scenario_);
  tl_.t_max = scenario_.t_max;
  bare_states_ = scenario_.states;
  for (std::size_t i = 0; i < scenario_.breakpoints.size(); ++i) {
    const Point origin{scenario_.breakpoints[i], 0.0};
    const WaveFan fan = resolve(scenario_.states[i], {scenario_.states[i + 1], scenario_.delta_at(i)}, origin);
    std::vector<Element> fresh = elements_from_fan(fan, -1);
    els_.insert(els_.end(), fresh.begin(), fresh.end());
  }
  record_epoch(0.0);

  for (std::size_t n = 0;; ++n) {
    if (n >= opts_.max_events) fail(ErrorKind::EventCongestion, "event budget exhausted");
    std::vector<Candidate> cands = candidates();
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.at.t != b.at.t) return a.at.t < b.at.t;
      return a.at.x < b.at.x;
    });
    Candidate next = cands.front();
    if (next.at.t > scenario_.t_max) break;
    std::vector<Candidate> tied;
    for (const Candidate& c : cands) {
      if (c.at.t - next.at.t <= kCongestionTol * std::max(1.0, next.at.t)) tied.push_back(c);
    }
    std::string congestion;
    if (tied.size() > 1) {
      std::sort(tied.begin(), tied.end(), [](const Candidate& a, const Candidate& b) { return a.at.x < b.at.x; });
      next = tied.front();
      std::ostringstream os;
      os << "congestion with " << tied.size() - 1 << " other event(s) at t=" << next.at.t;
      congestion = os.str();
      if (opts_.strict_congestion) fail(ErrorKind::EventCongestion, congestion);
    }
    now_ = std::max(now_, next.at.t);
    try {
      switch (next.kind) {
        case Candidate::Kind::Collision: handle_collision(next); break;
        case Candidate::Kind::Vanish: handle_vanish(next); break;
        case Candidate::Kind::PathEnd: handle_path_end(next); break;
      }
    } catch (const Error& err) {
      std::ostringstream os;
      os << err.what() << " (event at x=" << next.at.x << ", t=" << next.at.t << ")";
      throw Error(err.kind(), os.str());
    }
    if (!congestion.empty()) {
      Event& e = tl_.events.back();
      e.note = e.note.empty() ? congestion : e.note + "; " + congestion;
    }
    record_epoch(now_);
  }

  for (const Element& el : els_) close_element(el, scenario_.t_max, -1);
  if (!tl_.epochs.empty()) tl_.epochs.back().t_end = scenario_.t_max;
  return std::move(tl_);
}

}  // namespace

Timeline run_scenario(const Scenario& s, const EngineOptions& opts) {
  Engine engine(s, opts);
  return engine.run();
}

}  // namespace singshock
