#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "singshock/singular.hpp"
#include "singshock/state.hpp"

namespace singshock {

struct ShockWave {
  Family family = Family::One;
  State left;
  State right;
  double speed = 0.0;
};

struct RarefactionWave {
  Family family = Family::One;
  State left;
  State right;

  double tail_speed() const { return lambda(left, family); }
  double head_speed() const { return lambda(right, family); }
};

using Wave = std::variant<ShockWave, RarefactionWave, SingularShock>;

double trailing_speed(const Wave& w);
double leading_speed(const Wave& w);
State left_state(const Wave& w);
State right_state(const Wave& w);

/// State inside a centred rarefaction of the family whose tail state is `tail`,
/// at ray slope xi.
State rarefaction_profile(State tail, Family family, double xi);

/// Self-similar solution emanating from `origin`.
struct WaveFan {
  State left;
  State right;
  Point origin;
  std::vector<Wave> waves;

  /// Requires t > origin.t.
  State sample(double x, double t) const;
  /// Constant states left of, between and right of the waves.
  std::vector<State> states() const;
};

/// Family whose Lax inequalities the jump satisfies, if any.
std::optional<Family> lax_family(State left, State right, double c);
bool is_lax_admissible(const ShockWave& s);

WaveFan solve_classical(State left, State right, Point origin = {});
WaveFan solve(State left, State right, Point origin = {});
WaveFan solve_with_delta(State left, DeltaState right, Point origin = {});

/// Dispatches on the carried strength: plain data go through solve().
WaveFan resolve(State left, DeltaState right, Point at);

/// Classical re-solve at the vanish point of a decaying singular shock. Throws
/// ExpectedTwoShocks unless the result is a pair of Lax shocks.
WaveFan decompose(const SingularShock& ss);

/// Middle state of a 1-rarefaction followed by a singular shock travelling at
/// lambda1 of the middle state. Empty if the construction is not admissible
/// with the requested minimum gap u_mid - u_right.
std::optional<State> rarefaction_singular_junction(State left, State right, double min_gap);
/// Middle state of a singular shock travelling at lambda2 of the middle state
/// followed by a 2-rarefaction.
std::optional<State> singular_rarefaction_junction(State left, State right, double min_gap);

/// Image under (x, u, v) -> (-x, -u, v).
Wave reflect(const Wave& w);
WaveFan reflect(const WaveFan& fan);

}  // namespace singshock
