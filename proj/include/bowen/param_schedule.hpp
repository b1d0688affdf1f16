// The parameter system behind the level constructions: sequences
// C(n), K(n), T(n), T+(n), eps_n, delta_n and lambda, with
//
//   T+(n) = C(n) T(n),   T(n) = K(n) T+(n-1),   T+(-1) = 1,
//
// an exact checker for all side constraints, and generators for both the
// faithful (log-space certified) and surrogate (desk-scale) profiles.
#pragma once

#include "bowen/logbounds.hpp"
#include "bowen/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bowenlab {

enum class ScheduleProfile { Faithful, Surrogate };

struct Level {
  long long C = 0;
  long long K = 0;
  long long T = 0;
  long long Tplus = 0;
  Rat eps;
  Rat delta;
};

struct ParamSchedule {
  std::vector<Level> levels;
  long long lambda = 1;
  ScheduleProfile profile = ScheduleProfile::Surrogate;
  bool has_eps_delta = false;

  long long tplus_before(int n) const;  // T+(n-1), with T+(-1) = 1
  Rat eps_total() const;                // sum of eps over stored levels
  bool structure_ok(std::string* why = nullptr) const;
};

struct ConstraintResult {
  std::string name;     // e.g. "PC0", "PK01", "Pdelta3.1", "ED1", "structure"
  BoundVerdict verdict;
  std::string detail;
};

// Evaluates every constraint exactly.  Inequalities with astronomical terms
// are certified via rational log2 bounds; the factorial constraint is
// one-sided (Stirling lower bound), so its failure mode is
// UNDECIDED-BY-BOUNDS rather than a float guess.
std::vector<ConstraintResult> check_constraints(const ParamSchedule& s);

bool all_proved(const std::vector<ConstraintResult>& results);

// Implements the recursive existence proof: C(n) then K(n) found by doubling
// search against the checker, K(n) in multiples of 100.
ParamSchedule generate_faithful(int n_levels);

// Fills eps_n, delta_n for an existing level structure so that the delta
// constraints and the partial-sum conditions all hold; re-verifiable via
// check_constraints.
ParamSchedule generate_eps_delta(ParamSchedule s);

// Convenience: surrogate schedule from (C, K) pairs, times derived, eps/delta
// filled.  Surrogate profiles keep the structural identities and the
// eps/delta constraints but waive the big (PKn*) inequalities.
ParamSchedule surrogate_schedule(const std::vector<std::pair<long long, long long>>& ck);

// Plain-text key=value serialization (level.0.C=..., eps.0=p/q, lambda=1, ...).
std::string to_text(const ParamSchedule& s);
ParamSchedule schedule_from_text(const std::string& text);
ParamSchedule load_schedule(const std::string& path);
void save_schedule(const ParamSchedule& s, const std::string& path);

}  // namespace bowenlab
