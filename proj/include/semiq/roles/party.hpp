#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "semiq/roles/session.hpp"
#include "semiq/roles/transcript.hpp"

namespace semiq::roles {

/// Decides a classical user's action per received qubit. Policies may draw
/// from the user's stream; scripted policies for tests may also inspect the
/// qubit's origin tag (information a physical user would not have).
using ActionPolicy = std::function<PartyAction(const FlightQubit&, int position, SplitStream&)>;

/// Fair independent coin per qubit (the protocol's default behaviour).
inline ActionPolicy coin_policy() {
  return [](const FlightQubit&, int, SplitStream& rng) {
    return rng.bit() ? PartyAction::Measure : PartyAction::Reflect;
  };
}

inline ActionPolicy always_policy(PartyAction action) {
  return [action](const FlightQubit&, int, SplitStream&) { return action; };
}

inline ActionPolicy scripted_policy(std::vector<PartyAction> actions) {
  return [actions = std::move(actions)](const FlightQubit&, int position, SplitStream&) {
    return actions.at(position);
  };
}

/// Measures resources with even ids, reflects odd ones, separately per
/// origin kind. Deterministic exact halves; used where resource accounting
/// must hit the nominal (expected-value) counts.
inline ActionPolicy balanced_policy() {
  return [](const FlightQubit& q, int, SplitStream&) {
    return (q.tag.id % 2 == 0) ? PartyAction::Measure : PartyAction::Reflect;
  };
}

struct ReceiveResult {
  PartyAction action = PartyAction::Reflect;
  std::optional<qsim::ZOutcome> outcome;
  FlightQubit qubit;
};

/// One classical-user step: choose measure/reflect via the policy. Reflect
/// leaves every amplitude untouched. Measure applies a Z measurement and
/// hands back a qubit in the observed basis state; after the projection the
/// measured qubit is in a product state with the rest of its register, which
/// is exactly the "regenerate one in the same state" replacement.
inline ReceiveResult classical_receive(Session& session, FlightQubit q,
                                       const ActionPolicy& policy, int position, int party,
                                       SplitStream& rng) {
  ReceiveResult res;
  res.action = policy(q, position, rng);
  res.qubit = q;
  if (res.action == PartyAction::Measure) {
    res.outcome = session.measure_z(q.reg, q.qubit, rng);
    session.transcript().log(ActionEvent{party, position, res.action, res.outcome->bit});
  } else {
    session.transcript().log(ActionEvent{party, position, res.action, -1});
  }
  return res;
}

/// TP's step-1 preparation and step-4 measurement of entangled groups.
/// Announcements are computed from the returned qubits alone; the interface
/// gives a strategy no access to the users' action choices.
class TpStrategy {
 public:
  virtual ~TpStrategy() = default;

  /// Prepares one entangled group of `size` qubits; returns the register.
  virtual int prepare_group(Session& session, int group, int size) {
    (void)group;
    return session.add_register(qsim::new_ghz_plus(size));
  }

  /// Measures a returned group and produces the public announcement.
  virtual Announcement measure_group(Session& session, int group,
                                     const std::vector<FlightQubit>& returned,
                                     SplitStream& tp_rng) {
    if (returned.size() < 2) throw std::invalid_argument("tp: group must have >= 2 qubits");
    const int reg = returned.front().reg;
    for (const auto& q : returned)
      if (q.reg != reg) throw std::invalid_argument("tp: group members span registers");
    if (returned.size() == 2) {
      auto outcome = session.measure_bell(reg, returned[0].qubit, returned[1].qubit, tp_rng);
      return Announcement{kTpParty, BellResult{group, outcome}};
    }
    std::vector<int> qubits;
    for (const auto& q : returned) qubits.push_back(q.qubit);
    auto outcome = session.measure_ghz(reg, qubits, tp_rng);
    return Announcement{kTpParty, GhzResult{group, std::move(outcome)}};
  }
};

inline TpStrategy& honest_tp() {
  static TpStrategy tp;
  return tp;
}

/// TP's Z measurement of a returned decoy. The result is kept in TP's hands
/// (logged as a private event, never announced).
inline qsim::ZOutcome tp_measure_decoy(Session& session, const FlightQubit& q,
                                       SplitStream& tp_rng) {
  auto outcome = session.measure_z(q.reg, q.qubit, tp_rng);
  session.transcript().log(
      TpMeasureEvent{"decoy_z", q.tag.id, outcome.bit ? "1" : "0"});
  return outcome;
}

enum class MeasureKind { Bell, Ghz, Z };

/// Dispatching wrapper over the TP measurement paths: entangled groups come
/// back as public announcements, decoys as private Z outcomes.
inline std::variant<Announcement, qsim::ZOutcome> tp_measure_returned(
    Session& session, const std::vector<FlightQubit>& group, MeasureKind kind, int group_id,
    TpStrategy& strategy, SplitStream& tp_rng) {
  switch (kind) {
    case MeasureKind::Z:
      if (group.size() != 1) throw std::invalid_argument("tp: Z measurement expects one qubit");
      return tp_measure_decoy(session, group.front(), tp_rng);
    case MeasureKind::Bell:
      if (group.size() != 2) throw std::invalid_argument("tp: Bell measurement expects a pair");
      return strategy.measure_group(session, group_id, group, tp_rng);
    case MeasureKind::Ghz:
      if (group.size() < 2) throw std::invalid_argument("tp: GHZ measurement expects >= 2 qubits");
      return strategy.measure_group(session, group_id, group, tp_rng);
  }
  throw std::invalid_argument("tp: unknown measurement kind");
}

}  // namespace semiq::roles
