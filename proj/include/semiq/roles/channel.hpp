#pragma once

#include "semiq/roles/session.hpp"

namespace semiq::roles {

/// Channel adversary hook points. The default implementation is the honest
/// channel: it forwards the qubit untouched and logs nothing, so a run with
/// the honest hooks is event-for-event identical to a run with no adversary.
///
/// A hook may rewrite the returned FlightQubit (substituting a different
/// register models withholding the genuine qubit), append probe qubits to
/// the flight qubit's register, apply unitaries, or measure.
class AttackHooks {
 public:
  virtual ~AttackHooks() = default;
  virtual FlightQubit on_forward(Session&, FlightQubit q) { return q; }
  virtual FlightQubit on_return(Session&, FlightQubit q) { return q; }
};

inline AttackHooks& honest_hooks() {
  static AttackHooks hooks;
  return hooks;
}

/// TP-to-user leg. Applies the adversary's forward hook exactly once.
inline FlightQubit channel_forward(Session& session, FlightQubit q, AttackHooks& adversary) {
  return adversary.on_forward(session, q);
}

/// User-to-TP leg. Applies the adversary's return hook exactly once.
inline FlightQubit channel_return(Session& session, FlightQubit q, AttackHooks& adversary) {
  return adversary.on_return(session, q);
}

}  // namespace semiq::roles
