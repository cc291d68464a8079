#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "semiq/qsim/density.hpp"
#include "semiq/qsim/state_vector.hpp"
#include "semiq/roles/transcript.hpp"
#include "semiq/rng.hpp"

namespace semiq::roles {

/// Where a flight qubit came from. Immutable for the qubit's lifetime.
struct OriginTag {
  enum class Kind { EntangledGroup, Decoy, Fake, Probe };

  Kind kind = Kind::EntangledGroup;
  int id = 0;            // group id, or per-owner decoy/fake index
  int slot = 0;          // slot within the group, or the decoy's owner
  int prepared_bit = -1; // decoys and fakes record the prepared basis bit

  static OriginTag entangled(int group, int slot) {
    return {Kind::EntangledGroup, group, slot, -1};
  }
  static OriginTag decoy(int owner, int index, int bit) {
    return {Kind::Decoy, index, owner, bit};
  }
  static OriginTag fake(int owner, int index, int bit) {
    return {Kind::Fake, index, owner, bit};
  }
};

/// Handle to one qubit of one register of a session.
struct FlightQubit {
  int reg = -1;
  int qubit = 0;
  OriginTag tag;
};

/// A session holds one register per entangled group or decoy (plus any
/// registers an adversary creates) and the transcript of the run. Entangled
/// groups never interact, so simulating them in separate small registers is
/// exact.
class Session {
 public:
  int add_register(qsim::StateVector state) {
    registers_.push_back(std::move(state));
    return static_cast<int>(registers_.size()) - 1;
  }

  const qsim::StateVector& state(int reg) const { return registers_.at(reg); }
  void set_state(int reg, qsim::StateVector s) { registers_.at(reg) = std::move(s); }
  std::size_t register_count() const { return registers_.size(); }

  /// Appends a fresh |bit> qubit to a register; returns its qubit index.
  int append_probe(int reg, int bit) {
    const auto& current = registers_.at(reg);
    const int index = current.num_qubits();
    registers_.at(reg) = qsim::tensor(current, qsim::new_basis_state({bit}));
    return index;
  }

  qsim::ZOutcome measure_z(int reg, int qubit, SplitStream& rng) {
    auto [outcome, post] = qsim::measure_z(registers_.at(reg), qubit, rng);
    registers_.at(reg) = std::move(post);
    return outcome;
  }

  qsim::BellOutcome measure_bell(int reg, int q1, int q2, SplitStream& rng) {
    auto [outcome, post] = qsim::measure_bell(registers_.at(reg), q1, q2, rng);
    registers_.at(reg) = std::move(post);
    return outcome;
  }

  qsim::GhzOutcome measure_ghz(int reg, const std::vector<int>& qubits, SplitStream& rng) {
    auto [outcome, post] = qsim::measure_ghz(registers_.at(reg), qubits, rng);
    registers_.at(reg) = std::move(post);
    return outcome;
  }

  void apply(int reg, const qsim::Unitary& u, const std::vector<int>& targets) {
    registers_.at(reg) = qsim::apply_unitary(registers_.at(reg), u, targets);
  }

  void apply_cnot(int reg, int control, int target) {
    registers_.at(reg) = qsim::apply_cnot(registers_.at(reg), control, target);
  }

  qsim::DensityMatrix reduced_state(int reg, const std::vector<int>& keep) const {
    return qsim::partial_trace(registers_.at(reg), keep);
  }

  SessionTranscript& transcript() { return transcript_; }
  const SessionTranscript& transcript() const { return transcript_; }

 private:
  std::vector<qsim::StateVector> registers_;
  SessionTranscript transcript_;
};

}  // namespace semiq::roles
