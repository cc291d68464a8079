#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "semiq/qsim/state_vector.hpp"

namespace semiq::roles {

/// What a classical user may do with a qubit in flight.
enum class PartyAction { Measure, Reflect };

inline const char* to_string(PartyAction a) {
  return a == PartyAction::Measure ? "measure" : "reflect";
}

/// Classical users are numbered 0..L-1; the quantum third party is -1.
constexpr int kTpParty = -1;

// --- Announcement payloads (the public classical channel) ---

struct BellResult {
  int group;
  qsim::BellOutcome outcome;
};

struct GhzResult {
  int group;
  qsim::GhzOutcome outcome;
};

struct ActionDisclosure {
  std::vector<int> positions;
  std::vector<PartyAction> actions;
};

struct CiphertextBits {
  std::string label;
  std::vector<int> bits;
};

/// Integer-valued ciphertexts carried as decimal strings so arbitrary
/// magnitudes serialize exactly.
struct CiphertextInts {
  std::string label;
  std::vector<std::string> values;
};

struct HashValue {
  std::string label;
  std::vector<std::uint8_t> digest;
};

struct ComparisonVerdict {
  bool equal;
};

using AnnouncementPayload = std::variant<BellResult, GhzResult, ActionDisclosure, CiphertextBits,
                                         CiphertextInts, HashValue, ComparisonVerdict>;

struct Announcement {
  int author;
  AnnouncementPayload payload;
};

// --- Transcript events ---

struct PrepareEvent {
  std::string kind;      // "bell", "ghz", "decoy", "fake"
  int owner;             // party the resource is destined for, or kTpParty
  int id;                // group id or per-owner decoy index
  int prepared_bit;      // -1 when not a basis-state preparation
};

struct SendEvent {
  std::string leg;  // "forward" or "return"
  int party;
  int position;
};

struct HookEvent {
  std::string attack;
  std::string detail;
  int party;
  int position;
  int probe_outcome;  // -1 when the hook measured nothing
};

struct ActionEvent {
  int party;
  int position;
  PartyAction action;
  int outcome;  // -1 on reflect
};

/// TP-private measurement record (decoy Z results stay out of announcements).
struct TpMeasureEvent {
  std::string kind;
  int id;
  std::string result;
};

struct CheckEvent {
  std::string name;
  std::size_t errors = 0;
  std::size_t total = 0;
  double error_rate = 0.0;
  bool pass = true;
};

struct AbortEvent {
  std::string cls;  // "check" or "quota"
  std::string code;
  std::string detail;
};

using Event = std::variant<PrepareEvent, SendEvent, HookEvent, ActionEvent, TpMeasureEvent,
                           Announcement, CheckEvent, AbortEvent>;

/// Ordered, append-only log of one protocol run. An abort event, when
/// present, is the final event.
class SessionTranscript {
 public:
  void log(Event e) { events_.push_back(std::move(e)); }
  const std::vector<Event>& events() const { return events_; }

  template <typename T>
  std::vector<T> collect() const {
    std::vector<T> out;
    for (const auto& e : events_)
      if (const T* v = std::get_if<T>(&e)) out.push_back(*v);
    return out;
  }

  std::vector<Announcement> announcements() const { return collect<Announcement>(); }

 private:
  std::vector<Event> events_;
};

}  // namespace semiq::roles
