#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semiq/qsim/unitary.hpp"
#include "semiq/rng.hpp"

namespace semiq::qsim {

using Amplitude = std::complex<double>;

constexpr double kTolerance = 1e-9;

/// Z-basis measurement result of a single qubit.
struct ZOutcome {
  int bit = 0;
  friend bool operator==(const ZOutcome&, const ZOutcome&) = default;
};

/// The four Bell-basis outcomes.
/// PhiPlus/PhiMinus = (|00> +- |11>)/sqrt(2), PsiPlus/PsiMinus = (|01> +- |10>)/sqrt(2).
enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline const char* to_string(BellOutcome b) {
  switch (b) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
  }
  return "?";
}

/// GHZ-basis outcome over L qubits: the basis states are
/// (|b> + sign |~b>)/sqrt(2) where b runs over bitstrings whose leading bit
/// is 0 and ~b is the bitwise complement. `bits` stores the trailing L-1
/// bits of b (the leading bit is fixed to 0 and omitted).
struct GhzOutcome {
  std::vector<int> bits;  // length L-1
  int sign = +1;          // +1 or -1

  friend bool operator==(const GhzOutcome&, const GhzOutcome&) = default;
};

inline std::string to_string(const GhzOutcome& g) {
  std::string s(g.sign > 0 ? "+" : "-");
  s += '|';
  for (int b : g.bits) s += static_cast<char>('0' + b);
  return s;
}

/// Dense state vector over a small qubit register.
///
/// Qubit 0 is the most significant bit of the amplitude index, so for a
/// 2-qubit register |q0 q1>, amplitude index 2 is |10>. Operations return
/// new values; a StateVector is never mutated through its public surface.
class StateVector {
 public:
  StateVector(int num_qubits, std::vector<Amplitude> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits_ < 1) throw std::invalid_argument("state: need at least one qubit");
    if (amps_.size() != (std::size_t{1} << num_qubits_))
      throw std::invalid_argument("state: amplitude count must be 2^num_qubits");
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t index) const { return amps_.at(index); }

  double norm_squared() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }
  bool is_normalized(double tol = kTolerance) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  /// Index mask of qubit q (qubit 0 = most significant bit).
  std::size_t qubit_mask(int q) const {
    check_qubit(q);
    return std::size_t{1} << (num_qubits_ - 1 - q);
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) throw std::invalid_argument("state: qubit index out of range");
  }

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

/// |b1 b2 ... bk> with the first bit on the most significant qubit.
inline StateVector new_basis_state(const std::vector<int>& bits) {
  if (bits.empty()) throw std::invalid_argument("new_basis_state: empty bit list");
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("new_basis_state: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  std::vector<Amplitude> amps(std::size_t{1} << bits.size(), Amplitude{0, 0});
  amps[index] = Amplitude{1, 0};
  return StateVector(static_cast<int>(bits.size()), std::move(amps));
}

/// (|00> + |11>)/sqrt(2).
inline StateVector new_bell_phi_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return StateVector(2, {Amplitude{r, 0}, {}, {}, Amplitude{r, 0}});
}

/// (|0...0> + |1...1>)/sqrt(2) over L qubits.
inline StateVector new_ghz_plus(int l) {
  if (l < 2) throw std::invalid_argument("new_ghz_plus: need at least 2 qubits");
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Amplitude> amps(std::size_t{1} << l, Amplitude{0, 0});
  amps.front() = Amplitude{r, 0};
  amps.back() = Amplitude{r, 0};
  return StateVector(l, std::move(amps));
}

/// Kronecker product; `a` occupies the high-order qubits of the result.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Amplitude> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

namespace detail {

// Distributes the bits of `packed` into the index positions given by
// `position_masks` (most significant gate bit first).
inline std::size_t scatter_bits(std::size_t packed, std::span<const std::size_t> position_masks) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < position_masks.size(); ++i) {
    if (packed & (std::size_t{1} << (position_masks.size() - 1 - i))) out |= position_masks[i];
  }
  return out;
}

inline void check_targets(const StateVector& psi, const std::vector<int>& targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= psi.num_qubits())
      throw std::invalid_argument("apply: target qubit out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw std::invalid_argument("apply: duplicate target qubit");
  }
}

}  // namespace detail

/// Apply `u` to the listed target qubits (first target = most significant
/// bit of the gate's index space), identity on the rest.
inline StateVector apply_unitary(const StateVector& psi, const Unitary& u,
                                 const std::vector<int>& targets) {
  detail::check_targets(psi, targets);
  const int k = static_cast<int>(targets.size());
  if (u.dim() != (std::size_t{1} << k))
    throw std::invalid_argument("apply_unitary: matrix dimension does not match target count");

  std::vector<std::size_t> target_masks(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) target_masks[i] = psi.qubit_mask(targets[i]);

  // Masks of the untouched qubits, used to enumerate the outer index space.
  std::vector<std::size_t> rest_masks;
  for (int q = 0; q < psi.num_qubits(); ++q) {
    if (std::find(targets.begin(), targets.end(), q) == targets.end())
      rest_masks.push_back(psi.qubit_mask(q));
  }

  const std::size_t gate_dim = u.dim();
  std::vector<Amplitude> out(psi.dim(), Amplitude{0, 0});
  std::vector<Amplitude> in_block(gate_dim);
  const std::size_t rest_count = std::size_t{1} << rest_masks.size();
  for (std::size_t r = 0; r < rest_count; ++r) {
    const std::size_t base = detail::scatter_bits(r, rest_masks);
    for (std::size_t g = 0; g < gate_dim; ++g)
      in_block[g] = psi.amplitudes()[base | detail::scatter_bits(g, target_masks)];
    for (std::size_t g = 0; g < gate_dim; ++g) {
      Amplitude acc{0, 0};
      for (std::size_t h = 0; h < gate_dim; ++h) acc += u.entry(g, h) * in_block[h];
      out[base | detail::scatter_bits(g, target_masks)] = acc;
    }
  }
  return StateVector(psi.num_qubits(), std::move(out));
}

/// CNOT: flips `target` on components where `control` is 1.
inline StateVector apply_cnot(const StateVector& psi, int control, int target) {
  if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
  const std::size_t cmask = psi.qubit_mask(control);
  const std::size_t tmask = psi.qubit_mask(target);
  std::vector<Amplitude> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    out[(i & cmask) ? (i ^ tmask) : i] = psi.amplitudes()[i];
  return StateVector(psi.num_qubits(), std::move(out));
}

namespace detail {

inline StateVector renormalized(std::vector<Amplitude> amps, int num_qubits, double prob) {
  const double inv = 1.0 / std::sqrt(prob);
  for (auto& a : amps) a *= inv;
  return StateVector(num_qubits, std::move(amps));
}

}  // namespace detail

/// Projective Z measurement of one qubit; returns the sampled outcome and
/// the renormalized post-measurement state.
inline std::pair<ZOutcome, StateVector> measure_z(const StateVector& psi, int qubit,
                                                  SplitStream& rng) {
  const std::size_t mask = psi.qubit_mask(qubit);
  double p1 = 0;
  for (std::size_t i = 0; i < psi.dim(); ++i)
    if (i & mask) p1 += std::norm(psi.amplitudes()[i]);
  const int outcome = rng.uniform() < (1.0 - p1) ? 0 : 1;
  const double prob = outcome ? p1 : 1.0 - p1;
  std::vector<Amplitude> amps = psi.amplitudes();
  for (std::size_t i = 0; i < psi.dim(); ++i)
    if (static_cast<int>((i & mask) != 0) != outcome) amps[i] = Amplitude{0, 0};
  return {ZOutcome{outcome}, detail::renormalized(std::move(amps), psi.num_qubits(), prob)};
}

namespace detail {

// Coefficients of each Bell state over (b1, b2) in {00, 01, 10, 11},
// ordered as BellOutcome: phi+, phi-, psi+, psi-.
inline const std::vector<std::vector<Amplitude>>& bell_coefficients() {
  static const double r = 1.0 / std::sqrt(2.0);
  static const std::vector<std::vector<Amplitude>> table = {
      {Amplitude{r, 0}, Amplitude{}, Amplitude{}, Amplitude{r, 0}},
      {Amplitude{r, 0}, Amplitude{}, Amplitude{}, Amplitude{-r, 0}},
      {Amplitude{}, Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{}},
      {Amplitude{}, Amplitude{r, 0}, Amplitude{-r, 0}, Amplitude{}},
  };
  return table;
}

struct ProjectionResult {
  std::vector<double> probabilities;
  // Overlap amplitudes per outcome and rest-index, kept for post-state assembly.
  std::vector<std::vector<Amplitude>> overlaps;
  std::vector<std::size_t> target_masks;
  std::vector<std::size_t> rest_masks;
};

// Projects psi onto an orthonormal family of states of the target qubits.
// coeffs[k][g] is the amplitude of family member k on target sub-index g.
inline ProjectionResult project_family(const StateVector& psi, const std::vector<int>& targets,
                                       const std::vector<std::vector<Amplitude>>& coeffs) {
  ProjectionResult res;
  res.target_masks.resize(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    res.target_masks[i] = psi.qubit_mask(targets[i]);
  for (int q = 0; q < psi.num_qubits(); ++q)
    if (std::find(targets.begin(), targets.end(), q) == targets.end())
      res.rest_masks.push_back(psi.qubit_mask(q));

  const std::size_t rest_count = std::size_t{1} << res.rest_masks.size();
  const std::size_t gate_dim = std::size_t{1} << targets.size();
  res.probabilities.assign(coeffs.size(), 0.0);
  res.overlaps.assign(coeffs.size(), std::vector<Amplitude>(rest_count, Amplitude{0, 0}));
  for (std::size_t r = 0; r < rest_count; ++r) {
    const std::size_t base = scatter_bits(r, res.rest_masks);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Amplitude acc{0, 0};
      for (std::size_t g = 0; g < gate_dim; ++g) {
        const Amplitude c = coeffs[k][g];
        if (c != Amplitude{0, 0})
          acc += std::conj(c) * psi.amplitudes()[base | scatter_bits(g, res.target_masks)];
      }
      res.overlaps[k][r] = acc;
      res.probabilities[k] += std::norm(acc);
    }
  }
  return res;
}

inline StateVector post_measurement_state(const StateVector& psi, const ProjectionResult& proj,
                                          const std::vector<std::vector<Amplitude>>& coeffs,
                                          std::size_t outcome) {
  std::vector<Amplitude> amps(psi.dim(), Amplitude{0, 0});
  const std::size_t gate_dim = std::size_t{1} << proj.target_masks.size();
  const double inv = 1.0 / std::sqrt(proj.probabilities[outcome]);
  for (std::size_t r = 0; r < proj.overlaps[outcome].size(); ++r) {
    const std::size_t base = scatter_bits(r, proj.rest_masks);
    const Amplitude overlap = proj.overlaps[outcome][r];
    if (overlap == Amplitude{0, 0}) continue;
    for (std::size_t g = 0; g < gate_dim; ++g) {
      const Amplitude c = coeffs[outcome][g];
      if (c != Amplitude{0, 0})
        amps[base | scatter_bits(g, proj.target_masks)] = c * overlap * inv;
    }
  }
  return StateVector(psi.num_qubits(), std::move(amps));
}

inline std::size_t sample_outcome(const std::vector<double>& probabilities, SplitStream& rng) {
  const double u = rng.uniform();
  double cum = 0;
  for (std::size_t k = 0; k + 1 < probabilities.size(); ++k) {
    cum += probabilities[k];
    if (u < cum) return k;
  }
  return probabilities.size() - 1;
}

}  // namespace detail

/// Born probabilities of the four Bell outcomes on qubits (q1, q2).
inline std::array<double, 4> bell_probabilities(const StateVector& psi, int q1, int q2) {
  if (q1 == q2) throw std::invalid_argument("measure_bell: qubits must differ");
  const auto proj = detail::project_family(psi, {q1, q2}, detail::bell_coefficients());
  return {proj.probabilities[0], proj.probabilities[1], proj.probabilities[2],
          proj.probabilities[3]};
}

/// Projective Bell-basis measurement of qubits (q1, q2).
inline std::pair<BellOutcome, StateVector> measure_bell(const StateVector& psi, int q1, int q2,
                                                        SplitStream& rng) {
  if (q1 == q2) throw std::invalid_argument("measure_bell: qubits must differ");
  const auto& coeffs = detail::bell_coefficients();
  const auto proj = detail::project_family(psi, {q1, q2}, coeffs);
  const std::size_t k = detail::sample_outcome(proj.probabilities, rng);
  return {static_cast<BellOutcome>(k), detail::post_measurement_state(psi, proj, coeffs, k)};
}

namespace detail {

// GHZ family over L qubits: member index k = 2*b' + s where b' is the
// (L-1)-bit tail of b (leading bit 0) and s selects the sign.
inline std::vector<std::vector<Amplitude>> ghz_coefficients(int l) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::size_t dim = std::size_t{1} << l;
  const std::size_t half = dim >> 1;
  std::vector<std::vector<Amplitude>> coeffs;
  coeffs.reserve(dim);
  for (std::size_t tail = 0; tail < half; ++tail) {
    for (int s = 0; s < 2; ++s) {
      std::vector<Amplitude> c(dim, Amplitude{0, 0});
      c[tail] = Amplitude{r, 0};
      c[~tail & (dim - 1)] = Amplitude{s == 0 ? r : -r, 0};
      coeffs.push_back(std::move(c));
    }
  }
  return coeffs;
}

}  // namespace detail

/// Projective measurement in the GHZ basis of the listed qubits.
inline std::pair<GhzOutcome, StateVector> measure_ghz(const StateVector& psi,
                                                      const std::vector<int>& qubits,
                                                      SplitStream& rng) {
  if (qubits.size() < 2) throw std::invalid_argument("measure_ghz: need at least 2 qubits");
  detail::check_targets(psi, qubits);
  const int l = static_cast<int>(qubits.size());
  const auto coeffs = detail::ghz_coefficients(l);
  const auto proj = detail::project_family(psi, qubits, coeffs);
  const std::size_t k = detail::sample_outcome(proj.probabilities, rng);

  GhzOutcome outcome;
  outcome.sign = (k & 1) ? -1 : +1;
  const std::size_t tail = k >> 1;
  outcome.bits.resize(l - 1);
  for (int i = 0; i < l - 1; ++i)
    outcome.bits[i] = static_cast<int>((tail >> (l - 2 - i)) & 1);
  return {std::move(outcome), detail::post_measurement_state(psi, proj, coeffs, k)};
}

/// GHZ outcome probabilities indexed as in measure_ghz (2*tail + sign_bit).
inline std::vector<double> ghz_probabilities(const StateVector& psi,
                                             const std::vector<int>& qubits) {
  detail::check_targets(psi, qubits);
  return detail::project_family(psi, qubits, detail::ghz_coefficients(static_cast<int>(qubits.size())))
      .probabilities;
}

}  // namespace semiq::qsim
