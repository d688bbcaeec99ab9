#pragma once

// Denominator-cleared polynomial identities behind the two non-degeneration
// lemmas for the families 231 + beta*321, and a per-session gate recording
// whether they have been checked.

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "nildeg/polyring.hpp"

namespace nildeg {

/// The four structure vectors the identities are about, as polynomials in
/// the parameters beta and xi over a prime field. Tests perturb these.
struct LemmaInputs {
  Field field;
  VarList params;
  std::array<MultiPoly, 27> sigma_beta;  // 231 + beta*321
  std::array<MultiPoly, 27> sigma_xi;    // 231 + xi*321
  std::array<MultiPoly, 27> nu;          // -231 + 321 + 331
  std::array<MultiPoly, 27> rho;         // 221 + 2*321 + 331

  static LemmaInputs standard(const Field& f);
};

struct IdentityCheck {
  std::string name;
  bool passed = false;
  std::size_t variables = 0;
  std::string detail;  // offending coefficient when failed
};

struct LemmaReport {
  std::uint64_t characteristic = 0;
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

LemmaReport verify_lemma_identities(const LemmaInputs& in);
/// Standard inputs over `f` (Q or a prime field).
LemmaReport verify_lemma_identities(const Field& f);

/// Lemma-backed non-degeneration facts consult this before being issued.
/// Verification runs lazily, once per characteristic.
class IdentityGate {
 public:
  bool ensure(const Field& f);
  bool verified(std::uint64_t characteristic) const;

 private:
  mutable std::mutex mu_;
  std::map<std::uint64_t, bool> results_;
};

}  // namespace nildeg
