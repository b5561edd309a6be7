#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace oneround {

// One per-lemma record: pass, or the first counterexample found.
struct VerificationReport {
  std::string lemma;
  int n = 0;
  bool pass = true;
  std::optional<nlohmann::json> counterexample;
  long long checked = 0;

  VerificationReport() = default;
  VerificationReport(std::string lemma_name, int half_deck)
      : lemma(std::move(lemma_name)), n(half_deck) {}

  void fail(nlohmann::json cx) {
    if (pass) {
      pass = false;
      counterexample = std::move(cx);
    }
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{{"lemma", r.lemma}, {"n", r.n}, {"pass", r.pass}, {"checked", r.checked}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

}  // namespace oneround
