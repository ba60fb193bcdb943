#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace loday {

struct Witness {
  std::vector<std::string> inputs;
  std::string residual;
};

// Outcome of a property check over a list of cases. Only the first few
// failures keep their witness.
struct CheckReport {
  static constexpr std::size_t kept_witnesses = 5;

  std::string name;
  std::size_t cases = 0;
  std::size_t failed = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;

  explicit CheckReport(std::string n = {}) : name(std::move(n)) {}

  bool passed() const { return failed == 0; }

  void pass() { ++cases; }

  void fail(std::vector<std::string> inputs, std::string residual) {
    ++cases;
    ++failed;
    if (witnesses.size() < kept_witnesses)
      witnesses.push_back({std::move(inputs), std::move(residual)});
  }

  void record(bool ok, std::vector<std::string> inputs, std::string residual) {
    if (ok)
      pass();
    else
      fail(std::move(inputs), std::move(residual));
  }

  void merge(const CheckReport& other) {
    cases += other.cases;
    failed += other.failed;
    for (const auto& w : other.witnesses)
      if (witnesses.size() < kept_witnesses) witnesses.push_back(w);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  std::string summary() const {
    std::string s = name + ": " + std::to_string(cases - failed) + "/" + std::to_string(cases);
    if (!witnesses.empty()) {
      const auto& w = witnesses.front();
      s += " first failure on (";
      for (std::size_t i = 0; i < w.inputs.size(); ++i) s += (i ? ", " : "") + w.inputs[i];
      s += ") residual " + w.residual;
    }
    return s;
  }
};

}  // namespace loday
