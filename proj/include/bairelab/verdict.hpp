#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bairelab/basis.hpp"
#include "bairelab/rational.hpp"

namespace bairelab {

/// Machine-checkable evidence: which family members, with which
/// coefficients, attained which value. Labels carry the remaining location
/// data (split point, level, condition, ...).
struct Witness {
  std::string kind;
  std::vector<std::size_t> indices;
  std::vector<Rational> coefficients;
  std::optional<NormValue> value;
  std::map<std::string, std::string> labels;
};

struct Verdict {
  enum class Status { Pass, Violated, Inconclusive };
  Status status = Status::Inconclusive;
  /// Always present for Violated.
  std::optional<Witness> witness;
  /// What was examined.
  std::string tested;
};

[[nodiscard]] const char* status_name(Verdict::Status status) noexcept;

} // namespace bairelab
