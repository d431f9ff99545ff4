#pragma once

#include <map>
#include <string>

namespace heightlab {

enum class Verdict { Satisfied, Violated, Inconclusive };
const char* to_string(Verdict v);

/// lhs ≤ rhs comparison with an error bar. The verdict is inconclusive when
/// |rhs - lhs| is within the combined error.
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double error = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::map<std::string, std::string> inputs;
  std::string note;

  static InequalityReport compare(double lhs, double rhs, double error,
                                  std::map<std::string, std::string> inputs = {});
};

}  // namespace heightlab
